/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef FTREE_GUARD_PRESENTATION_HH
#define FTREE_GUARD_PRESENTATION_HH 1

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ftree
{
    /// A generator reference with a sign; sign is +1 or -1.
    struct Letter
    {
        std::uint32_t generator = 0;
        std::int8_t sign = 1;

        auto inverse() const -> Letter { return Letter{ generator, static_cast<std::int8_t>(-sign) }; }
        auto operator== (const Letter &) const -> bool = default;
        auto operator<=> (const Letter &) const = default;
    };

    /// Words longer than this raise ResourceError.
    inline constexpr std::size_t max_word_length = std::size_t{ 1 } << 20;

    class Word;

    /// Stack-based free reduction. If generator_bound is given, every letter
    /// must reference a generator below it (MalformedWordError otherwise).
    auto free_reduce(std::span<const Letter> letters, std::optional<std::uint32_t> generator_bound = std::nullopt) -> Word;

    /// A freely reduced word in the generators of some presentation.
    class Word
    {
        private:
            std::vector<Letter> _letters;

            struct Trusted {};
            Word(std::vector<Letter> && reduced, Trusted) : _letters(std::move(reduced)) {}

        public:
            Word() = default;

            static auto generator(std::uint32_t g, int sign = 1) -> Word;

            auto letters() const -> std::span<const Letter> { return _letters; }
            auto length() const -> std::size_t { return _letters.size(); }
            auto empty() const -> bool { return _letters.empty(); }

            auto inverse() const -> Word;
            auto power(int n) const -> Word;
            auto conjugated_by(const Word & w) const -> Word; ///< w * this * w^-1
            auto cyclically_reduced() const -> Word;
            auto exponent_sum(std::uint32_t g) const -> long;
            auto max_generator() const -> std::optional<std::uint32_t>;
            auto occurrences(std::uint32_t g) const -> std::size_t;

            /// Replace each generator g by images[g]; the result is freely reduced.
            auto substitute(std::span<const Word> images) const -> Word;

            /// Shift every generator id by offset.
            auto shifted(std::uint32_t offset) const -> Word;

            friend auto operator* (const Word & a, const Word & b) -> Word;
            auto operator== (const Word &) const -> bool = default;
            auto operator<=> (const Word &) const = default;

            friend auto free_reduce(std::span<const Letter>, std::optional<std::uint32_t>) -> Word;
    };

    /// A finitely presented group. Relators are stored freely and cyclically reduced.
    class Presentation
    {
        private:
            std::uint32_t _generator_count = 0;
            std::vector<Word> _relators;
            std::vector<std::string> _names;
            std::string _metadata;

        public:
            Presentation() = default;

            /// names may be empty, in which case g1, g2, ... are used.
            Presentation(std::uint32_t generator_count, std::vector<Word> relators,
                    std::vector<std::string> names = {}, std::string metadata = "");

            auto generator_count() const -> std::uint32_t { return _generator_count; }
            auto relators() const -> const std::vector<Word> & { return _relators; }
            auto names() const -> const std::vector<std::string> & { return _names; }
            auto name(std::uint32_t g) const -> const std::string & { return _names.at(g); }
            auto metadata() const -> const std::string & { return _metadata; }
            auto with_metadata(std::string m) const -> Presentation;

            auto operator== (const Presentation & other) const -> bool
            {
                return _generator_count == other._generator_count && _relators == other._relators;
            }

            /// Throws MalformedWordError unless w only uses generators of this presentation.
            auto check_word(const Word & w) const -> void;

            auto format_word(const Word & w) const -> std::string;
    };

    auto free_group(std::uint32_t rank) -> Presentation;

    /// <a1,b1,...,ag,bg | [a1,b1]...[ag,bg]>; the sphere group for genus 0.
    auto surface_group(int genus) -> Presentation;

    struct FreeProduct
    {
        Presentation product;
        std::uint32_t left_offset = 0;   ///< generator g of the left factor is g + left_offset
        std::uint32_t right_offset = 0;  ///< generator g of the right factor is g + right_offset
    };

    auto free_product(const Presentation & p, const Presentation & q) -> FreeProduct;

    enum class TietzeMove
    {
        add_redundant_relator,
        remove_redundant_relator,
        add_generator_with_definition,
        remove_defined_generator
    };

    struct TietzeResult
    {
        Presentation presentation;
        bool applied = false;
    };

    /// Applies one Tietze transformation; random choices are driven by seed.
    /// An inapplicable move returns the input with applied = false.
    auto tietze_move(const Presentation & p, TietzeMove move, std::uint64_t seed) -> TietzeResult;

    struct Simplification
    {
        Presentation presentation;
        /// image of each original generator as a word in the new generators
        std::vector<Word> generator_images;
    };

    /// Greedy elimination of defined generators (lowest id first), plus removal
    /// of trivial and duplicate relators, until nothing changes.
    auto simplify_with_map(const Presentation & p) -> Simplification;
    auto simplify(const Presentation & p) -> Presentation;

    /// Text format: "gens: x, y" and "rel: x y X Y" lines, '#' comments.
    auto parse_presentation(std::string_view text) -> Presentation;
    auto parse_word(const Presentation & p, std::string_view text) -> Word;
    auto format_presentation(const Presentation & p) -> std::string;

    /// JSON mirror: {"generators":[...],"relators":[[1,-2,...]]}, 1-based signed indices.
    auto presentation_to_json(const Presentation & p) -> nlohmann::json;
    auto presentation_from_json(const nlohmann::json & j) -> Presentation;
    auto word_to_json(const Word & w) -> nlohmann::json;
    auto word_from_json(const nlohmann::json & j, std::uint32_t generator_count) -> Word;
}

#endif
