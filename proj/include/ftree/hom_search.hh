/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef FTREE_GUARD_HOM_SEARCH_HH
#define FTREE_GUARD_HOM_SEARCH_HH 1

#include <ftree/finite_group.hh>
#include <ftree/presentation.hh>

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ftree
{
    using PresentationPtr = std::shared_ptr<const Presentation>;

    /// A homomorphism from a presentation to a finite group, given by the images
    /// of the generators.
    struct Homomorphism
    {
        std::vector<ElementId> images;
        PresentationPtr source;
        GroupPtr target;

        auto evaluate(const Word & w) const -> ElementId;
        auto satisfies_relators() const -> bool;
    };

    /// Order in which generators get assigned, and for each prefix length
    /// k = 0..n the relators whose generators are all among the first k.
    struct SearchPlan
    {
        std::vector<std::uint32_t> order;
        std::vector<std::vector<std::size_t>> checkable;
    };

    auto plan_search(const Presentation & p) -> SearchPlan;

    inline constexpr std::uint64_t default_node_budget = 1'000'000'000;

    struct SearchOptions
    {
        unsigned threads = 1;
        std::uint64_t node_budget = default_node_budget;
    };

    /// All homomorphisms P -> G, sorted lexicographically by image vector.
    /// Throws ResourceError when the node budget is exhausted.
    auto enumerate_homomorphisms(const PresentationPtr & p, const GroupPtr & g, const SearchPlan & plan,
            const SearchOptions & options = {}) -> std::vector<Homomorphism>;

    auto enumerate_homomorphisms(const PresentationPtr & p, const GroupPtr & g,
            const SearchOptions & options = {}) -> std::vector<Homomorphism>;

    /// Just the number of homomorphisms; same search, no storage.
    auto count_homomorphisms(const Presentation & p, const GroupPtr & g, const SearchOptions & options = {}) -> std::uint64_t;

    enum class OrbitMode
    {
        none,
        conjugation,
        automorphism
    };

    auto parse_orbit_mode(const std::string & s) -> OrbitMode;
    auto orbit_mode_name(OrbitMode m) -> std::string;

    struct HomOrbit
    {
        Homomorphism representative; ///< lexicographically least image vector in the orbit
        std::size_t size = 0;
        OrbitMode mode = OrbitMode::none;
    };

    /// Partitions homs into orbits under post-composition with automorphisms
    /// of G (all of them, or only inner ones). homs must be closed under that
    /// action, which holds for the full output of enumerate_homomorphisms.
    auto classify(const std::vector<Homomorphism> & homs, const FiniteGroup & g, OrbitMode mode) -> std::vector<HomOrbit>;

    /// Same, with the automorphism list supplied by the caller.
    auto classify(const std::vector<Homomorphism> & homs, const std::vector<std::vector<ElementId>> & automorphisms,
            OrbitMode mode) -> std::vector<HomOrbit>;

    auto is_surjective(const Homomorphism & h) -> bool;

    /// Evaluates each word under h.
    auto restrict_along(const Homomorphism & h, std::span<const Word> words) -> std::vector<ElementId>;
}

#endif
