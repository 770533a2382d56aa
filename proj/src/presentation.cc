/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ftree/presentation.hh>
#include <ftree/errors.hh>

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <set>
#include <sstream>

using std::optional;
using std::set;
using std::size_t;
using std::span;
using std::string;
using std::string_view;
using std::uint32_t;
using std::vector;

namespace ftree
{
    namespace
    {
        auto check_length(size_t n) -> void
        {
            if (n > max_word_length)
                throw ResourceError("word length " + std::to_string(n) + " exceeds cap of " + std::to_string(max_word_length));
        }

        auto default_names(uint32_t n) -> vector<string>
        {
            vector<string> result;
            for (uint32_t g = 0 ; g < n ; ++g)
                result.push_back("g" + std::to_string(g + 1));
            return result;
        }

        auto valid_name(const string & s) -> bool
        {
            if (s.empty() || ! std::islower(static_cast<unsigned char>(s[0])))
                return false;
            return std::all_of(s.begin(), s.end(), [] (char c) {
                    return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_';
                    });
        }

        auto inverse_name(const string & s) -> string
        {
            string r = s;
            r[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(r[0])));
            return r;
        }

        /// Least rotation of w or of w^-1, as a canonical key for a cyclic word up to inversion.
        auto cyclic_key(const Word & w) -> vector<Letter>
        {
            vector<Letter> best;
            for (const Word & v : { w, w.inverse() }) {
                auto l = v.letters();
                for (size_t r = 0 ; r < l.size() ; ++r) {
                    vector<Letter> rot(l.begin() + r, l.end());
                    rot.insert(rot.end(), l.begin(), l.begin() + r);
                    if (best.empty() || rot < best)
                        best = std::move(rot);
                }
            }
            return best;
        }

        /// Renumber generators after deleting generator `removed`.
        auto drop_generator(const Word & w, uint32_t removed) -> Word
        {
            vector<Letter> out;
            out.reserve(w.length());
            for (auto l : w.letters()) {
                if (l.generator == removed)
                    throw PreconditionError("generator still in use");
                out.push_back(Letter{ l.generator > removed ? l.generator - 1 : l.generator, l.sign });
            }
            return free_reduce(out);
        }

        /// If g occurs exactly once in r, returns the word that g equals.
        auto definition_from(const Word & r, uint32_t g) -> optional<Word>
        {
            if (r.occurrences(g) != 1)
                return std::nullopt;
            auto l = r.letters();
            size_t at = 0;
            while (l[at].generator != g)
                ++at;
            // r = u g^s v, so g^s = u^-1 v^-1
            vector<Letter> u(l.begin(), l.begin() + at), v(l.begin() + at + 1, l.end());
            Word rest = free_reduce(u).inverse() * free_reduce(v).inverse();
            return l[at].sign > 0 ? rest : rest.inverse();
        }

        /// Removes empty relators and cyclic duplicates, keeping first occurrences.
        auto tidy_relators(const vector<Word> & relators) -> vector<Word>
        {
            vector<Word> out;
            set<vector<Letter>> seen;
            for (auto & r : relators) {
                Word c = r.cyclically_reduced();
                if (c.empty())
                    continue;
                if (seen.insert(cyclic_key(c)).second)
                    out.push_back(std::move(c));
            }
            return out;
        }

        struct Elimination
        {
            uint32_t generator;
            size_t relator;
            Word definition;
        };

        auto find_elimination(uint32_t generator_count, const vector<Word> & relators, bool highest_first) -> optional<Elimination>
        {
            for (uint32_t k = 0 ; k < generator_count ; ++k) {
                uint32_t g = highest_first ? generator_count - 1 - k : k;
                optional<Elimination> best;
                for (size_t i = 0 ; i < relators.size() ; ++i) {
                    auto d = definition_from(relators[i], g);
                    if (d && (! best || relators[i].length() < relators[best->relator].length()))
                        best = Elimination{ g, i, std::move(*d) };
                }
                if (best)
                    return best;
            }
            return std::nullopt;
        }

        struct EliminationState
        {
            uint32_t generator_count;
            vector<Word> relators;
            vector<string> names;
            vector<Word> images;
        };

        auto apply_elimination(EliminationState & s, const Elimination & e) -> void
        {
            vector<Word> substitution;
            for (uint32_t g = 0 ; g < s.generator_count ; ++g)
                substitution.push_back(g == e.generator ? e.definition : Word::generator(g));

            vector<Word> relators;
            for (size_t i = 0 ; i < s.relators.size() ; ++i)
                if (i != e.relator)
                    relators.push_back(drop_generator(s.relators[i].substitute(substitution), e.generator).cyclically_reduced());
            for (auto & img : s.images)
                img = drop_generator(img.substitute(substitution), e.generator);

            s.relators = std::move(relators);
            s.names.erase(s.names.begin() + e.generator);
            --s.generator_count;
        }
    }

    auto free_reduce(span<const Letter> letters, optional<uint32_t> generator_bound) -> Word
    {
        check_length(letters.size());
        vector<Letter> stack;
        stack.reserve(letters.size());
        for (auto l : letters) {
            if (generator_bound && l.generator >= *generator_bound)
                throw MalformedWordError("generator index " + std::to_string(l.generator) + " out of range");
            if (l.sign != 1 && l.sign != -1)
                throw MalformedWordError("letter exponent must be +1 or -1");
            if (! stack.empty() && stack.back() == l.inverse())
                stack.pop_back();
            else
                stack.push_back(l);
        }
        return Word(std::move(stack), Word::Trusted{});
    }

    auto Word::generator(uint32_t g, int sign) -> Word
    {
        Letter l{ g, static_cast<std::int8_t>(sign) };
        return free_reduce(span<const Letter>(&l, 1));
    }

    auto Word::inverse() const -> Word
    {
        vector<Letter> r;
        r.reserve(_letters.size());
        for (auto it = _letters.rbegin() ; it != _letters.rend() ; ++it)
            r.push_back(it->inverse());
        return Word(std::move(r), Trusted{});
    }

    auto Word::power(int n) const -> Word
    {
        Word base = n < 0 ? inverse() : *this;
        // base = prefix core prefix^-1 with core cyclically reduced
        size_t k = 0, len = base._letters.size();
        while (len - 2 * k >= 2 && base._letters[k] == base._letters[len - 1 - k].inverse())
            ++k;
        size_t count = static_cast<size_t>(std::abs(static_cast<long>(n)));
        size_t core = len - 2 * k;
        check_length(count == 0 || core == 0 ? 0 : 2 * k + count * core);
        if (count == 0 || core == 0)
            return Word();
        vector<Letter> out(base._letters.begin(), base._letters.begin() + k);
        out.reserve(2 * k + count * core);
        for (size_t i = 0 ; i < count ; ++i)
            out.insert(out.end(), base._letters.begin() + k, base._letters.end() - k);
        out.insert(out.end(), base._letters.end() - k, base._letters.end());
        return Word(std::move(out), Trusted{});
    }

    auto Word::conjugated_by(const Word & w) const -> Word
    {
        return w * *this * w.inverse();
    }

    auto Word::cyclically_reduced() const -> Word
    {
        size_t lo = 0, hi = _letters.size();
        while (hi - lo >= 2 && _letters[lo] == _letters[hi - 1].inverse()) {
            ++lo;
            --hi;
        }
        return Word(vector<Letter>(_letters.begin() + lo, _letters.begin() + hi), Trusted{});
    }

    auto Word::exponent_sum(uint32_t g) const -> long
    {
        long s = 0;
        for (auto l : _letters)
            if (l.generator == g)
                s += l.sign;
        return s;
    }

    auto Word::max_generator() const -> optional<uint32_t>
    {
        optional<uint32_t> m;
        for (auto l : _letters)
            if (! m || l.generator > *m)
                m = l.generator;
        return m;
    }

    auto Word::occurrences(uint32_t g) const -> size_t
    {
        return std::count_if(_letters.begin(), _letters.end(), [g] (Letter l) { return l.generator == g; });
    }

    auto Word::substitute(span<const Word> images) const -> Word
    {
        vector<Letter> out;
        for (auto l : _letters) {
            if (l.generator >= images.size())
                throw MalformedWordError("no image for generator " + std::to_string(l.generator));
            const Word & img = images[l.generator];
            if (l.sign > 0)
                out.insert(out.end(), img._letters.begin(), img._letters.end());
            else
                for (auto it = img._letters.rbegin() ; it != img._letters.rend() ; ++it)
                    out.push_back(it->inverse());
            check_length(out.size());
        }
        return free_reduce(out);
    }

    auto Word::shifted(uint32_t offset) const -> Word
    {
        vector<Letter> r = _letters;
        for (auto & l : r)
            l.generator += offset;
        return Word(std::move(r), Trusted{});
    }

    auto operator* (const Word & a, const Word & b) -> Word
    {
        vector<Letter> r;
        r.reserve(a.length() + b.length());
        r.insert(r.end(), a._letters.begin(), a._letters.end());
        r.insert(r.end(), b._letters.begin(), b._letters.end());
        return free_reduce(r);
    }

    Presentation::Presentation(uint32_t generator_count, vector<Word> relators, vector<string> names, string metadata) :
        _generator_count(generator_count),
        _names(names.empty() ? default_names(generator_count) : std::move(names)),
        _metadata(std::move(metadata))
    {
        if (_names.size() != _generator_count)
            throw PreconditionError("expected " + std::to_string(_generator_count) + " generator names, got " + std::to_string(_names.size()));
        set<string> seen;
        for (auto & n : _names) {
            if (! valid_name(n))
                throw ParseError("invalid generator name '" + n + "' (must start with a lowercase letter)");
            if (! seen.insert(n).second)
                throw ParseError("duplicate generator name '" + n + "'");
        }
        for (auto & r : relators) {
            check_word(r);
            _relators.push_back(r.cyclically_reduced());
        }
    }

    auto Presentation::with_metadata(string m) const -> Presentation
    {
        Presentation p = *this;
        p._metadata = std::move(m);
        return p;
    }

    auto Presentation::check_word(const Word & w) const -> void
    {
        auto m = w.max_generator();
        if (m && *m >= _generator_count)
            throw MalformedWordError("word references generator " + std::to_string(*m) + " but presentation has "
                    + std::to_string(_generator_count));
    }

    auto Presentation::format_word(const Word & w) const -> string
    {
        if (w.empty())
            return "1";
        string out;
        for (auto l : w.letters()) {
            if (! out.empty())
                out += ' ';
            const string & n = _names.at(l.generator);
            out += l.sign > 0 ? n : inverse_name(n);
        }
        return out;
    }

    auto free_group(uint32_t rank) -> Presentation
    {
        vector<string> names;
        if (rank <= 26)
            for (uint32_t g = 0 ; g < rank ; ++g)
                names.push_back(string(1, static_cast<char>("xyzwvutsrqponmlkjihgfedcba"[g])));
        return Presentation(rank, {}, names, "free group of rank " + std::to_string(rank));
    }

    auto surface_group(int genus) -> Presentation
    {
        if (genus < 0)
            throw PreconditionError("genus must be non-negative");
        vector<string> names;
        vector<Letter> relator;
        for (int i = 0 ; i < genus ; ++i) {
            names.push_back("a" + std::to_string(i + 1));
            names.push_back("b" + std::to_string(i + 1));
            uint32_t a = 2 * i, b = 2 * i + 1;
            relator.insert(relator.end(), { Letter{ a, 1 }, Letter{ b, 1 }, Letter{ a, -1 }, Letter{ b, -1 } });
        }
        vector<Word> relators;
        if (genus > 0)
            relators.push_back(free_reduce(relator));
        return Presentation(static_cast<uint32_t>(2 * genus), std::move(relators), names,
                "surface group of genus " + std::to_string(genus));
    }

    auto free_product(const Presentation & p, const Presentation & q) -> FreeProduct
    {
        uint32_t offset = p.generator_count();
        vector<Word> relators = p.relators();
        for (auto & r : q.relators())
            relators.push_back(r.shifted(offset));

        vector<string> names = p.names();
        set<string> used(names.begin(), names.end());
        for (auto n : q.names()) {
            string candidate = n;
            for (int k = 2 ; used.count(candidate) ; ++k)
                candidate = n + "_" + std::to_string(k);
            used.insert(candidate);
            names.push_back(candidate);
        }

        return FreeProduct{ Presentation(offset + q.generator_count(), std::move(relators), std::move(names), "free product"), 0, offset };
    }

    auto tietze_move(const Presentation & p, TietzeMove move, std::uint64_t seed) -> TietzeResult
    {
        std::mt19937_64 rng(seed);
        auto random_word = [&] (uint32_t n, int max_len) {
            vector<Letter> l;
            if (n == 0)
                return Word{};
            int len = std::uniform_int_distribution<int>(1, max_len)(rng);
            for (int i = 0 ; i < len ; ++i)
                l.push_back(Letter{ std::uniform_int_distribution<uint32_t>(0, n - 1)(rng),
                        static_cast<std::int8_t>(std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1) });
            return free_reduce(l);
        };

        switch (move) {
            case TietzeMove::add_redundant_relator:
            {
                vector<Word> relators = p.relators();
                Word extra;
                if (! relators.empty()) {
                    auto pick = [&] { return relators[std::uniform_int_distribution<size_t>(0, relators.size() - 1)(rng)]; };
                    Word r1 = pick(), r2 = pick();
                    if (rng() & 1)
                        r2 = r2.inverse();
                    extra = r1 * r2.conjugated_by(random_word(p.generator_count(), 4));
                }
                relators.push_back(extra);
                return { Presentation(p.generator_count(), std::move(relators), p.names(), p.metadata()), true };
            }

            case TietzeMove::remove_redundant_relator:
            {
                auto & rs = p.relators();
                set<vector<Letter>> seen;
                for (size_t i = 0 ; i < rs.size() ; ++i) {
                    if (rs[i].empty() || ! seen.insert(cyclic_key(rs[i])).second) {
                        vector<Word> relators = rs;
                        relators.erase(relators.begin() + i);
                        return { Presentation(p.generator_count(), std::move(relators), p.names(), p.metadata()), true };
                    }
                }
                return { p, false };
            }

            case TietzeMove::add_generator_with_definition:
            {
                uint32_t n = p.generator_count();
                Word definition = random_word(n, 4);
                vector<Word> relators = p.relators();
                relators.push_back(Word::generator(n, -1) * definition);
                vector<string> names = p.names();
                string fresh = "t";
                set<string> used(names.begin(), names.end());
                for (int k = 1 ; used.count(fresh) ; ++k)
                    fresh = "t" + std::to_string(k);
                names.push_back(fresh);
                return { Presentation(n + 1, std::move(relators), std::move(names), p.metadata()), true };
            }

            case TietzeMove::remove_defined_generator:
            {
                auto e = find_elimination(p.generator_count(), p.relators(), true);
                if (! e)
                    return { p, false };
                EliminationState s{ p.generator_count(), p.relators(), p.names(), {} };
                apply_elimination(s, *e);
                return { Presentation(s.generator_count, std::move(s.relators), std::move(s.names), p.metadata()), true };
            }
        }
        return { p, false };
    }

    auto simplify_with_map(const Presentation & p) -> Simplification
    {
        EliminationState s{ p.generator_count(), tidy_relators(p.relators()), p.names(), {} };
        for (uint32_t g = 0 ; g < p.generator_count() ; ++g)
            s.images.push_back(Word::generator(g));

        while (auto e = find_elimination(s.generator_count, s.relators, false)) {
            apply_elimination(s, *e);
            s.relators = tidy_relators(s.relators);
        }

        return Simplification{ Presentation(s.generator_count, std::move(s.relators), std::move(s.names), p.metadata()),
            std::move(s.images) };
    }

    auto simplify(const Presentation & p) -> Presentation
    {
        return simplify_with_map(p).presentation;
    }

    namespace
    {
        auto trim(string_view s) -> string_view
        {
            while (! s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
                s.remove_prefix(1);
            while (! s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
                s.remove_suffix(1);
            return s;
        }

        auto split_tokens(string_view s) -> vector<string>
        {
            vector<string> out;
            string cur;
            for (char c : s) {
                if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '*' || c == '.') {
                    if (! cur.empty())
                        out.push_back(std::move(cur));
                    cur.clear();
                }
                else
                    cur += c;
            }
            if (! cur.empty())
                out.push_back(std::move(cur));
            return out;
        }

        auto parse_word_tokens(const vector<string> & names, string_view text, int line) -> Word
        {
            std::map<string, Letter> lookup;
            bool single_chars = true;
            for (uint32_t g = 0 ; g < names.size() ; ++g) {
                lookup[names[g]] = Letter{ g, 1 };
                lookup[inverse_name(names[g])] = Letter{ g, -1 };
                single_chars = single_chars && names[g].size() == 1;
            }

            vector<Letter> letters;
            for (auto & token : split_tokens(text)) {
                if (token == "1")
                    continue;
                string base = token;
                int exponent = 1;
                if (auto caret = token.find('^') ; caret != string::npos) {
                    base = token.substr(0, caret);
                    try {
                        exponent = std::stoi(token.substr(caret + 1));
                    }
                    catch (const std::exception &) {
                        throw ParseError("bad exponent in '" + token + "'", line);
                    }
                }

                vector<Letter> pieces;
                if (auto it = lookup.find(base) ; it != lookup.end())
                    pieces.push_back(it->second);
                else if (single_chars) {
                    for (char c : base) {
                        auto jt = lookup.find(string(1, c));
                        if (jt == lookup.end())
                            throw ParseError("unknown generator '" + string(1, c) + "' in '" + token + "'", line);
                        pieces.push_back(jt->second);
                    }
                }
                else
                    throw ParseError("unknown generator '" + base + "'", line);

                for (int i = 0 ; i < std::abs(exponent) ; ++i) {
                    if (exponent > 0)
                        letters.insert(letters.end(), pieces.begin(), pieces.end());
                    else
                        for (auto it = pieces.rbegin() ; it != pieces.rend() ; ++it)
                            letters.push_back(it->inverse());
                }
            }
            return free_reduce(letters, static_cast<uint32_t>(names.size()));
        }
    }

    auto parse_word(const Presentation & p, string_view text) -> Word
    {
        return parse_word_tokens(p.names(), text, 0);
    }

    auto parse_presentation(string_view text) -> Presentation
    {
        optional<vector<string>> names;
        vector<string> relator_texts;
        vector<int> relator_lines;
        string metadata;
        std::istringstream in{ string(text) };
        string raw;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            string_view line = raw;
            if (auto hash = line.find('#') ; hash != string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;
            auto colon = line.find(':');
            if (colon == string_view::npos)
                throw ParseError("expected 'gens:' or 'rel:' line", line_no, 1);
            auto key = trim(line.substr(0, colon));
            auto value = trim(line.substr(colon + 1));
            if (key == "gens") {
                if (names)
                    throw ParseError("duplicate gens line", line_no, 1);
                names = split_tokens(value);
            }
            else if (key == "rel") {
                relator_texts.emplace_back(value);
                relator_lines.push_back(line_no);
            }
            else if (key == "name")
                metadata = string(value);
            else
                throw ParseError("unknown key '" + string(key) + "'", line_no, 1);
        }
        if (! names)
            names = vector<string>{};

        for (auto & n : *names)
            if (! valid_name(n))
                throw ParseError("invalid generator name '" + n + "'");

        vector<Word> relators;
        for (size_t i = 0 ; i < relator_texts.size() ; ++i)
            relators.push_back(parse_word_tokens(*names, relator_texts[i], relator_lines[i]));
        auto count = static_cast<uint32_t>(names->size());
        return Presentation(count, std::move(relators), std::move(*names), metadata);
    }

    auto format_presentation(const Presentation & p) -> string
    {
        string out;
        if (! p.metadata().empty())
            out += "# " + p.metadata() + "\n";
        out += "gens:";
        for (uint32_t g = 0 ; g < p.generator_count() ; ++g)
            out += (g ? ", " : " ") + p.name(g);
        out += "\n";
        for (auto & r : p.relators())
            out += "rel: " + p.format_word(r) + "\n";
        return out;
    }

    auto word_to_json(const Word & w) -> nlohmann::json
    {
        auto a = nlohmann::json::array();
        for (auto l : w.letters())
            a.push_back(static_cast<long>(l.generator + 1) * l.sign);
        return a;
    }

    auto word_from_json(const nlohmann::json & j, uint32_t generator_count) -> Word
    {
        if (! j.is_array())
            throw ParseError("word must be a JSON array of signed 1-based generator indices");
        vector<Letter> letters;
        for (auto & x : j) {
            if (! x.is_number_integer())
                throw ParseError("word entries must be integers");
            long v = x.get<long>();
            if (v == 0)
                throw MalformedWordError("0 is not a valid letter (indices are 1-based)");
            letters.push_back(Letter{ static_cast<uint32_t>(std::abs(v) - 1), static_cast<std::int8_t>(v > 0 ? 1 : -1) });
        }
        return free_reduce(letters, generator_count);
    }

    auto presentation_to_json(const Presentation & p) -> nlohmann::json
    {
        nlohmann::json j;
        j["generators"] = p.names();
        j["relators"] = nlohmann::json::array();
        for (auto & r : p.relators())
            j["relators"].push_back(word_to_json(r));
        return j;
    }

    auto presentation_from_json(const nlohmann::json & j) -> Presentation
    {
        if (! j.is_object() || ! j.contains("generators"))
            throw ParseError("presentation JSON needs a \"generators\" array");
        auto names = j.at("generators").get<vector<string>>();
        auto n = static_cast<uint32_t>(names.size());
        vector<Word> relators;
        if (j.contains("relators"))
            for (auto & r : j.at("relators"))
                relators.push_back(word_from_json(r, n));
        return Presentation(n, std::move(relators), std::move(names));
    }
}
