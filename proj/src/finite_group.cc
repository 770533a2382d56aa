/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ftree/finite_group.hh>
#include <ftree/errors.hh>

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

using std::map;
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
        struct PermutationHash
        {
            auto operator() (const Permutation & p) const -> size_t
            {
                size_t h = 1469598103934665603ull;
                for (auto x : p)
                    h = (h ^ x) * 1099511628211ull;
                return h;
            }
        };

        /// Elements in breadth-first order from the identity, by right
        /// multiplication with each generator in turn. Returns, for each
        /// element, its BFS parent and the generator index used.
        struct BfsNumbering
        {
            vector<ElementId> parent;
            vector<uint32_t> via;
            vector<ElementId> right_mul; ///< right_mul[e * gens + j] = e * gen_j
        };

        /// Multiplication table from a right-multiplication-by-generator table.
        auto table_from_bfs(const BfsNumbering & b, uint32_t order, uint32_t gens) -> vector<ElementId>
        {
            vector<ElementId> table(size_t{ order } * order);
            for (ElementId a = 0 ; a < order ; ++a) {
                table[size_t{ a } * order] = a;
                for (ElementId x = 1 ; x < order ; ++x)
                    table[size_t{ a } * order + x] = b.right_mul[size_t{ table[size_t{ a } * order + b.parent[x]] } * gens + b.via[x]];
            }
            return table;
        }

        auto compose(const Permutation & a, const Permutation & b) -> Permutation
        {
            // apply a first, then b
            Permutation r(a.size());
            for (size_t i = 0 ; i < a.size() ; ++i)
                r[i] = b[a[i]];
            return r;
        }

        auto fnv1a(span<const ElementId> data) -> std::uint64_t
        {
            std::uint64_t h = 1469598103934665603ull;
            for (auto x : data)
                for (int k = 0 ; k < 4 ; ++k)
                    h = (h ^ ((x >> (8 * k)) & 0xff)) * 1099511628211ull;
            return h;
        }

        auto order_statistics(const FiniteGroup & g) -> map<uint32_t, uint32_t>
        {
            map<uint32_t, uint32_t> stats;
            for (ElementId e = 0 ; e < g.order() ; ++e)
                ++stats[g.element_order(e)];
            return stats;
        }

        auto closure_size(const FiniteGroup & g, const vector<ElementId> & gens, vector<char> & seen, vector<ElementId> & queue) -> uint32_t
        {
            std::fill(seen.begin(), seen.end(), 0);
            queue.clear();
            queue.push_back(0);
            seen[0] = 1;
            for (size_t i = 0 ; i < queue.size() ; ++i)
                for (auto s : gens) {
                    auto y = g.mul(queue[i], s);
                    if (! seen[y]) {
                        seen[y] = 1;
                        queue.push_back(y);
                    }
                }
            return static_cast<uint32_t>(queue.size());
        }

        /// Greedy small generating set: repeatedly add the element that most
        /// enlarges the current closure (lowest id on ties).
        auto small_generating_set(const FiniteGroup & g) -> vector<ElementId>
        {
            vector<ElementId> gens;
            vector<char> seen(g.order());
            vector<ElementId> queue;
            uint32_t current = 1;
            while (current < g.order()) {
                ElementId best = 0;
                uint32_t best_size = current;
                for (ElementId x = 1 ; x < g.order() ; ++x) {
                    gens.push_back(x);
                    auto s = closure_size(g, gens, seen, queue);
                    gens.pop_back();
                    if (s > best_size) {
                        best_size = s;
                        best = x;
                    }
                }
                gens.push_back(best);
                current = best_size;
            }
            return gens;
        }

        auto abelian_label(const FiniteGroup & g) -> string
        {
            // For each prime p, the p-part is determined by how many elements are killed by p^k.
            uint32_t n = g.order();
            vector<uint32_t> invariant_factors;
            vector<vector<uint32_t>> prime_parts; // each: list of p^a_i
            uint32_t m = n;
            for (uint32_t p = 2 ; p <= m ; ++p) {
                if (m % p)
                    continue;
                uint32_t a = 0;
                while (m % p == 0) {
                    m /= p;
                    ++a;
                }
                // log_p of count of elements with x^{p^k} = 1
                vector<uint32_t> logcount(a + 2, 0);
                for (uint32_t k = 0 ; k <= a + 1 ; ++k) {
                    uint32_t pk = 1;
                    for (uint32_t i = 0 ; i < k ; ++i)
                        pk *= p;
                    uint32_t count = 0;
                    for (ElementId e = 0 ; e < n ; ++e)
                        if (pk % g.element_order(e) == 0)
                            ++count;
                    uint32_t l = 0;
                    while (count > 1) {
                        count /= p;
                        ++l;
                    }
                    logcount[k] = l;
                }
                // number of cyclic factors of order >= p^k is logcount[k] - logcount[k-1]
                vector<uint32_t> exps;
                for (uint32_t k = 1 ; k <= a ; ++k) {
                    uint32_t at_least_k = logcount[k] - logcount[k - 1];
                    uint32_t at_least_k1 = logcount[k + 1] - logcount[k];
                    for (uint32_t i = 0 ; i < at_least_k - at_least_k1 ; ++i)
                        exps.push_back(k);
                }
                std::sort(exps.begin(), exps.end(), std::greater<>());
                vector<uint32_t> part;
                for (auto e : exps) {
                    uint32_t q = 1;
                    for (uint32_t i = 0 ; i < e ; ++i)
                        q *= p;
                    part.push_back(q);
                }
                prime_parts.push_back(part);
            }
            size_t rank = 0;
            for (auto & part : prime_parts)
                rank = std::max(rank, part.size());
            invariant_factors.assign(rank, 1);
            for (auto & part : prime_parts)
                for (size_t i = 0 ; i < part.size() ; ++i)
                    invariant_factors[rank - 1 - i] *= part[i];
            string label;
            for (auto d : invariant_factors)
                label += (label.empty() ? "Z" : "xZ") + std::to_string(d);
            return label;
        }

        auto canonical_table_label(const FiniteGroup & g) -> string
        {
            uint32_t n = g.order();
            vector<char> seen(n);
            vector<ElementId> queue;
            for (size_t d = 1 ; d <= 6 ; ++d) {
                vector<ElementId> tuple(d, 1);
                vector<uint32_t> best_orders;
                vector<ElementId> best_table;
                bool found = false;
                while (true) {
                    if (closure_size(g, tuple, seen, queue) == n) {
                        vector<uint32_t> orders;
                        for (auto t : tuple)
                            orders.push_back(g.element_order(t));
                        if (! found || orders <= best_orders) {
                            // BFS relabel from this tuple
                            vector<ElementId> label(n, n), unlabel;
                            label[0] = 0;
                            unlabel.push_back(0);
                            for (size_t i = 0 ; i < unlabel.size() ; ++i)
                                for (auto s : tuple) {
                                    auto y = g.mul(unlabel[i], s);
                                    if (label[y] == n) {
                                        label[y] = static_cast<ElementId>(unlabel.size());
                                        unlabel.push_back(y);
                                    }
                                }
                            vector<ElementId> table(size_t{ n } * n);
                            for (ElementId a = 0 ; a < n ; ++a)
                                for (ElementId b = 0 ; b < n ; ++b)
                                    table[size_t{ a } * n + b] = label[g.mul(unlabel[a], unlabel[b])];
                            if (! found || orders < best_orders || table < best_table) {
                                best_orders = orders;
                                best_table = std::move(table);
                            }
                            found = true;
                        }
                    }
                    size_t k = 0;
                    while (k < d && ++tuple[k] == n)
                        tuple[k++] = 1;
                    if (k == d)
                        break;
                }
                if (found) {
                    char buf[32];
                    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(best_table)));
                    return "G" + std::to_string(n) + "_" + buf;
                }
            }
            throw ResourceError("no generating tuple of size <= 6 found");
        }
    }

    FiniteGroup::FiniteGroup(uint32_t order, vector<ElementId> table, vector<ElementId> generators,
            string name, vector<Permutation> permutations) :
        _order(order),
        _mul(std::move(table)),
        _generators(std::move(generators)),
        _permutations(std::move(permutations)),
        _name(std::move(name))
    {
        if (_order == 0)
            throw GroupError("group order must be at least 1");
        if (_order > max_table_order)
            throw ResourceError("group of order " + std::to_string(_order) + " exceeds table limit "
                    + std::to_string(max_table_order));
        if (_mul.size() != size_t{ _order } * _order)
            throw GroupError("multiplication table has wrong size");
        for (auto x : _mul)
            if (x >= _order)
                throw GroupError("multiplication table entry out of range");

        _inv.assign(_order, _order);
        for (ElementId a = 0 ; a < _order ; ++a) {
            if (mul(0, a) != a || mul(a, 0) != a)
                throw GroupError("element 0 is not the identity");
            vector<char> row(_order, 0);
            for (ElementId b = 0 ; b < _order ; ++b) {
                if (row[mul(a, b)]++)
                    throw GroupError("multiplication table row is not a permutation");
                if (mul(a, b) == 0)
                    _inv[a] = b;
            }
            if (mul(_inv[a], a) != 0)
                throw GroupError("inverse table inconsistent");
        }

        if (_order <= 64) {
            for (ElementId a = 0 ; a < _order ; ++a)
                for (ElementId b = 0 ; b < _order ; ++b)
                    for (ElementId c = 0 ; c < _order ; ++c)
                        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                            throw GroupError("multiplication is not associative");
        }
        else {
            std::mt19937 rng(12345);
            std::uniform_int_distribution<ElementId> pick(0, _order - 1);
            for (int i = 0 ; i < 20000 ; ++i) {
                ElementId a = pick(rng), b = pick(rng), c = pick(rng);
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw GroupError("multiplication is not associative");
            }
        }

        _element_order.assign(_order, 0);
        for (ElementId a = 0 ; a < _order ; ++a) {
            uint32_t k = 1;
            for (ElementId x = a ; x != 0 ; x = mul(x, a))
                ++k;
            _element_order[a] = a == 0 ? 1 : k;
        }

        vector<char> seen(_order);
        vector<ElementId> queue;
        for (auto g : _generators)
            if (g >= _order)
                throw GroupError("generator out of range");
        if (closure_size(*this, _generators, seen, queue) != _order)
            throw GroupError("generator set does not generate the group");
    }

    auto FiniteGroup::is_abelian() const -> bool
    {
        for (auto a : _generators)
            for (auto b : _generators)
                if (mul(a, b) != mul(b, a))
                    return false;
        return true;
    }

    auto FiniteGroup::format_element(ElementId e) const -> string
    {
        if (_permutations.empty())
            return "e" + std::to_string(e);
        const auto & p = _permutations.at(e);
        string out;
        vector<char> done(p.size(), 0);
        for (size_t i = 0 ; i < p.size() ; ++i) {
            if (done[i] || p[i] == i)
                continue;
            out += "(";
            for (size_t j = i ; ! done[j] ; j = p[j]) {
                done[j] = 1;
                out += (out.back() == '(' ? "" : " ") + std::to_string(j + 1);
            }
            out += ")";
        }
        return out.empty() ? "()" : out;
    }

    auto group_from_permutations(const vector<Permutation> & generator_perms, string name) -> GroupPtr
    {
        size_t degree = 0;
        for (auto & p : generator_perms)
            degree = std::max(degree, p.size());

        set<Permutation> distinct;
        for (auto p : generator_perms) {
            vector<char> hit(p.size(), 0);
            for (auto x : p) {
                if (x >= p.size() || hit[x])
                    throw GroupError("generator is not a permutation");
                hit[x] = 1;
            }
            for (size_t i = p.size() ; i < degree ; ++i)
                p.push_back(static_cast<uint32_t>(i));
            bool is_identity = true;
            for (size_t i = 0 ; i < p.size() ; ++i)
                is_identity = is_identity && p[i] == i;
            if (! is_identity)
                distinct.insert(p);
        }
        vector<Permutation> gens(distinct.begin(), distinct.end());

        Permutation id(degree);
        std::iota(id.begin(), id.end(), 0u);
        vector<Permutation> elements{ id };
        std::unordered_map<Permutation, ElementId, PermutationHash> index{ { id, 0 } };
        BfsNumbering b{ { 0 }, { 0 }, {} };
        auto k = static_cast<uint32_t>(gens.size());
        for (size_t i = 0 ; i < elements.size() ; ++i) {
            for (uint32_t j = 0 ; j < k ; ++j) {
                auto y = compose(elements[i], gens[j]);
                auto it = index.find(y);
                ElementId yid;
                if (it == index.end()) {
                    if (elements.size() >= max_closure_order)
                        throw ResourceError("permutation group closure exceeds order " + std::to_string(max_closure_order));
                    yid = static_cast<ElementId>(elements.size());
                    index.emplace(y, yid);
                    elements.push_back(std::move(y));
                    b.parent.push_back(static_cast<ElementId>(i));
                    b.via.push_back(j);
                }
                else
                    yid = it->second;
                b.right_mul.push_back(yid);
            }
        }

        auto order = static_cast<uint32_t>(elements.size());
        if (order > max_table_order)
            throw ResourceError("group of order " + std::to_string(order) + " exceeds table limit " + std::to_string(max_table_order));
        vector<ElementId> generator_ids;
        for (auto & g : gens)
            generator_ids.push_back(index.at(g));
        return std::make_shared<const FiniteGroup>(order, table_from_bfs(b, order, k), std::move(generator_ids),
                std::move(name), std::move(elements));
    }

    auto group_from_table(uint32_t order, const vector<ElementId> & table, string name) -> GroupPtr
    {
        if (order == 0 || table.size() != size_t{ order } * order)
            throw GroupError("table size does not match order");
        if (order > max_table_order)
            throw ResourceError("group of order " + std::to_string(order) + " exceeds table limit");
        for (auto x : table)
            if (x >= order)
                throw GroupError("table entry out of range");

        // locate the identity, then relabel so that it is 0
        ElementId e = order;
        for (ElementId a = 0 ; a < order && e == order ; ++a) {
            bool ok = true;
            for (ElementId b = 0 ; b < order && ok ; ++b)
                ok = table[size_t{ a } * order + b] == b && table[size_t{ b } * order + a] == b;
            if (ok)
                e = a;
        }
        if (e == order)
            throw GroupError("table has no identity element");
        vector<ElementId> swap(order);
        std::iota(swap.begin(), swap.end(), 0u);
        std::swap(swap[0], swap[e]);
        vector<ElementId> t(table.size());
        for (ElementId a = 0 ; a < order ; ++a)
            for (ElementId b = 0 ; b < order ; ++b)
                t[size_t{ swap[a] } * order + swap[b]] = swap[table[size_t{ a } * order + b]];

        // validate with a trivially generating set, then renumber by BFS from a small generating set
        vector<ElementId> all(order);
        std::iota(all.begin(), all.end(), 0u);
        FiniteGroup raw(order, t, all, name);
        auto gens = small_generating_set(raw);

        BfsNumbering b{ { 0 }, { 0 }, {} };
        vector<ElementId> label(order, order), unlabel{ 0 };
        label[0] = 0;
        for (size_t i = 0 ; i < unlabel.size() ; ++i)
            for (uint32_t j = 0 ; j < gens.size() ; ++j) {
                auto y = raw.mul(unlabel[i], gens[j]);
                if (label[y] == order) {
                    label[y] = static_cast<ElementId>(unlabel.size());
                    unlabel.push_back(y);
                    b.parent.push_back(static_cast<ElementId>(i));
                    b.via.push_back(j);
                }
                b.right_mul.push_back(label[y]);
            }
        vector<ElementId> generator_ids;
        for (auto g : gens)
            generator_ids.push_back(label[g]);
        return std::make_shared<const FiniteGroup>(order, table_from_bfs(b, order, static_cast<uint32_t>(gens.size())),
                std::move(generator_ids), std::move(name));
    }

    auto parse_permutations(string_view text) -> vector<Permutation>
    {
        vector<Permutation> result;
        vector<vector<vector<uint32_t>>> cycle_lists(1);
        size_t i = 0;
        uint32_t degree = 0;
        while (i < text.size()) {
            char c = text[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            if (c == ',') {
                cycle_lists.emplace_back();
                ++i;
                continue;
            }
            if (c != '(')
                throw ParseError("expected '(' in permutation at position " + std::to_string(i + 1));
            ++i;
            vector<uint32_t> cycle;
            while (true) {
                while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
                    ++i;
                if (i >= text.size())
                    throw ParseError("unterminated cycle in permutation");
                if (text[i] == ')') {
                    ++i;
                    break;
                }
                if (! std::isdigit(static_cast<unsigned char>(text[i])))
                    throw ParseError("bad character '" + string(1, text[i]) + "' in permutation");
                uint32_t v = 0;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                    v = v * 10 + static_cast<uint32_t>(text[i++] - '0');
                if (v == 0)
                    throw ParseError("permutation points are 1-based");
                cycle.push_back(v - 1);
                degree = std::max(degree, v);
            }
            cycle_lists.back().push_back(std::move(cycle));
        }

        for (auto & cycles : cycle_lists) {
            Permutation p(degree);
            std::iota(p.begin(), p.end(), 0u);
            vector<char> used(degree, 0);
            for (auto & cycle : cycles)
                for (size_t k = 0 ; k < cycle.size() ; ++k) {
                    if (used[cycle[k]]++)
                        throw GroupError("point " + std::to_string(cycle[k] + 1) + " repeated in permutation");
                    p[cycle[k]] = cycle[(k + 1) % cycle.size()];
                }
            result.push_back(std::move(p));
        }
        return result;
    }

    namespace
    {
        auto cycle_perm(uint32_t degree, const vector<uint32_t> & cycle) -> Permutation
        {
            Permutation p(degree);
            std::iota(p.begin(), p.end(), 0u);
            for (size_t k = 0 ; k < cycle.size() ; ++k)
                p[cycle[k]] = cycle[(k + 1) % cycle.size()];
            return p;
        }
    }

    auto cyclic_group(uint32_t n) -> GroupPtr
    {
        if (n == 0)
            throw GroupError("Z0 is not a finite group");
        vector<uint32_t> c(n);
        std::iota(c.begin(), c.end(), 0u);
        return group_from_permutations({ cycle_perm(n, c) }, "Z" + std::to_string(n));
    }

    auto dihedral_group(uint32_t n) -> GroupPtr
    {
        if (n < 2)
            throw GroupError("dihedral group D_n needs n >= 2");
        vector<uint32_t> c(n);
        std::iota(c.begin(), c.end(), 0u);
        Permutation reflection(n);
        for (uint32_t i = 0 ; i < n ; ++i)
            reflection[i] = (n - i) % n;
        if (n == 2) {
            // D2 = Z2 x Z2 on 4 points
            return group_from_permutations({ { 1, 0, 2, 3 }, { 0, 1, 3, 2 } }, "D2");
        }
        return group_from_permutations({ cycle_perm(n, c), reflection }, "D" + std::to_string(n));
    }

    auto alternating_group(uint32_t n) -> GroupPtr
    {
        if (n == 0 || n > 6)
            throw GroupError("built-in alternating groups are A1..A6");
        if (n <= 2)
            return group_from_permutations({ Permutation{ 0 } }, "A" + std::to_string(n));
        vector<Permutation> gens;
        for (uint32_t k = 2 ; k < n ; ++k)
            gens.push_back(cycle_perm(n, { 0, 1, k }));
        return group_from_permutations(gens, "A" + std::to_string(n));
    }

    auto symmetric_group(uint32_t n) -> GroupPtr
    {
        if (n == 0 || n > 5)
            throw GroupError("built-in symmetric groups are S1..S5");
        if (n == 1)
            return group_from_permutations({ Permutation{ 0 } }, "S1");
        vector<uint32_t> c(n);
        std::iota(c.begin(), c.end(), 0u);
        return group_from_permutations({ cycle_perm(n, { 0, 1 }), cycle_perm(n, c) }, "S" + std::to_string(n));
    }

    auto build_group(string_view spec) -> GroupPtr
    {
        if (spec.substr(0, 5) == "perm:")
            return group_from_permutations(parse_permutations(spec.substr(5)), string(spec));
        if (spec.size() < 2)
            throw GroupError("unknown group spec '" + string(spec) + "'");
        char family = static_cast<char>(std::toupper(static_cast<unsigned char>(spec[0])));
        uint32_t n = 0;
        for (char c : spec.substr(1)) {
            if (! std::isdigit(static_cast<unsigned char>(c)))
                throw GroupError("unknown group spec '" + string(spec) + "'");
            n = n * 10 + static_cast<uint32_t>(c - '0');
            if (n > 100000)
                throw GroupError("group parameter too large in '" + string(spec) + "'");
        }
        switch (family) {
            case 'Z': case 'C': return cyclic_group(n);
            case 'D': return dihedral_group(n);
            case 'A': return alternating_group(n);
            case 'S': return symmetric_group(n);
        }
        throw GroupError("unknown group family in '" + string(spec) + "'");
    }

    Subgroup::Subgroup(GroupPtr parent, vector<bool> members) :
        _parent(std::move(parent)),
        _members(std::move(members))
    {
        if (_members.size() != _parent->order())
            throw PreconditionError("subgroup bitset size mismatch");
        for (ElementId e = 0 ; e < _members.size() ; ++e)
            if (_members[e])
                _elements.push_back(e);
    }

    auto Subgroup::is_closed() const -> bool
    {
        if (! contains(0))
            return false;
        for (auto a : _elements) {
            if (! contains(_parent->inv(a)))
                return false;
            for (auto b : _elements)
                if (! contains(_parent->mul(a, b)))
                    return false;
        }
        return true;
    }

    auto whole_group(const GroupPtr & g) -> Subgroup
    {
        return Subgroup(g, vector<bool>(g->order(), true));
    }

    auto subgroup_closure(const GroupPtr & g, span<const ElementId> seed) -> Subgroup
    {
        vector<bool> members(g->order(), false);
        vector<ElementId> gens;
        for (auto s : seed) {
            if (s >= g->order())
                throw PreconditionError("seed element out of range");
            if (s != 0)
                gens.push_back(s);
        }
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

        vector<ElementId> queue{ 0 };
        members[0] = true;
        for (size_t i = 0 ; i < queue.size() ; ++i)
            for (auto s : gens) {
                auto y = g->mul(queue[i], s);
                if (! members[y]) {
                    members[y] = true;
                    queue.push_back(y);
                }
            }
        return Subgroup(g, std::move(members));
    }

    auto normal_closure_within(const GroupPtr & g, span<const ElementId> seeds, const Subgroup & ambient) -> Subgroup
    {
        for (auto s : seeds)
            if (s >= g->order() || ! ambient.contains(s))
                throw PreconditionError("normal closure seed lies outside the ambient subgroup");

        vector<ElementId> gens(seeds.begin(), seeds.end());
        Subgroup current = subgroup_closure(g, gens);
        const auto & conjugators = ambient.elements();
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0 ; i < gens.size() ; ++i)
                for (auto a : conjugators) {
                    auto c = g->conjugate(gens[i], a);
                    if (! current.contains(c)) {
                        gens.push_back(c);
                        current = subgroup_closure(g, gens);
                        changed = true;
                    }
                }
        }
        return current;
    }

    auto automorphism_group(const FiniteGroup & g, size_t max_count) -> vector<vector<ElementId>>
    {
        if (g.order() > 256)
            throw ResourceError("automorphism_group supports order <= 256, got " + std::to_string(g.order()));

        uint32_t n = g.order();
        vector<ElementId> gens = g.order() == 1 ? vector<ElementId>{} : small_generating_set(g);
        vector<vector<ElementId>> candidates;
        for (auto s : gens) {
            vector<ElementId> c;
            for (ElementId x = 1 ; x < n ; ++x)
                if (g.element_order(x) == g.element_order(s))
                    c.push_back(x);
            candidates.push_back(std::move(c));
        }

        vector<vector<ElementId>> result;
        vector<ElementId> images(gens.size());
        vector<ElementId> phi(n);
        vector<char> defined(n), used(n);
        vector<ElementId> queue;

        // Checks that the assignment of the first k generators extends to an
        // injective homomorphism on the subgroup they generate.
        auto consistent = [&] (size_t k) -> bool {
            std::fill(defined.begin(), defined.end(), 0);
            std::fill(used.begin(), used.end(), 0);
            queue.assign(1, 0);
            phi[0] = 0;
            defined[0] = used[0] = 1;
            for (size_t i = 0 ; i < queue.size() ; ++i) {
                auto x = queue[i];
                for (size_t j = 0 ; j < k ; ++j) {
                    auto y = g.mul(x, gens[j]);
                    auto py = g.mul(phi[x], images[j]);
                    if (defined[y]) {
                        if (phi[y] != py)
                            return false;
                    }
                    else {
                        if (used[py])
                            return false;
                        defined[y] = used[py] = 1;
                        phi[y] = py;
                        queue.push_back(y);
                    }
                }
            }
            return true;
        };

        auto search = [&] (auto & self, size_t k) -> void {
            if (k == gens.size()) {
                if (! consistent(k) || queue.size() != n)
                    return;
                result.push_back(phi);
                if (result.size() > max_count)
                    throw ResourceError("more than " + std::to_string(max_count) + " automorphisms");
                return;
            }
            for (auto c : candidates[k]) {
                images[k] = c;
                if (consistent(k + 1))
                    self(self, k + 1);
            }
        };

        if (gens.empty())
            result.push_back(vector<ElementId>{ 0 });
        else
            search(search, 0);
        std::sort(result.begin(), result.end());
        return result;
    }

    auto inner_automorphisms(const FiniteGroup & g) -> vector<vector<ElementId>>
    {
        vector<vector<ElementId>> result;
        set<vector<ElementId>> seen;
        for (ElementId a = 0 ; a < g.order() ; ++a) {
            vector<ElementId> phi(g.order());
            for (ElementId x = 0 ; x < g.order() ; ++x)
                phi[x] = g.conjugate(x, a);
            if (seen.insert(phi).second)
                result.push_back(std::move(phi));
        }
        return result;
    }

    auto subgroup_as_group(const Subgroup & h) -> GroupPtr
    {
        const auto & els = h.elements();
        auto n = static_cast<uint32_t>(els.size());
        const auto & g = *h.parent();
        vector<ElementId> local(g.order(), n);
        for (uint32_t i = 0 ; i < n ; ++i)
            local[els[i]] = i;
        vector<ElementId> table(size_t{ n } * n);
        for (uint32_t a = 0 ; a < n ; ++a)
            for (uint32_t b = 0 ; b < n ; ++b) {
                auto p = local[g.mul(els[a], els[b])];
                if (p == n)
                    throw PreconditionError("subgroup is not closed");
                table[size_t{ a } * n + b] = p;
            }
        return group_from_table(n, table, "subgroup of " + g.name());
    }

    auto iso_class(const Subgroup & h) -> IsoClassLabel
    {
        if (h.order() > 32)
            throw ResourceError("iso_class supports subgroups of order <= 32, got " + std::to_string(h.order()));
        if (h.order() == 1)
            return "0";

        auto abstract = subgroup_as_group(h);
        if (abstract->is_abelian())
            return abelian_label(*abstract);

        auto stats = order_statistics(*abstract);
        uint32_t involutions = stats.count(2) ? stats.at(2) : 0;
        switch (abstract->order()) {
            case 6: return "S3";
            case 8: return involutions == 5 ? "D4" : "Q8";
            case 10: return "D5";
            case 12:
                if (involutions == 3)
                    return "A4";
                return involutions == 7 ? "D6" : "Dic3";
            case 14: return "D7";
        }
        return canonical_table_label(*abstract);
    }
}
