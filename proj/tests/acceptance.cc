/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "oracles.hh"

#include <ftree/abelianize.hh>
#include <ftree/errors.hh>
#include <ftree/fundtree.hh>
#include <ftree/hom_search.hh>
#include <ftree/trees.hh>

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace ftree;

using std::function;
using std::map;
using std::pair;
using std::size_t;
using std::string;
using std::vector;

namespace
{
    struct Outcome
    {
        bool pass = true;
        string detail;

        auto require(bool ok, const string & what) -> void
        {
            if (! ok) {
                pass = false;
                detail += (detail.empty() ? "" : "; ") + what;
            }
        }
    };

    /// peripheral class -> (count, kernel class -> count)
    using Breakdown = map<string, pair<size_t, map<string, size_t>>>;

    auto breakdown(const GImageReport & r) -> Breakdown
    {
        Breakdown b;
        for (auto & e : r.entries) {
            auto & column = b[e.peripheral.at(0)];
            column.first += e.multiplicity;
            column.second[e.kernel.at(0)] += e.multiplicity;
        }
        return b;
    }

    auto format(const Breakdown & b) -> string
    {
        std::ostringstream s;
        for (auto & [p, column] : b) {
            s << p << ":" << column.first << "{";
            bool first = true;
            for (auto & [k, n] : column.second) {
                s << (first ? "" : ",") << k << ":" << n;
                first = false;
            }
            s << "} ";
        }
        return s.str();
    }

    using Tuples = map<vector<string>, size_t>;

    auto tuples(const GImageReport & r) -> Tuples
    {
        Tuples t;
        for (auto & e : r.entries)
            t[e.kernel] += e.multiplicity;
        return t;
    }

    auto link_path(const string & name) -> string
    {
        return string(FTREE_DATA_DIR) + "/links/" + name + ".hld";
    }

    auto seconds_since(std::chrono::steady_clock::time_point start) -> double
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }

    const Breakdown hl1_sigma1{
        { "Z2xZ2", { 18, { { "Z2xZ2", 8 }, { "Z2", 10 } } } },
        { "Z3", { 12, { { "Z3", 9 }, { "0", 3 } } } },
        { "Z2", { 3, { { "Z2", 2 }, { "0", 1 } } } } };

    const Breakdown hl_symmetric{
        { "Z2xZ2", { 18, { { "Z2xZ2", 8 }, { "Z2", 9 }, { "0", 1 } } } },
        { "Z3", { 12, { { "Z3", 12 } } } },
        { "Z2", { 3, { { "Z2", 3 } } } } };

    const Breakdown hl3_sigma2{
        { "Z2xZ2", { 18, { { "Z2xZ2", 8 }, { "Z2", 10 } } } },
        { "Z3", { 12, { { "Z3", 12 } } } },
        { "Z2", { 3, { { "Z2", 2 }, { "0", 1 } } } } };

    const Breakdown asym_sigma{
        { "Z2xZ2", { 68, { { "Z2xZ2", 32 }, { "Z2", 36 } } } },
        { "Z3", { 36, { { "Z3", 36 } } } },
        { "Z2", { 12, { { "Z2", 12 } } } },
        { "0", { 4, { { "0", 4 } } } } };

    const Breakdown asym_sigma_prime{
        { "Z2xZ2", { 56, { { "Z2xZ2", 32 }, { "Z2", 24 } } } },
        { "Z3", { 52, { { "Z3", 52 } } } },
        { "Z2", { 28, { { "Z2", 24 }, { "0", 4 } } } } };

    struct LoadedLink
    {
        HandlebodyLink link;
        LinkGImages single, pairs;
    };

    auto load(const string & name, const GroupPtr & g) -> LoadedLink
    {
        auto link = load_link(link_path(name));
        auto single = k_fold_g_images(link, g, 1, OrbitMode::automorphism);
        auto pairs = k_fold_g_images(link, g, 2, OrbitMode::automorphism);
        return LoadedLink{ link, single, pairs };
    }

    auto check_column(Outcome & o, const string & link, const GImageReport & r, size_t proper, const Breakdown & expected) -> void
    {
        auto label = link + " " + r.component_labels.at(0);
        o.require(r.proper_count == proper, label + " proper " + std::to_string(r.proper_count) + " != " + std::to_string(proper));
        o.require(breakdown(r) == expected, label + " breakdown " + format(breakdown(r)));
    }

    auto criterion_1(const GroupPtr & a4) -> Outcome
    {
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        auto hl1 = load("hl1", a4);
        double elapsed = seconds_since(start);
        check_column(o, "HL1", hl1.single.reports.at(0), 33, hl1_sigma1);
        check_column(o, "HL1", hl1.single.reports.at(1), 33, hl_symmetric);
        for (auto & r : hl1.single.reports) {
            map<string, size_t> columns;
            for (auto & [p, column] : breakdown(r))
                columns[p] = column.first;
            o.require(columns == map<string, size_t>{ { "Z2xZ2", 18 }, { "Z3", 12 }, { "Z2", 3 } }, "peripheral distribution");
        }
        o.require(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s");
        if (o.pass)
            o.detail = "33/33 proper orbits, Z2xZ2:18 Z3:12 Z2:3, Sigma1 Z2xZ2 -> Z2xZ2:8 Z2:10 ("
                + std::to_string(elapsed) + " s)";
        return o;
    }

    auto criterion_2(const GroupPtr & a4) -> Outcome
    {
        Outcome o;
        auto hl1 = load("hl1", a4), hl2 = load("hl2", a4), hl3 = load("hl3", a4);
        check_column(o, "HL2", hl2.single.reports.at(0), 33, hl_symmetric);
        check_column(o, "HL2", hl2.single.reports.at(1), 33, hl_symmetric);
        check_column(o, "HL3", hl3.single.reports.at(0), 33, hl_symmetric);
        check_column(o, "HL3", hl3.single.reports.at(1), 33, hl3_sigma2);
        o.require(compare_g_images(hl1.single, hl2.single) == Verdict::distinguished, "HL1 vs HL2 not distinguished");
        o.require(breakdown(hl2.single.reports[0]) == breakdown(hl2.single.reports[1]), "HL2 columns differ");
        o.require(breakdown(hl1.single.reports[0]) != breakdown(hl1.single.reports[1]), "HL1 columns equal");
        o.require(breakdown(hl3.single.reports[0]) != breakdown(hl3.single.reports[1]), "HL3 columns equal");
        if (o.pass)
            o.detail = "HL2 and HL3 exact; HL1 vs HL2 distinguished; HL2 symmetric, HL1 and HL3 asymmetric";
        return o;
    }

    auto criterion_3(const GroupPtr & a4) -> Outcome
    {
        Outcome o;
        auto hl1 = load("hl1", a4), hl2 = load("hl2", a4), hl3 = load("hl3", a4);
        auto t = [] (std::initializer_list<vector<string>> entries) {
            Tuples result;
            for (auto & e : entries)
                result[e] = 1;
            return result;
        };
        vector<pair<string, pair<const LoadedLink *, Tuples>>> expected{
            { "HL1", { &hl1, t({ { "Z2", "Z3" }, { "Z3", "Z2xZ2" }, { "Z3", "Z3" } }) } },
            { "HL2", { &hl2, t({ { "Z2xZ2", "Z3" }, { "Z3", "Z2xZ2" }, { "Z3", "Z3" } }) } },
            { "HL3", { &hl3, t({ { "Z3", "Z2" }, { "Z2xZ2", "Z3" }, { "Z3", "Z3" } }) } } };
        for (auto & [name, data] : expected) {
            auto & r = data.first->pairs.reports.at(0);
            o.require(r.proper_count == 3, name + " proper " + std::to_string(r.proper_count));
            o.require(tuples(r) == data.second, name + " tuples differ");
        }
        o.require(compare_g_images(hl1.pairs, hl3.pairs) == Verdict::indistinguishable, "HL1 vs HL3 distinguished");
        if (o.pass)
            o.detail = "3 proper orbits each, tuple sets exact; HL1 vs HL3 2-fold: "
                + verdict_name(compare_g_images(hl1.pairs, hl3.pairs));
        return o;
    }

    auto criterion_4(const GroupPtr & a4) -> Outcome
    {
        Outcome o;
        auto link = load("asym", a4);
        auto & sigma_prime = link.single.reports.at(0), & sigma = link.single.reports.at(1);
        o.require(sigma.component_labels.at(0) == "Sigma" && sigma_prime.component_labels.at(0) == "SigmaPrime", "labels");
        check_column(o, "ASYM", sigma, 120, asym_sigma);
        check_column(o, "ASYM", sigma_prime, 136, asym_sigma_prime);
        if (o.pass)
            o.detail = "120 proper orbits for Sigma, 136 for Sigma', distributions exact";
        return o;
    }

    auto criterion_5() -> Outcome
    {
        Outcome o;
        auto shell = tree_from_json(nlohmann::json::parse(R"({"parents":[null,0,1],"labels":[null,1,1]})"));
        auto star = tree_from_json(nlohmann::json::parse(R"({"parents":[null,0,0],"labels":[null,1,1]})"));
        const int repeats = 1000;
        bool based_differ = false, unbased_equal = false;
        auto start = std::chrono::steady_clock::now();
        for (int i = 0 ; i < repeats ; ++i) {
            based_differ = canonical_code(shell) != canonical_code(star);
            unbased_equal = unbased_canonical_code(shell) == unbased_canonical_code(star);
        }
        double each_ms = seconds_since(start) * 1000.0 / repeats;
        o.require(based_differ, "based codes equal");
        o.require(unbased_equal, "unbased codes differ");
        o.require(each_ms < 1.0, "took " + std::to_string(each_ms) + " ms");
        if (o.pass)
            o.detail = "based " + canonical_code(shell) + " vs " + canonical_code(star) + ", unbased equal ("
                + std::to_string(each_ms) + " ms)";
        return o;
    }

    auto criterion_6() -> Outcome
    {
        Outcome o;
        std::mt19937_64 rng(20240601);
        vector<GroupPtr> groups{ build_group("Z6"), build_group("S3"), build_group("A4") };
        size_t cases = 0, mismatches = 0;
        for (int trial = 0 ; trial < 100 ; ++trial) {
            std::uint32_t gens = 1 + static_cast<std::uint32_t>(rng() % 2);
            vector<Word> relators;
            for (size_t r = 0, n = 1 + rng() % 2 ; r < n ; ++r)
                relators.push_back(free_reduce(oracle::random_word(rng, gens, 12)));
            auto p = std::make_shared<const Presentation>(gens, relators);
            for (auto & g : groups) {
                vector<vector<ElementId>> found;
                for (auto & h : enumerate_homomorphisms(p, g))
                    found.push_back(h.images);
                mismatches += found != oracle::homs(*p, *g);
                ++cases;
            }
        }
        o.require(cases >= 200, "only " + std::to_string(cases) + " cases");
        o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
        if (o.pass)
            o.detail = std::to_string(cases) + " random cases, all exact";
        return o;
    }

    auto criterion_7() -> Outcome
    {
        Outcome o;
        std::mt19937_64 rng(77);

        // free groups over every built-in of order <= 24
        vector<string> specs;
        for (int n = 1 ; n <= 24 ; ++n)
            specs.push_back("Z" + std::to_string(n));
        for (int n = 2 ; n <= 12 ; ++n)
            specs.push_back("D" + std::to_string(n));
        for (int n = 1 ; n <= 4 ; ++n) {
            specs.push_back("A" + std::to_string(n));
            specs.push_back("S" + std::to_string(n));
        }
        size_t free_checks = 0;
        for (auto & spec : specs) {
            auto g = build_group(spec);
            std::uint64_t expected = 1;
            for (std::uint32_t n = 0 ; n <= 3 ; ++n, expected *= g->order()) {
                o.require(count_homomorphisms(free_group(n), g) == expected, "free count " + spec);
                ++free_checks;
            }
        }

        // Tietze pipelines
        vector<Presentation> base{
            parse_presentation("gens: x, y\nrel: x y x Y X Y\n"),
            parse_presentation("gens: x, y, z\nrel: x y X Y\nrel: y z Y Z\n"),
            surface_group(1),
            parse_presentation("gens: a, b\nrel: a^2\nrel: b^3\nrel: a b a b a b\n") };
        vector<GroupPtr> groups{ build_group("S3"), build_group("Z6"), build_group("A4") };
        for (int trial = 0 ; trial < 100 ; ++trial) {
            auto p = base[static_cast<size_t>(trial) % base.size()];
            auto g = groups[rng() % groups.size()];
            auto expected = count_homomorphisms(p, g);
            auto q = p;
            for (int step = 0 ; step < 5 ; ++step)
                q = tietze_move(q, static_cast<TietzeMove>(rng() % 4), rng()).presentation;
            o.require(count_homomorphisms(q, g) == expected, "Tietze pipeline " + std::to_string(trial));
            o.require(count_homomorphisms(simplify(q), g) == expected, "simplify pipeline " + std::to_string(trial));
        }

        // Smith normal form
        for (int trial = 0 ; trial < 200 ; ++trial) {
            auto m = oracle::random_matrix(rng, 1 + rng() % 5, 1 + rng() % 5, 12);
            auto snf = smith_normal_form(m);
            bool ok = snf.left * m * snf.right == snf.diagonal
                && abs(determinant(snf.left)) == 1 && abs(determinant(snf.right)) == 1;
            auto d = invariant_factors(snf);
            mpz_class product = 1;
            for (size_t i = 0 ; i < d.size() ; ++i) {
                ok = ok && d[i] >= 0;
                if (i + 1 < d.size())
                    ok = ok && (d[i] == 0 ? d[i + 1] == 0 : d[i + 1] % d[i] == 0);
                product *= d[i];
                ok = ok && product == oracle::minor_gcd(m, i + 1);
            }
            o.require(ok, "SNF " + m.to_string());
        }

        // symplectic transvections x -> x + I(v, x) v and their products
        for (int genus = 1 ; genus <= 3 ; ++genus) {
            auto j = standard_symplectic(genus);
            size_t n = static_cast<size_t>(2 * genus);
            auto transvection = [&] () {
                IntMatrix v(n, 1);
                for (size_t i = 0 ; i < n ; ++i)
                    v(i, 0) = static_cast<long>(rng() % 5) - 2;
                auto m = IntMatrix::identity(n);
                auto update = v * v.transposed() * j.matrix;
                for (size_t r = 0 ; r < n ; ++r)
                    for (size_t c = 0 ; c < n ; ++c)
                        m(r, c) += update(r, c);
                return m;
            };
            vector<IntMatrix> maps;
            for (int i = 0 ; i < 10 ; ++i)
                maps.push_back(transvection());
            for (auto & a : maps) {
                o.require(preserves_pairing(a, j, j), "transvection not symplectic");
                for (auto & b : maps)
                    o.require(preserves_pairing(a * b, j, j), "product not symplectic");
            }
            auto doubled = IntMatrix::identity(n);
            doubled(0, 0) = 2;
            o.require(! preserves_pairing(doubled, j, j), "non-symplectic map accepted");
        }

        // tree canonicalization against brute force
        size_t tree_pairs = 0;
        for (int trial = 0 ; trial < 500 ; ++trial) {
            auto size = 1 + rng() % 8;
            auto a = oracle::random_tree(rng, size, 1 + trial % 2);
            auto b = trial % 3 == 0 ? oracle::random_relabelling(rng, a) : oracle::random_tree(rng, size, 1 + trial % 2);
            o.require(are_isomorphic(a, b) == oracle::trees_isomorphic(a, b), "tree " + tree_to_json(a).dump());
            o.require((unbased_canonical_code(a) == unbased_canonical_code(b)) == oracle::trees_unbased_isomorphic(a, b),
                    "unbased tree " + tree_to_json(a).dump());
            ++tree_pairs;
        }

        if (o.pass)
            o.detail = std::to_string(free_checks) + " free counts, 100 Tietze pipelines, 200 SNF matrices, "
                "30 symplectic maps, " + std::to_string(tree_pairs) + " tree pairs";
        return o;
    }

    auto criterion_8(const GroupPtr & a4) -> Outcome
    {
        Outcome o;
        std::mt19937_64 rng(88);
        vector<string> names{ "unknot", "trefoil", "hopf", "theta", "handcuff", "hl1", "hl2", "hl3", "asym" };
        size_t trials = 0;
        for (auto & name : names) {
            auto link = load_link(link_path(name));
            auto orbits = link_orbits(link, a4, OrbitMode::automorphism);
            vector<vector<int>> selections;
            vector<int> all;
            for (auto & c : link.components) {
                selections.push_back({ c.id });
                all.push_back(c.id);
            }
            if (all.size() > 1)
                selections.push_back(all);
            vector<GImageReport> reference;
            for (auto & s : selections)
                reference.push_back(g_image(link, orbits, a4, s, OrbitMode::automorphism));

            for (int trial = 0 ; trial < 50 ; ++trial, ++trials) {
                auto moved = link;
                for (auto & c : moved.components) {
                    auto by = free_reduce(oracle::random_word(rng, link.ambient->generator_count(), 12));
                    for (auto & m : c.meridians)
                        m = m.conjugated_by(by);
                    for (auto & l : c.longitudes) {
                        auto twist = c.meridians[rng() % c.meridians.size()].power(static_cast<int>(rng() % 7) - 3);
                        l = l.conjugated_by(by) * twist;
                    }
                }
                for (size_t i = 0 ; i < selections.size() ; ++i) {
                    auto r = g_image(moved, orbits, a4, selections[i], OrbitMode::automorphism);
                    o.require(r.proper_count == reference[i].proper_count && r.entries == reference[i].entries,
                            name + " trial " + std::to_string(trial));
                }
            }
        }
        if (o.pass)
            o.detail = std::to_string(trials) + " conjugated and reframed peripheral systems over "
                + std::to_string(names.size()) + " links, reports identical";
        return o;
    }
}

auto main() -> int
{
    auto a4 = build_group("A4");
    vector<pair<string, function<Outcome ()>>> criteria{
        { "HL1 single-component A4-images", [&] { return criterion_1(a4); } },
        { "HL2 and HL3 single-component A4-images", [&] { return criterion_2(a4); } },
        { "2-fold A4-images of HL1, HL2, HL3", [&] { return criterion_3(a4); } },
        { "ASYM: components with different proper counts", [&] { return criterion_4(a4); } },
        { "based vs unbased depth trees", [] { return criterion_5(); } },
        { "hom search vs naive enumeration", [] { return criterion_6(); } },
        { "property suite", [] { return criterion_7(); } },
        { "peripheral conjugation and framing invariance", [&] { return criterion_8(a4); } } };

    int failures = 0;
    for (size_t i = 0 ; i < criteria.size() ; ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        }
        catch (const std::exception & e) {
            outcome.pass = false;
            outcome.detail = string("exception: ") + e.what();
        }
        failures += ! outcome.pass;
        std::cout << (outcome.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first
            << ": " << outcome.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
