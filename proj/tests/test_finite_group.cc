/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hh"

#include <ftree/errors.hh>
#include <ftree/finite_group.hh>

#include <map>
#include <set>

using namespace ftree;

using std::string;
using std::vector;

TEST_CASE("built-in orders")
{
    vector<std::pair<string, std::uint32_t>> expected{
        { "Z1", 1 }, { "Z6", 6 }, { "Z12", 12 }, { "D3", 6 }, { "D4", 8 }, { "D5", 10 },
        { "A3", 3 }, { "A4", 12 }, { "A5", 60 }, { "A6", 360 },
        { "S1", 1 }, { "S3", 6 }, { "S4", 24 }, { "S5", 120 },
        { "perm:(1 2 3)(4 5),(1 2)", 12 }
    };
    for (auto & [spec, order] : expected) {
        CAPTURE(spec);
        CHECK(build_group(spec)->order() == order);
    }
    CHECK_THROWS_AS(build_group("S6"), GroupError);
    CHECK_THROWS_AS(build_group("A7"), GroupError);
    CHECK_THROWS_AS(build_group("Q8"), GroupError);
    CHECK_THROWS_AS(build_group("perm:(1 2"), ParseError);
}

TEST_CASE("group axioms hold on the tables")
{
    for (auto spec : { "Z7", "D4", "A4", "S4", "A5" }) {
        CAPTURE(spec);
        auto g = build_group(spec);
        for (ElementId a = 0 ; a < g->order() ; ++a) {
            CHECK(g->mul(0, a) == a);
            CHECK(g->mul(a, 0) == a);
            CHECK(g->mul(a, g->inv(a)) == 0);
        }
        if (g->order() <= 24)
            for (ElementId a = 0 ; a < g->order() ; ++a)
                for (ElementId b = 0 ; b < g->order() ; ++b)
                    for (ElementId c = 0 ; c < g->order() ; ++c)
                        REQUIRE(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)));
    }
}

TEST_CASE("numbering is reproducible")
{
    auto a = build_group("A4"), b = build_group("A4");
    CHECK(vector<ElementId>(a->table().begin(), a->table().end()) == vector<ElementId>(b->table().begin(), b->table().end()));
    auto p = build_group("perm:(1 2 3),(1 2)"), q = build_group("perm:(1 2),(1 2 3)");
    CHECK(vector<ElementId>(p->table().begin(), p->table().end()) == vector<ElementId>(q->table().begin(), q->table().end()));
}

TEST_CASE("element order statistics")
{
    auto a4 = build_group("A4");
    std::map<std::uint32_t, int> stats;
    for (ElementId x = 0 ; x < a4->order() ; ++x)
        ++stats[a4->element_order(x)];
    CHECK(stats == std::map<std::uint32_t, int>{ { 1, 1 }, { 2, 3 }, { 3, 8 } });
    CHECK_FALSE(a4->is_abelian());
    CHECK(build_group("Z6")->is_abelian());
}

TEST_CASE("subgroup closure matches the product-closure oracle")
{
    auto g = build_group("S4");
    for (ElementId a = 0 ; a < g->order() ; a += 3)
        for (ElementId b = 1 ; b < g->order() ; b += 5) {
            vector<ElementId> seed{ a, b };
            auto h = subgroup_closure(g, seed);
            auto expected = oracle::closure(*g, seed);
            for (ElementId x = 0 ; x < g->order() ; ++x)
                REQUIRE(h.contains(x) == expected[x]);
            CHECK(g->order() % h.order() == 0);
        }
}

TEST_CASE("normal closure within a subgroup")
{
    auto g = build_group("A4");
    auto whole = whole_group(g);
    // a 3-cycle normally generates all of A4
    ElementId three = 0;
    for (ElementId x = 0 ; x < g->order() ; ++x)
        if (g->element_order(x) == 3)
            three = x;
    vector<ElementId> seed{ three };
    CHECK(normal_closure_within(g, seed, whole).order() == 12);
    // an involution normally generates the Klein four subgroup
    ElementId two = 0;
    for (ElementId x = 0 ; x < g->order() ; ++x)
        if (g->element_order(x) == 2)
            two = x;
    vector<ElementId> seed2{ two };
    CHECK(normal_closure_within(g, seed2, whole).order() == 4);
    // inside an abelian ambient nothing changes
    auto cyclic = subgroup_closure(g, seed2);
    CHECK(normal_closure_within(g, seed2, cyclic).order() == 2);
    CHECK_THROWS_AS(normal_closure_within(g, seed, cyclic), PreconditionError);
}

TEST_CASE("automorphism group orders")
{
    vector<std::pair<string, std::size_t>> expected{
        { "Z1", 1 }, { "Z2", 1 }, { "Z6", 2 }, { "Z8", 4 }, { "D2", 6 }, { "S3", 6 }, { "D4", 8 },
        { "A4", 24 }, { "S4", 24 }, { "D5", 20 }, { "A5", 120 }
    };
    for (auto & [spec, count] : expected) {
        CAPTURE(spec);
        auto g = build_group(spec);
        auto auts = automorphism_group(*g);
        CHECK(auts.size() == count);
        // each is a bijective homomorphism
        for (auto & f : auts) {
            CHECK(std::set<ElementId>(f.begin(), f.end()).size() == g->order());
            for (ElementId a = 0 ; a < g->order() ; ++a)
                for (ElementId b = 0 ; b < g->order() ; b += 7)
                    REQUIRE(f[g->mul(a, b)] == g->mul(f[a], f[b]));
        }
    }
    CHECK_THROWS_AS(automorphism_group(*build_group("S5"), 10), ResourceError);
}

TEST_CASE("inner automorphisms number |G| / |Z(G)|")
{
    for (auto [spec, count] : vector<std::pair<string, std::size_t>>{ { "S3", 6 }, { "D4", 4 }, { "A4", 12 }, { "Z5", 1 }, { "S4", 24 } }) {
        CAPTURE(spec);
        auto inner = inner_automorphisms(*build_group(spec));
        CHECK(inner.size() == count);
        CHECK(inner[0][1] == 1);
    }
}

TEST_CASE("isomorphism class labels of the subgroups of A4")
{
    auto g = build_group("A4");
    std::set<vector<bool>> seen;
    std::map<string, int> labels;
    for (ElementId a = 0 ; a < g->order() ; ++a)
        for (ElementId b = 0 ; b < g->order() ; ++b) {
            vector<ElementId> seed{ a, b };
            auto h = subgroup_closure(g, seed);
            vector<bool> key(g->order());
            for (auto x : h.elements())
                key[x] = true;
            if (seen.insert(key).second)
                ++labels[iso_class(h)];
        }
    CHECK(labels == std::map<string, int>{ { "0", 1 }, { "Z2", 3 }, { "Z3", 4 }, { "Z2xZ2", 1 }, { "A4", 1 } });
}

TEST_CASE("isomorphism class labels of whole groups")
{
    vector<std::pair<string, string>> expected{
        { "Z1", "0" }, { "Z4", "Z4" }, { "Z6", "Z6" }, { "D2", "Z2xZ2" }, { "S3", "S3" }, { "D3", "S3" },
        { "D4", "D4" }, { "D5", "D5" }, { "D6", "D6" }, { "A4", "A4" }, { "D7", "D7" },
        { "perm:(1 2),(3 4 5 6)", "Z2xZ4" }, { "perm:(1 2 3 4),(1 3)", "D4" }
    };
    for (auto & [spec, label] : expected) {
        CAPTURE(spec);
        CHECK(iso_class(whole_group(build_group(spec))) == label);
    }
    CHECK(iso_class(whole_group(build_group("S4"))).starts_with("G24_"));
    CHECK_THROWS_AS(iso_class(whole_group(build_group("A5"))), ResourceError);
}

TEST_CASE("subgroup as an abstract group")
{
    auto g = build_group("S4");
    vector<ElementId> seed{ 1, 2 };
    auto h = subgroup_closure(g, seed);
    auto abstract = subgroup_as_group(h);
    CHECK(abstract->order() == h.order());
    CHECK(iso_class(whole_group(abstract)) == iso_class(h));
}

TEST_CASE("group from a table relabels the identity to 0")
{
    // Z3 with the identity stored as element 2
    vector<ElementId> table{ 1, 2, 0, 2, 0, 1, 0, 1, 2 };
    auto g = group_from_table(3, table, "Z3");
    CHECK(g->order() == 3);
    CHECK(g->mul(0, 1) == 1);
    CHECK_THROWS(group_from_table(2, vector<ElementId>{ 0, 0, 0, 0 }, "bad"));
}
