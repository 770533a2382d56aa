/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hh"

#include <ftree/errors.hh>
#include <ftree/trees.hh>

#include <algorithm>
#include <random>

using namespace ftree;

using std::size_t;
using std::vector;

namespace
{
    auto toric_shell() -> BasedTree
    {
        return tree_from_json(nlohmann::json::parse(R"({"parents":[null,0,1],"labels":[null,1,1]})"));
    }

    auto hopf_star() -> BasedTree
    {
        return tree_from_json(nlohmann::json::parse(R"({"parents":[null,0,0],"labels":[null,1,1]})"));
    }
}

TEST_CASE("canonical codes agree with the brute-force isomorphism oracle")
{
    std::mt19937_64 rng(99);
    for (int trial = 0 ; trial < 400 ; ++trial) {
        auto n = 1 + rng() % 8;
        auto a = oracle::random_tree(rng, n, 1 + trial % 2);
        auto b = (trial % 3 == 0) ? oracle::random_relabelling(rng, a) : oracle::random_tree(rng, n, 1 + trial % 2);
        CAPTURE(tree_to_json(a).dump());
        CAPTURE(tree_to_json(b).dump());
        CHECK(are_isomorphic(a, b) == oracle::trees_isomorphic(a, b));
        CHECK((unbased_canonical_code(a) == unbased_canonical_code(b)) == oracle::trees_unbased_isomorphic(a, b));
    }
}

TEST_CASE("relabelling preserves the canonical code")
{
    std::mt19937_64 rng(7);
    for (int trial = 0 ; trial < 100 ; ++trial) {
        auto t = oracle::random_tree(rng, 1 + rng() % 12, 3);
        CHECK(canonical_code(oracle::random_relabelling(rng, t)) == canonical_code(t));
    }
}

TEST_CASE("based and unbased comparison of the shell and the star")
{
    auto shell = toric_shell(), star = hopf_star();
    CHECK(canonical_code(shell) != canonical_code(star));
    CHECK_FALSE(are_isomorphic(shell, star));
    CHECK(unbased_canonical_code(shell) == unbased_canonical_code(star));
}

TEST_CASE("edge labels matter")
{
    auto a = tree_from_json(nlohmann::json::parse(R"({"parents":[null,0],"labels":[null,1]})"));
    auto b = tree_from_json(nlohmann::json::parse(R"({"parents":[null,0],"labels":[null,2]})"));
    CHECK_FALSE(are_isomorphic(a, b));
}

TEST_CASE("depth and children")
{
    auto shell = toric_shell();
    CHECK(depth(shell, 0) == 0);
    CHECK(depth(shell, 2) == 2);
    CHECK(shell.children(0) == vector<NodeId>{ 1 });
    CHECK(shell.neighbours(1).size() == 2);
    CHECK_THROWS_AS(shell.check_node(3), PreconditionError);
}

TEST_CASE("subdivision counts")
{
    std::mt19937_64 rng(1);
    for (int trial = 0 ; trial < 50 ; ++trial) {
        auto t = oracle::random_tree(rng, 1 + rng() % 9, 2);
        auto sd = subdivision(t);
        CHECK(sd.node_count == 2 * t.node_count() - 1);
        CHECK(sd.arrows.size() == 2 * t.edge_count());
        auto as_tree = sd.as_tree();
        CHECK(as_tree.node_count() == sd.node_count);
        for (NodeId c = 1 ; c < t.node_count() ; ++c) {
            auto b = sd.barycenter_of(c);
            CHECK(b >= t.node_count());
            CHECK(std::count(sd.arrows.begin(), sd.arrows.end(), std::pair<NodeId, NodeId>{ b, c }) == 1);
            CHECK(std::count(sd.arrows.begin(), sd.arrows.end(), std::pair<NodeId, NodeId>{ b, *t.parent(c) }) == 1);
        }
    }
}

TEST_CASE("join arithmetic")
{
    std::mt19937_64 rng(4);
    for (int trial = 0 ; trial < 50 ; ++trial) {
        auto a = oracle::random_tree(rng, 1 + rng() % 6, 2), b = oracle::random_tree(rng, 1 + rng() % 6, 2);
        auto at = rng() % a.node_count();
        auto j = join(a, at, b);
        CHECK(j.node_count() == a.node_count() + b.node_count() - 1);
        CHECK(j.edge_count() == a.edge_count() + b.edge_count());
    }
    auto single = BasedTree();
    CHECK(are_isomorphic(join(toric_shell(), 2, single), toric_shell()));
    // joining a single edge at the base of another single edge makes the star
    auto edge = tree_from_json(nlohmann::json::parse(R"({"parents":[null,0],"labels":[null,1]})"));
    CHECK(are_isomorphic(join(edge, 0, edge), hopf_star()));
    CHECK(are_isomorphic(join(edge, 1, edge), toric_shell()));
    CHECK_THROWS_AS(join(edge, 5, edge), PreconditionError);
}

TEST_CASE("star decomposition")
{
    auto shell = toric_shell();
    auto pieces = star_decomposition(shell);
    CHECK(pieces.size() == 3);
    size_t edge_mentions = 0;
    for (auto & p : pieces) {
        CHECK(is_star_shaped(p.star));
        edge_mentions += p.edges.size();
    }
    CHECK(edge_mentions == 2 * shell.edge_count());
    CHECK(is_star_shaped(hopf_star()));
    CHECK_FALSE(is_star_shaped(shell));
}

TEST_CASE("JSON round trip and validation")
{
    std::mt19937_64 rng(12);
    for (int trial = 0 ; trial < 30 ; ++trial) {
        auto t = oracle::random_tree(rng, 1 + rng() % 10, 3);
        auto back = tree_from_json(tree_to_json(t));
        CHECK(canonical_code(back) == canonical_code(t));
        CHECK(tree_to_json(back) == tree_to_json(t));
    }
    CHECK_THROWS(tree_from_json(nlohmann::json::parse(R"({"parents":[0],"labels":[null]})")));
    CHECK_THROWS(tree_from_json(nlohmann::json::parse(R"({"parents":[null,2,1],"labels":[null,1,1]})")));
    CHECK_THROWS(tree_from_json(nlohmann::json::parse(R"({"parents":[null,0],"labels":[null,-1]})")));
}
