/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef FTREE_GUARD_TREES_HH
#define FTREE_GUARD_TREES_HH 1

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace ftree
{
    using NodeId = std::size_t;

    /// A rooted tree whose root (node 0) is the base. Each non-base node
    /// carries the label of the edge to its parent (a genus, >= 0).
    class BasedTree
    {
        private:
            std::vector<std::optional<NodeId>> _parent;
            std::vector<int> _label;
            std::vector<std::optional<int>> _payload;

        public:
            /// A single base node.
            BasedTree();

            /// parent[0] must be empty and every other entry present; labels[0] is ignored.
            BasedTree(std::vector<std::optional<NodeId>> parent, std::vector<int> labels,
                    std::vector<std::optional<int>> payload = {});

            auto node_count() const -> std::size_t { return _parent.size(); }
            auto edge_count() const -> std::size_t { return _parent.size() - 1; }
            auto parent(NodeId n) const -> std::optional<NodeId> { return _parent.at(n); }
            auto label(NodeId n) const -> int { return _label.at(n); }
            auto payload(NodeId n) const -> std::optional<int> { return _payload.at(n); }
            auto children(NodeId n) const -> std::vector<NodeId>;
            auto neighbours(NodeId n) const -> std::vector<NodeId>;

            auto check_node(NodeId n) const -> void;
    };

    /// Number of edges between n and the base.
    auto depth(const BasedTree & t, NodeId n) -> std::size_t;

    using CanonicalCode = std::string;

    /// Sorted recursive encoding of the tree with edge labels; equal codes iff
    /// the based labelled trees are isomorphic. Payloads are ignored.
    auto canonical_code(const BasedTree & t) -> CanonicalCode;

    auto are_isomorphic(const BasedTree & a, const BasedTree & b) -> bool;

    /// The same tree based at another node.
    auto rerooted(const BasedTree & t, NodeId new_base) -> BasedTree;

    /// Least canonical code over all choices of base node.
    auto unbased_canonical_code(const BasedTree & t) -> CanonicalCode;

    /// Applies a permutation to the non-base node ids (perm[0] must be 0).
    auto relabelled(const BasedTree & t, const std::vector<NodeId> & perm) -> BasedTree;

    /// Barycentric subdivision: one barycenter per edge, with arrows from
    /// the barycenter to both endpoints.
    struct BaryDiagram
    {
        BasedTree original;
        std::size_t node_count = 0; ///< original nodes, then one barycenter per edge
        std::vector<std::pair<NodeId, NodeId>> arrows; ///< (barycenter, endpoint)

        auto barycenter_of(NodeId child) const -> NodeId;

        /// As a based tree: barycenters become nodes; the edge into a barycenter
        /// carries the genus, the edge out of it label 0.
        auto as_tree() const -> BasedTree;
    };

    auto subdivision(const BasedTree & t) -> BaryDiagram;

    /// Identify t2's base with node `at` of t1. t2's other nodes follow t1's.
    auto join(const BasedTree & t1, NodeId at, const BasedTree & t2) -> BasedTree;

    struct StarPiece
    {
        NodeId node;
        BasedTree star;              ///< based at `node`, one leaf per incident edge
        std::vector<NodeId> edges;   ///< original edges, identified by their child node
    };

    auto star_decomposition(const BasedTree & t) -> std::vector<StarPiece>;

    auto is_star_shaped(const BasedTree & t) -> bool;

    /// {"parents":[null,0,1],"labels":[null,1,2]}
    auto tree_to_json(const BasedTree & t) -> nlohmann::json;
    auto tree_from_json(const nlohmann::json & j) -> BasedTree;
}

#endif
