/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ftree/trees.hh>
#include <ftree/errors.hh>

#include <algorithm>

using std::nullopt;
using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace ftree
{
    BasedTree::BasedTree() :
        _parent{ nullopt },
        _label{ 0 },
        _payload{ nullopt }
    {
    }

    BasedTree::BasedTree(vector<optional<NodeId>> parent, vector<int> labels, vector<optional<int>> payload) :
        _parent(std::move(parent)),
        _label(std::move(labels)),
        _payload(std::move(payload))
    {
        if (_parent.empty())
            throw PreconditionError("a based tree needs at least the base node");
        if (_label.size() != _parent.size())
            throw PreconditionError("labels and parents differ in length");
        if (_payload.empty())
            _payload.assign(_parent.size(), nullopt);
        if (_payload.size() != _parent.size())
            throw PreconditionError("payloads and parents differ in length");
        if (_parent[0])
            throw PreconditionError("the base node 0 has no parent");
        _label[0] = 0;
        for (size_t i = 1 ; i < _parent.size() ; ++i) {
            if (! _parent[i] || *_parent[i] >= _parent.size() || *_parent[i] == i)
                throw PreconditionError("node " + std::to_string(i) + " has an invalid parent");
            if (_label[i] < 0)
                throw PreconditionError("edge labels must be non-negative");
        }
        // every node must reach the base
        vector<int> state(_parent.size(), 0);
        state[0] = 2;
        for (size_t i = 1 ; i < _parent.size() ; ++i) {
            vector<size_t> path;
            size_t x = i;
            while (state[x] == 0) {
                state[x] = 1;
                path.push_back(x);
                x = *_parent[x];
            }
            if (state[x] == 1)
                throw PreconditionError("parent pointers contain a cycle");
            for (auto p : path)
                state[p] = 2;
        }
    }

    auto BasedTree::children(NodeId n) const -> vector<NodeId>
    {
        check_node(n);
        vector<NodeId> c;
        for (size_t i = 1 ; i < _parent.size() ; ++i)
            if (*_parent[i] == n)
                c.push_back(i);
        return c;
    }

    auto BasedTree::neighbours(NodeId n) const -> vector<NodeId>
    {
        auto c = children(n);
        if (_parent[n])
            c.insert(c.begin(), *_parent[n]);
        return c;
    }

    auto BasedTree::check_node(NodeId n) const -> void
    {
        if (n >= _parent.size())
            throw PreconditionError("node " + std::to_string(n) + " is not in the tree");
    }

    auto depth(const BasedTree & t, NodeId n) -> size_t
    {
        t.check_node(n);
        size_t d = 0;
        while (auto p = t.parent(n)) {
            n = *p;
            ++d;
        }
        return d;
    }

    namespace
    {
        auto encode(const BasedTree & t, const vector<vector<NodeId>> & children, NodeId n) -> string
        {
            vector<string> parts;
            for (auto c : children[n])
                parts.push_back(std::to_string(t.label(c)) + encode(t, children, c));
            std::sort(parts.begin(), parts.end());
            string out = "(";
            for (auto & p : parts)
                out += p;
            return out + ")";
        }
    }

    auto canonical_code(const BasedTree & t) -> CanonicalCode
    {
        vector<vector<NodeId>> children(t.node_count());
        for (size_t i = 1 ; i < t.node_count() ; ++i)
            children[*t.parent(i)].push_back(i);
        return encode(t, children, 0);
    }

    auto are_isomorphic(const BasedTree & a, const BasedTree & b) -> bool
    {
        return a.node_count() == b.node_count() && canonical_code(a) == canonical_code(b);
    }

    auto rerooted(const BasedTree & t, NodeId new_base) -> BasedTree
    {
        t.check_node(new_base);
        size_t n = t.node_count();
        // adjacency with edge labels
        vector<vector<std::pair<NodeId, int>>> adj(n);
        for (size_t i = 1 ; i < n ; ++i) {
            adj[i].emplace_back(*t.parent(i), t.label(i));
            adj[*t.parent(i)].emplace_back(i, t.label(i));
        }
        // new ids: new_base -> 0, rest in BFS order
        vector<NodeId> id(n, n), order{ new_base };
        vector<optional<NodeId>> parent(n);
        vector<int> labels(n, 0);
        vector<optional<int>> payload(n);
        id[new_base] = 0;
        for (size_t i = 0 ; i < order.size() ; ++i) {
            auto x = order[i];
            payload[id[x]] = t.payload(x);
            for (auto [y, l] : adj[x])
                if (id[y] == n) {
                    id[y] = order.size();
                    order.push_back(y);
                    parent[id[y]] = id[x];
                    labels[id[y]] = l;
                }
        }
        return BasedTree(std::move(parent), std::move(labels), std::move(payload));
    }

    auto unbased_canonical_code(const BasedTree & t) -> CanonicalCode
    {
        CanonicalCode best;
        for (NodeId b = 0 ; b < t.node_count() ; ++b) {
            auto c = canonical_code(rerooted(t, b));
            if (b == 0 || c < best)
                best = std::move(c);
        }
        return best;
    }

    auto relabelled(const BasedTree & t, const vector<NodeId> & perm) -> BasedTree
    {
        size_t n = t.node_count();
        if (perm.size() != n || perm[0] != 0)
            throw PreconditionError("relabelling must fix the base");
        vector<optional<NodeId>> parent(n);
        vector<int> labels(n, 0);
        vector<optional<int>> payload(n);
        for (size_t i = 0 ; i < n ; ++i) {
            if (i > 0)
                parent[perm[i]] = perm[*t.parent(i)];
            labels[perm[i]] = t.label(i);
            payload[perm[i]] = t.payload(i);
        }
        return BasedTree(std::move(parent), std::move(labels), std::move(payload));
    }

    auto BaryDiagram::barycenter_of(NodeId child) const -> NodeId
    {
        if (child == 0 || child >= original.node_count())
            throw PreconditionError("edges are identified by their non-base child node");
        return original.node_count() + child - 1;
    }

    auto BaryDiagram::as_tree() const -> BasedTree
    {
        size_t n = original.node_count();
        vector<optional<NodeId>> parent(node_count);
        vector<int> labels(node_count, 0);
        for (size_t c = 1 ; c < n ; ++c) {
            auto b = barycenter_of(c);
            parent[b] = *original.parent(c);
            labels[b] = original.label(c);
            parent[c] = b;
            labels[c] = 0;
        }
        return BasedTree(std::move(parent), std::move(labels));
    }

    auto subdivision(const BasedTree & t) -> BaryDiagram
    {
        BaryDiagram d;
        d.original = t;
        d.node_count = t.node_count() + t.edge_count();
        for (size_t c = 1 ; c < t.node_count() ; ++c) {
            auto b = d.barycenter_of(c);
            d.arrows.emplace_back(b, *t.parent(c));
            d.arrows.emplace_back(b, c);
        }
        return d;
    }

    auto join(const BasedTree & t1, NodeId at, const BasedTree & t2) -> BasedTree
    {
        t1.check_node(at);
        size_t n1 = t1.node_count(), n2 = t2.node_count();
        vector<optional<NodeId>> parent;
        vector<int> labels;
        vector<optional<int>> payload;
        for (size_t i = 0 ; i < n1 ; ++i) {
            parent.push_back(t1.parent(i));
            labels.push_back(t1.label(i));
            payload.push_back(t1.payload(i));
        }
        auto map = [&] (NodeId x) -> NodeId { return x == 0 ? at : n1 + x - 1; };
        for (size_t i = 1 ; i < n2 ; ++i) {
            parent.push_back(map(*t2.parent(i)));
            labels.push_back(t2.label(i));
            payload.push_back(t2.payload(i));
        }
        return BasedTree(std::move(parent), std::move(labels), std::move(payload));
    }

    auto star_decomposition(const BasedTree & t) -> vector<StarPiece>
    {
        vector<StarPiece> result;
        for (NodeId v = 0 ; v < t.node_count() ; ++v) {
            vector<optional<NodeId>> parent{ nullopt };
            vector<int> labels{ 0 };
            vector<NodeId> edges;
            if (auto p = t.parent(v)) {
                parent.push_back(0);
                labels.push_back(t.label(v));
                edges.push_back(v);
            }
            for (auto c : t.children(v)) {
                parent.push_back(0);
                labels.push_back(t.label(c));
                edges.push_back(c);
            }
            result.push_back(StarPiece{ v, BasedTree(std::move(parent), std::move(labels)), std::move(edges) });
        }
        return result;
    }

    auto is_star_shaped(const BasedTree & t) -> bool
    {
        for (size_t i = 1 ; i < t.node_count() ; ++i)
            if (*t.parent(i) != 0)
                return false;
        return true;
    }

    auto tree_to_json(const BasedTree & t) -> nlohmann::json
    {
        nlohmann::json parents = nlohmann::json::array(), labels = nlohmann::json::array();
        for (size_t i = 0 ; i < t.node_count() ; ++i) {
            if (i == 0) {
                parents.push_back(nullptr);
                labels.push_back(nullptr);
            }
            else {
                parents.push_back(*t.parent(i));
                labels.push_back(t.label(i));
            }
        }
        return nlohmann::json{ { "parents", parents }, { "labels", labels } };
    }

    auto tree_from_json(const nlohmann::json & j) -> BasedTree
    {
        if (! j.is_object() || ! j.contains("parents"))
            throw ParseError("tree JSON needs a \"parents\" array");
        auto & ps = j.at("parents");
        if (! ps.is_array() || ps.empty())
            throw ParseError("\"parents\" must be a non-empty array");
        vector<optional<NodeId>> parent;
        vector<int> labels;
        for (size_t i = 0 ; i < ps.size() ; ++i) {
            if (ps[i].is_null())
                parent.push_back(nullopt);
            else if (ps[i].is_number_integer() && ps[i].get<long>() >= 0)
                parent.push_back(ps[i].get<NodeId>());
            else
                throw ParseError("parent entries must be null or non-negative integers");
            labels.push_back(0);
        }
        if (j.contains("labels")) {
            auto & ls = j.at("labels");
            if (! ls.is_array() || ls.size() != ps.size())
                throw ParseError("\"labels\" must match \"parents\" in length");
            for (size_t i = 0 ; i < ls.size() ; ++i)
                if (! ls[i].is_null())
                    labels[i] = ls[i].get<int>();
        }
        return BasedTree(std::move(parent), std::move(labels));
    }
}
