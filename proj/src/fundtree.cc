/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ftree/fundtree.hh>
#include <ftree/errors.hh>

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

using std::map;
using std::size_t;
using std::string;
using std::vector;

using nlohmann::json;

namespace ftree
{
    auto HandlebodyLink::component(int id) const -> const PeripheralComponent &
    {
        for (auto & c : components)
            if (c.id == id)
                return c;
        throw PreconditionError("unknown component id " + std::to_string(id));
    }

    auto check_link(const HandlebodyLink & link) -> void
    {
        if (! link.ambient)
            throw PreconditionError("link has no ambient presentation");
        std::set<int> ids;
        for (auto & c : link.components) {
            if (! ids.insert(c.id).second)
                throw PreconditionError("duplicate component id " + std::to_string(c.id));
            if (c.genus < 0)
                throw PreconditionError("negative genus on component " + std::to_string(c.id));
            if (c.genus >= 1 && c.meridians.empty())
                throw PreconditionError("component " + std::to_string(c.id) + " has positive genus but no meridians");
            for (auto & w : c.meridians)
                link.ambient->check_word(w);
            for (auto & w : c.longitudes)
                link.ambient->check_word(w);
        }
    }

    auto link_from_diagram(const DiagramCode & d, bool simplify_presentation) -> HandlebodyLink
    {
        auto w = wirtinger(d);
        HandlebodyLink link;
        link.name = d.name;
        vector<Word> images;
        if (simplify_presentation) {
            auto s = simplify_with_map(w.presentation);
            link.ambient = std::make_shared<const Presentation>(std::move(s.presentation));
            images = std::move(s.generator_images);
        }
        else
            link.ambient = std::make_shared<const Presentation>(w.presentation);

        auto rewrite = [&] (const Word & x) { return images.empty() ? x : x.substitute(images); };
        int id = 0;
        for (auto & cp : w.periphery.components) {
            PeripheralComponent c;
            c.id = ++id;
            c.genus = cp.genus;
            c.label = cp.name;
            for (auto & m : cp.meridians)
                c.meridians.push_back(rewrite(m));
            for (auto & l : cp.longitudes)
                c.longitudes.push_back(rewrite(l));
            link.components.push_back(std::move(c));
        }
        check_link(link);
        return link;
    }

    auto link_to_json(const HandlebodyLink & link) -> json
    {
        json comps = json::array();
        for (auto & c : link.components) {
            json ms = json::array(), ls = json::array();
            for (auto & m : c.meridians)
                ms.push_back(word_to_json(m));
            for (auto & l : c.longitudes)
                ls.push_back(word_to_json(l));
            comps.push_back(json{ { "id", c.id }, { "genus", c.genus }, { "meridians", ms }, { "longitudes", ls }, { "label", c.label } });
        }
        json j{ { "ambient", presentation_to_json(*link.ambient) }, { "components", comps } };
        if (! link.name.empty())
            j["name"] = link.name;
        return j;
    }

    auto link_from_json(const json & j) -> HandlebodyLink
    {
        if (! j.is_object() || ! j.contains("ambient") || ! j.contains("components") || ! j.at("components").is_array())
            throw ParseError("link JSON needs \"ambient\" and a \"components\" array");
        HandlebodyLink link;
        link.ambient = std::make_shared<const Presentation>(presentation_from_json(j.at("ambient")));
        link.name = j.value("name", string{});
        auto n = link.ambient->generator_count();
        int next_id = 0;
        for (auto & jc : j.at("components")) {
            if (! jc.is_object())
                throw ParseError("each component must be an object");
            PeripheralComponent c;
            c.id = jc.contains("id") ? jc.at("id").get<int>() : next_id + 1;
            next_id = c.id;
            if (! jc.contains("genus") || ! jc.at("genus").is_number_integer())
                throw ParseError("component " + std::to_string(c.id) + " needs an integer \"genus\"");
            c.genus = jc.at("genus").get<int>();
            c.label = jc.value("label", "c" + std::to_string(c.id));
            for (auto & w : jc.value("meridians", json::array()))
                c.meridians.push_back(word_from_json(w, n));
            for (auto & w : jc.value("longitudes", json::array()))
                c.longitudes.push_back(word_from_json(w, n));
            link.components.push_back(std::move(c));
        }
        check_link(link);
        return link;
    }

    auto load_link(const string & path) -> HandlebodyLink
    {
        std::ifstream in(path);
        if (! in)
            throw PreconditionError("cannot read '" + path + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        string text = buffer.str();
        auto first = text.find_first_not_of(" \t\r\n");
        if (first != string::npos && text[first] == '{') {
            json j;
            try {
                j = json::parse(text);
            }
            catch (const json::parse_error & e) {
                throw ParseError(string("invalid JSON: ") + e.what());
            }
            auto link = link_from_json(j);
            if (link.name.empty())
                link.name = path;
            return link;
        }
        auto link = link_from_diagram(parse_diagram(text));
        if (link.name.empty())
            link.name = path;
        return link;
    }

    auto peripheral_image(const Homomorphism & h, const PeripheralComponent & c) -> Subgroup
    {
        vector<ElementId> seed;
        for (auto & m : c.meridians)
            seed.push_back(h.evaluate(m));
        for (auto & l : c.longitudes)
            seed.push_back(h.evaluate(l));
        return subgroup_closure(h.target, seed);
    }

    auto kernel_image(const Homomorphism & h, const PeripheralComponent & c) -> Subgroup
    {
        vector<ElementId> seed;
        for (auto & m : c.meridians)
            seed.push_back(h.evaluate(m));
        return normal_closure_within(h.target, seed, peripheral_image(h, c));
    }

    auto is_proper(const Homomorphism & h, const HandlebodyLink & link, const vector<int> & components) -> bool
    {
        if (components.empty())
            throw PreconditionError("select at least one component");
        for (auto id : components)
            link.component(id);
        if (! is_surjective(h))
            return false;
        for (auto id : components)
            if (peripheral_image(h, link.component(id)).is_whole_group())
                return false;
        return true;
    }

    auto link_orbits(const HandlebodyLink & link, const GroupPtr & g, OrbitMode mode, const SearchOptions & options) -> vector<HomOrbit>
    {
        auto homs = enumerate_homomorphisms(link.ambient, g, options);
        return classify(homs, *g, mode);
    }

    auto g_image(const HandlebodyLink & link, const vector<HomOrbit> & orbits, const GroupPtr & g,
            const vector<int> & components, OrbitMode mode) -> GImageReport
    {
        if (components.empty())
            throw PreconditionError("select at least one component");
        GImageReport r;
        r.link_name = link.name;
        r.group_name = g->name();
        r.mode = mode;
        r.components = components;
        for (auto id : components)
            r.component_labels.push_back(link.component(id).label);
        r.orbit_count = orbits.size();

        map<std::pair<vector<IsoClassLabel>, vector<IsoClassLabel>>, GImageEntry> entries;
        for (auto & orbit : orbits) {
            auto & h = orbit.representative;
            if (! is_surjective(h))
                continue;
            GImageEntry e;
            bool proper = true;
            for (auto id : components) {
                auto & c = link.component(id);
                auto p = peripheral_image(h, c);
                if (p.is_whole_group()) {
                    proper = false;
                    break;
                }
                auto k = normal_closure_within(g, [&] {
                        vector<ElementId> seed;
                        for (auto & m : c.meridians)
                            seed.push_back(h.evaluate(m));
                        return seed;
                        }(), p);
                e.peripheral.push_back(iso_class(p));
                e.peripheral_order.push_back(p.order());
                e.kernel.push_back(iso_class(k));
                e.kernel_order.push_back(k.order());
            }
            if (! proper)
                continue;
            ++r.proper_count;
            auto key = std::make_pair(e.peripheral, e.kernel);
            auto [it, fresh] = entries.try_emplace(key, std::move(e));
            ++it->second.multiplicity;
        }
        for (auto & [_, e] : entries)
            r.entries.push_back(std::move(e));
        return r;
    }

    auto g_image(const HandlebodyLink & link, const GroupPtr & g, const vector<int> & components,
            OrbitMode mode, const SearchOptions & options) -> GImageReport
    {
        return g_image(link, link_orbits(link, g, mode, options), g, components, mode);
    }

    namespace
    {
        /// Classes by decreasing order, then label.
        struct ClassKey
        {
            std::uint32_t order;
            IsoClassLabel label;

            auto operator< (const ClassKey & o) const -> bool
            {
                return order != o.order ? order > o.order : label < o.label;
            }
        };

        auto join_labels(const vector<IsoClassLabel> & labels) -> string
        {
            string out = "(";
            for (size_t i = 0 ; i < labels.size() ; ++i)
                out += (i ? ", " : "") + labels[i];
            return out + ")";
        }
    }

    auto format_g_image_table(const GImageReport & r) -> string
    {
        std::ostringstream out;
        string labels;
        for (size_t i = 0 ; i < r.component_labels.size() ; ++i)
            labels += (i ? ", " : "") + r.component_labels[i];
        out << "link: " << (r.link_name.empty() ? "-" : r.link_name) << "\n";
        out << "group: " << r.group_name << ", up to " << orbit_mode_name(r.mode) << "\n";
        out << "components: " << labels << "\n";
        out << "orbits: " << r.orbit_count << "\n";
        out << "proper orbits: " << r.proper_count << "\n";

        if (r.components.size() == 1) {
            map<ClassKey, std::pair<size_t, map<ClassKey, size_t>>> columns;
            for (auto & e : r.entries) {
                auto & col = columns[ClassKey{ e.peripheral_order[0], e.peripheral[0] }];
                col.first += e.multiplicity;
                col.second[ClassKey{ e.kernel_order[0], e.kernel[0] }] += e.multiplicity;
            }
            out << "image of pi1(" << labels << ") -> H\n";
            for (auto & [p, col] : columns) {
                out << "  " << p.label << ": " << col.first << " ->";
                bool first = true;
                for (auto & [k, count] : col.second) {
                    out << (first ? " " : ", ") << k.label << ": " << count;
                    first = false;
                }
                out << "\n";
            }
        }
        else {
            map<vector<IsoClassLabel>, size_t> tuples;
            for (auto & e : r.entries)
                tuples[e.kernel] += e.multiplicity;
            out << "H tuples:\n";
            for (auto & [t, count] : tuples)
                out << "  " << join_labels(t) << ": " << count << "\n";
        }
        return out.str();
    }

    auto g_image_to_json(const GImageReport & r) -> json
    {
        json entries = json::array();
        for (auto & e : r.entries)
            entries.push_back(json{ { "peripheral", e.peripheral }, { "kernel", e.kernel }, { "multiplicity", e.multiplicity } });
        return json{
            { "link", r.link_name },
            { "group", r.group_name },
            { "mode", orbit_mode_name(r.mode) },
            { "components", r.components },
            { "component_labels", r.component_labels },
            { "orbits", r.orbit_count },
            { "proper_orbits", r.proper_count },
            { "entries", entries }
        };
    }

    auto k_fold_g_images(const HandlebodyLink & link, const GroupPtr & g, size_t fold, OrbitMode mode,
            const SearchOptions & options) -> LinkGImages
    {
        size_t n = link.components.size();
        if (fold == 0 || fold > n)
            throw PreconditionError("fold must be between 1 and the number of components");
        LinkGImages result;
        result.link_name = link.name;
        result.fold = fold;
        for (auto & c : link.components)
            result.component_ids.push_back(c.id);

        auto orbits = link_orbits(link, g, mode, options);
        // k-subsets in lexicographic order of positions
        vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(fold), true);
        do {
            vector<int> ids;
            for (size_t i = 0 ; i < n ; ++i)
                if (pick[i])
                    ids.push_back(result.component_ids[i]);
            result.reports.push_back(g_image(link, orbits, g, ids, mode));
        } while (std::prev_permutation(pick.begin(), pick.end()));
        return result;
    }

    auto verdict_name(Verdict v) -> string
    {
        return v == Verdict::distinguished ? "distinguished" : "indistinguishable-at-this-invariant";
    }

    namespace
    {
        using TupleMultiset = map<vector<IsoClassLabel>, size_t>;

        /// Kernel tuples with positions permuted: entry i of the result is entry perm[i] of the original.
        auto tuples_of(const GImageReport & r, const vector<size_t> & perm) -> TupleMultiset
        {
            TupleMultiset m;
            for (auto & e : r.entries) {
                vector<IsoClassLabel> t;
                for (auto p : perm)
                    t.push_back(e.kernel.at(p));
                m[t] += e.multiplicity;
            }
            return m;
        }
    }

    auto compare_g_images(const GImageReport & a, const GImageReport & b) -> Verdict
    {
        if (a.components.size() != b.components.size())
            return Verdict::distinguished;
        vector<size_t> identity(b.components.size());
        std::iota(identity.begin(), identity.end(), size_t{ 0 });
        auto target = tuples_of(b, identity);
        vector<size_t> perm = identity;
        do {
            if (tuples_of(a, perm) == target)
                return Verdict::indistinguishable;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return Verdict::distinguished;
    }

    auto compare_g_images(const LinkGImages & a, const LinkGImages & b) -> Verdict
    {
        size_t n = a.component_ids.size();
        if (n != b.component_ids.size() || a.fold != b.fold || a.reports.size() != b.reports.size())
            return Verdict::distinguished;

        auto position = [] (const vector<int> & ids, int id) {
            return static_cast<size_t>(std::find(ids.begin(), ids.end(), id) - ids.begin());
        };

        // sigma maps positions of a's components to positions of b's
        vector<size_t> sigma(n);
        std::iota(sigma.begin(), sigma.end(), size_t{ 0 });
        do {
            bool all_match = true;
            for (auto & ra : a.reports) {
                vector<size_t> image;
                for (auto id : ra.components)
                    image.push_back(sigma[position(a.component_ids, id)]);
                vector<int> b_ids;
                for (auto p : image)
                    b_ids.push_back(b.component_ids[p]);
                auto sorted_ids = b_ids;
                std::sort(sorted_ids.begin(), sorted_ids.end(), [&] (int x, int y) {
                        return position(b.component_ids, x) < position(b.component_ids, y);
                        });
                auto rb = std::find_if(b.reports.begin(), b.reports.end(), [&] (const GImageReport & r) { return r.components == sorted_ids; });
                if (rb == b.reports.end()) {
                    all_match = false;
                    break;
                }
                // entry i of a's tuple corresponds to the position of b_ids[i] within rb
                vector<size_t> perm;
                for (auto id : b_ids)
                    perm.push_back(position(rb->components, id));
                TupleMultiset from_a;
                for (auto & e : ra.entries) {
                    vector<IsoClassLabel> t(e.kernel.size());
                    for (size_t i = 0 ; i < perm.size() ; ++i)
                        t[perm[i]] = e.kernel[i];
                    from_a[t] += e.multiplicity;
                }
                vector<size_t> identity(rb->components.size());
                std::iota(identity.begin(), identity.end(), size_t{ 0 });
                if (from_a != tuples_of(*rb, identity)) {
                    all_match = false;
                    break;
                }
            }
            if (all_match)
                return Verdict::indistinguishable;
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        return Verdict::distinguished;
    }

    auto check_fund_tree(const FundTree & t) -> void
    {
        size_t n = t.shape.node_count();
        if (t.node_groups.size() != n || t.edges.size() != n)
            throw PreconditionError("fundamental tree needs one group per node and one edge per non-base node");
        if (t.edges[0])
            throw PreconditionError("the base node has no edge to a parent");
        for (NodeId c = 1 ; c < n ; ++c) {
            if (! t.edges[c])
                throw PreconditionError("missing edge data for node " + std::to_string(c));
            auto & e = *t.edges[c];
            if (e.genus != t.shape.label(c))
                throw PreconditionError("edge genus disagrees with the tree label at node " + std::to_string(c));
            auto gens = static_cast<size_t>(2 * e.genus);
            if (e.to_parent.size() != gens || e.to_child.size() != gens)
                throw PreconditionError("edge maps need 2g generator images at node " + std::to_string(c));
            if (! e.pairing.is_skew_symmetric() || ! e.pairing.is_unimodular() || e.pairing.matrix.rows() != gens)
                throw PreconditionError("edge pairing must be a unimodular skew form of rank 2g");
            for (auto & w : e.to_parent)
                t.node_groups[*t.shape.parent(c)].check_word(w);
            for (auto & w : e.to_child)
                t.node_groups[c].check_word(w);
        }
    }

    auto link_to_fundtree(const HandlebodyLink & link, const vector<Presentation> & handlebody_groups) -> FundTree
    {
        check_link(link);
        if (! handlebody_groups.empty() && handlebody_groups.size() != link.components.size())
            throw PreconditionError("need one handlebody group per component");

        FundTree t;
        vector<std::optional<NodeId>> parent{ std::nullopt };
        vector<int> labels{ 0 };
        t.node_groups.push_back(*link.ambient);
        t.edges.emplace_back();
        for (size_t i = 0 ; i < link.components.size() ; ++i) {
            auto & c = link.components[i];
            auto g = static_cast<size_t>(c.genus);
            auto leaf = handlebody_groups.empty() ? free_group(static_cast<std::uint32_t>(g)) : handlebody_groups[i];
            if (leaf.generator_count() != g)
                throw PreconditionError("handlebody group of component " + std::to_string(c.id) + " must have rank equal to its genus");
            if (c.longitudes.size() != g || c.meridians.size() < g)
                throw PreconditionError("component " + std::to_string(c.id) + " needs g meridians and g longitudes");
            FundEdge e;
            e.genus = c.genus;
            e.pairing = standard_symplectic(c.genus);
            for (size_t j = 0 ; j < g ; ++j) {
                e.to_parent.push_back(c.meridians[j]);
                e.to_parent.push_back(c.longitudes[j]);
                e.to_child.push_back(Word{});
                e.to_child.push_back(Word::generator(static_cast<std::uint32_t>(j)));
            }
            parent.push_back(0);
            labels.push_back(c.genus);
            t.node_groups.push_back(std::move(leaf));
            t.edges.push_back(std::move(e));
        }
        t.shape = BasedTree(std::move(parent), std::move(labels));
        check_fund_tree(t);
        return t;
    }

    auto graft_fundtree(const FundTree & t1, NodeId at, const FundTree & t2) -> FundTree
    {
        t1.shape.check_node(at);
        check_fund_tree(t1);
        check_fund_tree(t2);
        auto fp = free_product(t1.node_groups[at], t2.node_groups[0]);

        FundTree t;
        t.shape = join(t1.shape, at, t2.shape);
        t.node_groups = t1.node_groups;
        t.node_groups[at] = fp.product;
        t.edges = t1.edges;

        auto shift = [] (const vector<Word> & ws, std::uint32_t offset) {
            vector<Word> out;
            for (auto & w : ws)
                out.push_back(w.shifted(offset));
            return out;
        };

        for (NodeId c = 1 ; c < t1.shape.node_count() ; ++c) {
            auto & e = *t.edges[c];
            if (*t1.shape.parent(c) == at)
                e.to_parent = shift(e.to_parent, fp.left_offset);
            if (c == at)
                e.to_child = shift(e.to_child, fp.left_offset);
        }
        for (NodeId c = 1 ; c < t2.shape.node_count() ; ++c) {
            t.node_groups.push_back(t2.node_groups[c]);
            auto e = *t2.edges[c];
            if (*t2.shape.parent(c) == 0)
                e.to_parent = shift(e.to_parent, fp.right_offset);
            t.edges.push_back(std::move(e));
        }
        check_fund_tree(t);
        return t;
    }

    namespace
    {
        auto encode_fund(const FundTree & t, const vector<vector<NodeId>> & children, const vector<string> & node_codes, NodeId n) -> string
        {
            vector<string> parts;
            for (auto c : children[n])
                parts.push_back(std::to_string(t.shape.label(c)) + encode_fund(t, children, node_codes, c));
            std::sort(parts.begin(), parts.end());
            string out = "[" + node_codes[n] + "](";
            for (auto & p : parts)
                out += p;
            return out + ")";
        }
    }

    auto fundtree_fingerprint(const FundTree & t) -> string
    {
        check_fund_tree(t);
        size_t n = t.shape.node_count();
        vector<vector<NodeId>> children(n);
        for (NodeId c = 1 ; c < n ; ++c)
            children[*t.shape.parent(c)].push_back(c);
        vector<string> node_codes;
        for (auto & p : t.node_groups)
            node_codes.push_back(abelian_invariants(p).to_string());
        return encode_fund(t, children, node_codes, 0);
    }
}
