/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ftree/diagram.hh>
#include <ftree/errors.hh>

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

using std::map;
using std::optional;
using std::size_t;
using std::string;
using std::string_view;
using std::vector;

namespace ftree
{
    namespace
    {
        struct Token
        {
            string text;
            int column;
        };

        auto tokenize(string_view s, int first_column) -> vector<Token>
        {
            vector<Token> out;
            size_t i = 0;
            while (i < s.size()) {
                if (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',') {
                    ++i;
                    continue;
                }
                size_t j = i;
                while (j < s.size() && ! std::isspace(static_cast<unsigned char>(s[j])) && s[j] != ',')
                    ++j;
                out.push_back(Token{ string(s.substr(i, j - i)), first_column + static_cast<int>(i) });
                i = j;
            }
            return out;
        }

        auto valid_arc_name(const string & s) -> bool
        {
            if (s.empty() || ! std::islower(static_cast<unsigned char>(s[0])))
                return false;
            return std::all_of(s.begin(), s.end(), [] (char c) {
                    return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_';
                    });
        }

        struct UnionFind
        {
            vector<size_t> parent;
            explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), size_t{ 0 }); }
            auto find(size_t x) -> size_t { return parent[x] == x ? x : parent[x] = find(parent[x]); }
            auto unite(size_t a, size_t b) -> void { parent[find(a)] = find(b); }
        };

        /// Where an arc's head lies: a crossing it passes under, or a vertex.
        struct ArcEnds
        {
            vector<optional<size_t>> head_crossing, head_vertex, tail_crossing, tail_vertex;
        };

        auto arc_ends(const DiagramCode & d) -> ArcEnds
        {
            size_t m = d.arc_names.size();
            ArcEnds e{ vector<optional<size_t>>(m), vector<optional<size_t>>(m), vector<optional<size_t>>(m), vector<optional<size_t>>(m) };
            for (size_t c = 0 ; c < d.crossings.size() ; ++c) {
                e.head_crossing[d.crossings[c].under_in] = c;
                e.tail_crossing[d.crossings[c].under_out] = c;
            }
            for (size_t v = 0 ; v < d.vertices.size() ; ++v)
                for (auto & end : d.vertices[v].ends)
                    (end.incoming ? e.head_vertex : e.tail_vertex)[end.arc] = v;
            return e;
        }
    }

    auto parse_diagram(string_view text) -> DiagramCode
    {
        DiagramCode d;
        map<string, ArcId> arc_index;
        vector<int> arc_line, arc_column;

        struct PendingCrossing { Token over, in, out, sign; int line; };
        struct PendingVertex { vector<Token> ends; int line; };
        vector<PendingCrossing> pending_crossings;
        vector<PendingVertex> pending_vertices;

        std::istringstream in{ string(text) };
        string raw;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            string line = raw;
            if (auto hash = line.find('#') ; hash != string::npos)
                line = line.substr(0, hash);
            auto colon = line.find(':');
            bool blank = std::all_of(line.begin(), line.end(), [] (char c) { return std::isspace(static_cast<unsigned char>(c)); });
            if (blank)
                continue;
            if (colon == string::npos)
                throw ParseError("expected 'name:', 'component NAME:', 'X:' or 'V:'", line_no, 1);

            auto head_tokens = tokenize(string_view(line).substr(0, colon), 1);
            auto body = tokenize(string_view(line).substr(colon + 1), static_cast<int>(colon) + 2);
            if (head_tokens.empty())
                throw ParseError("missing keyword before ':'", line_no, 1);
            const string & key = head_tokens[0].text;

            if (key == "name") {
                for (auto & t : body)
                    d.name += (d.name.empty() ? "" : " ") + t.text;
            }
            else if (key == "component") {
                if (head_tokens.size() != 2)
                    throw ParseError("expected 'component NAME: arcs...'", line_no, head_tokens[0].column);
                DiagramComponent comp{ head_tokens[1].text, {} };
                bool next_is_loop = false;
                for (auto & t : body) {
                    if (t.text == "loop") {
                        next_is_loop = true;
                        continue;
                    }
                    if (! valid_arc_name(t.text))
                        throw ParseError("invalid arc name '" + t.text + "' (lowercase letters, digits, '_', starting with a letter)",
                                line_no, t.column);
                    if (arc_index.count(t.text))
                        throw ParseError("arc '" + t.text + "' declared twice", line_no, t.column);
                    auto id = static_cast<ArcId>(d.arc_names.size());
                    arc_index[t.text] = id;
                    d.arc_names.push_back(t.text);
                    d.component_of.push_back(d.components.size());
                    d.is_loop.push_back(next_is_loop);
                    arc_line.push_back(line_no);
                    arc_column.push_back(t.column);
                    comp.arcs.push_back(id);
                    next_is_loop = false;
                }
                if (next_is_loop)
                    throw ParseError("'loop' must be followed by an arc name", line_no, body.back().column);
                if (comp.arcs.empty())
                    throw ParseError("component '" + comp.name + "' has no arcs", line_no, head_tokens[0].column);
                d.components.push_back(std::move(comp));
            }
            else if (key == "X") {
                optional<Token> over, under, sign;
                for (auto & t : body) {
                    auto eq = t.text.find('=');
                    if (eq == string::npos)
                        throw ParseError("expected key=value in crossing, got '" + t.text + "'", line_no, t.column);
                    Token value{ t.text.substr(eq + 1), t.column + static_cast<int>(eq) + 1 };
                    auto k = t.text.substr(0, eq);
                    if (k == "o")
                        over = value;
                    else if (k == "u")
                        under = value;
                    else if (k == "s")
                        sign = value;
                    else
                        throw ParseError("unknown crossing field '" + k + "'", line_no, t.column);
                }
                if (! over || ! under || ! sign)
                    throw ParseError("crossing needs o=, u= and s= fields", line_no, 1);
                auto gt = under->text.find('>');
                if (gt == string::npos)
                    throw ParseError("under-strand must be written in>out", line_no, under->column);
                Token u_in{ under->text.substr(0, gt), under->column };
                Token u_out{ under->text.substr(gt + 1), under->column + static_cast<int>(gt) + 1 };
                pending_crossings.push_back(PendingCrossing{ *over, u_in, u_out, *sign, line_no });
            }
            else if (key == "V") {
                pending_vertices.push_back(PendingVertex{ body, line_no });
            }
            else
                throw ParseError("unknown line type '" + key + "'", line_no, head_tokens[0].column);
        }

        auto lookup = [&] (const Token & t, int line) -> ArcId {
            auto it = arc_index.find(t.text);
            if (it == arc_index.end())
                throw ParseError("unknown arc '" + t.text + "'", line, t.column);
            return it->second;
        };

        for (auto & pc : pending_crossings) {
            Crossing c{ lookup(pc.over, pc.line), lookup(pc.in, pc.line), lookup(pc.out, pc.line), 0, pc.line };
            const string & s = pc.sign.text;
            if (s == "+" || s == "+1" || s == "1")
                c.sign = 1;
            else if (s == "-" || s == "-1")
                c.sign = -1;
            else
                throw ParseError("crossing sign must be + or -, got '" + s + "'", pc.line, pc.sign.column);
            d.crossings.push_back(c);
        }

        for (auto & pv : pending_vertices) {
            Vertex v;
            v.line = pv.line;
            for (auto & t : pv.ends) {
                if (t.text.size() < 2 || (t.text.back() != '>' && t.text.back() != '<'))
                    throw ParseError("vertex ends are written 'arc>' (arc ends here) or 'arc<' (arc starts here), got '"
                            + t.text + "'", pv.line, t.column);
                Token name{ t.text.substr(0, t.text.size() - 1), t.column };
                v.ends.push_back(VertexEnd{ lookup(name, pv.line), t.text.back() == '>' });
            }
            if (v.ends.size() != 3)
                throw ParseError("vertex must be trivalent, found " + std::to_string(v.ends.size()) + " ends", pv.line, 1);
            d.vertices.push_back(std::move(v));
        }

        // every arc: exactly one head and one tail, or none for a loop
        size_t m = d.arc_names.size();
        vector<int> heads(m, 0), tails(m, 0);
        vector<int> head_line(m, 0), tail_line(m, 0);
        for (auto & c : d.crossings) {
            ++heads[c.under_in];
            head_line[c.under_in] = c.line;
            ++tails[c.under_out];
            tail_line[c.under_out] = c.line;
        }
        for (auto & v : d.vertices)
            for (auto & e : v.ends) {
                if (e.incoming) {
                    ++heads[e.arc];
                    head_line[e.arc] = v.line;
                }
                else {
                    ++tails[e.arc];
                    tail_line[e.arc] = v.line;
                }
            }
        for (size_t a = 0 ; a < m ; ++a) {
            if (d.is_loop[a]) {
                if (heads[a] || tails[a])
                    throw ParseError("loop arc '" + d.arc_names[a] + "' must not end at a crossing or vertex",
                            std::max(head_line[a], tail_line[a]), 1);
                continue;
            }
            if (heads[a] != 1)
                throw ParseError("arc '" + d.arc_names[a] + "' has " + std::to_string(heads[a]) + " head ends (dangling or doubled arc)",
                        heads[a] ? head_line[a] : arc_line[a], heads[a] ? 1 : arc_column[a]);
            if (tails[a] != 1)
                throw ParseError("arc '" + d.arc_names[a] + "' has " + std::to_string(tails[a]) + " tail ends (dangling or doubled arc)",
                        tails[a] ? tail_line[a] : arc_line[a], tails[a] ? 1 : arc_column[a]);
        }

        // components must be exactly the classes joined by under-strands and vertices
        UnionFind uf(m);
        for (auto & c : d.crossings)
            uf.unite(c.under_in, c.under_out);
        for (auto & v : d.vertices)
            for (auto & e : v.ends)
                uf.unite(e.arc, v.ends[0].arc);
        for (auto & c : d.crossings)
            if (d.component_of[c.under_in] != d.component_of[c.under_out])
                throw ParseError("under-strand joins arcs of different components", c.line, 1);
        for (auto & v : d.vertices)
            for (auto & e : v.ends)
                if (d.component_of[e.arc] != d.component_of[v.ends[0].arc])
                    throw ParseError("vertex joins arcs of different components", v.line, 1);
        for (auto & comp : d.components)
            for (auto a : comp.arcs)
                if (uf.find(a) != uf.find(comp.arcs[0]))
                    throw ParseError("component '" + comp.name + "' is not connected (arc '" + d.arc_names[a] + "')",
                            arc_line[a], arc_column[a]);
        return d;
    }

    auto format_diagram(const DiagramCode & d) -> string
    {
        string out;
        if (! d.name.empty())
            out += "name: " + d.name + "\n";
        for (auto & comp : d.components) {
            out += "component " + comp.name + ":";
            for (auto a : comp.arcs)
                out += (d.is_loop[a] ? " loop " : " ") + d.arc_names[a];
            out += "\n";
        }
        for (auto & c : d.crossings)
            out += "X: o=" + d.arc_names[c.over] + " u=" + d.arc_names[c.under_in] + ">" + d.arc_names[c.under_out]
                + " s=" + (c.sign > 0 ? "+" : "-") + "\n";
        for (auto & v : d.vertices) {
            out += "V:";
            for (auto & e : v.ends)
                out += " " + d.arc_names[e.arc] + (e.incoming ? ">" : "<");
            out += "\n";
        }
        return out;
    }

    auto Spine::betti_number() const -> int
    {
        if (vertices.empty())
            return edges.empty() ? 0 : 1;
        return static_cast<int>(edges.size()) - static_cast<int>(vertices.size()) + 1;
    }

    auto component_spine(const DiagramCode & d, size_t component) -> Spine
    {
        auto ends = arc_ends(d);
        const auto & arcs = d.components.at(component).arcs;
        Spine spine;
        for (size_t v = 0 ; v < d.vertices.size() ; ++v)
            if (d.component_of[d.vertices[v].ends[0].arc] == component)
                spine.vertices.push_back(v);

        if (spine.vertices.empty()) {
            ArcId start = *std::min_element(arcs.begin(), arcs.end());
            SpineEdge e;
            ArcId a = start;
            while (true) {
                e.arcs.push_back(a);
                if (d.is_loop[a])
                    break;
                auto c = *ends.head_crossing[a];
                e.crossings.push_back(c);
                a = d.crossings[c].under_out;
                if (a == start)
                    break;
                if (e.arcs.size() > arcs.size())
                    throw PreconditionError("component strand does not close up");
            }
            spine.edges.push_back(std::move(e));
            return spine;
        }

        for (auto v : spine.vertices)
            for (auto & end : d.vertices[v].ends) {
                if (end.incoming)
                    continue;
                SpineEdge e;
                e.tail = v;
                ArcId a = end.arc;
                while (true) {
                    e.arcs.push_back(a);
                    if (ends.head_vertex[a]) {
                        e.head = *ends.head_vertex[a];
                        break;
                    }
                    auto c = *ends.head_crossing[a];
                    e.crossings.push_back(c);
                    a = d.crossings[c].under_out;
                    if (e.arcs.size() > d.arc_names.size())
                        throw PreconditionError("spine edge does not reach a vertex");
                }
                spine.edges.push_back(std::move(e));
            }
        std::sort(spine.edges.begin(), spine.edges.end(), [] (const SpineEdge & a, const SpineEdge & b) {
                return a.arcs.front() < b.arcs.front();
                });
        return spine;
    }

    auto wirtinger(const DiagramCode & d) -> WirtingerResult
    {
        auto m = static_cast<std::uint32_t>(d.arc_names.size());
        auto x = [] (ArcId a, int sign = 1) { return Word::generator(a, sign); };

        vector<Word> relators;
        for (auto & c : d.crossings)
            relators.push_back(x(c.under_out, -1) * x(c.over, c.sign) * x(c.under_in) * x(c.over, -c.sign));
        for (auto & v : d.vertices) {
            Word r;
            for (auto & e : v.ends)
                r = r * x(e.arc, e.incoming ? 1 : -1);
            relators.push_back(r);
        }
        Presentation p(m, std::move(relators), d.arc_names, d.name.empty() ? "Wirtinger presentation" : "Wirtinger presentation of " + d.name);

        // moving along the top of an under-strand through crossing c multiplies the path word by x_o^-s
        auto step = [&] (size_t c) { return x(d.crossings[c].over, -d.crossings[c].sign); };
        auto transport = [&] (const SpineEdge & e) {
            Word t;
            for (auto c : e.crossings)
                t = t * step(c);
            return t;
        };

        PeripheralExtraction periphery;
        for (size_t comp = 0 ; comp < d.components.size() ; ++comp) {
            auto spine = component_spine(d, comp);
            ComponentPeriphery cp;
            cp.name = d.components[comp].name;
            cp.genus = spine.betti_number();

            if (spine.vertices.empty()) {
                auto & e = spine.edges.front();
                cp.meridians.push_back(x(e.arcs.front()));
                cp.longitudes.push_back(transport(e));
                periphery.components.push_back(std::move(cp));
                continue;
            }

            map<size_t, Word> tau;
            map<size_t, bool> reached;
            vector<char> tree_edge(spine.edges.size(), 0);
            auto base = spine.vertices.front();
            tau[base] = Word{};
            vector<size_t> queue{ base };
            reached[base] = true;
            for (size_t qi = 0 ; qi < queue.size() ; ++qi) {
                auto v = queue[qi];
                for (size_t ei = 0 ; ei < spine.edges.size() ; ++ei) {
                    auto & e = spine.edges[ei];
                    if (tree_edge[ei] || *e.tail == *e.head)
                        continue;
                    if (*e.tail == v && ! reached[*e.head]) {
                        tau[*e.head] = tau[v] * transport(e);
                        reached[*e.head] = true;
                        queue.push_back(*e.head);
                        tree_edge[ei] = 1;
                    }
                    else if (*e.head == v && ! reached[*e.tail]) {
                        tau[*e.tail] = tau[v] * transport(e).inverse();
                        reached[*e.tail] = true;
                        queue.push_back(*e.tail);
                        tree_edge[ei] = 1;
                    }
                }
            }

            vector<Word> tree_meridians;
            for (size_t ei = 0 ; ei < spine.edges.size() ; ++ei) {
                auto & e = spine.edges[ei];
                Word meridian = x(e.arcs.front()).conjugated_by(tau[*e.tail]);
                if (tree_edge[ei])
                    tree_meridians.push_back(meridian);
                else {
                    cp.meridians.push_back(meridian);
                    cp.longitudes.push_back(tau[*e.tail] * transport(e) * tau[*e.head].inverse());
                }
            }
            cp.meridians.insert(cp.meridians.end(), tree_meridians.begin(), tree_meridians.end());
            periphery.components.push_back(std::move(cp));
        }

        return WirtingerResult{ std::move(p), std::move(periphery) };
    }

    auto validate_against_link(const DiagramCode & d, const vector<int> & expected_genera) -> GenusReport
    {
        GenusReport report;
        report.expected = expected_genera;
        for (size_t c = 0 ; c < d.components.size() ; ++c)
            report.found.push_back(component_spine(d, c).betti_number());
        report.ok = report.found == report.expected;
        return report;
    }
}
