/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ftree/abelianize.hh>
#include <ftree/diagram.hh>
#include <ftree/errors.hh>
#include <ftree/finite_group.hh>
#include <ftree/fundtree.hh>
#include <ftree/hom_search.hh>
#include <ftree/presentation.hh>
#include <ftree/trees.hh>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace ftree;

using std::cout;
using std::string;
using std::vector;

using nlohmann::json;

namespace
{
    struct Globals
    {
        bool json = false;
        unsigned threads = 1;
        std::uint64_t node_budget = default_node_budget;
        string up_to = "aut";

        auto options() const -> SearchOptions { return SearchOptions{ threads, node_budget }; }
    };

    auto read_file(const string & path) -> string
    {
        std::ifstream in(path);
        if (! in)
            throw PreconditionError("cannot read '" + path + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }

    auto looks_like_json(const string & text) -> bool
    {
        auto first = text.find_first_not_of(" \t\r\n");
        return first != string::npos && text[first] == '{';
    }

    auto parse_json(const string & text) -> json
    {
        try {
            return json::parse(text);
        }
        catch (const json::parse_error & e) {
            throw ParseError(string("invalid JSON: ") + e.what());
        }
    }

    auto load_presentation(const string & path) -> Presentation
    {
        auto text = read_file(path);
        if (looks_like_json(text))
            return presentation_from_json(parse_json(text));
        return parse_presentation(text);
    }

    auto load_tree(const string & path) -> BasedTree
    {
        return tree_from_json(parse_json(read_file(path)));
    }

    /// Presentation from exactly one of the input flags.
    struct GroupInput
    {
        string presentation, diagram, link;
        int surface = -1;
        int free = -1;

        auto add_to(CLI::App * cmd) -> void
        {
            auto p = cmd->add_option("--presentation", presentation, "presentation file (text or JSON)");
            auto d = cmd->add_option("--diagram", diagram, "diagram file (.hld); uses the Wirtinger presentation");
            auto l = cmd->add_option("--link", link, "link file (JSON or .hld); uses its ambient presentation");
            auto s = cmd->add_option("--surface", surface, "surface group of this genus");
            auto f = cmd->add_option("--free", free, "free group of this rank");
            p->excludes(d, l, s, f);
            d->excludes(l, s, f);
            l->excludes(s, f);
            s->excludes(f);
        }

        auto load() const -> Presentation
        {
            if (! presentation.empty())
                return load_presentation(presentation);
            if (! diagram.empty())
                return wirtinger(parse_diagram(read_file(diagram))).presentation;
            if (! link.empty())
                return *load_link(link).ambient;
            if (surface >= 0)
                return surface_group(surface);
            if (free >= 0)
                return free_group(static_cast<std::uint32_t>(free));
            throw CLI::RequiredError("one of --presentation, --diagram, --link, --surface, --free");
        }
    };

    auto parse_tietze(const string & s) -> TietzeMove
    {
        if (s == "add-relator")
            return TietzeMove::add_redundant_relator;
        if (s == "remove-relator")
            return TietzeMove::remove_redundant_relator;
        if (s == "add-generator")
            return TietzeMove::add_generator_with_definition;
        if (s == "remove-generator")
            return TietzeMove::remove_defined_generator;
        throw CLI::ValidationError("--tietze", "expected add-relator, remove-relator, add-generator or remove-generator");
    }

    auto print_periphery(const Presentation & p, const PeripheralExtraction & periphery) -> void
    {
        for (auto & c : periphery.components) {
            cout << "component " << c.name << ": genus " << c.genus << "\n";
            for (auto & m : c.meridians)
                cout << "  meridian: " << p.format_word(m) << "\n";
            for (auto & l : c.longitudes)
                cout << "  longitude: " << p.format_word(l) << "\n";
        }
    }

    auto orbit_json(const HomOrbit & o) -> json
    {
        return json{ { "images", o.representative.images }, { "size", o.size } };
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{ "Fundamental trees, handlebody links and finite-group invariants" };
    app.set_version_flag("--version", "ftree 1.0.0");
    app.require_subcommand(1);
    app.fallthrough();

    Globals globals;
    app.add_flag("--json", globals.json, "machine-readable output");
    app.add_option("--threads", globals.threads, "worker threads for homomorphism search")->check(CLI::Range(1u, 256u));
    app.add_option("--node-budget", globals.node_budget, "search node budget");
    app.add_option("--up-to", globals.up_to, "classify homomorphisms up to none, conj or aut")
        ->check(CLI::IsMember({ "none", "conj", "aut" }));

    // presentation
    auto presentation_cmd = app.add_subcommand("presentation", "print, simplify or transform a presentation");
    GroupInput presentation_input;
    presentation_input.add_to(presentation_cmd);
    bool do_simplify = false;
    string tietze;
    std::uint64_t seed = 1;
    presentation_cmd->add_flag("--simplify", do_simplify, "eliminate defined generators");
    presentation_cmd->add_option("--tietze", tietze, "apply one move: add-relator, remove-relator, add-generator, remove-generator");
    presentation_cmd->add_option("--seed", seed, "seed for --tietze");

    // homs
    auto homs_cmd = app.add_subcommand("homs", "enumerate homomorphisms to a finite group");
    GroupInput homs_input;
    homs_input.add_to(homs_cmd);
    string homs_group;
    bool count_only = false;
    homs_cmd->add_option("--group", homs_group, "target group: A4, S4, Z6, D5, perm:(1 2 3),(1 2)")->required();
    homs_cmd->add_flag("--count", count_only, "only count, without classifying");

    // abelianize
    auto abel_cmd = app.add_subcommand("abelianize", "abelian invariants of a presentation");
    GroupInput abel_input;
    abel_input.add_to(abel_cmd);
    bool show_matrix = false;
    abel_cmd->add_flag("--matrix", show_matrix, "also print the relation matrix and its Smith form");

    // tree
    auto tree_cmd = app.add_subcommand("tree", "based trees");
    tree_cmd->require_subcommand(1);
    bool unbased = false;
    tree_cmd->add_flag("--unbased", unbased, "forget the base (try every re-rooting)");
    vector<string> tree_files;
    auto iso_cmd = tree_cmd->add_subcommand("iso", "decide isomorphism of two based trees");
    iso_cmd->add_option("trees", tree_files, "two tree JSON files")->required()->expected(2);
    auto code_cmd = tree_cmd->add_subcommand("code", "canonical code of a tree");
    code_cmd->add_option("trees", tree_files, "tree JSON file")->required()->expected(1);
    auto subdivide_cmd = tree_cmd->add_subcommand("subdivide", "barycentric subdivision");
    subdivide_cmd->add_option("trees", tree_files, "tree JSON file")->required()->expected(1);
    NodeId join_at = 0;
    auto join_cmd = tree_cmd->add_subcommand("join", "identify the base of the second tree with a node of the first");
    join_cmd->add_option("trees", tree_files, "two tree JSON files")->required()->expected(2);
    join_cmd->add_option("--at", join_at, "node of the first tree")->required();
    auto stars_cmd = tree_cmd->add_subcommand("stars", "star decomposition");
    stars_cmd->add_option("trees", tree_files, "tree JSON file")->required()->expected(1);

    // gimage
    auto gimage_cmd = app.add_subcommand("gimage", "G-image of a handlebody link");
    string gimage_link, gimage_group = "A4";
    vector<int> gimage_components;
    std::size_t gimage_fold = 0;
    bool gimage_table = false;
    gimage_cmd->add_option("--link", gimage_link, "link file (JSON or .hld)")->required();
    gimage_cmd->add_option("--group", gimage_group, "target group");
    gimage_cmd->add_option("--components", gimage_components, "component ids (default: every component, one at a time)")->delimiter(',');
    gimage_cmd->add_option("--fold", gimage_fold, "report every subset of this many components");
    gimage_cmd->add_flag("--table", gimage_table, "table layout (the default for text output)");

    // compare
    auto compare_cmd = app.add_subcommand("compare", "compare k-fold G-images of two links");
    vector<string> compare_links;
    string compare_group = "A4";
    std::size_t compare_fold = 1;
    compare_cmd->add_option("--link", compare_links, "two link files")->required()->expected(2);
    compare_cmd->add_option("--group", compare_group, "target group");
    compare_cmd->add_option("--fold", compare_fold, "size of the component subsets");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    }

    try {
        auto mode = parse_orbit_mode(globals.up_to);

        if (presentation_cmd->parsed()) {
            if (! presentation_input.diagram.empty() && tietze.empty() && ! do_simplify) {
                auto d = parse_diagram(read_file(presentation_input.diagram));
                auto w = wirtinger(d);
                if (globals.json) {
                    HandlebodyLink link = link_from_diagram(d, false);
                    cout << link_to_json(link).dump(2) << "\n";
                }
                else {
                    cout << format_presentation(w.presentation);
                    print_periphery(w.presentation, w.periphery);
                }
                return 0;
            }
            auto p = presentation_input.load();
            if (! tietze.empty())
                p = tietze_move(p, parse_tietze(tietze), seed).presentation;
            if (do_simplify)
                p = simplify(p);
            if (globals.json)
                cout << presentation_to_json(p).dump(2) << "\n";
            else
                cout << format_presentation(p);
        }
        else if (homs_cmd->parsed()) {
            auto p = std::make_shared<const Presentation>(homs_input.load());
            auto g = build_group(homs_group);
            if (count_only) {
                auto n = count_homomorphisms(*p, g, globals.options());
                if (globals.json)
                    cout << json{ { "total", n } }.dump(2) << "\n";
                else
                    cout << "total: " << n << "\n";
                return 0;
            }
            auto homs = enumerate_homomorphisms(p, g, globals.options());
            auto orbits = classify(homs, *g, mode);
            if (globals.json) {
                json list = json::array();
                for (auto & o : orbits)
                    list.push_back(orbit_json(o));
                cout << json{ { "total", homs.size() }, { "mode", orbit_mode_name(mode) }, { "orbits", list } }.dump(2) << "\n";
            }
            else {
                cout << "group: " << g->name() << "\n";
                cout << "total: " << homs.size() << "\n";
                cout << "orbits (up to " << orbit_mode_name(mode) << "): " << orbits.size() << "\n";
                for (auto & o : orbits) {
                    cout << "  size " << o.size << ":";
                    for (std::uint32_t i = 0 ; i < p->generator_count() ; ++i)
                        cout << " " << p->name(i) << "=" << g->format_element(o.representative.images[i]);
                    cout << "\n";
                }
            }
        }
        else if (abel_cmd->parsed()) {
            auto p = abel_input.load();
            auto inv = abelian_invariants(p);
            if (globals.json) {
                json torsion = json::array();
                for (auto & t : inv.torsion)
                    torsion.push_back(t.get_str());
                json j{ { "free_rank", inv.free_rank }, { "torsion", torsion }, { "summary", inv.to_string() } };
                if (show_matrix) {
                    auto m = relation_matrix(p);
                    j["matrix"] = m.to_string();
                    j["smith"] = smith_normal_form(m).diagonal.to_string();
                }
                cout << j.dump(2) << "\n";
            }
            else {
                cout << inv.to_string() << "\n";
                if (show_matrix) {
                    auto m = relation_matrix(p);
                    cout << "relation matrix: " << m.to_string() << "\n";
                    cout << "smith form: " << smith_normal_form(m).diagonal.to_string() << "\n";
                }
            }
        }
        else if (tree_cmd->parsed()) {
            auto code = [&] (const BasedTree & t) { return unbased ? unbased_canonical_code(t) : canonical_code(t); };
            if (iso_cmd->parsed()) {
                auto a = load_tree(tree_files[0]), b = load_tree(tree_files[1]);
                bool iso = a.node_count() == b.node_count() && code(a) == code(b);
                if (globals.json)
                    cout << json{ { "isomorphic", iso }, { "based", ! unbased } }.dump(2) << "\n";
                else
                    cout << (iso ? "isomorphic" : "not-isomorphic") << "\n";
            }
            else if (code_cmd->parsed()) {
                auto c = code(load_tree(tree_files[0]));
                if (globals.json)
                    cout << json{ { "code", c } }.dump(2) << "\n";
                else
                    cout << c << "\n";
            }
            else if (subdivide_cmd->parsed()) {
                auto d = subdivision(load_tree(tree_files[0]));
                if (globals.json) {
                    json arrows = json::array();
                    for (auto & [b, e] : d.arrows)
                        arrows.push_back(json::array({ b, e }));
                    cout << json{ { "nodes", d.node_count }, { "arrows", arrows }, { "tree", tree_to_json(d.as_tree()) } }.dump(2) << "\n";
                }
                else {
                    cout << "nodes: " << d.node_count << "\n";
                    for (auto & [b, e] : d.arrows)
                        cout << b << " -> " << e << "\n";
                }
            }
            else if (join_cmd->parsed()) {
                auto t = join(load_tree(tree_files[0]), join_at, load_tree(tree_files[1]));
                cout << tree_to_json(t).dump(globals.json ? 2 : -1) << "\n";
            }
            else if (stars_cmd->parsed()) {
                auto pieces = star_decomposition(load_tree(tree_files[0]));
                json list = json::array();
                for (auto & piece : pieces)
                    list.push_back(json{ { "node", piece.node }, { "edges", piece.edges }, { "star", tree_to_json(piece.star) } });
                cout << list.dump(globals.json ? 2 : -1) << "\n";
            }
        }
        else if (gimage_cmd->parsed()) {
            auto link = load_link(gimage_link);
            auto g = build_group(gimage_group);
            vector<GImageReport> reports;
            if (gimage_fold > 0) {
                if (! gimage_components.empty())
                    throw CLI::ValidationError("--fold", "give either --fold or --components");
                reports = k_fold_g_images(link, g, gimage_fold, mode, globals.options()).reports;
            }
            else {
                auto orbits = link_orbits(link, g, mode, globals.options());
                if (gimage_components.empty())
                    for (auto & c : link.components)
                        reports.push_back(g_image(link, orbits, g, { c.id }, mode));
                else
                    reports.push_back(g_image(link, orbits, g, gimage_components, mode));
            }
            if (globals.json) {
                json list = json::array();
                for (auto & r : reports)
                    list.push_back(g_image_to_json(r));
                cout << list.dump(2) << "\n";
            }
            else
                for (size_t i = 0 ; i < reports.size() ; ++i)
                    cout << (i ? "\n" : "") << format_g_image_table(reports[i]);
        }
        else if (compare_cmd->parsed()) {
            auto a = load_link(compare_links[0]), b = load_link(compare_links[1]);
            auto g = build_group(compare_group);
            auto ia = k_fold_g_images(a, g, compare_fold, mode, globals.options());
            auto ib = k_fold_g_images(b, g, compare_fold, mode, globals.options());
            auto verdict = compare_g_images(ia, ib);
            if (globals.json)
                cout << json{ { "verdict", verdict_name(verdict) }, { "fold", compare_fold }, { "group", g->name() } }.dump(2) << "\n";
            else
                cout << verdict_name(verdict) << "\n";
        }
    }
    catch (const CLI::ParseError & e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    }
    catch (const Error & e) {
        std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
        return 1;
    }
    catch (const std::exception & e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
