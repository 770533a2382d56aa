/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef FTREE_GUARD_FUNDTREE_HH
#define FTREE_GUARD_FUNDTREE_HH 1

#include <ftree/abelianize.hh>
#include <ftree/diagram.hh>
#include <ftree/finite_group.hh>
#include <ftree/hom_search.hh>
#include <ftree/presentation.hh>
#include <ftree/trees.hh>

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ftree
{
    /// One boundary surface of a handlebody link, seen from the exterior:
    /// words in the ambient generators.
    struct PeripheralComponent
    {
        int id = 0;
        int genus = 0;
        std::vector<Word> meridians;
        std::vector<Word> longitudes;
        std::string label;
    };

    struct HandlebodyLink
    {
        PresentationPtr ambient;
        std::vector<PeripheralComponent> components;
        std::string name;

        auto component(int id) const -> const PeripheralComponent &;
    };

    /// Checks ids are distinct, words valid, and meridians present for genus >= 1.
    auto check_link(const HandlebodyLink & link) -> void;

    /// Wirtinger presentation plus periphery, simplified when requested; the
    /// peripheral words are rewritten into the simplified generators.
    auto link_from_diagram(const DiagramCode & d, bool simplify_presentation = true) -> HandlebodyLink;

    /// {"ambient": <presentation>, "components": [{"id":1,"genus":2,"meridians":[[...]],"longitudes":[[...]],"label":"Sigma1"}]}
    auto link_to_json(const HandlebodyLink & link) -> nlohmann::json;
    auto link_from_json(const nlohmann::json & j) -> HandlebodyLink;

    /// Reads a .hld diagram or a link JSON file, deciding by the first non-blank character.
    auto load_link(const std::string & path) -> HandlebodyLink;

    auto peripheral_image(const Homomorphism & h, const PeripheralComponent & c) -> Subgroup;

    /// Normal closure of the meridian images inside the peripheral image.
    auto kernel_image(const Homomorphism & h, const PeripheralComponent & c) -> Subgroup;

    /// Surjective, and not surjective on any selected boundary surface.
    auto is_proper(const Homomorphism & h, const HandlebodyLink & link, const std::vector<int> & components) -> bool;

    struct GImageEntry
    {
        std::vector<IsoClassLabel> peripheral;        ///< one per selected component
        std::vector<std::uint32_t> peripheral_order;
        std::vector<IsoClassLabel> kernel;
        std::vector<std::uint32_t> kernel_order;
        std::size_t multiplicity = 0;

        auto operator<=> (const GImageEntry &) const = default;
    };

    struct GImageReport
    {
        std::string link_name;
        std::string group_name;
        OrbitMode mode = OrbitMode::automorphism;
        std::vector<int> components;
        std::vector<std::string> component_labels;
        std::size_t orbit_count = 0;     ///< all orbits of homomorphisms
        std::size_t proper_count = 0;    ///< orbits proper w.r.t. the selected components
        std::vector<GImageEntry> entries;
    };

    /// Orbits of all homomorphisms from the link group to G.
    auto link_orbits(const HandlebodyLink & link, const GroupPtr & g, OrbitMode mode,
            const SearchOptions & options = {}) -> std::vector<HomOrbit>;

    auto g_image(const HandlebodyLink & link, const std::vector<HomOrbit> & orbits, const GroupPtr & g,
            const std::vector<int> & components, OrbitMode mode) -> GImageReport;

    auto g_image(const HandlebodyLink & link, const GroupPtr & g, const std::vector<int> & components,
            OrbitMode mode, const SearchOptions & options = {}) -> GImageReport;

    /// Multiplicities of peripheral classes, then of kernel classes within each,
    /// in the layout of a table with one column per peripheral class.
    auto format_g_image_table(const GImageReport & r) -> std::string;
    auto g_image_to_json(const GImageReport & r) -> nlohmann::json;

    /// The k-fold images of a link over every k-subset of its components.
    struct LinkGImages
    {
        std::string link_name;
        std::vector<int> component_ids;
        std::size_t fold = 1;
        std::vector<GImageReport> reports;
    };

    auto k_fold_g_images(const HandlebodyLink & link, const GroupPtr & g, std::size_t fold, OrbitMode mode,
            const SearchOptions & options = {}) -> LinkGImages;

    enum class Verdict
    {
        distinguished,
        indistinguishable
    };

    auto verdict_name(Verdict v) -> std::string;

    /// Compares kernel-class tuples, trying every way of matching up the
    /// selected components.
    auto compare_g_images(const GImageReport & a, const GImageReport & b) -> Verdict;

    /// Same over whole links: some bijection of components must match every subset's report.
    auto compare_g_images(const LinkGImages & a, const LinkGImages & b) -> Verdict;

    /// Data on the edge from a node to its parent: a surface group, its
    /// intersection form, and the images of its generators at both ends.
    struct FundEdge
    {
        int genus = 0;
        PairingForm pairing;
        std::vector<Word> to_parent;
        std::vector<Word> to_child;
    };

    struct FundTree
    {
        BasedTree shape;
        std::vector<Presentation> node_groups;
        std::vector<std::optional<FundEdge>> edges;  ///< indexed by child node; edges[0] is empty
    };

    auto check_fund_tree(const FundTree & t) -> void;

    /// Star-shaped tree: base node carries the ambient group, leaf i the
    /// handlebody group (free of rank g_i unless given), edge i the genus g_i
    /// surface group with a_j -> meridian j, b_j -> longitude j into the base
    /// and a_j -> 1, b_j -> free generator j into the leaf.
    auto link_to_fundtree(const HandlebodyLink & link, const std::vector<Presentation> & handlebody_groups = {}) -> FundTree;

    /// Shape join(t1, at, t2); the merged node gets the free product of both groups.
    auto graft_fundtree(const FundTree & t1, NodeId at, const FundTree & t2) -> FundTree;

    /// Canonical code of the shape decorated with each node's abelian
    /// invariants; equal for equivalent trees, but not conversely.
    auto fundtree_fingerprint(const FundTree & t) -> std::string;
}

#endif
