/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef FTREE_GUARD_DIAGRAM_HH
#define FTREE_GUARD_DIAGRAM_HH 1

#include <ftree/presentation.hh>

#include <string>
#include <string_view>
#include <vector>

namespace ftree
{
    using ArcId = std::uint32_t;

    struct Crossing
    {
        ArcId over;
        ArcId under_in;   ///< under-strand arc arriving at the crossing
        ArcId under_out;  ///< under-strand arc leaving it
        int sign;         ///< +1 or -1
        int line = 0;
    };

    /// One arc end at a trivalent vertex. incoming means the arc's head is here.
    struct VertexEnd
    {
        ArcId arc;
        bool incoming;
    };

    /// A trivalent vertex; ends are listed counterclockwise.
    struct Vertex
    {
        std::vector<VertexEnd> ends;
        int line = 0;
    };

    struct DiagramComponent
    {
        std::string name;
        std::vector<ArcId> arcs;
    };

    /// A validated diagram of a link or trivalent spatial graph. Arcs are the
    /// maximal pieces of strand between under-crossings and vertices.
    struct DiagramCode
    {
        std::string name;
        std::vector<std::string> arc_names;
        std::vector<std::size_t> component_of;
        std::vector<bool> is_loop;   ///< closed arc with no ends at all
        std::vector<Crossing> crossings;
        std::vector<Vertex> vertices;
        std::vector<DiagramComponent> components;
    };

    /// Line-oriented .hld text:
    ///   name: HL1
    ///   component Sigma1: a1 a2 a3
    ///   component K: loop k1
    ///   X: o=a3 u=a1>a2 s=+
    ///   V: a1> a4< a5>
    /// In vertex lines "a>" means arc a ends at the vertex and "a<" that it starts there.
    auto parse_diagram(std::string_view text) -> DiagramCode;

    auto format_diagram(const DiagramCode & d) -> std::string;

    /// A maximal run of arcs joined through under-crossings, from a vertex to
    /// a vertex, or a closed cycle when the component has no vertices.
    struct SpineEdge
    {
        std::vector<ArcId> arcs;
        std::vector<std::size_t> crossings;  ///< crossings[i] lies between arcs[i] and arcs[i + 1]; a closed edge also has the wrap-around crossing last
        std::optional<std::size_t> tail, head; ///< vertex ids; empty for a closed edge
    };

    struct Spine
    {
        std::vector<std::size_t> vertices;
        std::vector<SpineEdge> edges;

        auto betti_number() const -> int;
    };

    auto component_spine(const DiagramCode & d, std::size_t component) -> Spine;

    struct ComponentPeriphery
    {
        std::string name;
        int genus = 0;
        std::vector<Word> meridians;   ///< edges off the spanning tree first, in the order of longitudes
        std::vector<Word> longitudes;  ///< one per edge off the spanning tree
    };

    struct PeripheralExtraction
    {
        std::vector<ComponentPeriphery> components;
    };

    struct WirtingerResult
    {
        Presentation presentation;
        PeripheralExtraction periphery;
    };

    /// One generator per arc; crossing relations x_out = x_o^s x_in x_o^-s;
    /// vertex relations from the counterclockwise end order.
    auto wirtinger(const DiagramCode & d) -> WirtingerResult;

    struct GenusReport
    {
        std::vector<int> found;
        std::vector<int> expected;
        bool ok = false;
    };

    auto validate_against_link(const DiagramCode & d, const std::vector<int> & expected_genera) -> GenusReport;
}

#endif
