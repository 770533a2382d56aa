/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef FTREE_GUARD_FINITE_GROUP_HH
#define FTREE_GUARD_FINITE_GROUP_HH 1

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ftree
{
    using ElementId = std::uint32_t;
    using Permutation = std::vector<std::uint32_t>; ///< 0-based images of points

    /// Largest group whose full multiplication table we materialize.
    inline constexpr std::size_t max_table_order = 4096;

    /// Largest closure order accepted when building from permutations.
    inline constexpr std::size_t max_closure_order = 20160;

    /// A finite group stored as a full multiplication table. Element 0 is the
    /// identity; the rest are numbered in breadth-first order from the
    /// generators, so numbering is reproducible.
    class FiniteGroup
    {
        private:
            std::uint32_t _order = 1;
            std::vector<ElementId> _mul;
            std::vector<ElementId> _inv;
            std::vector<std::uint32_t> _element_order;
            std::vector<ElementId> _generators;
            std::vector<Permutation> _permutations;
            std::string _name;

        public:
            /// Validates the table (identity at 0, inverses, exhaustive associativity
            /// up to order 64 and random triples above) and that generators generate.
            FiniteGroup(std::uint32_t order, std::vector<ElementId> table, std::vector<ElementId> generators,
                    std::string name, std::vector<Permutation> permutations = {});

            auto order() const -> std::uint32_t { return _order; }
            auto identity() const -> ElementId { return 0; }
            auto mul(ElementId a, ElementId b) const -> ElementId { return _mul[std::size_t{ a } * _order + b]; }
            auto inv(ElementId a) const -> ElementId { return _inv[a]; }
            auto table() const -> std::span<const ElementId> { return _mul; }
            auto element_order(ElementId a) const -> std::uint32_t { return _element_order[a]; }
            auto generators() const -> const std::vector<ElementId> & { return _generators; }
            auto name() const -> const std::string & { return _name; }
            auto is_abelian() const -> bool;

            /// Permutation representation when built from permutations (else empty).
            auto permutations() const -> const std::vector<Permutation> & { return _permutations; }

            auto conjugate(ElementId x, ElementId by) const -> ElementId ///< by^-1 x by
            {
                return mul(mul(inv(by), x), by);
            }

            auto format_element(ElementId e) const -> std::string;
    };

    using GroupPtr = std::shared_ptr<const FiniteGroup>;

    /// Builds a group from a CLI spec: Z6, D5, A4, S4, or perm:(1 2 3)(4 5),(1 2).
    auto build_group(std::string_view spec) -> GroupPtr;
    auto cyclic_group(std::uint32_t n) -> GroupPtr;
    auto dihedral_group(std::uint32_t n) -> GroupPtr;  ///< order 2n
    auto alternating_group(std::uint32_t n) -> GroupPtr;
    auto symmetric_group(std::uint32_t n) -> GroupPtr;
    auto group_from_permutations(const std::vector<Permutation> & generators, std::string name) -> GroupPtr;

    /// Table given by an arbitrary labelling; renumbered canonically.
    auto group_from_table(std::uint32_t order, const std::vector<ElementId> & table, std::string name) -> GroupPtr;

    auto parse_permutations(std::string_view cycles) -> std::vector<Permutation>;

    /// A subgroup as a membership bitset over the parent's element ids.
    class Subgroup
    {
        private:
            GroupPtr _parent;
            std::vector<bool> _members;
            std::vector<ElementId> _elements;

        public:
            Subgroup(GroupPtr parent, std::vector<bool> members);

            auto parent() const -> const GroupPtr & { return _parent; }
            auto contains(ElementId e) const -> bool { return _members.at(e); }
            auto order() const -> std::uint32_t { return static_cast<std::uint32_t>(_elements.size()); }
            auto elements() const -> const std::vector<ElementId> & { return _elements; }
            auto is_whole_group() const -> bool { return order() == _parent->order(); }
            auto is_closed() const -> bool;
            auto operator== (const Subgroup & other) const -> bool { return _members == other._members; }
    };

    auto whole_group(const GroupPtr & g) -> Subgroup;

    /// Smallest subgroup containing seed.
    auto subgroup_closure(const GroupPtr & g, std::span<const ElementId> seed) -> Subgroup;

    /// Smallest subgroup of ambient containing seeds and normalized by ambient.
    auto normal_closure_within(const GroupPtr & g, std::span<const ElementId> seeds, const Subgroup & ambient) -> Subgroup;

    /// Every automorphism as the permutation of element ids it induces.
    /// Throws ResourceError above order 256 or past max_count automorphisms.
    auto automorphism_group(const FiniteGroup & g, std::size_t max_count = 1'000'000) -> std::vector<std::vector<ElementId>>;

    /// Inner automorphisms, deduplicated, identity first.
    auto inner_automorphisms(const FiniteGroup & g) -> std::vector<std::vector<ElementId>>;

    /// Isomorphism class label such as "0", "Z2", "Z2xZ2", "A4".
    using IsoClassLabel = std::string;

    auto iso_class(const Subgroup & h) -> IsoClassLabel;

    /// Abstract group of a subgroup, renumbered canonically.
    auto subgroup_as_group(const Subgroup & h) -> GroupPtr;
}

#endif
