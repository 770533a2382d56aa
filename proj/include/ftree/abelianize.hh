/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef FTREE_GUARD_ABELIANIZE_HH
#define FTREE_GUARD_ABELIANIZE_HH 1

#include <ftree/presentation.hh>

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

namespace ftree
{
    /// Dense row-major matrix of arbitrary-precision integers.
    class IntMatrix
    {
        private:
            std::size_t _rows = 0, _cols = 0;
            std::vector<mpz_class> _entries;

        public:
            IntMatrix() = default;
            IntMatrix(std::size_t rows, std::size_t cols);
            IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

            static auto identity(std::size_t n) -> IntMatrix;

            auto rows() const -> std::size_t { return _rows; }
            auto cols() const -> std::size_t { return _cols; }
            auto operator() (std::size_t r, std::size_t c) -> mpz_class & { return _entries[r * _cols + c]; }
            auto operator() (std::size_t r, std::size_t c) const -> const mpz_class & { return _entries[r * _cols + c]; }

            auto transposed() const -> IntMatrix;
            auto is_zero() const -> bool;
            auto operator== (const IntMatrix & other) const -> bool = default;

            friend auto operator* (const IntMatrix & a, const IntMatrix & b) -> IntMatrix;
            friend auto operator- (const IntMatrix & a) -> IntMatrix;

            auto to_string() const -> std::string;
    };

    /// Exact determinant by fraction-free (Bareiss) elimination.
    auto determinant(const IntMatrix & m) -> mpz_class;

    struct SmithNormalForm
    {
        IntMatrix left;     ///< U, unimodular
        IntMatrix diagonal; ///< D = U M V
        IntMatrix right;    ///< V, unimodular
    };

    auto smith_normal_form(const IntMatrix & m) -> SmithNormalForm;

    /// Diagonal entries of D, including zeros, length min(rows, cols).
    auto invariant_factors(const SmithNormalForm & snf) -> std::vector<mpz_class>;

    struct AbelianInvariants
    {
        std::size_t free_rank = 0;
        std::vector<mpz_class> torsion; ///< each >= 2, each dividing the next

        auto operator== (const AbelianInvariants &) const -> bool = default;
        auto to_string() const -> std::string;
    };

    /// Rows are relators, columns generators, entries exponent sums.
    auto relation_matrix(const Presentation & p) -> IntMatrix;

    auto abelian_invariants(const Presentation & p) -> AbelianInvariants;

    /// Invariants of a direct sum of abelian groups.
    auto direct_sum(const std::vector<AbelianInvariants> & parts) -> AbelianInvariants;

    struct PairingForm
    {
        IntMatrix matrix;
        std::string basis_note;

        auto is_skew_symmetric() const -> bool;
        auto is_unimodular() const -> bool;
    };

    /// I(a_i, b_i) = 1, I(b_i, a_i) = -1, basis a1, b1, ..., ag, bg.
    auto standard_symplectic(int genus) -> PairingForm;

    /// True iff map^T * dst * map == src. Throws PreconditionError on dimension mismatch.
    auto preserves_pairing(const IntMatrix & map, const PairingForm & source, const PairingForm & target) -> bool;
}

#endif
