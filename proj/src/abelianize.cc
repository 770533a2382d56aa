/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ftree/abelianize.hh>
#include <ftree/errors.hh>

#include <algorithm>
#include <optional>
#include <utility>

using std::size_t;
using std::string;
using std::vector;

namespace ftree
{
    IntMatrix::IntMatrix(size_t rows, size_t cols) :
        _rows(rows),
        _cols(cols),
        _entries(rows * cols, mpz_class(0))
    {
    }

    IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) :
        _rows(rows.size()),
        _cols(rows.size() ? rows.begin()->size() : 0)
    {
        for (auto & r : rows) {
            if (r.size() != _cols)
                throw PreconditionError("ragged matrix literal");
            for (auto x : r)
                _entries.emplace_back(x);
        }
    }

    auto IntMatrix::identity(size_t n) -> IntMatrix
    {
        IntMatrix m(n, n);
        for (size_t i = 0 ; i < n ; ++i)
            m(i, i) = 1;
        return m;
    }

    auto IntMatrix::transposed() const -> IntMatrix
    {
        IntMatrix t(_cols, _rows);
        for (size_t r = 0 ; r < _rows ; ++r)
            for (size_t c = 0 ; c < _cols ; ++c)
                t(c, r) = (*this)(r, c);
        return t;
    }

    auto IntMatrix::is_zero() const -> bool
    {
        return std::all_of(_entries.begin(), _entries.end(), [] (const mpz_class & x) { return x == 0; });
    }

    auto operator* (const IntMatrix & a, const IntMatrix & b) -> IntMatrix
    {
        if (a.cols() != b.rows())
            throw PreconditionError("matrix dimension mismatch in product");
        IntMatrix r(a.rows(), b.cols());
        for (size_t i = 0 ; i < a.rows() ; ++i)
            for (size_t k = 0 ; k < a.cols() ; ++k) {
                if (a(i, k) == 0)
                    continue;
                for (size_t j = 0 ; j < b.cols() ; ++j)
                    r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }

    auto operator- (const IntMatrix & a) -> IntMatrix
    {
        IntMatrix r = a;
        for (auto & x : r._entries)
            x = -x;
        return r;
    }

    auto IntMatrix::to_string() const -> string
    {
        string out = "[";
        for (size_t r = 0 ; r < _rows ; ++r) {
            out += r ? ", [" : "[";
            for (size_t c = 0 ; c < _cols ; ++c)
                out += (c ? ", " : "") + (*this)(r, c).get_str();
            out += "]";
        }
        return out + "]";
    }

    auto determinant(const IntMatrix & m) -> mpz_class
    {
        if (m.rows() != m.cols())
            throw PreconditionError("determinant of a non-square matrix");
        size_t n = m.rows();
        if (n == 0)
            return 1;
        IntMatrix a = m;
        mpz_class sign = 1, previous = 1;
        for (size_t k = 0 ; k + 1 < n ; ++k) {
            if (a(k, k) == 0) {
                size_t swap = k + 1;
                while (swap < n && a(swap, k) == 0)
                    ++swap;
                if (swap == n)
                    return 0;
                for (size_t j = 0 ; j < n ; ++j)
                    std::swap(a(k, j), a(swap, j));
                sign = -sign;
            }
            for (size_t i = k + 1 ; i < n ; ++i) {
                for (size_t j = k + 1 ; j < n ; ++j) {
                    mpz_class v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), previous.get_mpz_t());
                    a(i, j) = v;
                }
                a(i, k) = 0;
            }
            previous = a(k, k);
        }
        return sign * a(n - 1, n - 1);
    }

    namespace
    {
        auto swap_rows(IntMatrix & m, size_t a, size_t b) -> void
        {
            if (a != b)
                for (size_t j = 0 ; j < m.cols() ; ++j)
                    std::swap(m(a, j), m(b, j));
        }

        auto swap_cols(IntMatrix & m, size_t a, size_t b) -> void
        {
            if (a != b)
                for (size_t i = 0 ; i < m.rows() ; ++i)
                    std::swap(m(i, a), m(i, b));
        }

        /// row[target] += q * row[source]
        auto add_row(IntMatrix & m, size_t target, size_t source, const mpz_class & q) -> void
        {
            for (size_t j = 0 ; j < m.cols() ; ++j)
                m(target, j) += q * m(source, j);
        }

        auto add_col(IntMatrix & m, size_t target, size_t source, const mpz_class & q) -> void
        {
            for (size_t i = 0 ; i < m.rows() ; ++i)
                m(i, target) += q * m(i, source);
        }
    }

    auto smith_normal_form(const IntMatrix & m) -> SmithNormalForm
    {
        IntMatrix d = m, u = IntMatrix::identity(m.rows()), v = IntMatrix::identity(m.cols());
        size_t limit = std::min(m.rows(), m.cols());

        for (size_t t = 0 ; t < limit ; ++t) {
            while (true) {
                // smallest nonzero |entry| in the trailing block, lowest row then column on ties
                std::optional<std::pair<size_t, size_t>> pivot;
                for (size_t i = t ; i < d.rows() ; ++i)
                    for (size_t j = t ; j < d.cols() ; ++j)
                        if (d(i, j) != 0 && (! pivot || abs(d(i, j)) < abs(d(pivot->first, pivot->second))))
                            pivot = { i, j };
                if (! pivot)
                    goto finished;

                swap_rows(d, t, pivot->first);
                swap_rows(u, t, pivot->first);
                swap_cols(d, t, pivot->second);
                swap_cols(v, t, pivot->second);

                bool dirty = false;
                for (size_t i = t + 1 ; i < d.rows() ; ++i) {
                    if (d(i, t) == 0)
                        continue;
                    mpz_class q = d(i, t) / d(t, t);
                    add_row(d, i, t, -q);
                    add_row(u, i, t, -q);
                    dirty = dirty || d(i, t) != 0;
                }
                for (size_t j = t + 1 ; j < d.cols() ; ++j) {
                    if (d(t, j) == 0)
                        continue;
                    mpz_class q = d(t, j) / d(t, t);
                    add_col(d, j, t, -q);
                    add_col(v, j, t, -q);
                    dirty = dirty || d(t, j) != 0;
                }
                if (dirty)
                    continue;

                std::optional<size_t> offending;
                for (size_t i = t + 1 ; i < d.rows() && ! offending ; ++i)
                    for (size_t j = t + 1 ; j < d.cols() ; ++j)
                        if (d(i, j) % d(t, t) != 0) {
                            offending = i;
                            break;
                        }
                if (! offending)
                    break;
                add_row(d, t, *offending, 1);
                add_row(u, t, *offending, 1);
            }

            if (d(t, t) < 0) {
                for (size_t j = 0 ; j < d.cols() ; ++j)
                    d(t, j) = -d(t, j);
                for (size_t j = 0 ; j < u.cols() ; ++j)
                    u(t, j) = -u(t, j);
            }
        }
        finished:
        return SmithNormalForm{ std::move(u), std::move(d), std::move(v) };
    }

    auto invariant_factors(const SmithNormalForm & snf) -> vector<mpz_class>
    {
        vector<mpz_class> result;
        for (size_t i = 0 ; i < std::min(snf.diagonal.rows(), snf.diagonal.cols()) ; ++i)
            result.push_back(snf.diagonal(i, i));
        return result;
    }

    auto AbelianInvariants::to_string() const -> string
    {
        string out;
        if (free_rank > 0)
            out = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
        for (auto & t : torsion)
            out += (out.empty() ? "Z/" : " + Z/") + t.get_str();
        return out.empty() ? "0" : out;
    }

    auto relation_matrix(const Presentation & p) -> IntMatrix
    {
        IntMatrix m(p.relators().size(), p.generator_count());
        for (size_t r = 0 ; r < p.relators().size() ; ++r)
            for (auto l : p.relators()[r].letters())
                m(r, l.generator) += l.sign;
        return m;
    }

    auto abelian_invariants(const Presentation & p) -> AbelianInvariants
    {
        auto snf = smith_normal_form(relation_matrix(p));
        AbelianInvariants result;
        size_t rank = 0;
        for (auto & x : invariant_factors(snf)) {
            if (x != 0)
                ++rank;
            if (x > 1)
                result.torsion.push_back(x);
        }
        result.free_rank = p.generator_count() - rank;
        return result;
    }

    auto direct_sum(const vector<AbelianInvariants> & parts) -> AbelianInvariants
    {
        // diagonal relation matrix of all torsion coefficients, plus the free ranks
        size_t free_rank = 0;
        vector<mpz_class> torsion;
        for (auto & p : parts) {
            free_rank += p.free_rank;
            torsion.insert(torsion.end(), p.torsion.begin(), p.torsion.end());
        }
        IntMatrix m(torsion.size(), torsion.size());
        for (size_t i = 0 ; i < torsion.size() ; ++i)
            m(i, i) = torsion[i];
        AbelianInvariants result;
        result.free_rank = free_rank;
        for (auto & x : invariant_factors(smith_normal_form(m)))
            if (x > 1)
                result.torsion.push_back(x);
        return result;
    }

    auto PairingForm::is_skew_symmetric() const -> bool
    {
        return matrix.rows() == matrix.cols() && matrix.transposed() == -matrix;
    }

    auto PairingForm::is_unimodular() const -> bool
    {
        return matrix.rows() == matrix.cols() && abs(determinant(matrix)) == 1;
    }

    auto standard_symplectic(int genus) -> PairingForm
    {
        if (genus < 0)
            throw PreconditionError("genus must be non-negative");
        auto n = static_cast<size_t>(2 * genus);
        IntMatrix m(n, n);
        for (size_t i = 0 ; i < static_cast<size_t>(genus) ; ++i) {
            m(2 * i, 2 * i + 1) = 1;
            m(2 * i + 1, 2 * i) = -1;
        }
        return PairingForm{ std::move(m), "a1, b1, ..., ag, bg" };
    }

    auto preserves_pairing(const IntMatrix & map, const PairingForm & source, const PairingForm & target) -> bool
    {
        if (map.rows() != target.matrix.rows() || map.cols() != source.matrix.rows()
                || source.matrix.rows() != source.matrix.cols() || target.matrix.rows() != target.matrix.cols())
            throw PreconditionError("pairing dimensions do not match the map");
        return map.transposed() * target.matrix * map == source.matrix;
    }
}
