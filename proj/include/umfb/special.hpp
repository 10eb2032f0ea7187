#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <umfb/errors.hpp>
#include <umfb/moment_sequence.hpp>
#include <umfb/multi_index.hpp>
#include <umfb/numeric.hpp>

namespace umfb
{

// Exact moments (or cumulants) of an n-dimensional vector for every index up
// to a total order K. The zero index is always 1.
class MomentTable
{
public:
    MomentTable(std::uint32_t n, std::uint64_t max_order);

    std::uint32_t dimension() const noexcept
    {
        return m_n;
    }
    std::uint64_t max_order() const noexcept
    {
        return m_max_order;
    }
    const std::map<MultiIndex, Rational> &values() const noexcept
    {
        return m_values;
    }

    // Throws MissingValue when i is beyond the table.
    Rational at(const MultiIndex &i) const;
    // Throws DimensionMismatch / std::out_of_range on a bad index.
    void set(const MultiIndex &i, Rational value);
    // Every index of order <= K present.
    bool complete() const;

    MomentSequence as_sequence() const;

    // {"n": int, "K": int, "values": [{"index": [...], "value": "p/q"}, ...]}
    std::string to_json() const;
    static MomentTable from_json(std::string_view text);

    friend bool operator==(const MomentTable &, const MomentTable &) = default;

private:
    std::uint32_t m_n;
    std::uint64_t m_max_order;
    std::map<MultiIndex, Rational> m_values;
};

// Cumulant c_i from moments: the partition sum with a_k = (-1)^(k-1) (k-1)!.
Rational moments_to_cumulants(const MomentTable &moments, const MultiIndex &i);
// Moment m_i from cumulants: the partition sum with a_k = 1.
Rational cumulants_to_moments(const MomentTable &cumulants, const MultiIndex &i);
// Whole-table conversions up to the table's order.
MomentTable cumulant_table(const MomentTable &moments);
MomentTable moment_table(const MomentTable &cumulants);

// E[S_N^i] for a randomized compound Poisson sum: alpha holds the
// univariate moments a_k of the random parameter, mu the moments of the
// summands.
Rational compound_poisson_moments(const MomentTable &alpha, const MomentTable &mu, const MultiIndex &i);

// The i-th derivative at 0 of the Laplace transform f(mu, -t): (-1)^|i| m_i.
Rational laplace_derivative_sign(const MomentTable &moments, const MultiIndex &i);
// Same quantity through the umbral composition route: the generalized Bell
// polynomial with outer moments m and inner series t_j -> -t_j.
Rational laplace_derivative_by_composition(const MomentTable &moments, const MultiIndex &i);

// Dense symmetric n x n matrix over Rational or double.
template <typename T>
class SymmetricMatrix
{
public:
    // Row-major entries; throws std::invalid_argument unless square and
    // exactly symmetric.
    SymmetricMatrix(std::size_t n, std::vector<T> entries);

    std::size_t dimension() const noexcept
    {
        return m_n;
    }
    const T &operator()(std::size_t a, std::size_t b) const noexcept
    {
        return m_entries[a * m_n + b];
    }
    // Gauss-Jordan with partial pivoting. Throws SingularSigma on a zero
    // pivot (exact) or a pivot below 1e-12 of the largest entry (double).
    SymmetricMatrix inverse() const;

private:
    std::size_t m_n;
    std::vector<T> m_entries;
};

enum class HermiteKind {
    // H_i(x, Sigma) = (-1)^|i| D^i phi / phi
    Standard,
    // H~_i(x, Sigma) = H_i(x Sigma^-1, Sigma^-1)
    Scaled,
};

// Appell route: binomial expansion of (A + c)^i with A^k the partition sum
// over order-2 columns with a_l = (-1)^l.
template <typename T>
T hermite(const MultiIndex &i, const SymmetricMatrix<T> &sigma, const std::vector<T> &x,
          HermiteKind kind = HermiteKind::Standard);

// Generalized Bell route: (-1)^|i| times the partition sum with a_l = (-1)^l
// over the moments of mu_x (order 1: x S; order 2: S).
template <typename T>
T hermite_via_bell(const MultiIndex &i, const SymmetricMatrix<T> &sigma, const std::vector<T> &x,
                   HermiteKind kind = HermiteKind::Standard);

extern template class SymmetricMatrix<Rational>;
extern template class SymmetricMatrix<double>;

} // namespace umfb
