#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/container/small_vector.hpp>

#include <umfb/moment_sequence.hpp>
#include <umfb/multi_index.hpp>
#include <umfb/numeric.hpp>

namespace umfb
{

// Outer: a partial derivative of the outer function, f[j_1,...,j_n].
// Inner: a partial derivative of inner function `id`, g<id>[i_1,...,i_m].
// Var:   the indeterminate x<id> of a generalized Bell polynomial.
enum class SymbolKind : std::uint8_t { Outer = 0, Inner = 1, Var = 2 };

struct Symbol {
    SymbolKind kind = SymbolKind::Outer;
    std::uint32_t id = 0;
    MultiIndex index;

    static Symbol outer(MultiIndex index)
    {
        return {SymbolKind::Outer, 0, std::move(index)};
    }
    static Symbol inner(std::uint32_t fn, MultiIndex index)
    {
        return {SymbolKind::Inner, fn, std::move(index)};
    }
    static Symbol var(std::uint32_t j)
    {
        return {SymbolKind::Var, j, {}};
    }

    friend bool operator==(const Symbol &, const Symbol &) = default;
    friend std::strong_ordering operator<=>(const Symbol &a, const Symbol &b) noexcept
    {
        if (auto c = a.kind <=> b.kind; c != 0) {
            return c;
        }
        if (auto c = a.id <=> b.id; c != 0) {
            return c;
        }
        return a.index <=> b.index;
    }
};

struct Factor {
    Symbol symbol;
    std::uint32_t power = 1;

    friend bool operator==(const Factor &, const Factor &) = default;
    friend std::strong_ordering operator<=>(const Factor &a, const Factor &b) noexcept
    {
        if (auto c = a.symbol <=> b.symbol; c != 0) {
            return c;
        }
        return a.power <=> b.power;
    }
};

// A product of symbols with positive exponents, sorted by symbol with no
// symbol repeated.
class Monomial
{
public:
    using storage_type = boost::container::small_vector<Factor, 4>;

    Monomial() = default;
    // Sorts and merges repeated symbols; zero powers are dropped.
    explicit Monomial(storage_type factors);

    std::span<const Factor> factors() const noexcept
    {
        return {m_factors.data(), m_factors.size()};
    }
    bool is_unit() const noexcept
    {
        return m_factors.empty();
    }
    // Sum of |index| * power over Outer factors.
    std::uint64_t outer_degree() const noexcept;
    std::size_t hash() const noexcept;

    friend Monomial operator*(const Monomial &a, const Monomial &b);
    friend bool operator==(const Monomial &a, const Monomial &b) noexcept
    {
        return std::equal(a.m_factors.begin(), a.m_factors.end(), b.m_factors.begin(), b.m_factors.end());
    }

private:
    storage_type m_factors;
};

struct MonomialHash {
    std::size_t operator()(const Monomial &m) const noexcept
    {
        return m.hash();
    }
};

// Canonical term order: outer degree ascending, then the factor lists
// compared lexicographically (Outer before Inner before Var; Inner by
// fn-id then index; indices lex ascending).
bool term_order(const Monomial &a, const Monomial &b) noexcept;

struct Term {
    Monomial monomial;
    Rational coeff;

    friend bool operator==(const Term &, const Term &) = default;
};

// n: arity of the outer function; m: number of inner variables.
struct Dimensions {
    std::uint32_t n = 1;
    std::uint32_t m = 1;

    friend bool operator==(const Dimensions &, const Dimensions &) = default;
};

// Sparse polynomial with exact coefficients over derivative symbols. Terms
// are collected, nonzero and sorted by term_order.
class FormulaPoly
{
public:
    explicit FormulaPoly(Dimensions dims = {}) : m_dims(dims) {}

    static FormulaPoly constant(Dimensions dims, Rational value);
    static FormulaPoly unit(Dimensions dims)
    {
        return constant(dims, 1);
    }
    static FormulaPoly monomial(Dimensions dims, Monomial m, Rational coeff = 1);
    // Collects like terms, drops zeros, sorts.
    static FormulaPoly from_terms(Dimensions dims, std::vector<Term> terms);

    Dimensions dims() const noexcept
    {
        return m_dims;
    }
    std::span<const Term> terms() const noexcept
    {
        return m_terms;
    }
    std::size_t size() const noexcept
    {
        return m_terms.size();
    }
    bool is_zero() const noexcept
    {
        return m_terms.empty();
    }

    // Throws DimensionMismatch when a symbol does not fit the dimensions.
    void validate() const;

    FormulaPoly operator-() const;
    friend FormulaPoly operator+(const FormulaPoly &p, const FormulaPoly &q);
    friend FormulaPoly operator-(const FormulaPoly &p, const FormulaPoly &q);
    friend FormulaPoly operator*(const FormulaPoly &p, const FormulaPoly &q);
    friend bool operator==(const FormulaPoly &, const FormulaPoly &) = default;

private:
    Dimensions m_dims;
    std::vector<Term> m_terms;

    friend class TermCollector;
};

FormulaPoly poly_add(const FormulaPoly &p, const FormulaPoly &q);
FormulaPoly poly_mul(const FormulaPoly &p, const FormulaPoly &q);

// Hash-based accumulator for like-term collection.
class TermCollector
{
public:
    TermCollector() = default;

    void add(Monomial m, const Rational &coeff);
    void add(const FormulaPoly &p);
    void merge(TermCollector &&other);
    std::size_t size() const noexcept
    {
        return m_terms.size();
    }
    FormulaPoly finish(Dimensions dims) &&;

private:
    std::unordered_map<Monomial, Rational, MonomialHash> m_terms;
};

enum class Format { Text, Latex, Json };

std::string render(const FormulaPoly &p, Format format);
// Inverse of render(p, Format::Json). Throws ParseError.
FormulaPoly parse_json(std::string_view text);

// Values for substitute(). A symbolic outer keeps Outer symbols; an empty
// inner list keeps all Inner symbols (a symbolic entry keeps that fn-id);
// an empty vars list keeps Var symbols.
struct Substitution {
    MomentSequence outer = MomentSequence::symbolic();
    std::vector<MomentSequence> inner;
    std::vector<Rational> vars;
};

// Throws MissingValue when a required value is undefined.
FormulaPoly substitute(const FormulaPoly &p, const Substitution &values);
// Fully numeric substitution. Throws MissingValue if any symbol survives.
Rational evaluate(const FormulaPoly &p, const Substitution &values);

} // namespace umfb
