#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <umfb/faa_di_bruno.hpp>
#include <umfb/polynomial.hpp>

namespace umfb
{

// Brute-force route to the same formula: repeated chain and product rule on
// collected polynomials.

// Current derivative of f(g_1(t), ..., g_n(t)) and the orders taken so far.
class DerivativeState
{
public:
    // f[0,...,0] with coefficient 1, nothing applied.
    static DerivativeState start(Dimensions dims);

    const FormulaPoly &poly() const noexcept
    {
        return m_poly;
    }
    const MultiIndex &applied() const noexcept
    {
        return m_applied;
    }

private:
    DerivativeState(FormulaPoly poly, MultiIndex applied) : m_poly(std::move(poly)), m_applied(std::move(applied)) {}

    FormulaPoly m_poly;
    MultiIndex m_applied;

    friend DerivativeState differentiate_once(const DerivativeState &, std::size_t, unsigned);
};

// d/dt_r of every term: f[a] -> sum_j f[a + e_j] g_j[e_r], g_j[l] -> g_j[l + e_r],
// product rule across factors. Var symbols are constants. r is 0-based.
FormulaPoly differentiate(const FormulaPoly &p, std::size_t r, unsigned threads = 1);

DerivativeState differentiate_once(const DerivativeState &state, std::size_t r, unsigned threads = 1);

struct ChainRuleOptions {
    unsigned threads = 1;
    std::uint64_t term_cap = 0; // 0 means default_term_cap()
    // Variables to differentiate in, one entry per step. Empty means
    // increasing variable index, each applied index[r] times.
    std::vector<std::size_t> order;
};

struct ChainRuleStats {
    // Largest intermediate polynomial seen.
    std::uint64_t peak_terms = 0;
};

// Requires a symbolic outer. Shared mode relabels every fn-id to 1. The
// zero-order outer symbol f[0,...,0] is read as 1.
FormulaPoly chain_rule_derivative(const CompositionSpec &spec, const ChainRuleOptions &options = {},
                                  ChainRuleStats *stats = nullptr);

struct EquivalenceReport {
    bool equal = true;
    // One monomial on which the two sides differ, rendered as text, with
    // its coefficient on each side.
    std::string monomial;
    Rational left;
    Rational right;

    std::string describe() const;
};

EquivalenceReport equivalence_check(const FormulaPoly &p, const FormulaPoly &q);

struct VerifyBounds {
    std::uint64_t max_order = 4;
    std::uint32_t max_n = 3;
    std::uint32_t max_m = 3;
};

struct VerifyReport {
    std::uint64_t cases = 0;
    bool ok = true;
    std::optional<CompositionSpec> failing_spec;
    EquivalenceReport difference;
};

// Compares umfb() with chain_rule_derivative() for every index of length
// 1..max_m and order <= max_order, every n in 1..max_n and both inner modes.
// `tamper`, when set, is applied to the umfb side (negative-path testing).
VerifyReport verify_sweep(const VerifyBounds &bounds,
                          const std::function<FormulaPoly(FormulaPoly)> &tamper = nullptr);

} // namespace umfb
