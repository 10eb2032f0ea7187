#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <umfb/moment_sequence.hpp>
#include <umfb/multi_index.hpp>
#include <umfb/polynomial.hpp>

namespace umfb
{

enum class InnerMode {
    // n different inner functions g1..gn.
    Distinct,
    // Every outer argument is the same inner function; symbols carry fn-id 1.
    Shared,
};

// Derivative order `index` (length m) of f(g_1(t), ..., g_n(t)), t in R^m.
struct CompositionSpec {
    MultiIndex index;
    std::uint32_t n = 1;
    InnerMode inner_mode = InnerMode::Distinct;
    // Symbolic keeps f[...] symbols; numeric sequences are indexed by
    // length-n multi-indices (length 1 for the univariate kinds).
    MomentSequence outer = MomentSequence::symbolic();

    std::uint32_t m() const noexcept
    {
        return static_cast<std::uint32_t>(index.size());
    }
    Dimensions dims() const noexcept
    {
        return {n, m()};
    }
    // Throws std::invalid_argument.
    void validate() const;
};

struct ExpansionOptions {
    // 0 means std::thread::hardware_concurrency().
    unsigned threads = 1;
    std::uint64_t term_cap = 0; // 0 means default_term_cap()
};

// 10^7 unless UMFB_TERM_CAP is set in the environment.
std::uint64_t default_term_cap();

// sum over lambda |= i of i!/(m(lambda)! lambda!) a_{l(lambda)} g_lambda.
// A symbolic outer yields an f[l(lambda)] factor, a numeric one folds a_l
// into the coefficient. |i| = 0 gives the unit polynomial.
FormulaPoly dot_power_expansion(const MomentSequence &outer, const MultiIndex &i, std::uint32_t inner_fn = 1);

// Upper bound on the number of terms umfb() produces (exact for Distinct).
Integer predicted_term_count(const CompositionSpec &spec);

// Compressed multivariate Faa di Bruno formula: sum over compositions
// (k_1..k_n) of i of multinomial(i; k) prod_j expansion(k_j, j), with the
// outer powers gathered into f[l_1, ..., l_n].
// Throws ResourceCapExceeded when predicted_term_count exceeds the cap.
FormulaPoly umfb(const CompositionSpec &spec, const ExpansionOptions &options = {});

// Same expansion with f[l_1..l_n] written as x1^l_1 ... xn^l_n.
FormulaPoly generalized_bell(const MultiIndex &i, std::uint32_t n, InnerMode mode = InnerMode::Distinct,
                             const ExpansionOptions &options = {});

// Maps x1^l_1 ... xn^l_n back to f[l_1..l_n].
FormulaPoly bell_to_formula(const FormulaPoly &bell);

// Truncated series composition f[outer, (f(inner_1,t)-1, ..., f(inner_n,t)-1)]
// computed directly with exact rationals; returns the moment (i! times the
// series coefficient) at every i with |i| <= max_order. spec.index only
// fixes m. In Shared mode inner_values[0] is used for every argument.
// Throws TruncationTooLarge when max_order > 8.
std::map<MultiIndex, Rational> compose_generating_check(const CompositionSpec &spec,
                                                        const std::vector<MomentSequence> &inner_values,
                                                        std::uint64_t max_order);

} // namespace umfb
