#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace umfb
{

using Integer = mpz_class;
using Rational = mpq_class;

Integer factorial(std::uint64_t n);
Integer binomial(std::uint64_t n, std::uint64_t k);

// "p/q" when the denominator is not 1, plain decimal otherwise.
std::string to_string(const Integer &value);
std::string to_string(const Rational &value);

// Accepts "p", "-p", "p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);

inline int sign_power(std::uint64_t k)
{
    return (k % 2 == 0) ? 1 : -1;
}

} // namespace umfb
