#include <umfb/numeric.hpp>

#include <umfb/errors.hpp>

namespace umfb
{

Integer factorial(std::uint64_t n)
{
    Integer result;
    mpz_fac_ui(result.get_mpz_t(), static_cast<unsigned long>(n));
    return result;
}

Integer binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n) {
        return 0;
    }
    Integer result;
    mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return result;
}

std::string to_string(const Integer &value)
{
    return value.get_str();
}

std::string to_string(const Rational &value)
{
    return value.get_str();
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    const auto valid = !s.empty() && s.find_first_not_of("+-0123456789/") == std::string::npos;
    if (valid) {
        if (s.front() == '+') {
            s.erase(0, 1);
        }
        Rational value;
        if (value.set_str(s, 10) == 0 && value.get_den() != 0) {
            value.canonicalize();
            return value;
        }
    }
    throw ParseError("not an exact rational: '" + std::string(text) + "'");
}

} // namespace umfb
