#include <umfb/moment_sequence.hpp>

#include <umfb/errors.hpp>

namespace umfb
{

MomentSequence MomentSequence::numeric(std::vector<Rational> values)
{
    MomentSequence s(Kind::NumericUni);
    s.m_uni = std::move(values);
    return s;
}

MomentSequence MomentSequence::numeric(std::map<MultiIndex, Rational> values)
{
    MomentSequence s(Kind::NumericMulti);
    s.m_multi = std::move(values);
    return s;
}

Rational MomentSequence::at(std::uint64_t k) const
{
    if (k == 0) {
        return 1;
    }
    switch (m_kind) {
        case Kind::Unity:
            return 1;
        case Kind::SingletonDotSingleton:
            return Rational(factorial(k - 1) * sign_power(k - 1));
        case Kind::MinusOneDotSingleton:
            return Rational(factorial(k) * sign_power(k));
        case Kind::NumericUni:
            if (k <= m_uni.size()) {
                return m_uni[k - 1];
            }
            break;
        case Kind::NumericMulti:
            return at(MultiIndex{static_cast<MultiIndex::value_type>(k)});
        case Kind::Symbolic:
            throw MissingValue("a symbolic moment sequence has no numeric values");
    }
    throw MissingValue("moment a_" + std::to_string(k) + " is not defined");
}

Rational MomentSequence::at(const MultiIndex &i) const
{
    if (i.is_zero()) {
        return 1;
    }
    switch (m_kind) {
        case Kind::Unity:
            return 1;
        case Kind::NumericMulti: {
            const auto it = m_multi.find(i);
            if (it != m_multi.end()) {
                return it->second;
            }
            throw MissingValue("moment at (" + i.to_string() + ") is not defined");
        }
        case Kind::Symbolic:
            throw MissingValue("a symbolic moment sequence has no numeric values");
        default:
            if (i.size() == 1) {
                return at(static_cast<std::uint64_t>(i[0]));
            }
            throw MissingValue("univariate moment sequence queried at (" + i.to_string() + ")");
    }
}

} // namespace umfb
