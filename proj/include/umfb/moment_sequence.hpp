#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <umfb/multi_index.hpp>
#include <umfb/numeric.hpp>

namespace umfb
{

// The moments a_k (or a_i for multi-indices) that stand in for an umbra.
// Every kind has a_0 = 1.
class MomentSequence
{
public:
    enum class Kind {
        Symbolic,
        // a_k = 1; the generating function is e^t.
        Unity,
        // a_k = (-1)^(k-1) (k-1)!; generating function 1 + log(1 + t).
        SingletonDotSingleton,
        // a_k = (-1)^k k!; generating function 1 / (1 + t).
        MinusOneDotSingleton,
        NumericUni,
        NumericMulti,
    };

    MomentSequence() = default;

    static MomentSequence symbolic()
    {
        return MomentSequence(Kind::Symbolic);
    }
    static MomentSequence unity()
    {
        return MomentSequence(Kind::Unity);
    }
    static MomentSequence singleton_dot_singleton()
    {
        return MomentSequence(Kind::SingletonDotSingleton);
    }
    static MomentSequence minus_one_dot_singleton()
    {
        return MomentSequence(Kind::MinusOneDotSingleton);
    }
    // values[k - 1] = a_k for k = 1..values.size().
    static MomentSequence numeric(std::vector<Rational> values);
    // Values at the zero index are ignored (a_0 = 1).
    static MomentSequence numeric(std::map<MultiIndex, Rational> values);

    Kind kind() const noexcept
    {
        return m_kind;
    }
    bool is_symbolic() const noexcept
    {
        return m_kind == Kind::Symbolic;
    }

    // Univariate access. Throws MissingValue when undefined.
    Rational at(std::uint64_t k) const;
    // Multi-index access. Univariate kinds answer length-1 indices; Unity
    // answers every index.
    Rational at(const MultiIndex &i) const;

private:
    explicit MomentSequence(Kind kind) : m_kind(kind) {}

    Kind m_kind = Kind::Symbolic;
    std::vector<Rational> m_uni;
    std::map<MultiIndex, Rational> m_multi;
};

} // namespace umfb
