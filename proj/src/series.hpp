#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include <umfb/multi_index.hpp>
#include <umfb/numeric.hpp>

namespace umfb::detail
{

// Dense multivariate power series in `vars` variables, truncated above total
// order `max_order`. Coefficients are plain series coefficients (not moments).
class TruncatedSeries
{
public:
    TruncatedSeries(std::size_t vars, std::uint64_t max_order)
        : m_indices(std::make_shared<Layout>(vars, max_order)), m_coeffs(m_indices->indices.size(), 0)
    {
    }

    static TruncatedSeries constant(std::size_t vars, std::uint64_t max_order, const Rational &value)
    {
        TruncatedSeries s(vars, max_order);
        s.m_coeffs[0] = value;
        return s;
    }

    const std::vector<MultiIndex> &indices() const noexcept
    {
        return m_indices->indices;
    }
    Rational &operator[](const MultiIndex &i)
    {
        return m_coeffs[m_indices->position.at(i)];
    }
    const Rational &operator[](const MultiIndex &i) const
    {
        return m_coeffs[m_indices->position.at(i)];
    }

    TruncatedSeries &operator+=(const TruncatedSeries &other)
    {
        for (std::size_t k = 0; k < m_coeffs.size(); ++k) {
            m_coeffs[k] += other.m_coeffs[k];
        }
        return *this;
    }
    TruncatedSeries &operator*=(const Rational &scale)
    {
        for (auto &c : m_coeffs) {
            c *= scale;
        }
        return *this;
    }
    friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        TruncatedSeries out(a.m_indices);
        const auto &idx = a.m_indices->indices;
        const auto limit = a.m_indices->max_order;
        for (std::size_t x = 0; x < idx.size(); ++x) {
            if (a.m_coeffs[x] == 0) {
                continue;
            }
            for (std::size_t y = 0; y < idx.size(); ++y) {
                if (b.m_coeffs[y] == 0 || idx[x].order() + idx[y].order() > limit) {
                    continue;
                }
                out[idx[x] + idx[y]] += a.m_coeffs[x] * b.m_coeffs[y];
            }
        }
        return out;
    }

private:
    struct Layout {
        Layout(std::size_t vars, std::uint64_t order) : indices(indices_up_to(vars, order)), max_order(order)
        {
            for (std::size_t k = 0; k < indices.size(); ++k) {
                position.emplace(indices[k], k);
            }
        }
        std::vector<MultiIndex> indices;
        std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> position;
        std::uint64_t max_order;
    };

    explicit TruncatedSeries(std::shared_ptr<const Layout> layout)
        : m_indices(std::move(layout)), m_coeffs(m_indices->indices.size(), 0)
    {
    }

    std::shared_ptr<const Layout> m_indices;
    std::vector<Rational> m_coeffs;
};

} // namespace umfb::detail
