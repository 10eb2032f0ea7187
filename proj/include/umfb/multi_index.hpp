#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include <umfb/errors.hpp>
#include <umfb/numeric.hpp>

namespace umfb
{

// A vector of nonnegative integers: derivative orders, partition columns,
// moment indices.
class MultiIndex
{
public:
    using value_type = std::uint32_t;
    using storage_type = boost::container::small_vector<value_type, 4>;

    MultiIndex() = default;
    explicit MultiIndex(std::size_t length) : m_entries(length, 0) {}
    MultiIndex(std::initializer_list<value_type> entries) : m_entries(entries) {}
    template <typename It>
    MultiIndex(It first, It last) : m_entries(first, last)
    {
    }

    static MultiIndex unit(std::size_t length, std::size_t position)
    {
        MultiIndex e(length);
        e[position] = 1;
        return e;
    }

    std::size_t size() const noexcept
    {
        return m_entries.size();
    }
    value_type operator[](std::size_t k) const noexcept
    {
        return m_entries[k];
    }
    value_type &operator[](std::size_t k) noexcept
    {
        return m_entries[k];
    }
    auto begin() const noexcept
    {
        return m_entries.begin();
    }
    auto end() const noexcept
    {
        return m_entries.end();
    }
    auto begin() noexcept
    {
        return m_entries.begin();
    }
    auto end() noexcept
    {
        return m_entries.end();
    }

    // |i|
    std::uint64_t order() const noexcept
    {
        std::uint64_t total = 0;
        for (auto v : m_entries) {
            total += v;
        }
        return total;
    }
    bool is_zero() const noexcept
    {
        return std::all_of(m_entries.begin(), m_entries.end(), [](value_type v) { return v == 0; });
    }
    // Entrywise <=.
    bool fits_in(const MultiIndex &other) const noexcept;

    MultiIndex &operator+=(const MultiIndex &other);
    MultiIndex &operator-=(const MultiIndex &other);
    friend MultiIndex operator+(MultiIndex a, const MultiIndex &b)
    {
        return a += b;
    }
    friend MultiIndex operator-(MultiIndex a, const MultiIndex &b)
    {
        return a -= b;
    }
    friend MultiIndex operator*(value_type k, MultiIndex a)
    {
        for (auto &v : a.m_entries) {
            v *= k;
        }
        return a;
    }

    friend bool operator==(const MultiIndex &a, const MultiIndex &b) noexcept
    {
        return std::equal(a.begin(), a.end(), b.begin(), b.end());
    }
    // Lexicographic, entries compared left to right.
    friend std::strong_ordering operator<=>(const MultiIndex &a, const MultiIndex &b) noexcept
    {
        return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
    }

    std::size_t hash() const noexcept;

    // "2,1"
    std::string to_string() const;
    // Comma-separated nonnegative integers, no spaces. Throws ParseError.
    static MultiIndex parse(std::string_view text);

private:
    storage_type m_entries;
};

struct MultiIndexHash {
    std::size_t operator()(const MultiIndex &i) const noexcept
    {
        return i.hash();
    }
};

// i! = i_1! i_2! ... i_n!
Integer multi_factorial(const MultiIndex &i);

// i! / (k_1! ... k_p!). Throws PartsMismatch unless the parts sum to i.
Integer multinomial(const MultiIndex &i, std::span<const MultiIndex> parts);

// prod_r C(i_r, k_r), zero unless k fits in i.
Integer multi_binomial(const MultiIndex &i, const MultiIndex &k);

// Every k with 0 <= k <= i entrywise, lexicographically ascending.
std::vector<MultiIndex> sub_indices(const MultiIndex &i);

// Every multi-index of the given length and order <= max_order, sorted by
// (order, lex).
std::vector<MultiIndex> indices_up_to(std::size_t length, std::uint64_t max_order);

// One (column, multiplicity) pair of a partition.
struct PartitionPart {
    MultiIndex column;
    std::uint32_t multiplicity = 0;

    friend bool operator==(const PartitionPart &, const PartitionPart &) = default;
};

// A multiset of nonzero columns summing to a multi-index. Columns are kept
// strictly increasing in lexicographic order.
class MultiIndexPartition
{
public:
    MultiIndexPartition() = default;
    // Parts must already be canonical; throws std::invalid_argument otherwise.
    explicit MultiIndexPartition(std::vector<PartitionPart> parts);
    // Any order, repeats allowed; zero columns rejected.
    static MultiIndexPartition from_columns(std::vector<MultiIndex> columns);

    std::span<const PartitionPart> parts() const noexcept
    {
        return m_parts;
    }
    // l(lambda)
    std::uint64_t length() const noexcept;
    // Sum of multiplicity * column.
    MultiIndex total() const;
    // lambda! = prod (column!)^multiplicity
    Integer column_factorial() const;
    // m(lambda)! = prod multiplicity!
    Integer multiplicity_factorial() const;
    // i! / (m(lambda)! lambda!) with i = total().
    Integer coefficient() const;

    // Rows are variables, columns expanded by multiplicity: "[0 1 1; 1 0 0]".
    std::string to_matrix_string() const;
    // "{(0,1),(1,0)^2}"
    std::string to_string() const;

    friend bool operator==(const MultiIndexPartition &, const MultiIndexPartition &) = default;

private:
    std::vector<PartitionPart> m_parts;
};

namespace detail
{

// Recursive descent: the next column is strictly below the previous one in
// lex order, taken with its largest-first multiplicity.
template <typename Visitor>
class PartitionWalker
{
public:
    PartitionWalker(const MultiIndex &i, Visitor &visit)
        : m_columns(sub_indices(i)), m_residual(i), m_visit(visit)
    {
        // sub_indices starts with the zero index; drop it.
        m_columns.erase(m_columns.begin());
    }

    void run()
    {
        descend(m_columns.size());
    }

private:
    void descend(std::size_t limit)
    {
        if (m_residual.is_zero()) {
            std::vector<PartitionPart> parts(m_stack.rbegin(), m_stack.rend());
            m_visit(MultiIndexPartition(std::move(parts)));
            return;
        }
        for (std::size_t c = limit; c-- > 0;) {
            const auto &column = m_columns[c];
            const auto most = max_multiplicity(column);
            for (auto r = most; r >= 1; --r) {
                const auto block = r * column;
                m_residual -= block;
                m_stack.push_back({column, r});
                descend(c);
                m_stack.pop_back();
                m_residual += block;
            }
        }
    }

    std::uint32_t max_multiplicity(const MultiIndex &column) const
    {
        std::uint32_t most = UINT32_MAX;
        for (std::size_t r = 0; r < column.size(); ++r) {
            if (column[r] != 0) {
                most = std::min(most, m_residual[r] / column[r]);
            }
        }
        return most;
    }

    std::vector<MultiIndex> m_columns;
    MultiIndex m_residual;
    std::vector<PartitionPart> m_stack;
    Visitor &m_visit;
};

template <typename Visitor>
class CompositionWalker
{
public:
    CompositionWalker(const MultiIndex &i, std::size_t parts, Visitor &visit)
        : m_residual(i), m_tuple(parts, MultiIndex(i.size())), m_visit(visit)
    {
    }

    void run()
    {
        place(0);
    }

private:
    void place(std::size_t slot)
    {
        if (slot + 1 == m_tuple.size()) {
            m_tuple[slot] = m_residual;
            m_visit(std::span<const MultiIndex>(m_tuple));
            return;
        }
        for (const auto &k : sub_indices(m_residual)) {
            m_tuple[slot] = k;
            m_residual -= k;
            place(slot + 1);
            m_residual += k;
        }
    }

    MultiIndex m_residual;
    std::vector<MultiIndex> m_tuple;
    Visitor &m_visit;
};

} // namespace detail

// Calls visit(const MultiIndexPartition &) once per partition of i.
// Throws ZeroIndex when |i| = 0.
template <typename Visitor>
void for_each_partition(const MultiIndex &i, Visitor &&visit)
{
    if (i.size() == 0 || i.is_zero()) {
        throw ZeroIndex("partitions of the zero multi-index are not enumerated");
    }
    detail::PartitionWalker<std::remove_reference_t<Visitor>> walker(i, visit);
    walker.run();
}

std::vector<MultiIndexPartition> partitions(const MultiIndex &i);

// Number of partitions of i, by a coin-change recurrence over sub-indices.
Integer count_partitions(const MultiIndex &i);

// Calls visit(std::span<const MultiIndex>) once per ordered tuple
// (k_1, ..., k_parts) with sum i; zero parts allowed. Tuples come in
// lexicographic order of their concatenation.
template <typename Visitor>
void for_each_composition(const MultiIndex &i, std::size_t parts, Visitor &&visit)
{
    if (parts == 0) {
        throw std::invalid_argument("compositions need at least one part");
    }
    detail::CompositionWalker<std::remove_reference_t<Visitor>> walker(i, parts, visit);
    walker.run();
}

std::vector<std::vector<MultiIndex>> compositions_into(const MultiIndex &i, std::size_t parts);

// prod_r C(i_r + parts - 1, parts - 1)
Integer count_compositions(const MultiIndex &i, std::size_t parts);

} // namespace umfb
