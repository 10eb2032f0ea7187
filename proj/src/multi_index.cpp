#include <umfb/multi_index.hpp>

#include <charconv>
#include <sstream>

#include <boost/container_hash/hash.hpp>

namespace umfb
{

bool MultiIndex::fits_in(const MultiIndex &other) const noexcept
{
    if (size() != other.size()) {
        return false;
    }
    for (std::size_t r = 0; r < size(); ++r) {
        if (m_entries[r] > other[r]) {
            return false;
        }
    }
    return true;
}

MultiIndex &MultiIndex::operator+=(const MultiIndex &other)
{
    if (size() != other.size()) {
        throw DimensionMismatch("multi-index lengths differ");
    }
    for (std::size_t r = 0; r < size(); ++r) {
        m_entries[r] += other[r];
    }
    return *this;
}

MultiIndex &MultiIndex::operator-=(const MultiIndex &other)
{
    if (!other.fits_in(*this)) {
        throw std::invalid_argument("multi-index subtraction would go negative");
    }
    for (std::size_t r = 0; r < size(); ++r) {
        m_entries[r] -= other[r];
    }
    return *this;
}

std::size_t MultiIndex::hash() const noexcept
{
    return boost::hash_range(m_entries.begin(), m_entries.end());
}

std::string MultiIndex::to_string() const
{
    std::string out;
    for (std::size_t r = 0; r < size(); ++r) {
        if (r != 0) {
            out += ',';
        }
        out += std::to_string(m_entries[r]);
    }
    return out;
}

MultiIndex MultiIndex::parse(std::string_view text)
{
    MultiIndex result;
    if (text.empty()) {
        throw ParseError("empty multi-index");
    }
    std::size_t pos = 0;
    while (true) {
        const auto comma = text.find(',', pos);
        const auto field = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        value_type v = 0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
            throw ParseError("bad multi-index '" + std::string(text) + "': expected comma-separated nonnegative integers");
        }
        result.m_entries.push_back(v);
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return result;
}

Integer multi_factorial(const MultiIndex &i)
{
    Integer result = 1;
    for (auto v : i) {
        result *= factorial(v);
    }
    return result;
}

Integer multinomial(const MultiIndex &i, std::span<const MultiIndex> parts)
{
    MultiIndex sum(i.size());
    Integer denominator = 1;
    for (const auto &k : parts) {
        if (k.size() != i.size()) {
            throw PartsMismatch("part " + k.to_string() + " has the wrong length for " + i.to_string());
        }
        sum += k;
        denominator *= multi_factorial(k);
    }
    if (!(sum == i)) {
        throw PartsMismatch("parts sum to (" + sum.to_string() + "), not (" + i.to_string() + ")");
    }
    Integer result = multi_factorial(i);
    mpz_divexact(result.get_mpz_t(), result.get_mpz_t(), denominator.get_mpz_t());
    return result;
}

Integer multi_binomial(const MultiIndex &i, const MultiIndex &k)
{
    if (!k.fits_in(i)) {
        return 0;
    }
    Integer result = 1;
    for (std::size_t r = 0; r < i.size(); ++r) {
        result *= binomial(i[r], k[r]);
    }
    return result;
}

std::vector<MultiIndex> sub_indices(const MultiIndex &i)
{
    std::vector<MultiIndex> out;
    MultiIndex k(i.size());
    // Odometer with the last entry fastest gives lexicographic order.
    while (true) {
        out.push_back(k);
        bool advanced = false;
        for (std::size_t r = i.size(); r-- > 0;) {
            if (k[r] < i[r]) {
                ++k[r];
                advanced = true;
                break;
            }
            k[r] = 0;
        }
        if (!advanced) {
            return out;
        }
    }
}

std::vector<MultiIndex> indices_up_to(std::size_t length, std::uint64_t max_order)
{
    MultiIndex box(length);
    for (auto &v : box) {
        v = static_cast<MultiIndex::value_type>(max_order);
    }
    std::vector<MultiIndex> out;
    for (auto &k : sub_indices(box)) {
        if (k.order() <= max_order) {
            out.push_back(std::move(k));
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const MultiIndex &a, const MultiIndex &b) { return a.order() < b.order(); });
    return out;
}

MultiIndexPartition::MultiIndexPartition(std::vector<PartitionPart> parts) : m_parts(std::move(parts))
{
    for (std::size_t k = 0; k < m_parts.size(); ++k) {
        if (m_parts[k].column.is_zero() || m_parts[k].multiplicity == 0) {
            throw std::invalid_argument("partition parts must be nonzero columns with positive multiplicity");
        }
        if (k > 0 && !(m_parts[k - 1].column < m_parts[k].column)) {
            throw std::invalid_argument("partition columns must be strictly increasing");
        }
    }
}

MultiIndexPartition MultiIndexPartition::from_columns(std::vector<MultiIndex> columns)
{
    std::sort(columns.begin(), columns.end());
    std::vector<PartitionPart> parts;
    for (auto &c : columns) {
        if (!parts.empty() && parts.back().column == c) {
            ++parts.back().multiplicity;
        } else {
            parts.push_back({std::move(c), 1});
        }
    }
    return MultiIndexPartition(std::move(parts));
}

std::uint64_t MultiIndexPartition::length() const noexcept
{
    std::uint64_t total = 0;
    for (const auto &p : m_parts) {
        total += p.multiplicity;
    }
    return total;
}

MultiIndex MultiIndexPartition::total() const
{
    if (m_parts.empty()) {
        return {};
    }
    MultiIndex sum(m_parts.front().column.size());
    for (const auto &p : m_parts) {
        sum += p.multiplicity * p.column;
    }
    return sum;
}

Integer MultiIndexPartition::column_factorial() const
{
    Integer result = 1;
    for (const auto &p : m_parts) {
        Integer f = multi_factorial(p.column);
        Integer powered;
        mpz_pow_ui(powered.get_mpz_t(), f.get_mpz_t(), p.multiplicity);
        result *= powered;
    }
    return result;
}

Integer MultiIndexPartition::multiplicity_factorial() const
{
    Integer result = 1;
    for (const auto &p : m_parts) {
        result *= factorial(p.multiplicity);
    }
    return result;
}

Integer MultiIndexPartition::coefficient() const
{
    Integer result = multi_factorial(total());
    const Integer denominator = column_factorial() * multiplicity_factorial();
    mpz_divexact(result.get_mpz_t(), result.get_mpz_t(), denominator.get_mpz_t());
    return result;
}

std::string MultiIndexPartition::to_matrix_string() const
{
    std::string out = "[";
    const std::size_t rows = m_parts.empty() ? 0 : m_parts.front().column.size();
    for (std::size_t r = 0; r < rows; ++r) {
        if (r != 0) {
            out += "; ";
        }
        bool first = true;
        for (const auto &p : m_parts) {
            for (std::uint32_t k = 0; k < p.multiplicity; ++k) {
                if (!first) {
                    out += ' ';
                }
                first = false;
                out += std::to_string(p.column[r]);
            }
        }
    }
    return out + "]";
}

std::string MultiIndexPartition::to_string() const
{
    std::string out = "{";
    for (std::size_t k = 0; k < m_parts.size(); ++k) {
        if (k != 0) {
            out += ',';
        }
        out += '(' + m_parts[k].column.to_string() + ')';
        if (m_parts[k].multiplicity > 1) {
            out += '^' + std::to_string(m_parts[k].multiplicity);
        }
    }
    return out + "}";
}

std::vector<MultiIndexPartition> partitions(const MultiIndex &i)
{
    std::vector<MultiIndexPartition> out;
    for_each_partition(i, [&](MultiIndexPartition p) { out.push_back(std::move(p)); });
    return out;
}

Integer count_partitions(const MultiIndex &i)
{
    if (i.size() == 0 || i.is_zero()) {
        throw ZeroIndex("partitions of the zero multi-index are not counted");
    }
    // Mixed-radix position of every sub-index; ascending position order is
    // lexicographic order, so k - c always precedes k.
    const auto subs = sub_indices(i);
    std::vector<std::size_t> stride(i.size(), 1);
    for (std::size_t r = i.size() - 1; r > 0; --r) {
        stride[r - 1] = stride[r] * (i[r] + 1);
    }
    auto position = [&](const MultiIndex &k) {
        std::size_t pos = 0;
        for (std::size_t r = 0; r < k.size(); ++r) {
            pos += k[r] * stride[r];
        }
        return pos;
    };

    std::vector<Integer> ways(subs.size(), 0);
    ways[0] = 1;
    for (std::size_t c = 1; c < subs.size(); ++c) {
        const auto &column = subs[c];
        const auto shift = position(column);
        for (std::size_t k = c; k < subs.size(); ++k) {
            if (column.fits_in(subs[k])) {
                ways[k] += ways[k - shift];
            }
        }
    }
    return ways.back();
}

std::vector<std::vector<MultiIndex>> compositions_into(const MultiIndex &i, std::size_t parts)
{
    std::vector<std::vector<MultiIndex>> out;
    for_each_composition(i, parts, [&](std::span<const MultiIndex> tuple) { out.emplace_back(tuple.begin(), tuple.end()); });
    return out;
}

Integer count_compositions(const MultiIndex &i, std::size_t parts)
{
    if (parts == 0) {
        throw std::invalid_argument("compositions need at least one part");
    }
    Integer result = 1;
    for (auto v : i) {
        result *= binomial(v + parts - 1, parts - 1);
    }
    return result;
}

} // namespace umfb
