#include <umfb/special.hpp>

#include <cmath>

#include <nlohmann/json.hpp>

#include <umfb/faa_di_bruno.hpp>
#include <umfb/polynomial.hpp>

namespace umfb
{

MomentTable::MomentTable(std::uint32_t n, std::uint64_t max_order) : m_n(n), m_max_order(max_order)
{
    if (n == 0) {
        throw std::invalid_argument("moment tables need dimension >= 1");
    }
}

Rational MomentTable::at(const MultiIndex &i) const
{
    if (i.size() != m_n) {
        throw DimensionMismatch("index (" + i.to_string() + ") for a " + std::to_string(m_n) + "-dimensional table");
    }
    if (i.is_zero()) {
        return 1;
    }
    const auto it = m_values.find(i);
    if (it == m_values.end()) {
        throw MissingValue("table has no value at (" + i.to_string() + ")");
    }
    return it->second;
}

void MomentTable::set(const MultiIndex &i, Rational value)
{
    if (i.size() != m_n) {
        throw DimensionMismatch("index (" + i.to_string() + ") for a " + std::to_string(m_n) + "-dimensional table");
    }
    if (i.order() > m_max_order) {
        throw std::out_of_range("index (" + i.to_string() + ") beyond table order " + std::to_string(m_max_order));
    }
    if (i.is_zero()) {
        if (value != 1) {
            throw std::invalid_argument("the value at the zero index is fixed to 1");
        }
        return;
    }
    m_values[i] = std::move(value);
}

bool MomentTable::complete() const
{
    for (const auto &i : indices_up_to(m_n, m_max_order)) {
        if (!i.is_zero() && !m_values.contains(i)) {
            return false;
        }
    }
    return true;
}

MomentSequence MomentTable::as_sequence() const
{
    return MomentSequence::numeric(m_values);
}

std::string MomentTable::to_json() const
{
    nlohmann::ordered_json doc;
    doc["n"] = m_n;
    doc["K"] = m_max_order;
    auto values = nlohmann::ordered_json::array();
    for (const auto &i : indices_up_to(m_n, m_max_order)) {
        const auto it = m_values.find(i);
        if (it == m_values.end()) {
            continue;
        }
        nlohmann::ordered_json entry;
        entry["index"] = std::vector<std::uint32_t>(i.begin(), i.end());
        entry["value"] = to_string(it->second);
        values.push_back(std::move(entry));
    }
    doc["values"] = std::move(values);
    return doc.dump();
}

MomentTable MomentTable::from_json(std::string_view text)
{
    try {
        const auto doc = nlohmann::json::parse(text);
        MomentTable table(doc.at("n").get<std::uint32_t>(), doc.at("K").get<std::uint64_t>());
        for (const auto &entry : doc.at("values")) {
            const auto raw = entry.at("index").get<std::vector<std::uint32_t>>();
            table.set(MultiIndex(raw.begin(), raw.end()), parse_rational(entry.at("value").get<std::string>()));
        }
        return table;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("malformed moment table json: ") + e.what());
    } catch (const std::out_of_range &e) {
        throw ParseError(std::string("moment table: ") + e.what());
    } catch (const DimensionMismatch &e) {
        throw ParseError(std::string("moment table: ") + e.what());
    }
}

namespace
{

Rational partition_sum(const MomentSequence &outer, const MomentTable &inner, const MultiIndex &i)
{
    if (i.size() != inner.dimension()) {
        throw DimensionMismatch("index (" + i.to_string() + ") for a " + std::to_string(inner.dimension())
                                + "-dimensional table");
    }
    const auto expansion = dot_power_expansion(outer, i, 1);
    return evaluate(expansion, Substitution{MomentSequence::unity(), {inner.as_sequence()}, {}});
}

MomentTable convert_table(const MomentTable &source, const MomentSequence &outer)
{
    MomentTable out(source.dimension(), source.max_order());
    for (const auto &i : indices_up_to(source.dimension(), source.max_order())) {
        if (!i.is_zero()) {
            out.set(i, partition_sum(outer, source, i));
        }
    }
    return out;
}

} // namespace

Rational moments_to_cumulants(const MomentTable &moments, const MultiIndex &i)
{
    return partition_sum(MomentSequence::singleton_dot_singleton(), moments, i);
}

Rational cumulants_to_moments(const MomentTable &cumulants, const MultiIndex &i)
{
    return partition_sum(MomentSequence::unity(), cumulants, i);
}

MomentTable cumulant_table(const MomentTable &moments)
{
    return convert_table(moments, MomentSequence::singleton_dot_singleton());
}

MomentTable moment_table(const MomentTable &cumulants)
{
    return convert_table(cumulants, MomentSequence::unity());
}

Rational compound_poisson_moments(const MomentTable &alpha, const MomentTable &mu, const MultiIndex &i)
{
    if (alpha.dimension() != 1) {
        throw DimensionMismatch("the random-parameter table must be univariate");
    }
    return partition_sum(alpha.as_sequence(), mu, i);
}

Rational laplace_derivative_sign(const MomentTable &moments, const MultiIndex &i)
{
    return moments.at(i) * sign_power(i.order());
}

Rational laplace_derivative_by_composition(const MomentTable &moments, const MultiIndex &i)
{
    const auto n = moments.dimension();
    if (i.size() != n) {
        throw DimensionMismatch("index (" + i.to_string() + ") for a " + std::to_string(n) + "-dimensional table");
    }
    // f(nu_j, t) - 1 = -t_j
    std::vector<MomentSequence> inner;
    for (std::uint32_t j = 0; j < n; ++j) {
        std::map<MultiIndex, Rational> values;
        for (const auto &k : indices_up_to(n, i.order())) {
            if (!k.is_zero()) {
                values.emplace(k, k == MultiIndex::unit(n, j) ? Rational(-1) : Rational(0));
            }
        }
        inner.push_back(MomentSequence::numeric(std::move(values)));
    }
    const auto formula = umfb(CompositionSpec{i, n, InnerMode::Distinct, MomentSequence::symbolic()});
    return evaluate(formula, Substitution{moments.as_sequence(), std::move(inner), {}});
}

template <typename T>
SymmetricMatrix<T>::SymmetricMatrix(std::size_t n, std::vector<T> entries) : m_n(n), m_entries(std::move(entries))
{
    if (n == 0 || m_entries.size() != n * n) {
        throw std::invalid_argument("matrix needs n*n entries with n >= 1");
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (!((*this)(a, b) == (*this)(b, a))) {
                throw std::invalid_argument("matrix is not symmetric");
            }
        }
    }
}

namespace
{

template <typename T>
T magnitude(const T &v)
{
    using std::abs;
    return abs(v);
}

template <typename T>
bool negligible(const T &pivot, const T &scale)
{
    if constexpr (std::is_floating_point_v<T>) {
        return std::abs(pivot) < 1e-12 * scale;
    } else {
        return pivot == 0;
    }
}

} // namespace

template <typename T>
SymmetricMatrix<T> SymmetricMatrix<T>::inverse() const
{
    const auto n = m_n;
    std::vector<T> work = m_entries;
    std::vector<T> inv(n * n, T(0));
    for (std::size_t a = 0; a < n; ++a) {
        inv[a * n + a] = T(1);
    }
    T scale(0);
    for (const auto &v : m_entries) {
        if (magnitude(v) > scale) {
            scale = magnitude(v);
        }
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (magnitude(work[row * n + col]) > magnitude(work[pivot * n + col])) {
                pivot = row;
            }
        }
        if (negligible(work[pivot * n + col], scale)) {
            throw SingularSigma("covariance matrix is singular");
        }
        if (pivot != col) {
            for (std::size_t k = 0; k < n; ++k) {
                std::swap(work[pivot * n + k], work[col * n + k]);
                std::swap(inv[pivot * n + k], inv[col * n + k]);
            }
        }
        const T p = work[col * n + col];
        for (std::size_t k = 0; k < n; ++k) {
            work[col * n + k] /= p;
            inv[col * n + k] /= p;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || work[row * n + col] == 0) {
                continue;
            }
            const T factor = work[row * n + col];
            for (std::size_t k = 0; k < n; ++k) {
                work[row * n + k] -= factor * work[col * n + k];
                inv[row * n + k] -= factor * inv[col * n + k];
            }
        }
    }
    // Rounding can leave a float inverse slightly asymmetric.
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const T mean = (inv[a * n + b] + inv[b * n + a]) / T(2);
            inv[a * n + b] = mean;
            inv[b * n + a] = mean;
        }
    }
    return SymmetricMatrix(n, std::move(inv));
}

template class SymmetricMatrix<Rational>;
template class SymmetricMatrix<double>;

namespace
{

template <typename T>
T from_integer(const Integer &v)
{
    if constexpr (std::is_floating_point_v<T>) {
        return v.get_d();
    } else {
        return T(v);
    }
}

template <typename T>
T power(const T &base, std::uint64_t e)
{
    T result(1);
    for (std::uint64_t k = 0; k < e; ++k) {
        result *= base;
    }
    return result;
}

// S and the shift vector shared by both routes.
template <typename T>
struct HermiteData {
    SymmetricMatrix<T> quadratic;
    std::vector<T> linear;
};

template <typename T>
HermiteData<T> hermite_data(const MultiIndex &i, const SymmetricMatrix<T> &sigma, const std::vector<T> &x,
                            HermiteKind kind)
{
    const auto n = sigma.dimension();
    if (i.size() != n || x.size() != n) {
        throw DimensionMismatch("index, covariance and point dimensions differ");
    }
    if (kind == HermiteKind::Scaled) {
        return {sigma, x};
    }
    auto s = sigma.inverse();
    std::vector<T> shift(n, T(0));
    for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t a = 0; a < n; ++a) {
            shift[b] += x[a] * s(a, b);
        }
    }
    return {std::move(s), std::move(shift)};
}

// Moment of an order-1 or order-2 column under f = 1 + v t + 1/2 t S t.
template <typename T>
bool column_value(const MultiIndex &column, const HermiteData<T> &data, bool with_linear, T &value)
{
    const auto order = column.order();
    if (order == 1 && with_linear) {
        for (std::size_t a = 0; a < column.size(); ++a) {
            if (column[a] == 1) {
                value = data.linear[a];
                return true;
            }
        }
    }
    if (order == 2) {
        std::size_t first = column.size();
        std::size_t second = column.size();
        for (std::size_t a = 0; a < column.size(); ++a) {
            if (column[a] == 2) {
                first = second = a;
            } else if (column[a] == 1) {
                (first == column.size() ? first : second) = a;
            }
        }
        value = data.quadratic(first, second);
        return true;
    }
    return false;
}

// sum over lambda |= i of i!/(m(lambda)! lambda!) (-1)^l(lambda) prod values,
// restricted to partitions whose columns all have a value.
template <typename T>
T signed_partition_sum(const MultiIndex &i, const HermiteData<T> &data, bool with_linear)
{
    if (i.is_zero()) {
        return T(1);
    }
    T total(0);
    for_each_partition(i, [&](const MultiIndexPartition &lambda) {
        T product = from_integer<T>(lambda.coefficient()) * T(sign_power(lambda.length()));
        for (const auto &part : lambda.parts()) {
            T value(0);
            if (!column_value(part.column, data, with_linear, value)) {
                return;
            }
            product *= power(value, part.multiplicity);
        }
        total += product;
    });
    return total;
}

} // namespace

template <typename T>
T hermite(const MultiIndex &i, const SymmetricMatrix<T> &sigma, const std::vector<T> &x, HermiteKind kind)
{
    const auto data = hermite_data(i, sigma, x, kind);
    T total(0);
    for (const auto &k : sub_indices(i)) {
        if (k.order() % 2 != 0) {
            continue;
        }
        T term = from_integer<T>(multi_binomial(i, k)) * signed_partition_sum(k, data, false);
        for (std::size_t r = 0; r < i.size(); ++r) {
            term *= power(data.linear[r], i[r] - k[r]);
        }
        total += term;
    }
    return total;
}

template <typename T>
T hermite_via_bell(const MultiIndex &i, const SymmetricMatrix<T> &sigma, const std::vector<T> &x, HermiteKind kind)
{
    const auto data = hermite_data(i, sigma, x, kind);
    return signed_partition_sum(i, data, true) * T(sign_power(i.order()));
}

template Rational hermite(const MultiIndex &, const SymmetricMatrix<Rational> &, const std::vector<Rational> &,
                          HermiteKind);
template double hermite(const MultiIndex &, const SymmetricMatrix<double> &, const std::vector<double> &, HermiteKind);
template Rational hermite_via_bell(const MultiIndex &, const SymmetricMatrix<Rational> &,
                                   const std::vector<Rational> &, HermiteKind);
template double hermite_via_bell(const MultiIndex &, const SymmetricMatrix<double> &, const std::vector<double> &,
                                 HermiteKind);

} // namespace umfb
