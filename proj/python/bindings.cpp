#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <umfb/chain_rule.hpp>
#include <umfb/errors.hpp>
#include <umfb/faa_di_bruno.hpp>
#include <umfb/special.hpp>

namespace py = pybind11;
using namespace umfb;

namespace
{

using Index = std::vector<std::uint32_t>;

MultiIndex to_index(const Index &i)
{
    MultiIndex out(i.size());
    std::copy(i.begin(), i.end(), out.begin());
    return out;
}

py::tuple from_index(const MultiIndex &i)
{
    return py::cast(Index(i.begin(), i.end()));
}

// Accepts int, fractions.Fraction or a "p/q" string.
Rational to_rational(const py::handle &value)
{
    if (py::isinstance<py::float_>(value)) {
        throw std::invalid_argument("exact values only; pass an int, Fraction or \"p/q\" string");
    }
    return parse_rational(py::str(value).cast<std::string>());
}

py::object from_rational(const Rational &value)
{
    return py::module_::import("fractions").attr("Fraction")(to_string(value));
}

MomentTable to_table(const py::dict &values)
{
    std::uint32_t n = 0;
    std::uint64_t order = 0;
    std::map<MultiIndex, Rational> entries;
    for (const auto &[key, value] : values) {
        const auto i = to_index(key.cast<Index>());
        if (n != 0 && i.size() != n) {
            throw DimensionMismatch("table keys differ in length");
        }
        n = static_cast<std::uint32_t>(i.size());
        order = std::max<std::uint64_t>(order, i.order());
        entries[i] = to_rational(value);
    }
    if (n == 0) {
        throw std::invalid_argument("empty table");
    }
    MomentTable table(n, order);
    for (const auto &[i, v] : entries) {
        if (!i.is_zero()) {
            table.set(i, v);
        }
    }
    return table;
}

py::dict from_table(const MomentTable &table)
{
    py::dict out;
    for (const auto &[i, v] : table.values()) {
        out[from_index(i)] = from_rational(v);
    }
    return out;
}

InnerMode to_mode(bool shared)
{
    return shared ? InnerMode::Shared : InnerMode::Distinct;
}

Format to_format(const std::string &name)
{
    if (name == "text") {
        return Format::Text;
    }
    if (name == "latex") {
        return Format::Latex;
    }
    if (name == "json") {
        return Format::Json;
    }
    throw std::invalid_argument("format must be text, latex or json");
}

template <typename T>
SymmetricMatrix<T> to_matrix(const std::vector<std::vector<T>> &rows)
{
    std::vector<T> entries;
    for (const auto &row : rows) {
        if (row.size() != rows.size()) {
            throw std::invalid_argument("sigma must be square");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return SymmetricMatrix<T>(rows.size(), std::move(entries));
}

HermiteKind to_kind(bool scaled)
{
    return scaled ? HermiteKind::Scaled : HermiteKind::Standard;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Multivariate Faa di Bruno expansions via multi-index partitions";

    py::register_exception<ResourceCapExceeded>(m, "ResourceCapExceeded", PyExc_RuntimeError);
    py::register_exception<SingularSigma>(m, "SingularSigma", PyExc_ValueError);

    py::class_<FormulaPoly>(m, "Formula")
        .def("__len__", &FormulaPoly::size)
        .def("__str__", [](const FormulaPoly &p) { return render(p, Format::Text); })
        .def("__repr__", [](const FormulaPoly &p) { return "Formula(" + render(p, Format::Text) + ")"; })
        .def(py::self == py::self)
        .def(
            "render", [](const FormulaPoly &p, const std::string &format) { return render(p, to_format(format)); },
            py::arg("format") = "text")
        .def("coefficients",
             [](const FormulaPoly &p) {
                 py::dict out;
                 for (const auto &term : p.terms()) {
                     const auto key = render(FormulaPoly::monomial(p.dims(), term.monomial), Format::Text);
                     out[py::str(key)] = from_rational(term.coeff);
                 }
                 return out;
             },
             "Monomial text mapped to its exact coefficient.")
        .def_static(
            "from_json", [](const std::string &text) { return parse_json(text); }, py::arg("text"));

    m.def(
        "partitions",
        [](const Index &i) {
            std::vector<std::vector<std::pair<py::tuple, std::uint32_t>>> out;
            for_each_partition(to_index(i), [&](const MultiIndexPartition &p) {
                auto &parts = out.emplace_back();
                for (const auto &part : p.parts()) {
                    parts.emplace_back(from_index(part.column), part.multiplicity);
                }
            });
            return out;
        },
        py::arg("index"), "Partitions of a multi-index as lists of (column, multiplicity).");
    m.def(
        "count_partitions", [](const Index &i) { return py::int_(py::str(to_string(count_partitions(to_index(i))))); },
        py::arg("index"));

    m.def(
        "expand",
        [](const Index &i, std::uint32_t n, bool shared, unsigned threads) {
            py::gil_scoped_release release;
            return umfb::umfb({to_index(i), n, to_mode(shared)}, {threads, 0});
        },
        py::arg("index"), py::arg("n") = 1, py::arg("shared_inner") = false, py::arg("threads") = 1,
        "Derivative of f(g1(t), ..., gn(t)) of the given order, in symbols f[..] and g<k>[..].");
    m.def(
        "chain_rule",
        [](const Index &i, std::uint32_t n, bool shared, unsigned threads) {
            py::gil_scoped_release release;
            ChainRuleOptions options;
            options.threads = threads;
            return chain_rule_derivative({to_index(i), n, to_mode(shared)}, options);
        },
        py::arg("index"), py::arg("n") = 1, py::arg("shared_inner") = false, py::arg("threads") = 1,
        "The same derivative by repeated differentiation.");
    m.def(
        "generalized_bell",
        [](const Index &i, std::uint32_t n, bool shared, unsigned threads) {
            py::gil_scoped_release release;
            return generalized_bell(to_index(i), n, to_mode(shared), {threads, 0});
        },
        py::arg("index"), py::arg("n") = 1, py::arg("shared_inner") = false, py::arg("threads") = 1);
    m.def(
        "predicted_term_count",
        [](const Index &i, std::uint32_t n, bool shared) {
            return py::int_(py::str(to_string(predicted_term_count({to_index(i), n, to_mode(shared)}))));
        },
        py::arg("index"), py::arg("n") = 1, py::arg("shared_inner") = false);

    m.def(
        "cumulant", [](const py::dict &moments, const Index &i) {
            return from_rational(moments_to_cumulants(to_table(moments), to_index(i)));
        },
        py::arg("moments"), py::arg("index"));
    m.def(
        "moment", [](const py::dict &cumulants, const Index &i) {
            return from_rational(cumulants_to_moments(to_table(cumulants), to_index(i)));
        },
        py::arg("cumulants"), py::arg("index"));
    m.def(
        "cumulants", [](const py::dict &moments) { return from_table(cumulant_table(to_table(moments))); },
        py::arg("moments"), "Every cumulant up to the order of the moment table.");
    m.def(
        "moments", [](const py::dict &cumulants) { return from_table(moment_table(to_table(cumulants))); },
        py::arg("cumulants"));
    m.def(
        "compound_poisson_moment",
        [](const py::dict &alpha, const py::dict &mu, const Index &i) {
            return from_rational(compound_poisson_moments(to_table(alpha), to_table(mu), to_index(i)));
        },
        py::arg("alpha"), py::arg("mu"), py::arg("index"));

    m.def(
        "hermite",
        [](const Index &i, const std::vector<std::vector<py::object>> &sigma, const std::vector<py::object> &x,
           bool scaled, const std::string &route) {
            std::vector<std::vector<Rational>> rows;
            for (const auto &row : sigma) {
                auto &r = rows.emplace_back();
                for (const auto &v : row) {
                    r.push_back(to_rational(v));
                }
            }
            std::vector<Rational> point;
            for (const auto &v : x) {
                point.push_back(to_rational(v));
            }
            const auto s = to_matrix(rows);
            if (route == "bell") {
                return from_rational(hermite_via_bell<Rational>(to_index(i), s, point, to_kind(scaled)));
            }
            if (route != "appell") {
                throw std::invalid_argument("route must be appell or bell");
            }
            return from_rational(hermite<Rational>(to_index(i), s, point, to_kind(scaled)));
        },
        py::arg("index"), py::arg("sigma"), py::arg("x"), py::arg("scaled") = false, py::arg("route") = "appell",
        "Exact multivariate Hermite polynomial value.");
    m.def(
        "hermite_float",
        [](const Index &i, const std::vector<std::vector<double>> &sigma, const std::vector<double> &x, bool scaled,
           const std::string &route) {
            const auto s = to_matrix(sigma);
            if (route == "bell") {
                return hermite_via_bell<double>(to_index(i), s, x, to_kind(scaled));
            }
            if (route != "appell") {
                throw std::invalid_argument("route must be appell or bell");
            }
            return hermite<double>(to_index(i), s, x, to_kind(scaled));
        },
        py::arg("index"), py::arg("sigma"), py::arg("x"), py::arg("scaled") = false, py::arg("route") = "appell");
}
