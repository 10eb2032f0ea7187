#include <umfb/polynomial.hpp>

#include <algorithm>

#include <boost/container_hash/hash.hpp>
#include <nlohmann/json.hpp>

#include <umfb/errors.hpp>

namespace umfb
{

Monomial::Monomial(storage_type factors)
{
    std::sort(factors.begin(), factors.end(),
              [](const Factor &a, const Factor &b) { return a.symbol < b.symbol; });
    for (auto &f : factors) {
        if (f.power == 0) {
            continue;
        }
        if (!m_factors.empty() && m_factors.back().symbol == f.symbol) {
            m_factors.back().power += f.power;
        } else {
            m_factors.push_back(std::move(f));
        }
    }
}

std::uint64_t Monomial::outer_degree() const noexcept
{
    std::uint64_t degree = 0;
    for (const auto &f : m_factors) {
        if (f.symbol.kind == SymbolKind::Outer) {
            degree += f.symbol.index.order() * f.power;
        }
    }
    return degree;
}

std::size_t Monomial::hash() const noexcept
{
    std::size_t seed = m_factors.size();
    for (const auto &f : m_factors) {
        boost::hash_combine(seed, static_cast<unsigned>(f.symbol.kind));
        boost::hash_combine(seed, f.symbol.id);
        boost::hash_combine(seed, f.symbol.index.hash());
        boost::hash_combine(seed, f.power);
    }
    return seed;
}

Monomial operator*(const Monomial &a, const Monomial &b)
{
    Monomial out;
    out.m_factors.reserve(a.m_factors.size() + b.m_factors.size());
    auto x = a.m_factors.begin();
    auto y = b.m_factors.begin();
    while (x != a.m_factors.end() && y != b.m_factors.end()) {
        const auto c = x->symbol <=> y->symbol;
        if (c < 0) {
            out.m_factors.push_back(*x++);
        } else if (c > 0) {
            out.m_factors.push_back(*y++);
        } else {
            out.m_factors.push_back({x->symbol, x->power + y->power});
            ++x;
            ++y;
        }
    }
    out.m_factors.insert(out.m_factors.end(), x, a.m_factors.end());
    out.m_factors.insert(out.m_factors.end(), y, b.m_factors.end());
    return out;
}

bool term_order(const Monomial &a, const Monomial &b) noexcept
{
    const auto da = a.outer_degree();
    const auto db = b.outer_degree();
    if (da != db) {
        return da < db;
    }
    const auto fa = a.factors();
    const auto fb = b.factors();
    return std::lexicographical_compare(fa.begin(), fa.end(), fb.begin(), fb.end());
}

FormulaPoly FormulaPoly::constant(Dimensions dims, Rational value)
{
    return monomial(dims, Monomial{}, std::move(value));
}

FormulaPoly FormulaPoly::monomial(Dimensions dims, Monomial m, Rational coeff)
{
    FormulaPoly p(dims);
    if (coeff != 0) {
        p.m_terms.push_back({std::move(m), std::move(coeff)});
    }
    return p;
}

FormulaPoly FormulaPoly::from_terms(Dimensions dims, std::vector<Term> terms)
{
    TermCollector collector;
    for (auto &t : terms) {
        collector.add(std::move(t.monomial), t.coeff);
    }
    return std::move(collector).finish(dims);
}

void FormulaPoly::validate() const
{
    for (const auto &t : m_terms) {
        for (const auto &f : t.monomial.factors()) {
            const auto &s = f.symbol;
            switch (s.kind) {
                case SymbolKind::Outer:
                    if (s.index.size() != m_dims.n) {
                        throw DimensionMismatch("outer symbol f[" + s.index.to_string() + "] needs "
                                                + std::to_string(m_dims.n) + " entries");
                    }
                    break;
                case SymbolKind::Inner:
                    if (s.index.size() != m_dims.m || s.index.is_zero()) {
                        throw DimensionMismatch("inner symbol g" + std::to_string(s.id) + "[" + s.index.to_string()
                                                + "] needs a nonzero index with " + std::to_string(m_dims.m)
                                                + " entries");
                    }
                    [[fallthrough]];
                case SymbolKind::Var:
                    if (s.id < 1 || s.id > m_dims.n) {
                        throw DimensionMismatch("symbol id " + std::to_string(s.id) + " outside 1.."
                                                + std::to_string(m_dims.n));
                    }
                    break;
            }
        }
    }
}

FormulaPoly FormulaPoly::operator-() const
{
    FormulaPoly out = *this;
    for (auto &t : out.m_terms) {
        t.coeff = -t.coeff;
    }
    return out;
}

namespace
{

void require_same_dims(const FormulaPoly &p, const FormulaPoly &q)
{
    if (!(p.dims() == q.dims())) {
        throw DimensionMismatch("polynomials over (n=" + std::to_string(p.dims().n) + ", m="
                                + std::to_string(p.dims().m) + ") and (n=" + std::to_string(q.dims().n)
                                + ", m=" + std::to_string(q.dims().m) + ")");
    }
}

} // namespace

FormulaPoly operator+(const FormulaPoly &p, const FormulaPoly &q)
{
    require_same_dims(p, q);
    TermCollector collector;
    collector.add(p);
    collector.add(q);
    return std::move(collector).finish(p.dims());
}

FormulaPoly operator-(const FormulaPoly &p, const FormulaPoly &q)
{
    return p + (-q);
}

FormulaPoly operator*(const FormulaPoly &p, const FormulaPoly &q)
{
    require_same_dims(p, q);
    TermCollector collector;
    for (const auto &a : p.terms()) {
        for (const auto &b : q.terms()) {
            collector.add(a.monomial * b.monomial, a.coeff * b.coeff);
        }
    }
    return std::move(collector).finish(p.dims());
}

FormulaPoly poly_add(const FormulaPoly &p, const FormulaPoly &q)
{
    return p + q;
}

FormulaPoly poly_mul(const FormulaPoly &p, const FormulaPoly &q)
{
    return p * q;
}

void TermCollector::add(Monomial m, const Rational &coeff)
{
    auto [it, inserted] = m_terms.try_emplace(std::move(m), coeff);
    if (!inserted) {
        it->second += coeff;
    }
}

void TermCollector::add(const FormulaPoly &p)
{
    for (const auto &t : p.terms()) {
        add(t.monomial, t.coeff);
    }
}

void TermCollector::merge(TermCollector &&other)
{
    if (m_terms.empty()) {
        m_terms = std::move(other.m_terms);
        return;
    }
    for (auto &[m, c] : other.m_terms) {
        add(m, c);
    }
    other.m_terms.clear();
}

FormulaPoly TermCollector::finish(Dimensions dims) &&
{
    FormulaPoly p(dims);
    p.m_terms.reserve(m_terms.size());
    for (auto &[m, c] : m_terms) {
        if (c != 0) {
            p.m_terms.push_back({m, std::move(c)});
        }
    }
    m_terms.clear();
    std::sort(p.m_terms.begin(), p.m_terms.end(),
              [](const Term &a, const Term &b) { return term_order(a.monomial, b.monomial); });
    return p;
}

namespace
{

std::string symbol_text(const Symbol &s)
{
    switch (s.kind) {
        case SymbolKind::Outer:
            return "f[" + s.index.to_string() + "]";
        case SymbolKind::Inner:
            return "g" + std::to_string(s.id) + "[" + s.index.to_string() + "]";
        case SymbolKind::Var:
            return "x" + std::to_string(s.id);
    }
    return {};
}

std::string symbol_latex(const Symbol &s)
{
    switch (s.kind) {
        case SymbolKind::Outer:
            return "f_{" + s.index.to_string() + "}";
        case SymbolKind::Inner:
            return "g^{(" + std::to_string(s.id) + ")}_{" + s.index.to_string() + "}";
        case SymbolKind::Var:
            return "x_{" + std::to_string(s.id) + "}";
    }
    return {};
}

std::string render_text(const FormulaPoly &p)
{
    if (p.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &t : p.terms()) {
        const Rational magnitude = abs(t.coeff);
        if (first) {
            out += t.coeff < 0 ? "-" : "";
        } else {
            out += t.coeff < 0 ? " - " : " + ";
        }
        first = false;
        std::string body;
        for (const auto &f : t.monomial.factors()) {
            if (!body.empty()) {
                body += '*';
            }
            body += symbol_text(f.symbol);
            if (f.power != 1) {
                body += '^' + std::to_string(f.power);
            }
        }
        if (body.empty()) {
            out += to_string(magnitude);
        } else if (magnitude == 1) {
            out += body;
        } else {
            out += to_string(magnitude) + '*' + body;
        }
    }
    return out;
}

std::string render_latex(const FormulaPoly &p)
{
    if (p.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &t : p.terms()) {
        const Rational magnitude = abs(t.coeff);
        if (first) {
            out += t.coeff < 0 ? "-" : "";
        } else {
            out += t.coeff < 0 ? " - " : " + ";
        }
        first = false;
        std::string body;
        for (const auto &f : t.monomial.factors()) {
            if (!body.empty()) {
                body += ' ';
            }
            if (f.power == 1) {
                body += symbol_latex(f.symbol);
            } else if (f.symbol.kind == SymbolKind::Var) {
                body += symbol_latex(f.symbol) + "^{" + std::to_string(f.power) + "}";
            } else {
                body += "\\left(" + symbol_latex(f.symbol) + "\\right)^{" + std::to_string(f.power) + "}";
            }
        }
        std::string number;
        if (magnitude.get_den() == 1) {
            number = to_string(magnitude.get_num());
        } else {
            number = "\\frac{" + to_string(magnitude.get_num()) + "}{" + to_string(magnitude.get_den()) + "}";
        }
        if (body.empty()) {
            out += number;
        } else if (magnitude == 1) {
            out += body;
        } else {
            out += number + ' ' + body;
        }
    }
    return out;
}

using ordered_json = nlohmann::ordered_json;

std::string render_json(const FormulaPoly &p)
{
    ordered_json doc;
    doc["n"] = p.dims().n;
    doc["m"] = p.dims().m;
    auto terms = ordered_json::array();
    for (const auto &t : p.terms()) {
        ordered_json term;
        term["coeff"] = to_string(t.coeff);
        auto outer = ordered_json::array();
        auto inner = ordered_json::array();
        auto vars = ordered_json::array();
        bool have_outer = false;
        for (const auto &f : t.monomial.factors()) {
            const auto &s = f.symbol;
            switch (s.kind) {
                case SymbolKind::Outer:
                    if (have_outer || f.power != 1) {
                        throw std::invalid_argument("json form holds one outer factor of power 1 per term");
                    }
                    have_outer = true;
                    outer = ordered_json(std::vector<std::uint32_t>(s.index.begin(), s.index.end()));
                    break;
                case SymbolKind::Inner:
                    inner.push_back({{"fn", s.id},
                                     {"index", std::vector<std::uint32_t>(s.index.begin(), s.index.end())},
                                     {"pow", f.power}});
                    break;
                case SymbolKind::Var:
                    vars.push_back({{"j", s.id}, {"pow", f.power}});
                    break;
            }
        }
        term["outer"] = std::move(outer);
        term["inner"] = std::move(inner);
        term["vars"] = std::move(vars);
        terms.push_back(std::move(term));
    }
    doc["terms"] = std::move(terms);
    return doc.dump();
}

MultiIndex index_from_json(const nlohmann::json &array)
{
    const auto entries = array.get<std::vector<MultiIndex::value_type>>();
    return MultiIndex(entries.begin(), entries.end());
}

} // namespace

std::string render(const FormulaPoly &p, Format format)
{
    switch (format) {
        case Format::Text:
            return render_text(p);
        case Format::Latex:
            return render_latex(p);
        case Format::Json:
            return render_json(p);
    }
    return {};
}

FormulaPoly parse_json(std::string_view text)
{
    try {
        const auto doc = nlohmann::json::parse(text);
        const Dimensions dims{doc.at("n").get<std::uint32_t>(), doc.at("m").get<std::uint32_t>()};
        std::vector<Term> terms;
        for (const auto &term : doc.at("terms")) {
            Monomial::storage_type factors;
            const auto &outer = term.at("outer");
            if (!outer.empty()) {
                factors.push_back({Symbol::outer(index_from_json(outer)), 1});
            }
            for (const auto &g : term.at("inner")) {
                factors.push_back({Symbol::inner(g.at("fn").get<std::uint32_t>(), index_from_json(g.at("index"))),
                                   g.at("pow").get<std::uint32_t>()});
            }
            for (const auto &x : term.at("vars")) {
                factors.push_back({Symbol::var(x.at("j").get<std::uint32_t>()), x.at("pow").get<std::uint32_t>()});
            }
            terms.push_back({Monomial(std::move(factors)), parse_rational(term.at("coeff").get<std::string>())});
        }
        auto p = FormulaPoly::from_terms(dims, std::move(terms));
        p.validate();
        return p;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("malformed polynomial json: ") + e.what());
    }
}

FormulaPoly substitute(const FormulaPoly &p, const Substitution &values)
{
    TermCollector collector;
    for (const auto &t : p.terms()) {
        Rational coeff = t.coeff;
        Monomial::storage_type kept;
        for (const auto &f : t.monomial.factors()) {
            const auto &s = f.symbol;
            Rational value;
            bool numeric = false;
            switch (s.kind) {
                case SymbolKind::Outer:
                    if (!values.outer.is_symbolic()) {
                        value = values.outer.at(s.index);
                        numeric = true;
                    }
                    break;
                case SymbolKind::Inner:
                    if (!values.inner.empty()) {
                        if (s.id < 1 || s.id > values.inner.size()) {
                            throw MissingValue("no values for inner function " + std::to_string(s.id));
                        }
                        const auto &seq = values.inner[s.id - 1];
                        if (!seq.is_symbolic()) {
                            value = seq.at(s.index);
                            numeric = true;
                        }
                    }
                    break;
                case SymbolKind::Var:
                    if (!values.vars.empty()) {
                        if (s.id < 1 || s.id > values.vars.size()) {
                            throw MissingValue("no value for x" + std::to_string(s.id));
                        }
                        value = values.vars[s.id - 1];
                        numeric = true;
                    }
                    break;
            }
            if (numeric) {
                Rational powered;
                mpz_pow_ui(powered.get_num_mpz_t(), value.get_num_mpz_t(), f.power);
                mpz_pow_ui(powered.get_den_mpz_t(), value.get_den_mpz_t(), f.power);
                coeff *= powered;
            } else {
                kept.push_back(f);
            }
        }
        collector.add(Monomial(std::move(kept)), coeff);
    }
    return std::move(collector).finish(p.dims());
}

Rational evaluate(const FormulaPoly &p, const Substitution &values)
{
    const auto reduced = substitute(p, values);
    Rational total = 0;
    for (const auto &t : reduced.terms()) {
        if (!t.monomial.is_unit()) {
            throw MissingValue("symbol " + symbol_text(t.monomial.factors().front().symbol) + " has no value");
        }
        total += t.coeff;
    }
    return total;
}

} // namespace umfb
