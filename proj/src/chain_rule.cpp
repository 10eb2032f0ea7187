#include <umfb/chain_rule.hpp>

#include <stdexcept>
#include <thread>

#include <umfb/errors.hpp>

#include "parallel.hpp"

namespace umfb
{

DerivativeState DerivativeState::start(Dimensions dims)
{
    Monomial f0(Monomial::storage_type{{Symbol::outer(MultiIndex(dims.n)), 1}});
    return DerivativeState(FormulaPoly::monomial(dims, std::move(f0)), MultiIndex(dims.m));
}

namespace
{

// Replace factor `position` of t by `power - 1` copies of itself times the
// given derivative factors.
void emit_product_rule(const Term &t, std::size_t position, std::initializer_list<Symbol> derivative,
                       TermCollector &out)
{
    const auto factors = t.monomial.factors();
    Monomial::storage_type next;
    next.reserve(factors.size() + derivative.size());
    for (std::size_t q = 0; q < factors.size(); ++q) {
        if (q != position) {
            next.push_back(factors[q]);
        } else if (factors[q].power > 1) {
            next.push_back({factors[q].symbol, factors[q].power - 1});
        }
    }
    for (const auto &s : derivative) {
        next.push_back({s, 1});
    }
    out.add(Monomial(std::move(next)), t.coeff * factors[position].power);
}

void differentiate_term(const Term &t, std::size_t r, Dimensions dims, TermCollector &out)
{
    const auto factors = t.monomial.factors();
    const auto step = MultiIndex::unit(dims.m, r);
    for (std::size_t q = 0; q < factors.size(); ++q) {
        const auto &s = factors[q].symbol;
        switch (s.kind) {
            case SymbolKind::Outer:
                for (std::uint32_t j = 0; j < dims.n; ++j) {
                    emit_product_rule(t, q,
                                      {Symbol::outer(s.index + MultiIndex::unit(dims.n, j)), Symbol::inner(j + 1, step)},
                                      out);
                }
                break;
            case SymbolKind::Inner:
                emit_product_rule(t, q, {Symbol::inner(s.id, s.index + step)}, out);
                break;
            case SymbolKind::Var:
                break;
        }
    }
}

unsigned resolve_threads(unsigned requested)
{
    return requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
}

FormulaPoly relabel_shared(const FormulaPoly &p)
{
    TermCollector collector;
    for (const auto &t : p.terms()) {
        Monomial::storage_type factors;
        for (const auto &f : t.monomial.factors()) {
            if (f.symbol.kind == SymbolKind::Inner) {
                factors.push_back({Symbol::inner(1, f.symbol.index), f.power});
            } else {
                factors.push_back(f);
            }
        }
        collector.add(Monomial(std::move(factors)), t.coeff);
    }
    return std::move(collector).finish(p.dims());
}

FormulaPoly drop_zero_order_outer(const FormulaPoly &p)
{
    TermCollector collector;
    for (const auto &t : p.terms()) {
        Monomial::storage_type factors;
        for (const auto &f : t.monomial.factors()) {
            if (!(f.symbol.kind == SymbolKind::Outer && f.symbol.index.is_zero())) {
                factors.push_back(f);
            }
        }
        collector.add(Monomial(std::move(factors)), t.coeff);
    }
    return std::move(collector).finish(p.dims());
}

} // namespace

FormulaPoly differentiate(const FormulaPoly &p, std::size_t r, unsigned threads)
{
    if (r >= p.dims().m) {
        throw std::out_of_range("variable " + std::to_string(r) + " outside 0.." + std::to_string(p.dims().m - 1));
    }
    const auto terms = p.terms();
    auto collector = detail::parallel_collect(terms.size(), resolve_threads(threads),
                                              [&](std::size_t k, TermCollector &local) {
                                                  differentiate_term(terms[k], r, p.dims(), local);
                                              });
    return std::move(collector).finish(p.dims());
}

DerivativeState differentiate_once(const DerivativeState &state, std::size_t r, unsigned threads)
{
    auto poly = differentiate(state.m_poly, r, threads);
    auto applied = state.m_applied;
    applied[r] += 1;
    return DerivativeState(std::move(poly), std::move(applied));
}

FormulaPoly chain_rule_derivative(const CompositionSpec &spec, const ChainRuleOptions &options,
                                  ChainRuleStats *stats)
{
    spec.validate();
    if (!spec.outer.is_symbolic()) {
        throw std::invalid_argument("the chain-rule oracle works on a symbolic outer function");
    }
    std::vector<std::size_t> order = options.order;
    if (order.empty()) {
        for (std::size_t r = 0; r < spec.m(); ++r) {
            order.insert(order.end(), spec.index[r], r);
        }
    } else {
        MultiIndex counted(spec.m());
        for (auto r : order) {
            if (r >= spec.m()) {
                throw std::out_of_range("differentiation order names variable " + std::to_string(r));
            }
            counted[r] += 1;
        }
        if (!(counted == spec.index)) {
            throw std::invalid_argument("differentiation order does not match index (" + spec.index.to_string() + ")");
        }
    }

    const auto cap = options.term_cap == 0 ? default_term_cap() : options.term_cap;
    auto state = DerivativeState::start(spec.dims());
    std::uint64_t peak = state.poly().size();
    for (auto r : order) {
        state = differentiate_once(state, r, options.threads);
        peak = std::max<std::uint64_t>(peak, state.poly().size());
        if (state.poly().size() > cap) {
            throw ResourceCapExceeded("chain rule reached " + std::to_string(state.poly().size())
                                      + " terms, above the cap of " + std::to_string(cap));
        }
    }
    if (stats != nullptr) {
        stats->peak_terms = peak;
    }
    auto result = drop_zero_order_outer(state.poly());
    return spec.inner_mode == InnerMode::Shared ? relabel_shared(result) : result;
}

std::string EquivalenceReport::describe() const
{
    if (equal) {
        return "equal";
    }
    return "coefficient of " + monomial + ": " + to_string(left) + " vs " + to_string(right);
}

EquivalenceReport equivalence_check(const FormulaPoly &p, const FormulaPoly &q)
{
    if (!(p.dims() == q.dims())) {
        throw DimensionMismatch("equivalence check across different dimensions");
    }
    EquivalenceReport report;
    const auto a = p.terms();
    const auto b = q.terms();
    std::size_t x = 0;
    std::size_t y = 0;
    auto differ = [&](const Monomial &m, Rational left, Rational right) {
        report.equal = false;
        report.monomial = render(FormulaPoly::monomial(p.dims(), m), Format::Text);
        report.left = std::move(left);
        report.right = std::move(right);
        return report;
    };
    while (x < a.size() || y < b.size()) {
        if (y == b.size() || (x < a.size() && term_order(a[x].monomial, b[y].monomial))) {
            return differ(a[x].monomial, a[x].coeff, 0);
        }
        if (x == a.size() || term_order(b[y].monomial, a[x].monomial)) {
            return differ(b[y].monomial, 0, b[y].coeff);
        }
        if (a[x].coeff != b[y].coeff) {
            return differ(a[x].monomial, a[x].coeff, b[y].coeff);
        }
        ++x;
        ++y;
    }
    return report;
}

VerifyReport verify_sweep(const VerifyBounds &bounds, const std::function<FormulaPoly(FormulaPoly)> &tamper)
{
    VerifyReport report;
    for (std::uint32_t m = 1; m <= bounds.max_m; ++m) {
        for (const auto &i : indices_up_to(m, bounds.max_order)) {
            for (std::uint32_t n = 1; n <= bounds.max_n; ++n) {
                for (auto mode : {InnerMode::Distinct, InnerMode::Shared}) {
                    const CompositionSpec spec{i, n, mode, MomentSequence::symbolic()};
                    auto fast = umfb(spec);
                    if (tamper) {
                        fast = tamper(std::move(fast));
                    }
                    const auto slow = chain_rule_derivative(spec);
                    ++report.cases;
                    auto diff = equivalence_check(fast, slow);
                    if (!diff.equal) {
                        report.ok = false;
                        report.failing_spec = spec;
                        report.difference = std::move(diff);
                        return report;
                    }
                }
            }
        }
    }
    return report;
}

} // namespace umfb
