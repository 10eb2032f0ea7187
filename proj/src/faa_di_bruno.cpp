#include <umfb/faa_di_bruno.hpp>

#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include <umfb/errors.hpp>

#include "parallel.hpp"
#include "series.hpp"

namespace umfb
{

void CompositionSpec::validate() const
{
    if (n == 0) {
        throw std::invalid_argument("the outer function needs at least one argument (n >= 1)");
    }
    if (index.size() == 0) {
        throw std::invalid_argument("the derivative index needs at least one entry (m >= 1)");
    }
}

std::uint64_t default_term_cap()
{
    if (const char *env = std::getenv("UMFB_TERM_CAP"); env != nullptr && *env != '\0') {
        try {
            return std::stoull(env);
        } catch (const std::exception &) {
            throw std::invalid_argument(std::string("UMFB_TERM_CAP is not a number: ") + env);
        }
    }
    return 10'000'000;
}

namespace
{

// One partition's contribution to (alpha.beta.mu)^k: the integer
// coefficient, l(lambda) and the inner factors (fn-id left at 0).
struct Block {
    Integer coeff;
    std::uint32_t length = 0;
    Monomial::storage_type inner;
};

std::vector<Block> expand_blocks(const MultiIndex &k)
{
    if (k.is_zero()) {
        return {Block{1, 0, {}}};
    }
    std::vector<Block> blocks;
    for_each_partition(k, [&](const MultiIndexPartition &lambda) {
        Block b{lambda.coefficient(), static_cast<std::uint32_t>(lambda.length()), {}};
        for (const auto &part : lambda.parts()) {
            b.inner.push_back({Symbol::inner(0, part.column), part.multiplicity});
        }
        blocks.push_back(std::move(b));
    });
    return blocks;
}

using BlockTable = std::unordered_map<MultiIndex, std::vector<Block>, MultiIndexHash>;

BlockTable block_table(const MultiIndex &i)
{
    BlockTable table;
    for (auto &k : sub_indices(i)) {
        auto blocks = expand_blocks(k);
        table.emplace(std::move(k), std::move(blocks));
    }
    return table;
}

unsigned resolve_threads(unsigned requested)
{
    if (requested == 0) {
        requested = std::max(1u, std::thread::hardware_concurrency());
    }
    return requested;
}

void check_cap(const Integer &predicted, std::uint64_t cap)
{
    if (predicted > Integer(std::to_string(cap))) {
        throw ResourceCapExceeded("predicted " + to_string(predicted) + " terms exceeds the cap of "
                                  + std::to_string(cap) + " (set UMFB_TERM_CAP to raise it)");
    }
}

// Sum over one composition of i of multinomial * prod_j blocks.
void assemble(const CompositionSpec &spec, const BlockTable &table, std::span<const MultiIndex> parts,
              TermCollector &collector)
{
    const auto n = parts.size();
    const Integer weight = multinomial(spec.index, parts);
    std::vector<const std::vector<Block> *> lists(n);
    for (std::size_t j = 0; j < n; ++j) {
        lists[j] = &table.at(parts[j]);
    }
    std::vector<std::size_t> choice(n, 0);
    const bool symbolic = spec.outer.is_symbolic();
    MultiIndex lengths(n);
    while (true) {
        Integer coeff = weight;
        Monomial::storage_type factors;
        for (std::size_t j = 0; j < n; ++j) {
            const auto &b = (*lists[j])[choice[j]];
            coeff *= b.coeff;
            lengths[j] = b.length;
            const auto fn = spec.inner_mode == InnerMode::Shared ? 1u : static_cast<std::uint32_t>(j + 1);
            for (const auto &f : b.inner) {
                factors.push_back({Symbol::inner(fn, f.symbol.index), f.power});
            }
        }
        if (symbolic) {
            factors.push_back({Symbol::outer(lengths), 1});
            collector.add(Monomial(std::move(factors)), Rational(coeff));
        } else {
            collector.add(Monomial(std::move(factors)), Rational(coeff) * spec.outer.at(lengths));
        }

        std::size_t j = n;
        while (j > 0) {
            --j;
            if (++choice[j] < lists[j]->size()) {
                break;
            }
            choice[j] = 0;
            if (j == 0) {
                return;
            }
        }
    }
}

} // namespace

FormulaPoly dot_power_expansion(const MomentSequence &outer, const MultiIndex &i, std::uint32_t inner_fn)
{
    const Dimensions dims{1, static_cast<std::uint32_t>(i.size())};
    if (i.is_zero()) {
        return FormulaPoly::unit(dims);
    }
    TermCollector collector;
    for_each_partition(i, [&](const MultiIndexPartition &lambda) {
        Monomial::storage_type factors;
        const auto length = lambda.length();
        for (const auto &part : lambda.parts()) {
            factors.push_back({Symbol::inner(inner_fn, part.column), part.multiplicity});
        }
        Rational coeff(lambda.coefficient());
        if (outer.is_symbolic()) {
            factors.push_back({Symbol::outer({static_cast<MultiIndex::value_type>(length)}), 1});
        } else {
            coeff *= outer.at(length);
        }
        collector.add(Monomial(std::move(factors)), coeff);
    });
    return std::move(collector).finish(dims);
}

Integer predicted_term_count(const CompositionSpec &spec)
{
    spec.validate();
    std::unordered_map<MultiIndex, Integer, MultiIndexHash> counts;
    for (auto &k : sub_indices(spec.index)) {
        Integer c = k.is_zero() ? Integer(1) : count_partitions(k);
        counts.emplace(std::move(k), std::move(c));
    }
    Integer total = 0;
    for_each_composition(spec.index, spec.n, [&](std::span<const MultiIndex> parts) {
        Integer product = 1;
        for (const auto &k : parts) {
            product *= counts.at(k);
        }
        total += product;
    });
    return total;
}

FormulaPoly umfb(const CompositionSpec &spec, const ExpansionOptions &options)
{
    spec.validate();
    if (spec.index.is_zero()) {
        return FormulaPoly::unit(spec.dims());
    }
    check_cap(predicted_term_count(spec), options.term_cap == 0 ? default_term_cap() : options.term_cap);

    const auto table = block_table(spec.index);
    const auto compositions = compositions_into(spec.index, spec.n);
    auto collector = detail::parallel_collect(
        compositions.size(), resolve_threads(options.threads),
        [&](std::size_t c, TermCollector &local) { assemble(spec, table, compositions[c], local); });
    return std::move(collector).finish(spec.dims());
}

FormulaPoly generalized_bell(const MultiIndex &i, std::uint32_t n, InnerMode mode, const ExpansionOptions &options)
{
    const auto formula = umfb(CompositionSpec{i, n, mode, MomentSequence::symbolic()}, options);
    TermCollector collector;
    for (const auto &t : formula.terms()) {
        Monomial::storage_type factors;
        for (const auto &f : t.monomial.factors()) {
            if (f.symbol.kind != SymbolKind::Outer) {
                factors.push_back(f);
                continue;
            }
            for (std::size_t j = 0; j < f.symbol.index.size(); ++j) {
                if (f.symbol.index[j] != 0) {
                    factors.push_back({Symbol::var(static_cast<std::uint32_t>(j + 1)), f.symbol.index[j] * f.power});
                }
            }
        }
        collector.add(Monomial(std::move(factors)), t.coeff);
    }
    return std::move(collector).finish(formula.dims());
}

FormulaPoly bell_to_formula(const FormulaPoly &bell)
{
    const auto n = bell.dims().n;
    TermCollector collector;
    for (const auto &t : bell.terms()) {
        Monomial::storage_type factors;
        MultiIndex lengths(n);
        for (const auto &f : t.monomial.factors()) {
            if (f.symbol.kind == SymbolKind::Var) {
                if (f.symbol.id < 1 || f.symbol.id > n) {
                    throw DimensionMismatch("variable x" + std::to_string(f.symbol.id) + " outside 1.."
                                            + std::to_string(n));
                }
                lengths[f.symbol.id - 1] += f.power;
            } else {
                factors.push_back(f);
            }
        }
        if (!lengths.is_zero()) {
            factors.push_back({Symbol::outer(std::move(lengths)), 1});
        }
        collector.add(Monomial(std::move(factors)), t.coeff);
    }
    return std::move(collector).finish(bell.dims());
}

std::map<MultiIndex, Rational> compose_generating_check(const CompositionSpec &spec,
                                                        const std::vector<MomentSequence> &inner_values,
                                                        std::uint64_t max_order)
{
    spec.validate();
    if (max_order > 8) {
        throw TruncationTooLarge("series truncation order " + std::to_string(max_order) + " exceeds 8");
    }
    if (spec.outer.is_symbolic()) {
        throw std::invalid_argument("series composition needs a numeric outer sequence");
    }
    const std::size_t needed = spec.inner_mode == InnerMode::Shared ? 1 : spec.n;
    if (inner_values.size() < needed) {
        throw MissingValue("series composition needs " + std::to_string(needed) + " inner sequences");
    }

    using detail::TruncatedSeries;
    const auto m = spec.m();
    // Y_j = f(inner_j, t) - 1 and its powers up to max_order.
    std::vector<std::vector<TruncatedSeries>> powers;
    for (std::size_t j = 0; j < spec.n; ++j) {
        const auto &seq = inner_values[spec.inner_mode == InnerMode::Shared ? 0 : j];
        TruncatedSeries y(m, max_order);
        for (const auto &k : y.indices()) {
            if (!k.is_zero()) {
                y[k] = seq.at(k) / Rational(multi_factorial(k));
            }
        }
        std::vector<TruncatedSeries> p{TruncatedSeries::constant(m, max_order, 1)};
        for (std::uint64_t e = 1; e <= max_order; ++e) {
            p.push_back(p.back() * y);
        }
        powers.push_back(std::move(p));
    }

    TruncatedSeries total(m, max_order);
    for (const auto &a : indices_up_to(spec.n, max_order)) {
        auto term = TruncatedSeries::constant(m, max_order, spec.outer.at(a) / Rational(multi_factorial(a)));
        for (std::size_t j = 0; j < spec.n; ++j) {
            if (a[j] != 0) {
                term = term * powers[j][a[j]];
            }
        }
        total += term;
    }

    std::map<MultiIndex, Rational> moments;
    for (const auto &k : total.indices()) {
        moments.emplace(k, total[k] * Rational(multi_factorial(k)));
    }
    return moments;
}

} // namespace umfb
