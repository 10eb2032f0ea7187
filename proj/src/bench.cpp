#include <umfb/bench.hpp>

#include <chrono>
#include <cmath>
#include <sstream>

#include <umfb/chain_rule.hpp>
#include <umfb/errors.hpp>

namespace umfb
{

std::vector<BenchRow> builtin_bench_rows()
{
    return {
        {{6, 5}, 2, 14089},   {{7, 6}, 2, 60190},   {{7, 7}, 2, 123134},  {{5, 4}, 3, 20208},
        {{6, 5}, 3, 122034},  {{5, 4}, 4, 86768},   {{5, 4}, 5, 288370},  {{4, 4, 3}, 2, 95138},
        {{4, 4, 4}, 2, 257854}, {{4, 3, 3}, 3, 313866}, {{4, 2, 2}, 4, 106912}, {{1, 1}, 2, 6},
    };
}

std::vector<BenchRow> parse_bench_rows(std::string_view text)
{
    std::vector<BenchRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            continue;
        }
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto semi = line.find(';');
        if (semi == std::string::npos) {
            throw ParseError("bench rows line " + std::to_string(number) + ": expected 'i;n'");
        }
        BenchRow row;
        row.index = MultiIndex::parse(line.substr(0, semi));
        try {
            std::size_t used = 0;
            const auto field = line.substr(semi + 1);
            const auto n = std::stoul(field, &used);
            if (used != field.size() || n == 0) {
                throw std::invalid_argument("n");
            }
            row.n = static_cast<std::uint32_t>(n);
        } catch (const std::exception &) {
            throw ParseError("bench rows line " + std::to_string(number) + ": bad n");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

BenchRecord run_bench_row(const BenchRow &row, const BenchOptions &options)
{
    using clock = std::chrono::steady_clock;
    const CompositionSpec spec{row.index, row.n, InnerMode::Distinct, MomentSequence::symbolic()};
    BenchRecord record;
    record.index = row.index;
    record.n = row.n;
    record.m = spec.m();

    auto start = clock::now();
    const auto fast = umfb(spec, {options.threads, options.term_cap});
    record.umfb_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
    record.term_count = fast.size();

    if (options.run_oracle) {
        ChainRuleOptions chain;
        chain.threads = options.threads;
        chain.term_cap = options.term_cap;
        ChainRuleStats stats;
        start = clock::now();
        const auto slow = chain_rule_derivative(spec, chain, &stats);
        record.oracle_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
        record.oracle_term_count = slow.size();
        record.peak_terms = stats.peak_terms;
    } else {
        record.oracle_term_count = record.term_count;
    }
    return record;
}

std::string bench_csv_header()
{
    return "i;n;m;terms;umfb_ms;oracle_ms";
}

std::string bench_csv_line(const BenchRecord &record)
{
    std::ostringstream out;
    out << record.index.to_string() << ';' << record.n << ';' << record.m << ';' << record.term_count << ';'
        << std::llround(record.umfb_ms) << ';' << std::llround(record.oracle_ms);
    return out.str();
}

} // namespace umfb
