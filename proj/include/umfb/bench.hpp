#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <umfb/faa_di_bruno.hpp>
#include <umfb/multi_index.hpp>

namespace umfb
{

// One benchmark configuration: derivative index (its length is the number
// of inner variables) and the number n of inner functions.
struct BenchRow {
    MultiIndex index;
    std::uint32_t n = 1;
    // Published term count, when the row reproduces a known table.
    std::optional<std::uint64_t> expected_terms;
};

struct BenchRecord {
    MultiIndex index;
    std::uint32_t n = 1;
    std::uint32_t m = 1;
    std::uint64_t term_count = 0;
    std::uint64_t oracle_term_count = 0;
    double umfb_ms = 0;
    double oracle_ms = 0;
    std::uint64_t peak_terms = 0;

    bool consistent() const noexcept
    {
        return term_count == oracle_term_count;
    }
};

// The eleven rows of the published comparison table, with the table's m
// column taken as the number of inner functions, plus the (1,1), n=2 row.
std::vector<BenchRow> builtin_bench_rows();

// Lines "i;n" (e.g. "6,5;2"); blank lines and '#' comments skipped.
// Throws ParseError.
std::vector<BenchRow> parse_bench_rows(std::string_view text);

struct BenchOptions {
    unsigned threads = 1;
    std::uint64_t term_cap = 0;
    bool run_oracle = true;
};

// Times umfb() and chain_rule_derivative() on the row. Throws
// ResourceCapExceeded when either side would exceed the cap.
BenchRecord run_bench_row(const BenchRow &row, const BenchOptions &options = {});

// "i;n;m;terms;umfb_ms;oracle_ms"
std::string bench_csv_header();
std::string bench_csv_line(const BenchRecord &record);

} // namespace umfb
