#include <doctest.h>

#include <umfb/bench.hpp>
#include <umfb/errors.hpp>

using namespace umfb;

TEST_CASE("row parsing")
{
    const auto rows = parse_bench_rows("# comment\n6,5;2\n\n  4,2,2;4  # trailing\n");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].index == MultiIndex{6, 5});
    CHECK(rows[0].n == 2);
    CHECK(rows[1].index == MultiIndex{4, 2, 2});
    CHECK(rows[1].n == 4);
    CHECK_FALSE(rows[0].expected_terms.has_value());

    CHECK_THROWS_AS(parse_bench_rows("6,5"), ParseError);
    CHECK_THROWS_AS(parse_bench_rows("6,5;x"), ParseError);
    CHECK_THROWS_AS(parse_bench_rows("6,5;0"), ParseError);
    CHECK_THROWS_AS(parse_bench_rows("6;5;2"), ParseError);
}

TEST_CASE("built-in rows")
{
    const auto rows = builtin_bench_rows();
    CHECK(rows.size() == 12);
    for (const auto &row : rows) {
        CHECK(row.expected_terms.has_value());
    }
    CHECK(rows.back().index == MultiIndex{1, 1});
    CHECK(*rows.back().expected_terms == 6);
}

TEST_CASE("a bench row runs both routes")
{
    const auto record = run_bench_row({{2, 1}, 2, {}});
    CHECK(record.m == 2);
    CHECK(record.term_count == 16);
    CHECK(record.consistent());
    CHECK(record.peak_terms >= record.term_count);

    BenchOptions skip;
    skip.run_oracle = false;
    CHECK(run_bench_row({{1, 1}, 2, {}}, skip).term_count == 6);
    BenchOptions tight;
    tight.term_cap = 3;
    CHECK_THROWS_AS(run_bench_row({{1, 1}, 2, {}}, tight), ResourceCapExceeded);
}

TEST_CASE("csv lines")
{
    BenchRecord r;
    r.index = {6, 5};
    r.n = 3;
    r.m = 2;
    r.term_count = 122034;
    r.umfb_ms = 12.4;
    r.oracle_ms = 97.6;
    CHECK(bench_csv_header() == "i;n;m;terms;umfb_ms;oracle_ms");
    CHECK(bench_csv_line(r) == "6,5;3;2;122034;12;98");
}
