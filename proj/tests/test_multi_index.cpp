#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include <umfb/multi_index.hpp>

#include "oracles.hpp"

using namespace umfb;

namespace
{

std::vector<oracle::Index> columns_of(const MultiIndexPartition &p)
{
    std::vector<oracle::Index> cols;
    for (const auto &part : p.parts()) {
        for (std::uint32_t k = 0; k < part.multiplicity; ++k) {
            cols.emplace_back(part.column.begin(), part.column.end());
        }
    }
    std::sort(cols.begin(), cols.end());
    return cols;
}

} // namespace

TEST_CASE("multi_factorial")
{
    CHECK(multi_factorial({0, 0}) == 1);
    CHECK(multi_factorial({2, 1}) == 2);
    CHECK(multi_factorial({6, 5}) == 720 * 120);
}

TEST_CASE("multinomial")
{
    const std::vector<MultiIndex> a{{1, 1}, {1, 0}};
    CHECK(multinomial({2, 1}, a) == 2);
    const std::vector<MultiIndex> b{{1, 1}};
    CHECK(multinomial({1, 1}, b) == 1);
    const std::vector<MultiIndex> c{{1, 0}, {1, 2}, {0, 0}};
    CHECK(multinomial({2, 2}, c) == 2);

    const std::vector<MultiIndex> short_sum{{1, 0}};
    CHECK_THROWS_AS(multinomial({2, 1}, short_sum), PartsMismatch);
    const std::vector<MultiIndex> wrong_length{{1, 1, 0}};
    CHECK_THROWS_AS(multinomial({1, 1}, wrong_length), PartsMismatch);
}

TEST_CASE("multi-index parsing")
{
    CHECK(MultiIndex::parse("2,1") == MultiIndex{2, 1});
    CHECK(MultiIndex::parse("0") == MultiIndex{0});
    CHECK(MultiIndex{4, 0, 12}.to_string() == "4,0,12");
    for (auto bad : {"", "1,", ",1", "1, 2", "a", "-1", "1;2"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(MultiIndex::parse(bad), ParseError);
    }
}

TEST_CASE("compositions_into")
{
    SUBCASE("(1,1) into 2 parts, in concatenation order")
    {
        const auto tuples = compositions_into({1, 1}, 2);
        const std::vector<std::vector<MultiIndex>> expected{
            {{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}, {{1, 0}, {0, 1}}, {{1, 1}, {0, 0}}};
        CHECK(tuples == expected);
    }
    SUBCASE("single part")
    {
        const auto tuples = compositions_into({2}, 1);
        REQUIRE(tuples.size() == 1);
        CHECK(tuples[0] == std::vector<MultiIndex>{{2}});
    }
    SUBCASE("(2,1) into 2 parts")
    {
        CHECK(compositions_into({2, 1}, 2).size() == 6);
    }
    SUBCASE("count formula, no duplicates, every tuple sums to i")
    {
        for (const auto &i : {MultiIndex{2, 1}, MultiIndex{3, 0, 2}, MultiIndex{1, 1, 1}, MultiIndex{4}}) {
            for (std::size_t n = 1; n <= 4; ++n) {
                const auto tuples = compositions_into(i, n);
                CHECK(Integer(static_cast<unsigned long>(tuples.size())) == count_compositions(i, n));
                std::set<std::vector<MultiIndex>> unique(tuples.begin(), tuples.end());
                CHECK(unique.size() == tuples.size());
                CHECK(std::is_sorted(tuples.begin(), tuples.end()));
                for (const auto &t : tuples) {
                    MultiIndex sum(i.size());
                    for (const auto &k : t) {
                        sum += k;
                    }
                    CHECK(sum == i);
                }
            }
        }
    }
    CHECK_THROWS_AS(compositions_into({1}, 0), std::invalid_argument);
}

TEST_CASE("partitions of (2,1) are the four multiset subdivisions")
{
    const auto ps = partitions({2, 1});
    std::set<std::string> got;
    for (const auto &p : ps) {
        got.insert(p.to_string());
    }
    const std::set<std::string> expected{"{(2,1)}", "{(0,1),(2,0)}", "{(1,0),(1,1)}", "{(0,1),(1,0)^2}"};
    CHECK(ps.size() == 4);
    CHECK(got == expected);
}

TEST_CASE("small partition examples")
{
    CHECK(partitions({1, 1}).size() == 2);
    std::set<std::string> three;
    for (const auto &p : partitions({3})) {
        three.insert(p.to_string());
    }
    CHECK(three == std::set<std::string>{"{(3)}", "{(1),(2)}", "{(1)^3}"});
    CHECK_THROWS_AS(partitions({0, 0}), ZeroIndex);
    CHECK_THROWS_AS(count_partitions({0}), ZeroIndex);
}

TEST_CASE("count_partitions")
{
    CHECK(count_partitions({2, 1}) == 4);
    CHECK(count_partitions({2, 0}) == 2);
    CHECK(count_partitions({2, 2}) == 9);
}

TEST_CASE("univariate partitions match integer partitions")
{
    for (unsigned d = 1; d <= 12; ++d) {
        CAPTURE(d);
        const auto expected = oracle::integer_partitions(d);
        CHECK(partitions({d}).size() == expected);
        CHECK(count_partitions({d}) == static_cast<unsigned long>(expected));
    }
}

TEST_CASE("partitions agree with brute-force multiset subdivisions")
{
    // Every multi-index with n <= 3 and |i| <= 7 (subdivision oracle is
    // exponential in |i|); counts are further checked up to |i| <= 8.
    for (std::size_t n = 1; n <= 3; ++n) {
        for (const auto &i : indices_up_to(n, 7)) {
            if (i.is_zero()) {
                continue;
            }
            CAPTURE(i.to_string());
            const auto reference = oracle::multiset_subdivisions(oracle::Index(i.begin(), i.end()));
            const auto ps = partitions(i);
            REQUIRE(ps.size() == reference.size());
            for (const auto &p : ps) {
                const auto it = reference.find(columns_of(p));
                REQUIRE(it != reference.end());
                // Set partitions collapsing onto lambda = i!/(m(lambda)! lambda!).
                CHECK(p.coefficient() == static_cast<unsigned long>(it->second));
                CHECK(p.total() == i);
            }
        }
        for (const auto &i : indices_up_to(n, 8)) {
            if (!i.is_zero()) {
                CHECK(count_partitions(i) == static_cast<unsigned long>(partitions(i).size()));
            }
        }
    }
}

TEST_CASE("partition invariants: canonical columns, no zero column, sum preserved")
{
    for (const auto &i : {MultiIndex{3, 2}, MultiIndex{2, 2, 2}, MultiIndex{0, 4, 1}, MultiIndex{1, 1, 1, 1}}) {
        std::set<std::string> seen;
        for_each_partition(i, [&](const MultiIndexPartition &p) {
            CHECK(seen.insert(p.to_string()).second);
            const auto parts = p.parts();
            for (std::size_t k = 0; k < parts.size(); ++k) {
                CHECK_FALSE(parts[k].column.is_zero());
                CHECK(parts[k].multiplicity >= 1);
                if (k > 0) {
                    CHECK(parts[k - 1].column < parts[k].column);
                }
            }
            CHECK(p.total() == i);
        });
    }
}

TEST_CASE("permuting entries permutes partitions")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<unsigned> entry(0, 3);
        MultiIndex i{entry(rng), entry(rng), entry(rng)};
        if (i.is_zero()) {
            continue;
        }
        std::vector<std::size_t> perm{0, 1, 2};
        std::shuffle(perm.begin(), perm.end(), rng);
        auto permute = [&](const MultiIndex &k) {
            MultiIndex out(k.size());
            for (std::size_t r = 0; r < k.size(); ++r) {
                out[perm[r]] = k[r];
            }
            return out;
        };
        std::set<std::vector<oracle::Index>> mapped;
        for (const auto &p : partitions(i)) {
            std::vector<MultiIndex> cols;
            for (const auto &part : p.parts()) {
                cols.insert(cols.end(), part.multiplicity, permute(part.column));
            }
            mapped.insert(columns_of(MultiIndexPartition::from_columns(cols)));
        }
        std::set<std::vector<oracle::Index>> direct;
        for (const auto &p : partitions(permute(i))) {
            direct.insert(columns_of(p));
        }
        CHECK(mapped == direct);
    }
}

TEST_CASE("partition bookkeeping")
{
    const auto p = MultiIndexPartition::from_columns({{1, 0}, {0, 1}, {1, 0}});
    CHECK(p.length() == 3);
    CHECK(p.total() == MultiIndex{2, 1});
    CHECK(p.multiplicity_factorial() == 2);
    CHECK(p.column_factorial() == 1);
    CHECK(p.coefficient() == 1);
    CHECK(p.to_matrix_string() == "[0 1 1; 1 0 0]");
    CHECK_THROWS_AS(MultiIndexPartition::from_columns({{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndexPartition({{{1, 0}, 1}, {{0, 1}, 1}}), std::invalid_argument);
}
