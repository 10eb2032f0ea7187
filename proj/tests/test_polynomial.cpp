#include <doctest.h>

#include <random>

#include <umfb/polynomial.hpp>

using namespace umfb;

namespace
{

const Dimensions d22{2, 2};

FormulaPoly sym(Symbol s, Rational c = 1, std::uint32_t power = 1)
{
    return FormulaPoly::monomial(d22, Monomial({Factor{std::move(s), power}}), c);
}

FormulaPoly g(std::uint32_t fn, MultiIndex i)
{
    return sym(Symbol::inner(fn, std::move(i)));
}

FormulaPoly f(MultiIndex i)
{
    return sym(Symbol::outer(std::move(i)));
}

FormulaPoly random_poly(std::mt19937 &rng)
{
    std::uniform_int_distribution<int> coin(0, 3);
    std::uniform_int_distribution<int> small(-3, 3);
    std::uniform_int_distribution<unsigned> entry(0, 2);
    std::vector<Term> terms;
    const int count = coin(rng) + 1;
    for (int t = 0; t < count; ++t) {
        Monomial::storage_type factors;
        const int width = coin(rng);
        for (int k = 0; k < width; ++k) {
            switch (coin(rng)) {
                case 0:
                    factors.push_back({Symbol::outer({entry(rng), entry(rng)}), 1});
                    break;
                case 1:
                case 2:
                    factors.push_back({Symbol::inner(1 + entry(rng) % 2, {entry(rng), 1 + entry(rng) % 2}), 1 + entry(rng)});
                    break;
                default:
                    factors.push_back({Symbol::var(1 + entry(rng) % 2), 1 + entry(rng)});
            }
        }
        terms.push_back({Monomial(std::move(factors)), Rational(small(rng), 1 + entry(rng))});
    }
    for (auto &t : terms) {
        t.coeff.canonicalize();
    }
    return FormulaPoly::from_terms(d22, std::move(terms));
}

MomentSequence table(std::map<MultiIndex, Rational> values)
{
    return MomentSequence::numeric(std::move(values));
}

} // namespace

TEST_CASE("collection and cancellation")
{
    const auto a = f({1, 0}) * g(1, {1, 1});
    CHECK(render(a + a, Format::Text) == "2*f[1,0]*g1[1,1]");
    CHECK((a - a).is_zero());
    CHECK(render(a - a, Format::Text) == "0");
    CHECK(render(FormulaPoly(d22), Format::Text) == "0");

    const auto s = g(1, {1, 0}) + g(1, {0, 1});
    const auto square = s * s;
    CHECK(square.size() == 3);
    CHECK(square == g(1, {1, 0}) * g(1, {1, 0}) + FormulaPoly::constant(d22, 2) * g(1, {1, 0}) * g(1, {0, 1})
                        + g(1, {0, 1}) * g(1, {0, 1}));
    CHECK(render(square, Format::Text) == "2*g1[0,1]*g1[1,0] + g1[0,1]^2 + g1[1,0]^2");
}

TEST_CASE("monomial canonical form")
{
    const Monomial a({{Symbol::inner(2, {1, 0}), 1}, {Symbol::outer({1, 1}), 1}, {Symbol::inner(2, {1, 0}), 2}});
    REQUIRE(a.factors().size() == 2);
    CHECK(a.factors()[0].symbol.kind == SymbolKind::Outer);
    CHECK(a.factors()[1].power == 3);
    CHECK(a.outer_degree() == 2);
    const Monomial b({{Symbol::var(1), 0}});
    CHECK(b.is_unit());
}

TEST_CASE("render formats")
{
    const auto p = FormulaPoly::constant(d22, Rational(-3, 2)) * f({1, 1}) * g(1, {1, 0}) * g(2, {0, 1});
    CHECK(render(p, Format::Text) == "-3/2*f[1,1]*g1[1,0]*g2[0,1]");
    const auto latex = render(p, Format::Latex);
    CHECK(latex.find("f_{1,1}") != std::string::npos);
    CHECK(latex.find("g^{(2)}_{0,1}") != std::string::npos);
    CHECK(latex.find("\\frac{3}{2}") != std::string::npos);
}

TEST_CASE("json round trip")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        // JSON carries at most one first-power outer factor per term.
        const auto source = random_poly(rng);
        std::vector<Term> terms;
        for (const auto &t : source.terms()) {
            Monomial::storage_type kept;
            bool outer = false;
            for (const auto &fac : t.monomial.factors()) {
                if (fac.symbol.kind == SymbolKind::Outer) {
                    if (outer) {
                        continue;
                    }
                    outer = true;
                    kept.push_back({fac.symbol, 1});
                } else {
                    kept.push_back(fac);
                }
            }
            terms.push_back({Monomial(std::move(kept)), t.coeff});
        }
        const auto p = FormulaPoly::from_terms(d22, std::move(terms));
        CHECK(parse_json(render(p, Format::Json)) == p);
    }
    const auto squared_outer = f({1, 0}) * f({1, 0});
    CHECK_THROWS(render(squared_outer, Format::Json));
    CHECK_THROWS_AS(parse_json("{\"n\": 2}"), ParseError);
    CHECK_THROWS_AS(parse_json("not json"), ParseError);
    CHECK_THROWS_AS(parse_json(R"({"n":1,"m":1,"terms":[{"coeff":"1","outer":[2,0],"inner":[],"vars":[]}]})"),
                    DimensionMismatch);
}

TEST_CASE("ring axioms on random polynomials")
{
    std::mt19937 rng(3);
    const FormulaPoly zero(d22);
    const auto one = FormulaPoly::unit(d22);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = random_poly(rng);
        const auto q = random_poly(rng);
        const auto r = random_poly(rng);
        CHECK(p + q == q + p);
        CHECK(p * q == q * p);
        CHECK((p + q) + r == p + (q + r));
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK(p + zero == p);
        CHECK(p * one == p);
        CHECK((p * zero).is_zero());
        CHECK((p - p).is_zero());
        CHECK(poly_add(p, q) == p + q);
        CHECK(poly_mul(p, q) == p * q);
    }
}

TEST_CASE("substitute is a ring homomorphism")
{
    std::mt19937 rng(5);
    Substitution values;
    values.outer = table({{{1, 0}, 2}, {{0, 1}, Rational(1, 3)}, {{2, 0}, -1}, {{1, 1}, 5}, {{0, 2}, 4},
                          {{2, 1}, 7}, {{1, 2}, Rational(-2, 5)}, {{2, 2}, 3}});
    std::map<MultiIndex, Rational> g1, g2;
    for (const auto &i : indices_up_to(2, 4)) {
        g1[i] = Rational(static_cast<long>(i[0]) + 1, static_cast<long>(i[1]) + 2);
        g2[i] = Rational(static_cast<long>(i[0]) - static_cast<long>(i[1]), 3);
        g2[i].canonicalize();
        g1[i].canonicalize();
    }
    values.inner = {table(g1), table(g2)};
    values.vars = {Rational(3, 2), -2};
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = random_poly(rng);
        const auto q = random_poly(rng);
        CHECK(evaluate(p + q, values) == evaluate(p, values) + evaluate(q, values));
        CHECK(evaluate(p * q, values) == evaluate(p, values) * evaluate(q, values));
    }
}

TEST_CASE("substitution examples")
{
    // f[1,0]*g1[1,1] with f[1,0] = 2 and g1[1,1] = 3.
    const auto p = f({1, 0}) * g(1, {1, 1});
    Substitution values;
    values.outer = table({{{1, 0}, 2}});
    values.inner = {table({{{1, 1}, 3}}), MomentSequence::symbolic()};
    CHECK(evaluate(p, values) == 6);

    // The six-term mixed second derivative with every symbol 1.
    const auto six = f({1, 0}) * g(1, {1, 1}) + f({2, 0}) * g(1, {1, 0}) * g(1, {0, 1}) + f({0, 1}) * g(2, {1, 1})
                   + f({0, 2}) * g(2, {1, 0}) * g(2, {0, 1}) + f({1, 1}) * g(1, {1, 0}) * g(2, {0, 1})
                   + f({1, 1}) * g(1, {0, 1}) * g(2, {1, 0});
    Substitution ones;
    ones.outer = MomentSequence::unity();
    ones.inner = {MomentSequence::unity(), MomentSequence::unity()};
    CHECK(evaluate(six, ones) == 6);

    // Partial substitution keeps the untouched symbols.
    Substitution partial;
    partial.inner = {MomentSequence::unity(), MomentSequence::unity()};
    const auto outer_only = substitute(six, partial);
    CHECK(outer_only == f({1, 0}) + f({2, 0}) + f({0, 1}) + f({0, 2}) + FormulaPoly::constant(d22, 2) * f({1, 1}));

    Substitution missing;
    missing.outer = table({{{1, 0}, 2}});
    missing.inner = {MomentSequence::unity(), MomentSequence::unity()};
    CHECK_THROWS_AS(evaluate(six, missing), MissingValue);
    CHECK_THROWS_AS(evaluate(f({1, 0}), Substitution{}), MissingValue);
}

TEST_CASE("dimension checks")
{
    const auto p = f({1, 0});
    const auto q = FormulaPoly::monomial({1, 2}, Monomial({{Symbol::outer({1}), 1}}));
    CHECK_THROWS_AS(p + q, DimensionMismatch);
    CHECK_THROWS_AS(p * q, DimensionMismatch);
    CHECK_NOTHROW(q.validate());
    const auto bad = FormulaPoly::monomial({1, 2}, Monomial({{Symbol::inner(2, {1, 0}), 1}}));
    CHECK_THROWS_AS(bad.validate(), DimensionMismatch);
    const auto wrong_length = FormulaPoly::monomial({1, 2}, Monomial({{Symbol::inner(1, {1, 0, 0}), 1}}));
    CHECK_THROWS_AS(wrong_length.validate(), DimensionMismatch);
}
