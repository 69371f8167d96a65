#include "doctest.h"

#include "pcs/errors.hpp"
#include "pcs/series.hpp"
#include "pcs/series_io.hpp"

using namespace pcs;

TEST_SUITE("series") {

TEST_CASE("graded lex order")
{
    CHECK(graded_lex_less({0, 2}, {1, 2}));
    CHECK(graded_lex_less({0, 3}, {1, 2}));
    CHECK_FALSE(graded_lex_less({1, 2}, {1, 2}));
}

TEST_CASE("expansion of geometric and binomial factors")
{
    const TruncatedSeries geo = expand(FactoredSeries(1, {{{1}, -1}}), 6);
    for (int k = 0; k <= 6; ++k) CHECK(geo.at({k}) == 1);

    // (1 - t)^2 = 1 - 2t + t^2
    const TruncatedSeries sq = expand(FactoredSeries(1, {{{1}, 2}}), 4);
    CHECK(sq.at({0}) == 1);
    CHECK(sq.at({1}) == -2);
    CHECK(sq.at({2}) == 1);
    CHECK(sq.at({3}) == 0);

    // (1 - t^6) / ((1 - t^2)(1 - t^3)) counts the semigroup <2, 3>
    const TruncatedSeries cusp = expand(FactoredSeries(1, {{{2}, -1}, {{3}, -1}, {{6}, 1}}), 10);
    CHECK(cusp.at({0}) == 1);
    CHECK(cusp.at({1}) == 0);
    for (int k = 2; k <= 10; ++k) CHECK(cusp.at({k}) == 1);

    // (1 - t)^{-3} has coefficients C(k + 2, 2)
    const TruncatedSeries cube = expand(FactoredSeries(1, {{{1}, -3}}), 8);
    for (int k = 0; k <= 8; ++k) CHECK(cube.at({k}) == (k + 1) * (k + 2) / 2);
}

TEST_CASE("factorization of a two-variable geometric series")
{
    TruncatedSeries s(2, 12);
    for (int k = 0; 2 * k <= 12; ++k) s.at({k, 2 * k}) = 1;
    CHECK(factorize(s) == FactoredSeries(2, {{{1, 2}, -1}}));
}

TEST_CASE("factorize and expand are inverse")
{
    const FactoredSeries f(3, {{{1, 0, 2}, -2}, {{2, 3, 1}, 1}, {{0, 1, 1}, 3}, {{4, 4, 4}, -1}});
    CHECK(factorize(expand(f, 9), 9) == f);
    CHECK(expand(factorize(expand(f, 9)), 9) == expand(f, 9));
}

TEST_CASE("factorize reports a bound that is too small")
{
    const TruncatedSeries s = expand(FactoredSeries(1, {{{7}, 1}}), 9);
    CHECK_THROWS_AS(factorize(s, 5), InsufficientBound);
}

TEST_CASE("projection merges exponents")
{
    const FactoredSeries f(2, {{{1, 2}, -1}, {{1, 3}, 1}, {{2, 1}, -1}});
    CHECK(project(f, {0}) == FactoredSeries(1, {{{2}, -1}}));
    CHECK(project(f, {1}) == FactoredSeries(1, {{{1}, -1}, {{2}, -1}, {{3}, 1}}));
    CHECK_THROWS_AS(project(FactoredSeries(2, {{{0, 2}, 1}}), {0}), InputError);
}

TEST_CASE("projection agrees with substituting ones")
{
    const FactoredSeries f(2, {{{1, 2}, -1}, {{2, 3}, 1}, {{3, 1}, -1}});
    const TruncatedSeries full = expand(f, 60);
    const TruncatedSeries sub = substitute_ones(full, {0});
    CHECK(sub.truncated(10) == expand(project(f, {0}), 10));
}

TEST_CASE("division by the torus factor")
{
    // (t1 t2 - 1) * (1 + t1) = -1 - t1 + t1 t2 + t1^2 t2
    TruncatedSeries p(2, 4);
    p.at({0, 0}) = -1;
    p.at({1, 0}) = -1;
    p.at({1, 1}) = 1;
    p.at({2, 1}) = 1;
    const TruncatedSeries q = divide_torus(p);
    CHECK(q.at({0, 0}) == 1);
    CHECK(q.at({1, 0}) == 1);
    CHECK(q.at({1, 1}) == 0);
}

TEST_CASE("series text round trip")
{
    const FactoredSeries f(2, {{{1, 2}, -1}, {{3, 0}, 2}});
    const SeriesFile back = parse_series_text(write_factored(f));
    REQUIRE(back.is_factored());
    CHECK(std::get<FactoredSeries>(back.series) == f);
    CHECK(back.bound == 4);

    const TruncatedSeries s = expand(f, 5);
    const SeriesFile sb = parse_series_text(write_expanded(s));
    REQUIRE_FALSE(sb.is_factored());
    CHECK(std::get<TruncatedSeries>(sb.series) == s);
}

TEST_CASE("malformed series text")
{
    CHECK_THROWS_AS(parse_series_text(""), InputError);
    CHECK_THROWS_AS(parse_series_text("vars 1 mode odd bound 3\n"), InputError);
    CHECK_THROWS_AS(parse_series_text("vars 2 mode factored bound 3\n-1 1\n"), InputError);
    CHECK_THROWS_AS(parse_series_text("vars 1 mode expanded bound 3\n1 9\n"), InputError);
}

}
