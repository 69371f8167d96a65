#include "doctest.h"

#include "pcs/oracle.hpp"

using namespace pcs;

namespace {

TauSeries monomial(int order, int power)
{
    TauSeries s(order);
    s[power] = 1;
    return s;
}

DualGraph cusp() { return DualGraph::from_parents({{}, {1}, {1, 2}}); }

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("tau series arithmetic")
{
    const TauSeries a = monomial(6, 1) + monomial(6, 2);
    const TauSeries sq = a * a;
    CHECK(sq[2] == 1);
    CHECK(sq[3] == 2);
    CHECK(sq[4] == 1);
    CHECK(sq.valuation() == 2);
    CHECK((a - a).valuation() == std::nullopt);
    CHECK(a.power(3)[3] == 1);
}

TEST_CASE("lambda series specialization")
{
    LambdaSeries s(4);
    s.add_term(1, 0, 1);
    s.add_term(2, 1, 3);
    const TauSeries t = s.specialize(2);
    CHECK(t[1] == 1);
    CHECK(t[2] == 6);
    CHECK(s.lambda_degree() == 1);
}

TEST_CASE("equation of the cusp parametrization")
{
    const PlanePolynomial f = implicit_equation(monomial(20, 2), monomial(20, 3), 4);
    PlanePolynomial expected{{{0, 2}, 1}, {{3, 0}, -1}};
    PlanePolynomial negated{{{0, 2}, -1}, {{3, 0}, 1}};
    CHECK((f == expected || f == negated));
    CHECK(evaluate(f, monomial(20, 2), monomial(20, 3)).valuation() == std::nullopt);
}

TEST_CASE("equation of a branch with two Puiseux pairs vanishes on it")
{
    // x = tau^4, y = tau^6 + tau^7
    const int n = 200;
    const TauSeries x = monomial(n, 4);
    const TauSeries y = monomial(n, 6) + monomial(n, 7);
    const PlanePolynomial f = implicit_equation(x, y, 8);
    CHECK(evaluate(f, x, y).valuation() == std::nullopt);
    int y_degree = 0;
    for (const auto& [e, c] : f) y_degree = std::max(y_degree, e.second);
    CHECK(y_degree == 4);
}

TEST_CASE("curvette intersections of the cusp graph")
{
    const DualGraph g = cusp();
    const MultiplicityMatrix m = multiplicity_matrix(g);
    for (VertexId a = 1; a <= 3; ++a) {
        for (VertexId b = 1; b <= 3; ++b) CHECK(curvette_intersection(g, a, b) == m(a, b));
    }
}

TEST_CASE("curvette intersections on random graphs")
{
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const DualGraph g = random_instance(seed, {7, 1, InstanceMode::divisorial});
        const MultiplicityMatrix m = multiplicity_matrix(g);
        for (VertexId a = 1; a <= g.size(); ++a) {
            for (VertexId b = 1; b <= g.size(); ++b) CHECK(curvette_intersection(g, a, b) == m(a, b));
        }
    }
}

TEST_CASE("graded pieces for a smooth branch")
{
    DualGraph g = DualGraph::from_parents({{}});
    g.set_arrows({{1, 1}});
    const ValuationSpec spec = default_spec(g);
    // J(v) = (y, x^v), so J(v)/J(v+1) is spanned by x^v
    for (int v = 0; v <= 5; ++v) CHECK(ideal_dim(g, spec, {v}) == 1);
}

TEST_CASE("graded pieces of the maximal ideal valuation")
{
    DualGraph g = DualGraph::from_parents({{}});
    g.set_marked_divisors({1});
    const ValuationSpec spec = default_spec(g);
    // J(v) = m^v: forms of degree v
    for (int v = 0; v <= 6; ++v) CHECK(ideal_dim(g, spec, {v}) == v + 1);
    const FiltrationOracle oracle(g, spec, 7);
    for (int v = 0; v <= 6; ++v) CHECK(oracle.codimension({v}) == v * (v + 1) / 2);
}

TEST_CASE("semigroup series")
{
    const TruncatedSeries s = semigroup_series({3, 5}, 12);
    const std::vector<int> members{0, 3, 5, 6, 8, 9, 10, 11, 12};
    for (int k = 0; k <= 12; ++k) {
        const bool in = std::find(members.begin(), members.end(), k) != members.end();
        CHECK(s.at({k}) == (in ? 1 : 0));
    }
}

TEST_CASE("definition agrees with the product formula on small graphs")
{
    DualGraph tacnode = DualGraph::from_parents({{}, {1}});
    tacnode.set_arrows({{2, 1}, {2, 2}});
    const auto spec = default_spec(tacnode);
    const TruncatedSeries d = definitional_poincare(tacnode, spec, 10);
    CHECK(d.bound() == 8);
    CHECK(d == expand(poincare_series(tacnode, spec), 8));

    DualGraph div = cusp();
    div.set_marked_divisors({3});
    CHECK(definitional_poincare(div, default_spec(div), 16) == expand(poincare_series(div), 15));
}

}

TEST_SUITE("oracle") {

TEST_CASE("definition agrees with the product formula on random graphs")
{
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const InstanceMode mode = seed % 2 ? InstanceMode::divisorial : InstanceMode::curve;
        const DualGraph g = random_instance(seed, {5, 1 + static_cast<int>(seed % 3), mode});
        const auto spec = default_spec(g);
        const TruncatedSeries d = definitional_poincare(g, spec, 12);
        CHECK(d == expand(poincare_series(g, spec), d.bound()));
    }
}

}
