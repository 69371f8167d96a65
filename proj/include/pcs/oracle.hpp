#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pcs/bigint.hpp"
#include "pcs/dual_graph.hpp"
#include "pcs/poincare.hpp"
#include "pcs/series.hpp"

namespace pcs {

// Power series in tau with integer coefficients, truncated to `order` terms.
class TauSeries {
public:
    explicit TauSeries(int order = 0) : coeffs_(static_cast<std::size_t>(order)) {}

    int order() const { return static_cast<int>(coeffs_.size()); }
    const BigInt& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
    BigInt& operator[](int k) { return coeffs_[static_cast<std::size_t>(k)]; }

    // Exponent of the leading term; empty if every stored coefficient vanishes.
    std::optional<int> valuation() const;

    friend TauSeries operator+(const TauSeries& a, const TauSeries& b);
    friend TauSeries operator-(const TauSeries& a, const TauSeries& b);
    friend TauSeries operator*(const TauSeries& a, const TauSeries& b);
    TauSeries scaled(const BigInt& c) const;
    TauSeries power(int e) const;

private:
    std::vector<BigInt> coeffs_;
};

// Power series in tau whose coefficients are polynomials in a parameter lambda.
// coeff(j)[k] is the coefficient of tau^j lambda^k.
class LambdaSeries {
public:
    explicit LambdaSeries(int order = 0) : coeffs_(static_cast<std::size_t>(order)) {}

    int order() const { return static_cast<int>(coeffs_.size()); }
    const std::vector<BigInt>& coeff(int j) const { return coeffs_[static_cast<std::size_t>(j)]; }
    void add_term(int j, int k, const BigInt& c);
    int lambda_degree() const;

    friend LambdaSeries operator*(const LambdaSeries& a, const LambdaSeries& b);
    LambdaSeries plus_constant_times(const BigInt& c, const LambdaSeries& other) const;

    TauSeries specialize(const BigInt& lambda) const;

private:
    std::vector<std::vector<BigInt>> coeffs_;
};

// (x(tau), y(tau)). A generic parametrization carries lambda symbolically; its
// coefficient of tau^j has lambda-degree at most j.
struct Parametrization {
    LambdaSeries x;
    LambdaSeries y;
    bool generic = false;

    int truncation() const { return x.order(); }
};

// Polynomial in x, y: (a, b) -> coefficient of x^a y^b.
using PlanePolynomial = std::map<std::pair<int, int>, BigInt>;

TauSeries evaluate(const PlanePolynomial& f, const TauSeries& x, const TauSeries& y);

// Weierstrass polynomial of the branch (x(tau), y(tau)) (monic in the variable
// of lower order along the branch, up to an integer factor). Coefficients are
// power series in the other variable, truncated below `degree`. The series must
// carry at least mult * (degree + 1) + 1 terms, mult being the multiplicity.
PlanePolynomial implicit_equation(const TauSeries& x, const TauSeries& y, int degree);

// Chart bookkeeping of a blowup sequence: local coordinates at every center.
class LocalCharts {
public:
    explicit LocalCharts(const DualGraph& graph);

    // Generic curvette of E_sigma.
    Parametrization curvette(VertexId sigma, int truncation) const;
    // The curvette through the point lambda of the affine chart of E_alpha.
    Parametrization curvette_at(VertexId alpha, std::int64_t lambda, int truncation) const;

private:
    enum class Step { root, free, along_v, along_u };
    struct Center {
        Step step = Step::root;
        VertexId parent = 0;
        std::int64_t shift = 0;
        VertexId comp_u = 0;
        VertexId comp_v = 0;
    };

    Parametrization push_down(VertexId v, LambdaSeries x, LambdaSeries y, bool generic) const;

    std::vector<Center> centers_; // centers_[v - 1] is the point blown up to create v
};

Parametrization curvette_parametrization(const DualGraph& graph, VertexId sigma, int truncation = 0);

// Order of f along the parametrization: for a generic one, the order of the
// first coefficient that is a nonzero polynomial in lambda. Empty when f
// vanishes up to the truncation.
std::optional<int> valuation(const Parametrization& param, const PlanePolynomial& f);
// Equation of the curvette of E_delta through the point 100 + delta of its chart.
PlanePolynomial curvette_equation(const DualGraph& graph, VertexId delta, int degree);

// v_sigma of the curvette equation of E_delta, raising the truncation as needed.
std::int64_t curvette_intersection(const DualGraph& graph, VertexId sigma, VertexId delta);

// Parametrization realizing one entry of a valuation spec: a generic curvette
// for a divisor, a fixed curvette at the arrow vertex for a branch.
Parametrization valuation_parametrization(const DualGraph& graph, const LocalCharts& charts,
                                          const ValuationEntry& entry, int truncation);

// Codimensions of the ideals J(v) = {f : v_i(f) >= v_i} for v in
// [0, max_level]^r, computed on polynomials of degree below max_level.
class FiltrationOracle {
public:
    FiltrationOracle(const DualGraph& graph, const ValuationSpec& spec, int max_level);

    int variables() const { return r_; }
    int max_level() const { return max_level_; }
    std::int64_t codimension(const std::vector<int>& v) const;
    // dim J(v)/J(v+1); coordinates below zero are clamped.
    std::int64_t quotient_dimension(const std::vector<int>& v) const;

private:
    std::size_t index(const std::vector<int>& v) const;

    int r_ = 0;
    int max_level_ = 0;
    std::vector<std::int64_t> codim_;
};

std::int64_t ideal_dim(const DualGraph& graph, const ValuationSpec& spec, const std::vector<int>& v);

// P from its definition, valid (and returned) on the box [0, bound - r]^r.
TruncatedSeries definitional_poincare(const DualGraph& graph, const ValuationSpec& spec, int bound);

TruncatedSeries semigroup_series(const std::vector<std::int64_t>& generators, int bound);

} // namespace pcs
