#pragma once

#include <vector>

#include "pcs/dual_graph.hpp"
#include "pcs/series.hpp"

namespace pcs {

// One valuation of the filtration: the divisorial valuation of a component,
// or the order along a curve branch whose strict transform meets `vertex`.
struct ValuationEntry {
    enum class Kind { divisorial, branch };

    Kind kind = Kind::divisorial;
    VertexId vertex = 0;
    int branch = 0;

    static ValuationEntry divisor(VertexId v) { return {Kind::divisorial, v, 0}; }
    static ValuationEntry curve_branch(int branch, VertexId arrow_vertex) { return {Kind::branch, arrow_vertex, branch}; }

    friend bool operator==(const ValuationEntry&, const ValuationEntry&) = default;
};

using ValuationSpec = std::vector<ValuationEntry>;

// Branches by index first, then marked divisors in their listed order.
ValuationSpec default_spec(const DualGraph& graph);

// Every factor with chi != 0 has its own exponent. Throws InvariantError.
void check_no_cancellation(const EulerVector& chi, const std::vector<Exponent>& exps);

// Pure divisorial downward closures with at most two valuations, and minimal
// curve resolutions: the product formula has no cancellation there.
bool cancellation_free_setting(const DualGraph& graph, const ValuationSpec& spec);

// prod over components of (1 - t^{m_sigma})^{-chi(sigma)}. chi counts arrows
// as punctures whenever the graph has arrows.
FactoredSeries poincare_series(const DualGraph& graph, const ValuationSpec& spec);
FactoredSeries poincare_series(const DualGraph& graph);

// The exponent vector m_sigma for every vertex, under `spec`.
std::vector<Exponent> exponent_vectors(const DualGraph& graph, const MultiplicityMatrix& m, const ValuationSpec& spec);

// Poincare series of the curve without branch `index` (0-based): divide by
// (1 - t^{m_alpha}) and set t_index = 1. Removing the last branch gives the
// constant series in zero variables.
FactoredSeries projection_formula_curve(const FactoredSeries& p, const Exponent& m_alpha, int index);

// Chain E_1..E_p of free blowups, E_{p+1} free on E_p and E_{p+2} the
// satellite between E_p and E_{p+1}. The curve {y = 0} is the arrow at E_{p+1}
// (branch 1) and E_{p+2} is the marked divisor. Its mixed series is
// (1 - t u^2)^{-1} for every p >= 1.
DualGraph counterexample_graph(int p);

} // namespace pcs
