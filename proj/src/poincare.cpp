#include "pcs/poincare.hpp"

#include <algorithm>
#include <set>

#include "pcs/errors.hpp"

namespace pcs {

ValuationSpec default_spec(const DualGraph& graph)
{
    ValuationSpec spec;
    for (const auto& a : graph.arrows()) spec.push_back(ValuationEntry::curve_branch(a.branch, a.vertex));
    for (VertexId v : graph.marked_divisors()) spec.push_back(ValuationEntry::divisor(v));
    return spec;
}

std::vector<Exponent> exponent_vectors(const DualGraph& graph, const MultiplicityMatrix& m, const ValuationSpec& spec)
{
    std::vector<Exponent> out(graph.size(), Exponent(spec.size()));
    for (VertexId s = 1; s <= graph.size(); ++s) {
        for (std::size_t i = 0; i < spec.size(); ++i) out[s - 1][i] = m(s, spec[i].vertex);
    }
    return out;
}

void check_no_cancellation(const EulerVector& chi, const std::vector<Exponent>& exps)
{
    std::set<Exponent> seen;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (chi.values[i] != 0 && !seen.insert(exps[i]).second) {
            throw InvariantError("two factors of the product formula share an exponent");
        }
    }
}

bool cancellation_free_setting(const DualGraph& graph, const ValuationSpec& spec)
{
    const auto& marks = graph.marked_divisors();
    if (graph.arrows().empty()) {
        if (spec.size() > 2 || marks.empty()) return false;
        for (VertexId v = 1; v <= graph.size(); ++v) {
            const bool below = std::any_of(marks.begin(), marks.end(), [&](VertexId m) { return graph.precedes_or_equal(v, m); });
            if (!below) return false;
        }
        return true;
    }
    return marks.empty() && minimize_curve_resolution(graph).size() == graph.size();
}

FactoredSeries poincare_series(const DualGraph& graph, const ValuationSpec& spec)
{
    if (spec.empty()) throw InputError("valuation spec is empty");
    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (!graph.contains(spec[i].vertex)) throw InputError("valuation refers to a missing vertex");
        for (std::size_t j = 0; j < i; ++j) {
            if (spec[i] == spec[j]) throw InputError("valuation spec has repeated entries");
        }
    }
    const auto m = multiplicity_matrix(graph);
    const auto mode = graph.arrows().empty() ? EulerMode::divisorial : EulerMode::total_transform;
    const auto chi = euler_smooth(graph, mode);
    const auto exps = exponent_vectors(graph, m, spec);
    if (cancellation_free_setting(graph, spec)) check_no_cancellation(chi, exps);
    FactoredSeries out(static_cast<int>(spec.size()));
    for (VertexId s = 1; s <= graph.size(); ++s) {
        const int c = chi.values[s - 1];
        if (c != 0) out.multiply_factor(exps[s - 1], -c);
    }
    return out;
}

FactoredSeries poincare_series(const DualGraph& graph) { return poincare_series(graph, default_spec(graph)); }

FactoredSeries projection_formula_curve(const FactoredSeries& p, const Exponent& m_alpha, int index)
{
    const int r = p.variables();
    if (index < 0 || index >= r) throw InputError("branch index out of range");
    if (r == 1) return FactoredSeries(0);
    FactoredSeries divided = p;
    divided.multiply_factor(m_alpha, -1);
    std::vector<int> keep;
    for (int i = 0; i < r; ++i) {
        if (i != index) keep.push_back(i);
    }
    try {
        return project(divided, keep);
    } catch (const InputError&) {
        throw InputError("exponent m_alpha does not compensate the projection; wrong branch exponent");
    }
}

DualGraph counterexample_graph(int p)
{
    if (p < 1) throw InputError("p must be at least 1");
    DualGraph g;
    g.apply(Blowup::at_origin());
    for (int i = 2; i <= p; ++i) g.apply(Blowup::free_point(i - 1));
    const VertexId curve = g.apply(Blowup::free_point(p));
    const VertexId divisor = g.apply(Blowup::satellite_point(p, curve));
    g.set_arrows({{curve, 1}});
    g.set_marked_divisors({divisor});
    g.check_invariants();
    return g;
}

} // namespace pcs
