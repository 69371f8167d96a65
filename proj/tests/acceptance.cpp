// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "pcs/bigint.hpp"
#include "pcs/errors.hpp"
#include "pcs/graph_io.hpp"
#include "pcs/oracle.hpp"
#include "pcs/poincare.hpp"
#include "pcs/reconstruct.hpp"

using namespace pcs;

namespace {

constexpr double fig2_seconds = 1.0;
constexpr double divisorial_roundtrip_seconds = 120.0;
constexpr double curve_roundtrip_seconds = 180.0;
constexpr double oracle_seconds = 300.0;

constexpr int roundtrip_trials = 500;
constexpr int roundtrip_max_vertices = 30;
constexpr int oracle_bound = 20;
constexpr int corpus_max_vertices = 8;
constexpr int projection_trials = 200;
constexpr int ratio_trials = 200;
constexpr int semigroup_bound = 60;
constexpr int algebra_trials = 300;
constexpr int algebra_bound = 40;

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s)
{
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << s << " s";
    return out.str();
}

DualGraph cusp() { return DualGraph::from_parents({{}, {1}, {1, 2}}); }

Outcome counterexample()
{
    const auto t0 = Clock::now();
    const FactoredSeries expected(2, {{{1, 2}, -1}});
    std::vector<DualGraph> graphs;
    Outcome out;
    for (int p = 1; p <= 3; ++p) {
        graphs.push_back(counterexample_graph(p));
        if (!(poincare_series(graphs.back()) == expected)) out.pass = false;
    }
    for (std::size_t a = 0; a < graphs.size(); ++a) {
        for (std::size_t b = a + 1; b < graphs.size(); ++b) {
            if (equivalent(graphs[a], graphs[b])) out.pass = false;
        }
    }
    const double dt = seconds_since(t0);
    out.pass = out.pass && dt < fig2_seconds;
    out.detail = "series " + poincare_series(graphs[0]).to_string() + " for p=1,2,3, pairwise non-equivalent, " +
                 fmt_seconds(dt) + " (limit " + fmt_seconds(fig2_seconds) + ")";
    return out;
}

Outcome roundtrip(InstanceMode mode, int max_r, double limit)
{
    const auto t0 = Clock::now();
    int ok = 0;
    for (int k = 0; k < roundtrip_trials; ++k) {
        const std::uint64_t seed = 1 + static_cast<std::uint64_t>(k);
        const int r = 1 + k % max_r;
        const DualGraph g = random_instance(seed, {roundtrip_max_vertices, r, mode});
        try {
            const ReconstructMode rm = mode == InstanceMode::curve ? ReconstructMode::curve : ReconstructMode::divisorial;
            if (equivalent(reconstruct(poincare_series(g), rm), g)) ++ok;
        } catch (const std::exception&) {
        }
    }
    const double dt = seconds_since(t0);
    return {ok == roundtrip_trials && dt < limit, std::to_string(ok) + "/" + std::to_string(roundtrip_trials) +
                                                      " equivalent, " + fmt_seconds(dt) + " (limit " +
                                                      fmt_seconds(limit) + ")"};
}

Outcome oracle_equivalence()
{
    const auto t0 = Clock::now();
    std::vector<std::pair<std::string, DualGraph>> cases;
    DualGraph smooth = DualGraph::from_parents({{}});
    smooth.set_arrows({{1, 1}});
    cases.emplace_back("smooth", smooth);
    DualGraph branch = cusp();
    branch.set_arrows({{3, 1}});
    cases.emplace_back("cusp", branch);
    DualGraph node = DualGraph::from_parents({{}});
    node.set_arrows({{1, 1}, {1, 2}});
    cases.emplace_back("node", node);
    DualGraph tacnode = DualGraph::from_parents({{}, {1}});
    tacnode.set_arrows({{2, 1}, {2, 2}});
    cases.emplace_back("tacnode", tacnode);
    DualGraph div = cusp();
    div.set_marked_divisors({3});
    cases.emplace_back("E3", div);
    DualGraph pair = cusp();
    pair.set_marked_divisors({3, 2});
    cases.emplace_back("E3+E2", pair);

    Outcome out;
    std::string failed;
    for (const auto& [name, g] : cases) {
        const ValuationSpec spec = default_spec(g);
        const TruncatedSeries d = definitional_poincare(g, spec, oracle_bound);
        if (!(d == expand(poincare_series(g, spec), d.bound()))) failed += " " + name;
    }
    const double dt = seconds_since(t0);
    out.pass = failed.empty() && dt < oracle_seconds;
    out.detail = failed.empty() ? "6/6 instances agree" : "mismatch:" + failed;
    out.detail += ", " + fmt_seconds(dt) + " (limit " + fmt_seconds(oracle_seconds) + ")";
    return out;
}

BigInt determinant(std::vector<std::vector<BigInt>> a)
{
    const std::size_t n = a.size();
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

Outcome multiplicity_cross_check()
{
    namespace fs = std::filesystem;
    int graphs = 0;
    int entries = 0;
    std::string failed;
    std::vector<fs::path> paths;
    for (const auto& e : fs::directory_iterator(PCS_CORPUS_DIR)) {
        if (e.path().extension() == ".json") paths.push_back(e.path());
    }
    std::sort(paths.begin(), paths.end());
    for (const auto& path : paths) {
        const DualGraph g = read_graph_file(path.string());
        if (g.size() > corpus_max_vertices) continue;
        ++graphs;
        const MultiplicityMatrix m = multiplicity_matrix(g);
        const int n = g.size();
        std::vector<std::vector<BigInt>> dense(n, std::vector<BigInt>(n));
        bool ok = true;
        for (VertexId a = 1; a <= n; ++a) {
            for (VertexId b = 1; b <= n; ++b) {
                dense[a - 1][b - 1] = m(a, b);
                ++entries;
                if (m(a, b) <= 0 || curvette_intersection(g, a, b) != m(a, b)) ok = false;
            }
        }
        if (determinant(dense) != 1) ok = false;
        if (!ok) failed += " " + path.stem().string();
    }
    return {failed.empty() && graphs > 0, std::to_string(graphs) + " graphs, " + std::to_string(entries) +
                                              " entries" + (failed.empty() ? ", all reproduced" : ", failed:" + failed)};
}

Outcome projection()
{
    std::mt19937_64 rng(2024);
    int ok = 0;
    for (int k = 0; k < projection_trials; ++k) {
        const int r = 2 + k % 2;
        const DualGraph g = random_instance(1000 + static_cast<std::uint64_t>(k), {roundtrip_max_vertices, r, InstanceMode::divisorial});
        const int have = static_cast<int>(g.marked_divisors().size());
        std::vector<int> keep;
        while (keep.empty()) {
            for (int i = 0; i < have; ++i) {
                if (rng() % 2) keep.push_back(i);
            }
            if (static_cast<int>(keep.size()) == have && have > 1) keep.pop_back();
        }
        std::vector<VertexId> marks;
        for (int i : keep) marks.push_back(g.marked_divisors()[static_cast<std::size_t>(i)]);
        try {
            if (project(poincare_series(g), keep) == poincare_series(downward_closure(g, marks))) ++ok;
        } catch (const std::exception&) {
        }
    }
    return {ok == projection_trials, std::to_string(ok) + "/" + std::to_string(projection_trials) + " projections agree"};
}

// a1/a2 compared with b1/b2, all positive.
int compare_ratio(std::int64_t a1, std::int64_t a2, std::int64_t b1, std::int64_t b2)
{
    const __int128 l = static_cast<__int128>(a1) * b2;
    const __int128 r = static_cast<__int128>(b1) * a2;
    return l < r ? -1 : (l > r ? 1 : 0);
}

// Tree path from vertex 1 to v in the dual graph.
std::vector<VertexId> geodesic(const DualGraph& g, VertexId v)
{
    std::vector<VertexId> up(static_cast<std::size_t>(g.size()) + 1, 0);
    std::vector<VertexId> queue{1};
    up[1] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        for (VertexId w : g.adjacent(queue[i])) {
            if (up[w] == 0) {
                up[w] = queue[i];
                queue.push_back(w);
            }
        }
    }
    std::vector<VertexId> path{v};
    while (path.back() != 1) path.push_back(up[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

Outcome ratio_facts()
{
    int ok = 0;
    for (int k = 0; k < ratio_trials; ++k) {
        const DualGraph g = random_instance(5000 + static_cast<std::uint64_t>(k), {roundtrip_max_vertices, 2, InstanceMode::divisorial});
        const MultiplicityMatrix m = multiplicity_matrix(g);
        const auto ex = exponent_vectors(g, m, default_spec(g));
        const auto chi = euler_smooth(g, EulerMode::divisorial).values;
        bool good = true;

        std::set<Exponent> seen;
        for (VertexId v = 1; v <= g.size(); ++v) {
            if (chi[v - 1] != 0 && !seen.insert(ex[v - 1]).second) good = false;
            for (VertexId p : g.parents(v)) {
                const Exponent& a = ex[p - 1];
                const Exponent& b = ex[v - 1];
                if (a == b || a[0] > b[0] || a[1] > b[1]) good = false;
            }
        }

        auto cmp = [&](VertexId a, VertexId b) { return compare_ratio(ex[a - 1][0], ex[a - 1][1], ex[b - 1][0], ex[b - 1][1]); };
        const auto path1 = geodesic(g, g.marked_divisors()[0]);
        const auto path2 = geodesic(g, g.marked_divisors()[1]);
        std::size_t common = 0;
        while (common < path1.size() && common < path2.size() && path1[common] == path2[common]) ++common;
        const VertexId s = path1[common - 1];
        for (std::size_t i = 0; i < common; ++i) {
            if (cmp(path1[i], s) != 0) good = false;
        }
        for (std::size_t i = common; i < path1.size(); ++i) {
            if (cmp(path1[i], path1[i - 1]) <= 0) good = false;
        }
        for (std::size_t i = common; i < path2.size(); ++i) {
            if (cmp(path2[i], path2[i - 1]) >= 0) good = false;
        }
        std::set<VertexId> on_paths(path1.begin(), path1.end());
        on_paths.insert(path2.begin(), path2.end());
        for (VertexId v = 1; v <= g.size(); ++v) {
            if (on_paths.count(v)) continue;
            const auto path = geodesic(g, v);
            VertexId foot = 1;
            for (VertexId w : path) {
                if (on_paths.count(w)) foot = w;
            }
            if (cmp(v, foot) != 0) good = false;
        }
        if (good) ++ok;
    }
    return {ok == ratio_trials, std::to_string(ok) + "/" + std::to_string(ratio_trials) +
                                    " instances with distinct exponents and ordered ratios"};
}

Outcome semigroup_identity()
{
    const std::vector<std::vector<std::int64_t>> sets{{2, 3}, {4, 6, 13}, {6, 9, 22}};
    std::string failed;
    for (const auto& gens : sets) {
        const BranchData b = branch_from_semigroup(gens);
        if (!(expand(branch_series(b, ReconstructMode::curve), semigroup_bound) == semigroup_series(gens, semigroup_bound))) {
            failed += " <" + std::to_string(gens[0]) + ",...>";
        }
    }
    return {failed.empty(), failed.empty() ? "3/3 semigroups agree up to " + std::to_string(semigroup_bound)
                                           : "mismatch:" + failed};
}

Outcome series_algebra()
{
    std::mt19937_64 rng(77);
    int ok = 0;
    for (int trial = 0; trial < algebra_trials; ++trial) {
        const int r = 1 + static_cast<int>(rng() % 3);
        FactoredSeries f(r);
        const int count = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < count; ++i) {
            Exponent e(static_cast<std::size_t>(r));
            do {
                for (auto& x : e) x = static_cast<std::int64_t>(rng() % 13);
            } while (std::all_of(e.begin(), e.end(), [](std::int64_t x) { return x == 0; }));
            std::int64_t k = 0;
            while (k == 0) k = static_cast<std::int64_t>(rng() % 7) - 3;
            f.multiply_factor(e, k);
        }
        const TruncatedSeries s = expand(f, algebra_bound);
        const FactoredSeries back = factorize(s, algebra_bound);
        if (back == f && expand(back, algebra_bound) == s) ++ok;
    }
    return {ok == algebra_trials, std::to_string(ok) + "/" + std::to_string(algebra_trials) + " identities hold"};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"mixed counterexample", counterexample},
        {"divisorial round trip", [] { return roundtrip(InstanceMode::divisorial, 3, divisorial_roundtrip_seconds); }},
        {"curve round trip", [] { return roundtrip(InstanceMode::curve, 4, curve_roundtrip_seconds); }},
        {"definition vs product formula", oracle_equivalence},
        {"multiplicity matrix cross-check", multiplicity_cross_check},
        {"projection formula", projection},
        {"no cancellation and ratio order", ratio_facts},
        {"branch semigroup identity", semigroup_identity},
        {"series algebra round trips", series_algebra},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << o.detail
                  << std::endl;
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
