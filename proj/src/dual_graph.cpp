#include "pcs/dual_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "pcs/bigint.hpp"
#include "pcs/errors.hpp"

namespace pcs {

namespace {

std::string vid(VertexId v) { return std::to_string(v); }

} // namespace

DualGraph DualGraph::from_parents(const std::vector<std::vector<VertexId>>& parents)
{
    DualGraph g;
    for (const auto& ps : parents) {
        switch (ps.size()) {
            case 0: g.apply(Blowup::at_origin()); break;
            case 1: g.apply(Blowup::free_point(ps[0])); break;
            case 2: g.apply(Blowup::satellite_point(ps[0], ps[1])); break;
            default: throw InputError("a vertex has at most two parents");
        }
    }
    return g;
}

VertexId DualGraph::apply(const Blowup& b)
{
    const VertexId id = size() + 1;
    Vertex nv;
    switch (b.kind) {
        case BlowupKind::origin:
            if (!empty()) throw InputError("origin blowup on a nonempty graph");
            break;
        case BlowupKind::free:
            if (empty()) throw InputError("free blowup on an empty graph");
            if (!contains(b.first)) throw InputError("free blowup on missing vertex " + vid(b.first));
            nv.parents = {b.first};
            nv.adjacent = {b.first};
            vertices_[b.first - 1].self_intersection -= 1;
            vertices_[b.first - 1].adjacent.insert(id);
            break;
        case BlowupKind::satellite: {
            if (empty()) throw InputError("satellite blowup on an empty graph");
            if (!contains(b.first) || !contains(b.second) || !are_adjacent(b.first, b.second)) {
                throw InputError("satellite blowup needs adjacent vertices, got " + vid(b.first) + ", " +
                                 vid(b.second));
            }
            const auto [lo, hi] = std::minmax(b.first, b.second);
            nv.parents = {lo, hi};
            nv.adjacent = {lo, hi};
            for (VertexId p : {lo, hi}) {
                auto& pv = vertices_[p - 1];
                pv.self_intersection -= 1;
                pv.adjacent.erase(p == lo ? hi : lo);
                pv.adjacent.insert(id);
            }
            break;
        }
    }
    vertices_.push_back(std::move(nv));
    return id;
}

const DualGraph::Vertex& DualGraph::vertex(VertexId v) const
{
    if (!contains(v)) throw InputError("no vertex " + vid(v));
    return vertices_[v - 1];
}

bool DualGraph::are_adjacent(VertexId a, VertexId b) const
{
    return contains(a) && contains(b) && vertices_[a - 1].adjacent.count(b) > 0;
}

VertexId DualGraph::enriques_parent(VertexId v) const
{
    const auto& ps = parents(v);
    return ps.empty() ? 0 : *std::max_element(ps.begin(), ps.end());
}

std::vector<VertexId> DualGraph::point_chain(VertexId v) const
{
    std::vector<VertexId> chain;
    for (VertexId cur = v; cur != 0; cur = enriques_parent(cur)) chain.push_back(cur);
    std::reverse(chain.begin(), chain.end());
    return chain;
}

bool DualGraph::precedes_or_equal(VertexId a, VertexId b) const
{
    for (VertexId cur = b; cur != 0; cur = enriques_parent(cur)) {
        if (cur == a) return true;
        if (cur < a) return false;
    }
    return false;
}

bool DualGraph::is_maximal(VertexId v) const
{
    for (VertexId w = v + 1; w <= size(); ++w) {
        const auto& ps = vertices_[w - 1].parents;
        if (std::find(ps.begin(), ps.end(), v) != ps.end()) return false;
    }
    return true;
}

void DualGraph::set_marked_divisors(std::vector<VertexId> marks)
{
    std::set<VertexId> seen;
    for (VertexId m : marks) {
        if (!contains(m)) throw InputError("marked divisor " + vid(m) + " is not a vertex");
        if (!seen.insert(m).second) throw InputError("marked divisor " + vid(m) + " repeated");
    }
    marked_ = std::move(marks);
}

void DualGraph::set_arrows(std::vector<Arrow> arrows)
{
    std::set<int> branches;
    for (const auto& a : arrows) {
        if (!contains(a.vertex)) throw InputError("arrow at missing vertex " + vid(a.vertex));
        if (a.branch < 1) throw InputError("branch indices start at 1");
        if (!branches.insert(a.branch).second) {
            throw InputError("branch " + std::to_string(a.branch) + " has two arrows");
        }
    }
    std::sort(arrows.begin(), arrows.end(), [](const Arrow& x, const Arrow& y) { return x.branch < y.branch; });
    arrows_ = std::move(arrows);
}

int DualGraph::arrows_at(VertexId v) const
{
    return static_cast<int>(std::count_if(arrows_.begin(), arrows_.end(), [v](const Arrow& a) { return a.vertex == v; }));
}

std::vector<std::vector<VertexId>> DualGraph::parent_lists() const
{
    std::vector<std::vector<VertexId>> out;
    out.reserve(vertices_.size());
    for (const auto& v : vertices_) out.push_back(v.parents);
    return out;
}

void DualGraph::check_invariants() const
{
    DualGraph replay;
    try {
        replay = from_parents(parent_lists());
    } catch (const InputError& e) {
        throw InvariantError(std::string("blowup sequence does not replay: ") + e.what());
    }
    for (VertexId v = 1; v <= size(); ++v) {
        const auto& a = vertices_[v - 1];
        const auto& b = replay.vertices_[v - 1];
        if (a.self_intersection != b.self_intersection || a.adjacent != b.adjacent) {
            throw InvariantError("vertex " + vid(v) + " disagrees with its replay");
        }
        for (VertexId p : a.parents) {
            if (p >= v) throw InvariantError("parent index must be smaller than the child");
        }
    }
    std::size_t edges = 0;
    for (const auto& v : vertices_) edges += v.adjacent.size();
    if (!empty() && edges != 2 * (vertices_.size() - 1)) throw InvariantError("dual graph is not a tree");
    std::set<VertexId> marks(marked_.begin(), marked_.end());
    if (marks.size() != marked_.size()) throw InvariantError("repeated marked divisor");
    for (VertexId m : marked_) {
        if (!contains(m)) throw InvariantError("marked divisor out of range");
    }
    std::set<int> branches;
    for (const auto& a : arrows_) {
        if (!contains(a.vertex) || !branches.insert(a.branch).second) throw InvariantError("bad arrow");
    }
}

bool operator==(const DualGraph& a, const DualGraph& b)
{
    if (a.size() != b.size() || a.marked_ != b.marked_ || a.arrows_ != b.arrows_) return false;
    for (std::size_t i = 0; i < a.vertices_.size(); ++i) {
        const auto& x = a.vertices_[i];
        const auto& y = b.vertices_[i];
        if (x.parents != y.parents || x.self_intersection != y.self_intersection || x.adjacent != y.adjacent) {
            return false;
        }
    }
    return true;
}

std::pair<DualGraph, VertexId> blowup(const DualGraph& graph, const Blowup& kind)
{
    DualGraph next = graph;
    const VertexId id = next.apply(kind);
    return {std::move(next), id};
}

std::vector<std::int64_t> curvette_multiplicities(const DualGraph& graph, VertexId v)
{
    const auto chain = graph.point_chain(v);
    const std::size_t k = chain.size();
    std::vector<std::int64_t> e(k, 0);
    e[k - 1] = 1;
    // Proximity equality: the multiplicity at a point is the sum over the
    // later points proximate to it.
    for (std::size_t i = k - 1; i-- > 0;) {
        std::int64_t sum = 0;
        for (std::size_t j = i + 1; j < k; ++j) {
            const auto& ps = graph.parents(chain[j]);
            if (std::find(ps.begin(), ps.end(), chain[i]) != ps.end()) sum += e[j];
        }
        e[i] = sum;
    }
    return e;
}

std::vector<std::vector<int>> intersection_matrix(const DualGraph& graph)
{
    const int n = graph.size();
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (VertexId a = 1; a <= n; ++a) {
        m[a - 1][a - 1] = graph.self_intersection(a);
        for (VertexId b : graph.adjacent(a)) m[a - 1][b - 1] = 1;
    }
    return m;
}

MultiplicityMatrix multiplicity_matrix(const DualGraph& graph)
{
    if (graph.empty()) throw InputError("multiplicity matrix of an empty graph");
    const int n = graph.size();
    std::vector<std::vector<VertexId>> chains(n);
    std::vector<std::vector<std::int64_t>> mults(n);
    for (VertexId v = 1; v <= n; ++v) {
        chains[v - 1] = graph.point_chain(v);
        mults[v - 1] = curvette_multiplicities(graph, v);
    }
    // Noether: the intersection number of two curvettes is the sum of
    // products of multiplicities over their common points.
    MultiplicityMatrix m(n);
    for (VertexId a = 1; a <= n; ++a) {
        for (VertexId b = a; b <= n; ++b) {
            const auto& ca = chains[a - 1];
            const auto& cb = chains[b - 1];
            std::int64_t sum = 0;
            for (std::size_t i = 0; i < std::min(ca.size(), cb.size()) && ca[i] == cb[i]; ++i) {
                sum += mults[a - 1][i] * mults[b - 1][i];
            }
            m(a, b) = sum;
            m(b, a) = sum;
        }
    }
    // (-E) * m must be the identity.
    for (VertexId a = 1; a <= n; ++a) {
        for (VertexId b = 1; b <= n; ++b) {
            __int128 acc = -static_cast<__int128>(graph.self_intersection(a)) * m(a, b);
            for (VertexId c : graph.adjacent(a)) acc -= m(c, b);
            if (acc != (a == b ? 1 : 0)) {
                throw InvariantError("multiplicity matrix is not the inverse of minus the intersection matrix");
            }
        }
    }
    return m;
}

namespace {

BigInt bareiss_determinant(std::vector<std::vector<BigInt>> a)
{
    const std::size_t n = a.size();
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && a[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

} // namespace

void check_multiplicity_invariants(const DualGraph& graph, const MultiplicityMatrix& m)
{
    const int n = graph.size();
    if (m.size() != n) throw InvariantError("multiplicity matrix has the wrong size");
    std::vector<std::vector<BigInt>> dense(n, std::vector<BigInt>(n));
    for (VertexId a = 1; a <= n; ++a) {
        for (VertexId b = 1; b <= n; ++b) {
            if (m(a, b) <= 0) throw InvariantError("multiplicity entry is not positive");
            if (m(a, b) != m(b, a)) throw InvariantError("multiplicity matrix is not symmetric");
            dense[a - 1][b - 1] = m(a, b);
        }
    }
    if (bareiss_determinant(std::move(dense)) != 1) throw InvariantError("det of multiplicity matrix is not 1");
    // Rows grow along the partial order: weakly in every column, strictly in
    // the column of the larger vertex.
    for (VertexId v = 1; v <= n; ++v) {
        for (VertexId p : graph.parents(v)) {
            for (VertexId c = 1; c <= n; ++c) {
                if (m(p, c) > m(v, c)) throw InvariantError("multiplicity row decreases along the order");
            }
            if (m(p, v) >= m(v, v)) throw InvariantError("multiplicity row does not increase strictly");
        }
    }
}

EulerVector euler_smooth(const DualGraph& graph, EulerMode mode)
{
    EulerVector out;
    out.mode = mode;
    out.values.resize(graph.size());
    for (VertexId v = 1; v <= graph.size(); ++v) {
        int chi = 2 - graph.valence(v);
        if (mode == EulerMode::total_transform) chi -= graph.arrows_at(v);
        out.values[v - 1] = chi;
    }
    return out;
}

DualGraph downward_closure(const DualGraph& graph, const std::vector<VertexId>& marks)
{
    if (marks.empty()) throw InputError("downward closure of an empty set");
    std::set<VertexId> keep;
    for (VertexId s : marks) {
        if (!graph.contains(s)) throw InputError("vertex " + vid(s) + " not in graph");
        for (VertexId v : graph.point_chain(s)) keep.insert(v);
    }
    std::map<VertexId, VertexId> renumber;
    for (VertexId v : keep) renumber.emplace(v, static_cast<VertexId>(renumber.size()) + 1);
    std::vector<std::vector<VertexId>> parents;
    for (VertexId v : keep) {
        std::vector<VertexId> ps;
        for (VertexId p : graph.parents(v)) ps.push_back(renumber.at(p));
        parents.push_back(std::move(ps));
    }
    DualGraph out = DualGraph::from_parents(parents);
    std::vector<VertexId> new_marks;
    for (VertexId s : marks) new_marks.push_back(renumber.at(s));
    out.set_marked_divisors(std::move(new_marks));
    return out;
}

namespace {

// Removes a maximal vertex and replays; arrows on it move to `arrow_target`.
DualGraph contract(const DualGraph& graph, VertexId v, VertexId arrow_target)
{
    auto shift = [v](VertexId x) { return x > v ? x - 1 : x; };
    std::vector<std::vector<VertexId>> parents;
    for (VertexId w = 1; w <= graph.size(); ++w) {
        if (w == v) continue;
        std::vector<VertexId> ps;
        for (VertexId p : graph.parents(w)) ps.push_back(shift(p));
        parents.push_back(std::move(ps));
    }
    DualGraph out = DualGraph::from_parents(parents);
    std::vector<VertexId> marks;
    for (VertexId m : graph.marked_divisors()) marks.push_back(shift(m));
    out.set_marked_divisors(std::move(marks));
    std::vector<Arrow> arrows;
    for (Arrow a : graph.arrows()) {
        a.vertex = shift(a.vertex == v ? arrow_target : a.vertex);
        arrows.push_back(a);
    }
    out.set_arrows(std::move(arrows));
    return out;
}

} // namespace

DualGraph minimize_curve_resolution(const DualGraph& graph)
{
    DualGraph g = graph;
    for (;;) {
        VertexId victim = 0;
        const auto& marks = g.marked_divisors();
        for (VertexId v = g.size(); v >= 2; --v) {
            if (std::find(marks.begin(), marks.end(), v) != marks.end()) continue;
            if (g.self_intersection(v) != -1 || !g.is_maximal(v)) continue;
            if (g.valence(v) + g.arrows_at(v) <= 2) {
                victim = v;
                break;
            }
        }
        if (victim == 0) return g;
        g = contract(g, victim, g.enriques_parent(victim));
    }
}

std::string canonical_code(const DualGraph& graph)
{
    const int n = graph.size();
    if (n == 0) return "()";
    std::vector<std::vector<VertexId>> children(n + 1);
    std::vector<int> depth(n + 1, 0);
    for (VertexId v = 2; v <= n; ++v) {
        const VertexId p = graph.enriques_parent(v);
        children[p].push_back(v);
        depth[v] = depth[p] + 1;
    }
    std::vector<std::string> labels(n + 1);
    for (VertexId v = 1; v <= n; ++v) {
        const auto& ps = graph.parents(v);
        std::string label = ps.empty() ? "R" : (ps.size() == 1 ? "F" : "S" + std::to_string(depth[v] - depth[ps[0]]));
        std::vector<std::string> tags;
        const auto& marks = graph.marked_divisors();
        for (std::size_t i = 0; i < marks.size(); ++i) {
            if (marks[i] == v) tags.push_back("d" + std::to_string(i + 1));
        }
        for (const auto& a : graph.arrows()) {
            if (a.vertex == v) tags.push_back("b" + std::to_string(a.branch));
        }
        std::sort(tags.begin(), tags.end());
        for (const auto& t : tags) label += "," + t;
        labels[v] = std::move(label);
    }
    // Children have larger ids, so a reverse sweep sees them first.
    std::vector<std::string> code(n + 1);
    for (VertexId v = n; v >= 1; --v) {
        std::vector<std::string> kids;
        for (VertexId c : children[v]) kids.push_back(std::move(code[c]));
        std::sort(kids.begin(), kids.end());
        std::string s = "(" + labels[v] + ":";
        for (const auto& k : kids) s += k;
        s += ")";
        code[v] = std::move(s);
    }
    return code[1];
}

bool equivalent(const DualGraph& a, const DualGraph& b) { return canonical_code(a) == canonical_code(b); }

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

// Picks `count` distinct vertices: the newest one, then preferably maximal ones.
std::vector<VertexId> pick_vertices(const DualGraph& g, int count, Rng& rng)
{
    std::vector<VertexId> chosen{g.size()};
    std::vector<VertexId> maximal;
    for (VertexId v = 1; v <= g.size(); ++v) {
        if (g.is_maximal(v)) maximal.push_back(v);
    }
    while (static_cast<int>(chosen.size()) < count) {
        std::vector<VertexId> pool;
        if (rng.unit() < 0.6) {
            for (VertexId v : maximal) {
                if (std::find(chosen.begin(), chosen.end(), v) == chosen.end()) pool.push_back(v);
            }
        }
        if (pool.empty()) {
            for (VertexId v = 1; v <= g.size(); ++v) {
                if (std::find(chosen.begin(), chosen.end(), v) == chosen.end()) pool.push_back(v);
            }
        }
        chosen.push_back(pool[rng.below(pool.size())]);
    }
    return chosen;
}

} // namespace

DualGraph random_instance(std::uint64_t seed, const InstanceParams& params)
{
    if (params.max_vertices < 1) throw InputError("max_vertices must be at least 1");
    if (params.r < 1) throw InputError("r must be at least 1");
    if (params.r > params.max_vertices) throw InputError("r exceeds the number of available vertices");
    Rng rng(seed);
    const int n = params.r + static_cast<int>(rng.below(static_cast<std::uint64_t>(params.max_vertices - params.r + 1)));
    DualGraph g;
    g.apply(Blowup::at_origin());
    while (g.size() < n) {
        const VertexId base = rng.unit() < 0.75 ? g.size() : static_cast<VertexId>(rng.below(g.size())) + 1;
        const auto& nbrs = g.adjacent(base);
        if (!nbrs.empty() && rng.unit() < params.satellite_bias) {
            auto it = nbrs.begin();
            std::advance(it, static_cast<long>(rng.below(nbrs.size())));
            g.apply(Blowup::satellite_point(base, *it));
        } else {
            g.apply(Blowup::free_point(base));
        }
    }
    const auto picks = pick_vertices(g, params.r, rng);
    if (params.mode == InstanceMode::divisorial) return downward_closure(g, picks);
    std::vector<Arrow> arrows;
    for (int i = 0; i < params.r; ++i) arrows.push_back({picks[i], i + 1});
    g.set_arrows(std::move(arrows));
    return minimize_curve_resolution(g);
}

} // namespace pcs
