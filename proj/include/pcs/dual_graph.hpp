#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pcs {

// 1-based index of an exceptional component, in creation order.
using VertexId = int;

enum class BlowupKind { origin, free, satellite };

// The center of one point blowup, described combinatorially.
struct Blowup {
    BlowupKind kind = BlowupKind::origin;
    VertexId first = 0;
    VertexId second = 0;

    static Blowup at_origin() { return {}; }
    static Blowup free_point(VertexId on) { return {BlowupKind::free, on, 0}; }
    static Blowup satellite_point(VertexId a, VertexId b) { return {BlowupKind::satellite, a, b}; }
};

struct Arrow {
    VertexId vertex = 0;
    int branch = 0;

    friend bool operator==(const Arrow&, const Arrow&) = default;
};

// A modification of (C^2, 0) stored as its blowup sequence. The parents of a
// vertex are the components through the blown-up point; the partial order is
// the transitive closure of the parent relation.
class DualGraph {
public:
    struct Vertex {
        std::vector<VertexId> parents;
        int self_intersection = -1;
        std::set<VertexId> adjacent;
    };

    DualGraph() = default;

    // Replays a parent list (empty, one or two parents per vertex).
    static DualGraph from_parents(const std::vector<std::vector<VertexId>>& parents);

    // Mutating builder used while constructing a graph.
    VertexId apply(const Blowup& b);

    int size() const { return static_cast<int>(vertices_.size()); }
    bool empty() const { return vertices_.empty(); }
    bool contains(VertexId v) const { return v >= 1 && v <= size(); }

    const Vertex& vertex(VertexId v) const;
    const std::vector<VertexId>& parents(VertexId v) const { return vertex(v).parents; }
    int self_intersection(VertexId v) const { return vertex(v).self_intersection; }
    const std::set<VertexId>& adjacent(VertexId v) const { return vertex(v).adjacent; }
    bool are_adjacent(VertexId a, VertexId b) const;
    int valence(VertexId v) const { return static_cast<int>(adjacent(v).size()); }

    // The point blown up to create v lies in the first neighbourhood of the
    // point that created the newest parent.
    VertexId enriques_parent(VertexId v) const;
    // Chain 1 = p_1, ..., p_k = v of Enriques ancestors, root first.
    std::vector<VertexId> point_chain(VertexId v) const;
    // Partial order: a <= b iff a is an ancestor of b (or equal).
    bool precedes_or_equal(VertexId a, VertexId b) const;
    // Vertices that nobody has as a parent.
    bool is_maximal(VertexId v) const;

    const std::vector<VertexId>& marked_divisors() const { return marked_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    void set_marked_divisors(std::vector<VertexId> marks);
    void set_arrows(std::vector<Arrow> arrows);
    int arrows_at(VertexId v) const;

    std::vector<std::vector<VertexId>> parent_lists() const;

    // Tree, satellite/free replay and marks/arrows consistency. Throws
    // InvariantError.
    void check_invariants() const;

    friend bool operator==(const DualGraph& a, const DualGraph& b);

private:
    std::vector<Vertex> vertices_;
    std::vector<VertexId> marked_;
    std::vector<Arrow> arrows_;
};

// Value-semantics blowup: returns the extended graph and the new vertex.
std::pair<DualGraph, VertexId> blowup(const DualGraph& graph, const Blowup& kind);

// Entry (sigma, delta) is m_{sigma delta}: the inverse of minus the
// intersection matrix, equal to the intersection number of curvettes.
class MultiplicityMatrix {
public:
    MultiplicityMatrix() = default;
    explicit MultiplicityMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, 0) {}

    int size() const { return n_; }
    std::int64_t operator()(VertexId a, VertexId b) const { return data_[index(a, b)]; }
    std::int64_t& operator()(VertexId a, VertexId b) { return data_[index(a, b)]; }

    friend bool operator==(const MultiplicityMatrix&, const MultiplicityMatrix&) = default;

private:
    std::size_t index(VertexId a, VertexId b) const
    {
        return static_cast<std::size_t>(a - 1) * n_ + static_cast<std::size_t>(b - 1);
    }

    int n_ = 0;
    std::vector<std::int64_t> data_;
};

// Multiplicities of the curvette of v at the points p_1..p_k of its chain.
std::vector<std::int64_t> curvette_multiplicities(const DualGraph& graph, VertexId v);

// Exact inverse of minus the intersection matrix. Verified by multiplying back.
MultiplicityMatrix multiplicity_matrix(const DualGraph& graph);

// Positivity, symmetry, det = 1, strict increase along Hasse edges.
void check_multiplicity_invariants(const DualGraph& graph, const MultiplicityMatrix& m);

// Intersection matrix entries (diagonal = self-intersections).
std::vector<std::vector<int>> intersection_matrix(const DualGraph& graph);

enum class EulerMode { divisorial, total_transform };

struct EulerVector {
    EulerMode mode = EulerMode::divisorial;
    std::vector<int> values; // values[v - 1]
};

EulerVector euler_smooth(const DualGraph& graph, EulerMode mode);

// Sub-sequence of blowups below some element of `marks`, replayed; the
// result carries `marks` (renumbered) as its marked divisors.
DualGraph downward_closure(const DualGraph& graph, const std::vector<VertexId>& marks);

// Contracts (-1)-components meeting at most two components of the total
// transform until none is left. Marked divisors and the root are kept.
DualGraph minimize_curve_resolution(const DualGraph& graph);

std::string canonical_code(const DualGraph& graph);
bool equivalent(const DualGraph& a, const DualGraph& b);

enum class InstanceMode { divisorial, curve };

struct InstanceParams {
    int max_vertices = 10;
    int r = 1;
    InstanceMode mode = InstanceMode::divisorial;
    double satellite_bias = 0.4;
};

DualGraph random_instance(std::uint64_t seed, const InstanceParams& params);

} // namespace pcs
