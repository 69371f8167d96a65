#pragma once

#include <cstdint>
#include <vector>

#include "pcs/dual_graph.hpp"
#include "pcs/point_sequence.hpp"
#include "pcs/series.hpp"

namespace pcs {

enum class ReconstructMode { divisorial, curve, mixed };

// Combinatorial data of one valuation read off its univariate series.
struct BranchData {
    std::vector<std::int64_t> generators;  // m_0 < ... < m_l
    std::vector<std::int64_t> dead_values; // m_{tau_1} < ...
    std::vector<std::int64_t> gcds;        // e_i = gcd(m_0..m_i)
    std::int64_t tail = 0;                 // c, divisorial only
    int g = 0;
    std::int64_t top_value = 0;

    // e_{g-1}, taken as 1 for a smooth branch.
    std::int64_t last_gcd() const { return g >= 1 ? gcds[static_cast<std::size_t>(g - 1)] : 1; }
    // m_g: the value of the last dead end.
    std::int64_t last_dead_end() const { return generators[static_cast<std::size_t>(g)]; }

    friend bool operator==(const BranchData&, const BranchData&) = default;
};

using ContactMatrix = std::vector<std::vector<std::int64_t>>;

// Throws InvariantError when the data does not describe a branch or divisor.
void check_branch_data(const BranchData& b, ReconstructMode mode);

// Curve branch with the given minimal semigroup generators.
BranchData branch_from_semigroup(const std::vector<std::int64_t>& generators);

// The univariate series described by the data.
FactoredSeries branch_series(const BranchData& b, ReconstructMode mode);

BranchData branch_from_univariate(const FactoredSeries& p, ReconstructMode mode);

// Infinitely near points of the branch (or of a curvette of the divisor) and
// how many of them the minimal resolution blows up.
struct BranchChain {
    PointSequence points;
    std::size_t length = 0;
};

BranchChain branch_chain(const BranchData& b, ReconstructMode mode);

DualGraph graph_from_branch(const BranchData& b, ReconstructMode mode);

std::int64_t pairwise_contact(const FactoredSeries& p2, const BranchData& b1, const BranchData& b2);

DualGraph assemble(const std::vector<BranchData>& branches, const ContactMatrix& contacts, ReconstructMode mode);

DualGraph reconstruct_divisorial(const FactoredSeries& p);

struct PeelResult {
    int i0 = 0;
    Exponent alpha;
    std::vector<std::int64_t> semigroup_generators;
    std::vector<std::int64_t> contacts_row; // indexed by the current variables; entry i0 unused
    FactoredSeries rest;
};

PeelResult peel_branch_curve(const FactoredSeries& p);

DualGraph reconstruct_curve(const FactoredSeries& p);

// Dispatch on the mode; mixed series are refused with InputError.
DualGraph reconstruct(const FactoredSeries& p, ReconstructMode mode);

// Minimal generating set of the numerical semigroup generated by `values`.
std::vector<std::int64_t> minimal_generators(std::vector<std::int64_t> values);

} // namespace pcs
