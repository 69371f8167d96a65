#pragma once

#include <cstdint>
#include <vector>

#include "pcs/dual_graph.hpp"

namespace pcs {

// A chain of infinitely near points p_1, p_2, ..., each in the first
// neighbourhood of the previous one, together with the multiplicities of a
// curve going through them. Point k is proximate to k-1 and, if it is a
// satellite point, to exactly one older point.
struct PointSequence {
    std::vector<std::int64_t> multiplicities;
    std::vector<int> satellite_of; // 0-based, -1 for free points (and p_1)

    std::size_t size() const { return multiplicities.size(); }
    bool same_point_kind(const PointSequence& other, std::size_t k) const
    {
        return satellite_of[k] == other.satellite_of[k];
    }
    // Appends free points of multiplicity one up to `length`.
    void extend_free(std::size_t length);
};

// Multiplicity sequence of a plane branch with minimal semigroup generators
// m_0 < ... < m_g, via the Euclidean algorithm on its characteristic
// exponents; padded with ones to `length`.
std::vector<std::int64_t> branch_multiplicities(const std::vector<std::int64_t>& generators, std::size_t length);

// Proximity structure forced by the proximity equalities. Throws InputError
// when the multiplicities are not those of a branch.
PointSequence sequence_from_multiplicities(const std::vector<std::int64_t>& multiplicities);

// Points to blow up for an embedded resolution of the branch: up to the last
// satellite point (at least one).
std::size_t resolution_length(const PointSequence& seq);

// Point chain of a vertex with the multiplicities of its curvette.
PointSequence curvette_sequence(const DualGraph& graph, VertexId v);

// Blowup sequence of the first `length` points.
DualGraph chain_graph(const PointSequence& seq, std::size_t length);

// Number of shared points for which Noether's formula gives `contact`, or 0
// if the two sequences cannot realize it within `limit` points.
std::size_t shared_points_for_contact(const PointSequence& a, const PointSequence& b, std::int64_t contact,
                                      std::size_t limit);

} // namespace pcs
