#include "doctest.h"

#include "pcs/errors.hpp"
#include "pcs/point_sequence.hpp"

using namespace pcs;

TEST_SUITE("point_sequence") {

TEST_CASE("multiplicity sequences of branches")
{
    CHECK(branch_multiplicities({2, 3}, 3) == std::vector<std::int64_t>{2, 1, 1});
    CHECK(branch_multiplicities({2, 5}, 4) == std::vector<std::int64_t>{2, 2, 1, 1});
    CHECK(branch_multiplicities({3, 4}, 4) == std::vector<std::int64_t>{3, 1, 1, 1});
    CHECK(branch_multiplicities({4, 6, 13}, 6) == std::vector<std::int64_t>{4, 2, 2, 1, 1, 1});
    CHECK(branch_multiplicities({1}, 2) == std::vector<std::int64_t>{1, 1});
}

TEST_CASE("proximity structure")
{
    const PointSequence s = sequence_from_multiplicities({2, 1, 1});
    CHECK(s.satellite_of == std::vector<int>{-1, -1, 0});
    CHECK(resolution_length(s) == 3);
    const PointSequence t = sequence_from_multiplicities({4, 2, 2, 1, 1});
    CHECK(resolution_length(t) == 5);
    CHECK_THROWS_AS(sequence_from_multiplicities({2, 1, 2}), InputError);
}

TEST_CASE("chain graph of the cusp")
{
    const PointSequence s = sequence_from_multiplicities({2, 1, 1});
    const DualGraph g = chain_graph(s, 3);
    CHECK(g.parent_lists() == std::vector<std::vector<VertexId>>{{}, {1}, {1, 2}});
    CHECK(curvette_sequence(g, 3).multiplicities == std::vector<std::int64_t>{2, 1, 1});
}

TEST_CASE("shared points from Noether's formula")
{
    PointSequence smooth = sequence_from_multiplicities({1});
    smooth.extend_free(5);
    // two smooth branches with contact k share k points
    for (std::int64_t k = 1; k <= 5; ++k) CHECK(shared_points_for_contact(smooth, smooth, k, 5) == static_cast<std::size_t>(k));
    const PointSequence cusp = sequence_from_multiplicities({2, 1, 1});
    CHECK(shared_points_for_contact(smooth, cusp, 2, 3) == 1);
    CHECK(shared_points_for_contact(smooth, cusp, 3, 3) == 2);
    CHECK(shared_points_for_contact(smooth, cusp, 4, 3) == 0);
}

}
