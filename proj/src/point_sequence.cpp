#include "pcs/point_sequence.hpp"

#include <algorithm>
#include <numeric>

#include "pcs/errors.hpp"

namespace pcs {

void PointSequence::extend_free(std::size_t length)
{
    while (multiplicities.size() < length) {
        multiplicities.push_back(1);
        satellite_of.push_back(-1);
    }
}

std::vector<std::int64_t> branch_multiplicities(const std::vector<std::int64_t>& generators, std::size_t length)
{
    if (generators.empty()) throw InputError("a branch needs at least one semigroup generator");
    std::vector<std::int64_t> mults;
    const std::size_t g = generators.size() - 1;
    if (g == 0 && generators[0] != 1) throw InputError("a branch without Puiseux pairs has multiplicity 1");
    // Characteristic exponents beta_i from the semigroup generators.
    std::vector<std::int64_t> e(g + 1);
    e[0] = generators[0];
    for (std::size_t i = 1; i <= g; ++i) e[i] = std::gcd(e[i - 1], generators[i]);
    std::vector<std::int64_t> beta(g + 1);
    beta[0] = generators[0];
    if (g >= 1) beta[1] = generators[1];
    for (std::size_t i = 1; i < g; ++i) {
        beta[i + 1] = generators[i + 1] - (e[i - 1] / e[i]) * generators[i] + beta[i];
    }
    for (std::size_t i = 1; i <= g; ++i) {
        std::int64_t a = i == 1 ? beta[1] : beta[i] - beta[i - 1];
        std::int64_t b = e[i - 1];
        if (a <= 0) throw InputError("semigroup generators do not define characteristic exponents");
        while (b != 0) {
            for (std::int64_t q = a / b; q > 0; --q) mults.push_back(b);
            const std::int64_t rem = a % b;
            a = b;
            b = rem;
        }
        if (a != e[i]) throw InputError("inconsistent gcd sequence");
    }
    while (mults.size() < length) mults.push_back(1);
    return mults;
}

PointSequence sequence_from_multiplicities(const std::vector<std::int64_t>& multiplicities)
{
    const std::size_t n = multiplicities.size();
    PointSequence seq;
    seq.multiplicities = multiplicities;
    seq.satellite_of.assign(n, -1);
    std::vector<int> extra_count(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        std::int64_t sum = 0;
        std::size_t j = k + 1;
        for (; j < n && sum < multiplicities[k]; ++j) {
            sum += multiplicities[j];
            if (j >= k + 2) {
                if (++extra_count[j] > 1) throw InputError("a point is proximate to three points");
                seq.satellite_of[j] = static_cast<int>(k);
            }
        }
        // The run of a point near the end may be cut by the sequence length.
        if (sum > multiplicities[k] || (j < n && sum != multiplicities[k])) {
            throw InputError("multiplicities violate the proximity equalities");
        }
    }
    return seq;
}

std::size_t resolution_length(const PointSequence& seq)
{
    std::size_t last = 0;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        if (seq.satellite_of[k] >= 0) last = k;
    }
    return last + 1;
}

PointSequence curvette_sequence(const DualGraph& graph, VertexId v)
{
    const auto chain = graph.point_chain(v);
    PointSequence seq;
    seq.multiplicities = curvette_multiplicities(graph, v);
    seq.satellite_of.assign(chain.size(), -1);
    for (std::size_t k = 0; k < chain.size(); ++k) {
        const auto& ps = graph.parents(chain[k]);
        if (ps.size() == 2) {
            const auto pos = std::find(chain.begin(), chain.end(), ps[0]) - chain.begin();
            seq.satellite_of[k] = static_cast<int>(pos);
        }
    }
    return seq;
}

DualGraph chain_graph(const PointSequence& seq, std::size_t length)
{
    if (length == 0 || length > seq.size()) throw InputError("chain length out of range");
    DualGraph g;
    g.apply(Blowup::at_origin());
    for (std::size_t k = 1; k < length; ++k) {
        const auto prev = static_cast<VertexId>(k);
        if (seq.satellite_of[k] < 0) {
            g.apply(Blowup::free_point(prev));
        } else {
            g.apply(Blowup::satellite_point(prev, seq.satellite_of[k] + 1));
        }
    }
    return g;
}

std::size_t shared_points_for_contact(const PointSequence& a, const PointSequence& b, std::int64_t contact,
                                      std::size_t limit)
{
    std::int64_t sum = 0;
    for (std::size_t k = 0; k < limit && k < a.size() && k < b.size(); ++k) {
        if (!a.same_point_kind(b, k)) return 0;
        sum += a.multiplicities[k] * b.multiplicities[k];
        if (sum == contact) return k + 1;
        if (sum > contact) return 0;
    }
    return 0;
}

} // namespace pcs
