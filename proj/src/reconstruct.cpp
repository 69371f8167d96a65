#include "pcs/reconstruct.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include "pcs/errors.hpp"
#include "pcs/poincare.hpp"

namespace pcs {

namespace {

using Int = std::int64_t;

std::vector<Int> running_gcds(const std::vector<Int>& values)
{
    std::vector<Int> e(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) e[i] = i == 0 ? values[0] : std::gcd(e[i - 1], values[i]);
    return e;
}

void require(bool condition, const std::string& message)
{
    if (!condition) throw InvariantError("branch data: " + message);
}

bool is_single_vertex(const BranchData& b, ReconstructMode mode)
{
    return mode == ReconstructMode::divisorial && b.g == 0 && b.tail == 0;
}

// x lies in the semigroup generated by `gens` (smallest first).
bool in_semigroup(const std::vector<Int>& gens, Int x)
{
    if (x == 0) return true;
    if (gens.empty()) return false;
    const Int a = gens.front();
    std::vector<Int> dist(static_cast<std::size_t>(a), std::numeric_limits<Int>::max());
    using Item = std::pair<Int, Int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[0] = 0;
    queue.push({0, 0});
    while (!queue.empty()) {
        const auto [d, res] = queue.top();
        queue.pop();
        if (d != dist[static_cast<std::size_t>(res)] || d > x) continue;
        for (std::size_t i = 1; i < gens.size(); ++i) {
            const Int nd = d + gens[i];
            const Int nr = nd % a;
            if (nd < dist[static_cast<std::size_t>(nr)]) {
                dist[static_cast<std::size_t>(nr)] = nd;
                queue.push({nd, nr});
            }
        }
    }
    return dist[static_cast<std::size_t>(x % a)] <= x;
}

std::vector<Int> semigroup_part(const BranchData& b)
{
    return {b.generators.begin(), b.generators.begin() + b.g + 1};
}

struct Union {
    DualGraph graph;
    std::vector<std::vector<VertexId>> ids; // ids[i][k]: vertex of point k of branch i
};

Union union_of_chains(const std::vector<BranchChain>& chains, const std::vector<std::vector<std::size_t>>& shared)
{
    const std::size_t r = chains.size();
    Union u;
    u.ids.resize(r);
    std::size_t depth = 0;
    for (const auto& c : chains) depth = std::max(depth, c.length);
    for (std::size_t k = 0; k < depth; ++k) {
        std::vector<std::pair<VertexId, int>> satellites_here; // (parent, other parent)
        for (std::size_t i = 0; i < r; ++i) {
            if (chains[i].length <= k) continue;
            std::size_t rep = i;
            for (std::size_t j = 0; j < i; ++j) {
                if (chains[j].length > k && shared[i][j] > k) {
                    rep = j;
                    break;
                }
            }
            if (rep != i) {
                if (!chains[i].points.same_point_kind(chains[rep].points, k)) {
                    throw InputError("contacts identify points of different kinds");
                }
                u.ids[i].push_back(u.ids[rep][k]);
                continue;
            }
            VertexId v = 0;
            const int sat = chains[i].points.satellite_of[k];
            if (k == 0) {
                v = u.graph.apply(Blowup::at_origin());
            } else if (sat < 0) {
                v = u.graph.apply(Blowup::free_point(u.ids[i][k - 1]));
            } else {
                const std::pair<VertexId, int> key{u.ids[i][k - 1], u.ids[i][static_cast<std::size_t>(sat)]};
                if (std::find(satellites_here.begin(), satellites_here.end(), key) != satellites_here.end()) {
                    throw InputError("contacts separate two branches at the same satellite point");
                }
                satellites_here.push_back(key);
                v = u.graph.apply(Blowup::satellite_point(key.first, key.second));
            }
            u.ids[i].push_back(v);
        }
    }
    return u;
}

FactoredSeries curve_branch_projection(const FactoredSeries& p, const MultiplicityMatrix& m,
                                       const std::vector<VertexId>& alpha, std::size_t keep)
{
    FactoredSeries cur = p;
    std::vector<std::size_t> kept(alpha.size());
    std::iota(kept.begin(), kept.end(), 0);
    while (kept.size() > 1) {
        const std::size_t pos = kept.back() == keep ? 0 : kept.size() - 1;
        const std::size_t j = kept[pos];
        Exponent m_alpha;
        for (std::size_t k : kept) m_alpha.push_back(m(alpha[j], alpha[k]));
        cur = projection_formula_curve(cur, m_alpha, static_cast<int>(pos));
        kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(pos));
    }
    return cur;
}

// Every built graph must reproduce the data it was built from.
void verify_assembly(const DualGraph& graph, const std::vector<BranchData>& branches, const ContactMatrix& contacts,
                     ReconstructMode mode)
{
    const std::size_t r = branches.size();
    std::vector<VertexId> at(r);
    if (mode == ReconstructMode::divisorial) {
        at = graph.marked_divisors();
    } else {
        for (const auto& a : graph.arrows()) at[static_cast<std::size_t>(a.branch - 1)] = a.vertex;
    }
    const auto m = multiplicity_matrix(graph);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            if (i != j && m(at[i], at[j]) != contacts[i][j]) {
                throw VerificationError("assembled graph does not realize contact " + std::to_string(contacts[i][j]));
            }
        }
    }
    const auto full = poincare_series(graph);
    for (std::size_t i = 0; i < r; ++i) {
        FactoredSeries single = mode == ReconstructMode::divisorial
                                    ? project(full, {static_cast<int>(i)})
                                    : curve_branch_projection(full, m, at, i);
        if (!(single == branch_series(branches[i], mode))) {
            throw VerificationError("assembled graph changes the series of valuation " + std::to_string(i + 1));
        }
    }
}

std::set<Int> case_candidates(const FactoredSeries& p2, const BranchData& b1, const BranchData& b2)
{
    std::vector<Exponent> ends;
    for (const auto& [e, k] : p2.factors()) {
        if (k == -1) ends.push_back(e);
    }
    std::set<Int> out;
    for (const auto& e : ends) {
        bool dominated = false;
        for (const auto& f : ends) {
            if (f != e && f[0] >= e[0] && f[1] >= e[1]) dominated = true;
        }
        if (dominated) continue;
        for (int swap = 0; swap < 2; ++swap) {
            const BranchData& x = swap ? b2 : b1;
            const BranchData& y = swap ? b1 : b2;
            const Int a = swap ? e[1] : e[0];
            const Int b = swap ? e[0] : e[1];
            if (x.tail > 0 && a == x.top_value) out.insert(b);
            if (a == x.last_dead_end()) {
                if (b != y.last_dead_end()) {
                    out.insert(x.last_gcd() * b);
                } else {
                    out.insert(std::min(y.last_gcd() * a, x.last_gcd() * b));
                }
            }
        }
    }
    return out;
}

bool contact_verifies(const FactoredSeries& p2, const BranchData& b1, const BranchData& b2, Int contact)
{
    try {
        const ContactMatrix k{{b1.top_value, contact}, {contact, b2.top_value}};
        const auto graph = assemble({b1, b2}, k, ReconstructMode::divisorial);
        return poincare_series(graph) == p2;
    } catch (const InputError&) {
        return false;
    } catch (const VerificationError&) {
        return false;
    }
}

} // namespace

void check_branch_data(const BranchData& b, ReconstructMode mode)
{
    require(mode != ReconstructMode::mixed, "mixed mode has no branch data");
    require(!b.generators.empty(), "no generators");
    for (std::size_t i = 0; i < b.generators.size(); ++i) {
        require(b.generators[i] > 0, "generators must be positive");
        require(i == 0 || b.generators[i - 1] < b.generators[i], "generators must increase");
    }
    require(b.gcds == running_gcds(b.generators), "gcd sequence");
    const auto l = static_cast<int>(b.generators.size()) - 1;
    require(b.g >= 0 && b.g <= l, "number of Puiseux pairs");
    const auto g = static_cast<std::size_t>(b.g);
    require(b.gcds[g] == 1, "the semigroup part must have gcd 1");
    for (std::size_t i = 1; i <= g; ++i) {
        require(b.gcds[i] < b.gcds[i - 1], "gcds must strictly decrease");
    }
    for (std::size_t i = 1; i <= b.dead_values.size(); ++i) {
        require(i <= g, "too many dead values");
        require(b.dead_values[i - 1] == b.gcds[i - 1] / b.gcds[i] * b.generators[i], "dead value mismatch");
    }
    for (std::size_t i = 1; i < g; ++i) {
        require(b.gcds[i - 1] / b.gcds[i] * b.generators[i] < b.generators[i + 1], "generator condition");
    }
    if (mode == ReconstructMode::curve) {
        require(b.tail == 0, "curves have no tail");
        require(b.g == l && b.dead_values.size() == g, "curve shape");
        require(b.top_value == b.last_gcd() * b.last_dead_end(), "top value");
        return;
    }
    if (is_single_vertex(b, mode)) {
        require(b.generators == std::vector<Int>{1} && b.dead_values.empty() && b.top_value == 1, "single vertex");
        return;
    }
    if (b.tail == 0) {
        require(b.g == l && l >= 1 && b.gcds[g - 1] > 1, "divisor without tail");
        require(b.dead_values.size() + 1 == g, "dead value count");
        require(b.top_value == b.last_gcd() * b.last_dead_end(), "top value");
    } else {
        require(b.tail > 0, "negative tail");
        require(b.g == l - 1 && b.dead_values.size() == g, "divisor with tail");
        const Int last_dead = g >= 1 ? b.dead_values.back() : 1;
        require(b.top_value == b.generators.back() && b.tail == b.top_value - last_dead, "tail length");
    }
}

std::vector<Int> minimal_generators(std::vector<Int> values)
{
    for (Int v : values) {
        if (v <= 0) throw InputError("semigroup generators must be positive");
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<Int> chosen;
    for (Int v : values) {
        if (!in_semigroup(chosen, v)) chosen.push_back(v);
    }
    return chosen;
}

BranchData branch_from_semigroup(const std::vector<Int>& generators)
{
    if (minimal_generators(generators) != generators) {
        throw InputError("semigroup generators are not a sorted minimal set");
    }
    BranchData b;
    b.generators = generators;
    b.gcds = running_gcds(generators);
    b.g = static_cast<int>(generators.size()) - 1;
    for (std::size_t i = 1; i < generators.size(); ++i) {
        b.dead_values.push_back(b.gcds[i - 1] / b.gcds[i] * generators[i]);
    }
    b.top_value = b.last_gcd() * b.last_dead_end();
    try {
        check_branch_data(b, ReconstructMode::curve);
    } catch (const InvariantError& e) {
        throw InputError(std::string("not the semigroup of a branch: ") + e.what());
    }
    return b;
}

FactoredSeries branch_series(const BranchData& b, ReconstructMode mode)
{
    FactoredSeries p(1);
    if (is_single_vertex(b, mode)) {
        p.multiply_factor({1}, -2);
        return p;
    }
    for (Int m : b.generators) p.multiply_factor({m}, -1);
    for (Int m : b.dead_values) p.multiply_factor({m}, 1);
    return p;
}

BranchData branch_from_univariate(const FactoredSeries& p, ReconstructMode mode)
{
    if (mode == ReconstructMode::mixed) throw InputError("mixed series cannot be reconstructed");
    if (p.variables() != 1) throw InputError("expected a series in one variable");
    BranchData b;
    if (mode == ReconstructMode::divisorial && p == FactoredSeries(1, {{{1}, -2}})) {
        b.generators = {1};
        b.gcds = {1};
        b.top_value = 1;
        return b;
    }
    std::vector<Int> den;
    std::vector<Int> num;
    for (const auto& [e, k] : p.factors()) {
        if (k == -1) {
            den.push_back(e[0]);
        } else if (k == 1) {
            num.push_back(e[0]);
        } else {
            throw InputError("factor multiplicities of a single valuation must be +1 or -1");
        }
    }
    if (den.empty()) throw InputError("series has no denominator");
    const std::size_t l = den.size() - 1;
    b.generators = den;
    b.dead_values = num;
    b.gcds = running_gcds(den);
    if (mode == ReconstructMode::curve) {
        b.g = static_cast<int>(l);
        if (num.size() != l) throw InputError("a branch needs one numerator per Puiseux pair");
        b.top_value = b.last_gcd() * b.last_dead_end();
    } else {
        if (l == 0) throw InputError("a divisorial series needs at least two denominators");
        if (b.gcds[l - 1] > 1) {
            b.g = static_cast<int>(l);
            b.top_value = b.last_gcd() * b.last_dead_end();
        } else {
            b.g = static_cast<int>(l) - 1;
            b.top_value = den[l];
            if (num.size() != static_cast<std::size_t>(b.g)) throw InputError("numerator count does not fit");
            b.tail = den[l] - (num.empty() ? 1 : num.back());
        }
    }
    try {
        check_branch_data(b, mode);
    } catch (const InvariantError& e) {
        throw InputError(std::string("not a Poincare series of one valuation: ") + e.what());
    }
    return b;
}

BranchChain branch_chain(const BranchData& b, ReconstructMode mode)
{
    const auto gens = semigroup_part(b);
    const auto core = branch_multiplicities(gens, 0).size();
    const std::size_t total = core + static_cast<std::size_t>(b.tail) + static_cast<std::size_t>(gens[0]) + 2;
    BranchChain chain;
    chain.points = sequence_from_multiplicities(branch_multiplicities(gens, total));
    chain.length = resolution_length(chain.points);
    if (mode == ReconstructMode::divisorial) chain.length += static_cast<std::size_t>(b.tail);
    return chain;
}

DualGraph graph_from_branch(const BranchData& b, ReconstructMode mode)
{
    check_branch_data(b, mode);
    const auto chain = branch_chain(b, mode);
    DualGraph graph = chain_graph(chain.points, chain.length);
    const auto top = static_cast<VertexId>(chain.length);
    if (mode == ReconstructMode::divisorial) {
        graph.set_marked_divisors({top});
    } else {
        graph.set_arrows({Arrow{top, 1}});
        if (minimize_curve_resolution(graph).size() != graph.size()) {
            throw VerificationError("branch resolution is not minimal");
        }
    }
    if (!(poincare_series(graph) == branch_series(b, mode))) {
        throw VerificationError("graph built from branch data does not reproduce its series");
    }
    const auto m = multiplicity_matrix(graph);
    if (m(top, top) != (mode == ReconstructMode::divisorial ? b.top_value : m(top, top))) {
        throw VerificationError("top value mismatch");
    }
    return graph;
}

std::int64_t pairwise_contact(const FactoredSeries& p2, const BranchData& b1, const BranchData& b2)
{
    if (p2.variables() != 2) throw InputError("pairwise contact needs a series in two variables");
    std::set<Int> verified;
    for (Int c : case_candidates(p2, b1, b2)) {
        if (c > 0 && contact_verifies(p2, b1, b2, c)) verified.insert(c);
    }
    if (verified.empty()) throw InputError("no contact between the two divisors reproduces the series");
    if (verified.size() > 1) throw InputError("the series does not determine the contact");
    return *verified.begin();
}

DualGraph assemble(const std::vector<BranchData>& branches, const ContactMatrix& contacts, ReconstructMode mode)
{
    if (mode == ReconstructMode::mixed) throw InputError("mixed series cannot be reconstructed");
    const std::size_t r = branches.size();
    if (r == 0) throw InputError("nothing to assemble");
    if (contacts.size() != r) throw InputError("contact matrix size");
    for (std::size_t i = 0; i < r; ++i) {
        if (contacts[i].size() != r) throw InputError("contact matrix size");
        for (std::size_t j = 0; j < r; ++j) {
            if (contacts[i][j] != contacts[j][i] || (i != j && contacts[i][j] <= 0)) {
                throw InputError("contacts must be symmetric and positive");
            }
        }
    }
    std::vector<BranchChain> chains;
    for (const auto& b : branches) chains.push_back(branch_chain(b, mode));

    std::vector<std::vector<std::size_t>> shared(r, std::vector<std::size_t>(r, 0));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i + 1; j < r; ++j) {
            std::size_t limit = std::min(chains[i].length, chains[j].length);
            if (mode == ReconstructMode::curve) {
                limit = static_cast<std::size_t>(contacts[i][j]) + 1;
                chains[i].points.extend_free(limit);
                chains[j].points.extend_free(limit);
            }
            const auto s = shared_points_for_contact(chains[i].points, chains[j].points, contacts[i][j], limit);
            if (s == 0) {
                throw InputError("contact " + std::to_string(contacts[i][j]) + " between valuations " +
                                 std::to_string(i + 1) + " and " + std::to_string(j + 1) + " is not realizable");
            }
            shared[i][j] = shared[j][i] = s;
        }
    }
    if (mode == ReconstructMode::curve) {
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < r; ++j) chains[i].length = std::max(chains[i].length, shared[i][j]);
            chains[i].points.extend_free(chains[i].length);
        }
    }
    for (std::size_t i = 0; i < r; ++i) shared[i][i] = chains[i].length;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t l = 0; l < r; ++l) {
                if (i != j && j != l && i != l && shared[i][l] < std::min(shared[i][j], shared[j][l])) {
                    throw InputError("contacts are not compatible with a tree of infinitely near points");
                }
            }
        }
    }

    auto u = union_of_chains(chains, shared);
    DualGraph graph = std::move(u.graph);
    if (mode == ReconstructMode::divisorial) {
        std::vector<VertexId> marks;
        for (std::size_t i = 0; i < r; ++i) marks.push_back(u.ids[i][chains[i].length - 1]);
        graph.set_marked_divisors(marks);
    } else {
        std::vector<Arrow> arrows;
        for (std::size_t i = 0; i < r; ++i) arrows.push_back({u.ids[i][chains[i].length - 1], static_cast<int>(i) + 1});
        graph.set_arrows(arrows);
        graph = minimize_curve_resolution(graph);
    }
    graph.check_invariants();
    verify_assembly(graph, branches, contacts, mode);
    return graph;
}

DualGraph reconstruct_divisorial(const FactoredSeries& p)
{
    const int r = p.variables();
    if (r < 1) throw InputError("a divisorial series needs at least one variable");
    std::vector<BranchData> branches;
    for (int i = 0; i < r; ++i) branches.push_back(branch_from_univariate(project(p, {i}), ReconstructMode::divisorial));
    ContactMatrix contacts(static_cast<std::size_t>(r), std::vector<Int>(static_cast<std::size_t>(r), 0));
    for (int i = 0; i < r; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        contacts[ui][ui] = branches[ui].top_value;
        for (int j = i + 1; j < r; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            const Int c = pairwise_contact(project(p, {i, j}), branches[ui], branches[uj]);
            contacts[ui][uj] = contacts[uj][ui] = c;
        }
    }
    auto graph = r == 1 ? graph_from_branch(branches[0], ReconstructMode::divisorial)
                        : assemble(branches, contacts, ReconstructMode::divisorial);
    if (!(poincare_series(graph) == p)) throw VerificationError("reconstructed graph does not reproduce the series");
    return graph;
}

PeelResult peel_branch_curve(const FactoredSeries& p)
{
    const int r = p.variables();
    if (r < 2) throw InputError("peeling needs at least two branches");
    PeelResult out;
    if (p.is_one()) {
        if (r != 2) throw InputError("trivial series for more than two branches");
        // Two smooth transversal branches.
        out.i0 = 0;
        out.alpha = {1, 1};
        out.semigroup_generators = {1};
        out.contacts_row = {1, 1};
        out.rest = FactoredSeries(1, {{{1}, -1}});
        return out;
    }
    const Exponent sigma = p.factors().rbegin()->first;
    const auto ur = static_cast<std::size_t>(r);
    std::vector<int> a_set;
    for (std::size_t j = 0; j < ur; ++j) {
        bool ok = true;
        for (const auto& [tau, k] : p.factors()) {
            for (std::size_t l = 0; l < ur && ok; ++l) {
                const __int128 lhs = static_cast<__int128>(sigma[j]) * tau[l];
                const __int128 rhs = static_cast<__int128>(tau[j]) * sigma[l];
                if (lhs < rhs) ok = false;
            }
            if (!ok) break;
        }
        if (ok) a_set.push_back(static_cast<int>(j));
    }
    if (a_set.empty()) throw InputError("no branch satisfies the ratio condition");
    int i0 = a_set.front();
    for (int j : a_set) {
        if (sigma[static_cast<std::size_t>(j)] > sigma[static_cast<std::size_t>(i0)]) i0 = j;
    }
    const auto ui0 = static_cast<std::size_t>(i0);
    std::vector<Int> values;
    for (const auto& [tau, k] : p.factors()) {
        if (k == -1) values.push_back(tau[ui0]);
    }
    for (std::size_t j = 0; j < ur; ++j) {
        if (j != ui0) values.push_back(sigma[j]);
    }
    out.i0 = i0;
    out.alpha = sigma;
    out.semigroup_generators = minimal_generators(values);
    out.contacts_row = sigma;
    out.rest = projection_formula_curve(p, sigma, i0);
    return out;
}

DualGraph reconstruct_curve(const FactoredSeries& p)
{
    const int r = p.variables();
    if (r < 1) throw InputError("a curve series needs at least one variable");
    const auto ur = static_cast<std::size_t>(r);
    std::vector<BranchData> branches(ur);
    ContactMatrix contacts(ur, std::vector<Int>(ur, 0));
    std::vector<std::size_t> remaining(ur);
    std::iota(remaining.begin(), remaining.end(), 0);
    FactoredSeries current = p;
    while (remaining.size() > 1) {
        const auto peel = peel_branch_curve(current);
        const auto pos = static_cast<std::size_t>(peel.i0);
        const std::size_t orig = remaining[pos];
        branches[orig] = branch_from_semigroup(peel.semigroup_generators);
        for (std::size_t j = 0; j < remaining.size(); ++j) {
            if (j != pos) contacts[orig][remaining[j]] = contacts[remaining[j]][orig] = peel.contacts_row[j];
        }
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pos));
        current = peel.rest;
    }
    branches[remaining[0]] = branch_from_univariate(current, ReconstructMode::curve);
    for (std::size_t i = 0; i < ur; ++i) contacts[i][i] = branches[i].top_value;
    auto graph = r == 1 ? graph_from_branch(branches[0], ReconstructMode::curve)
                        : assemble(branches, contacts, ReconstructMode::curve);
    if (!(poincare_series(graph) == p)) throw VerificationError("reconstructed graph does not reproduce the series");
    return graph;
}

DualGraph reconstruct(const FactoredSeries& p, ReconstructMode mode)
{
    switch (mode) {
    case ReconstructMode::divisorial:
        return reconstruct_divisorial(p);
    case ReconstructMode::curve:
        return reconstruct_curve(p);
    case ReconstructMode::mixed:
        break;
    }
    throw InputError("series mixing curves and divisors do not determine the resolution");
}

} // namespace pcs
