#include "pcs/series.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "pcs/errors.hpp"

namespace pcs {

bool graded_lex_less(const Exponent& a, const Exponent& b)
{
    const auto da = std::accumulate(a.begin(), a.end(), std::int64_t{0});
    const auto db = std::accumulate(b.begin(), b.end(), std::int64_t{0});
    if (da != db) return da < db;
    return a < b;
}

FactoredSeries::FactoredSeries(int r, std::initializer_list<std::pair<const Exponent, std::int64_t>> factors) : r_(r)
{
    for (const auto& [m, k] : factors) multiply_factor(m, k);
}

std::int64_t FactoredSeries::multiplicity(const Exponent& m) const
{
    auto it = factors_.find(m);
    return it == factors_.end() ? 0 : it->second;
}

void FactoredSeries::multiply_factor(const Exponent& m, std::int64_t k)
{
    if (static_cast<int>(m.size()) != r_) throw InputError("factor exponent has the wrong number of coordinates");
    if (std::any_of(m.begin(), m.end(), [](std::int64_t x) { return x < 0; })) {
        throw InputError("factor exponent has a negative coordinate");
    }
    if (std::all_of(m.begin(), m.end(), [](std::int64_t x) { return x == 0; })) {
        throw InputError("factor exponent is zero");
    }
    if (k == 0) return;
    auto [it, inserted] = factors_.try_emplace(m, k);
    if (!inserted) {
        it->second += k;
        if (it->second == 0) factors_.erase(it);
    }
}

std::int64_t FactoredSeries::max_coordinate() const
{
    std::int64_t best = 0;
    for (const auto& [m, k] : factors_) {
        for (auto x : m) best = std::max(best, x);
    }
    return best;
}

std::string FactoredSeries::to_string() const
{
    if (factors_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, k] : factors_) {
        if (!first) os << " ";
        first = false;
        os << "(1-t^(";
        for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
        os << "))^" << k;
    }
    return os.str();
}

TruncatedSeries::TruncatedSeries(int r, int bound) : r_(r), bound_(bound)
{
    if (r < 0) throw InputError("negative variable count");
    if (bound < 0) throw InputError("negative truncation bound");
    std::size_t n = 1;
    for (int i = 0; i < r; ++i) n *= static_cast<std::size_t>(bound) + 1;
    coeffs_.assign(n, BigInt(0));
}

TruncatedSeries TruncatedSeries::one(int r, int bound)
{
    TruncatedSeries s(r, bound);
    s.coeffs_[0] = 1;
    return s;
}

bool TruncatedSeries::in_box(const Exponent& e) const
{
    if (static_cast<int>(e.size()) != r_) return false;
    return std::all_of(e.begin(), e.end(), [this](std::int64_t x) { return x >= 0 && x <= bound_; });
}

std::size_t TruncatedSeries::index(const Exponent& e) const
{
    if (!in_box(e)) throw InputError("exponent outside the truncation box");
    std::size_t idx = 0;
    for (auto x : e) idx = idx * (static_cast<std::size_t>(bound_) + 1) + static_cast<std::size_t>(x);
    return idx;
}

Exponent TruncatedSeries::exponent(std::size_t flat_index) const
{
    Exponent e(r_, 0);
    const auto base = static_cast<std::size_t>(bound_) + 1;
    for (int i = r_ - 1; i >= 0; --i) {
        e[i] = static_cast<std::int64_t>(flat_index % base);
        flat_index /= base;
    }
    return e;
}

std::vector<std::size_t> TruncatedSeries::graded_lex_order() const
{
    std::vector<std::size_t> order(coeffs_.size());
    std::vector<std::int64_t> degree(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        order[i] = i;
        const auto e = exponent(i);
        degree[i] = std::accumulate(e.begin(), e.end(), std::int64_t{0});
    }
    // Flat order is lexicographic, so a stable sort by degree is graded-lex.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return degree[a] < degree[b]; });
    return order;
}

TruncatedSeries TruncatedSeries::truncated(int new_bound) const
{
    if (new_bound > bound_) throw InputError("cannot raise a truncation bound");
    TruncatedSeries out(r_, new_bound);
    for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] = at(out.exponent(i));
    return out;
}

namespace {

bool dominates(const Exponent& e, const Exponent& m)
{
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] < m[i]) return false;
    }
    return true;
}

} // namespace

void multiply_binomial_power(TruncatedSeries& s, const Exponent& m, std::int64_t k)
{
    if (static_cast<int>(m.size()) != s.variables()) throw InputError("factor exponent has the wrong size");
    if (std::all_of(m.begin(), m.end(), [](std::int64_t x) { return x == 0; })) throw InputError("factor exponent is zero");
    if (k == 0) return;
    // Largest j with j*m inside the box; a factor outside the box is 1 there.
    std::int64_t reach = std::numeric_limits<std::int64_t>::max();
    for (auto x : m) {
        if (x > 0) reach = std::min(reach, static_cast<std::int64_t>(s.bound()) / x);
    }
    if (reach == 0) return;
    const std::size_t n = s.term_count();
    std::vector<char> shiftable(n);
    for (std::size_t i = 0; i < n; ++i) shiftable[i] = dominates(s.exponent(i), m);
    const std::size_t offset = s.index(m);

    if ((k > 0 ? k : -k) <= reach) {
        if (k > 0) {
            for (std::int64_t step = 0; step < k; ++step) {
                for (std::size_t i = n; i-- > 0;) {
                    if (shiftable[i]) s.flat(i) -= s.flat(i - offset);
                }
            }
        } else {
            for (std::int64_t step = 0; step < -k; ++step) {
                for (std::size_t i = 0; i < n; ++i) {
                    if (shiftable[i]) s.flat(i) += s.flat(i - offset);
                }
            }
        }
        return;
    }
    // Large |k|: use the binomial coefficients of (1 - x)^k up to x^reach.
    std::vector<BigInt> c(static_cast<std::size_t>(reach) + 1);
    c[0] = 1;
    for (std::int64_t j = 1; j <= reach; ++j) {
        // c_j = c_{j-1} * (j - 1 - k) / j, the coefficient of x^j in (1-x)^k.
        c[j] = c[j - 1] * BigInt(j - 1 - k) / j;
    }
    TruncatedSeries out(s.variables(), s.bound());
    for (std::size_t i = 0; i < n; ++i) {
        if (s.flat(i) == 0) continue;
        Exponent e = s.exponent(i);
        for (std::int64_t j = 0; j <= reach; ++j) {
            if (!out.in_box(e)) break;
            out.at(e) += c[j] * s.flat(i);
            for (std::size_t d = 0; d < e.size(); ++d) e[d] += m[d];
        }
    }
    s = std::move(out);
}

TruncatedSeries expand(const FactoredSeries& f, int bound)
{
    TruncatedSeries s = TruncatedSeries::one(f.variables(), bound);
    for (const auto& [m, k] : f.factors()) multiply_binomial_power(s, m, k);
    return s;
}

FactoredSeries project(const FactoredSeries& f, const std::vector<int>& keep)
{
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= f.variables() || (i > 0 && keep[i] <= keep[i - 1])) {
            throw InputError("projection indices must be sorted, distinct and in range");
        }
    }
    FactoredSeries out(static_cast<int>(keep.size()));
    for (const auto& [m, k] : f.factors()) {
        Exponent restricted;
        for (int i : keep) restricted.push_back(m[i]);
        if (std::all_of(restricted.begin(), restricted.end(), [](std::int64_t x) { return x == 0; })) {
            throw InputError("projection makes a factor degenerate (1 - 1)^k");
        }
        out.multiply_factor(restricted, k);
    }
    return out;
}

TruncatedSeries substitute_ones(const TruncatedSeries& s, const std::vector<int>& keep)
{
    TruncatedSeries out(static_cast<int>(keep.size()), s.bound());
    for (std::size_t i = 0; i < s.term_count(); ++i) {
        if (s.flat(i) == 0) continue;
        const auto e = s.exponent(i);
        Exponent restricted;
        for (int k : keep) restricted.push_back(e.at(k));
        out.at(restricted) += s.flat(i);
    }
    return out;
}

namespace {

struct Term {
    Exponent e;
    BigInt c;
};

std::vector<Term> nonzero_terms(const TruncatedSeries& s, int bound)
{
    std::vector<Term> out;
    for (std::size_t i = 0; i < s.term_count(); ++i) {
        if (s.flat(i) == 0) continue;
        auto e = s.exponent(i);
        if (std::all_of(e.begin(), e.end(), [bound](std::int64_t x) { return x <= bound; })) {
            out.push_back({std::move(e), s.flat(i)});
        }
    }
    return out;
}

} // namespace

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b)
{
    if (a.variables() != b.variables()) throw InputError("series have different variable counts");
    const int bound = std::min(a.bound(), b.bound());
    TruncatedSeries out(a.variables(), bound);
    const auto ta = nonzero_terms(a, bound);
    const auto tb = nonzero_terms(b, bound);
    Exponent e(a.variables());
    for (const auto& x : ta) {
        for (const auto& y : tb) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = x.e[i] + y.e[i];
            if (out.in_box(e)) out.at(e) += x.c * y.c;
        }
    }
    return out;
}

TruncatedSeries div(const TruncatedSeries& a, const TruncatedSeries& b)
{
    if (a.variables() != b.variables()) throw InputError("series have different variable counts");
    const BigInt& b0 = b.flat(0);
    if (b0 != 1 && b0 != -1) throw InputError("division by a series whose constant term is not a unit");
    const int bound = std::min(a.bound(), b.bound());
    TruncatedSeries q(a.variables(), bound);
    auto tb = nonzero_terms(b, bound);
    tb.erase(tb.begin()); // constant term
    for (std::size_t i = 0; i < q.term_count(); ++i) {
        const auto e = q.exponent(i);
        BigInt acc = a.at(e);
        for (const auto& t : tb) {
            if (!dominates(e, t.e)) continue;
            Exponent rest(e.size());
            for (std::size_t d = 0; d < e.size(); ++d) rest[d] = e[d] - t.e[d];
            acc -= t.c * q.at(rest);
        }
        q.flat(i) = b0 == 1 ? acc : BigInt(-acc);
    }
    return q;
}

TruncatedSeries divide_torus(const TruncatedSeries& p_prime)
{
    if (p_prime.variables() < 1) throw InputError("divide_torus needs at least one variable");
    TruncatedSeries out(p_prime.variables(), p_prime.bound());
    const Exponent diag(p_prime.variables(), 1);
    const std::size_t step = p_prime.bound() >= 1 ? out.index(diag) : 0;
    // Multiplying by -(1 + T + T^2 + ...) with T = t_1 ... t_r.
    for (std::size_t i = 0; i < out.term_count(); ++i) {
        out.flat(i) = -p_prime.flat(i);
        if (step != 0 && dominates(out.exponent(i), diag)) out.flat(i) += out.flat(i - step);
    }
    return out;
}

FactoredSeries factorize(const TruncatedSeries& s, std::optional<std::int64_t> max_coordinate)
{
    if (s.flat(0) != 1) throw InputError("factorize needs constant term 1");
    if (max_coordinate && *max_coordinate > s.bound()) {
        throw InsufficientBound("declared factor degree exceeds the truncation bound");
    }
    TruncatedSeries residual = s;
    FactoredSeries out(s.variables());
    for (std::size_t i : s.graded_lex_order()) {
        if (i == 0 || residual.flat(i) == 0) continue;
        const BigInt c = residual.flat(i);
        if (c > std::numeric_limits<std::int64_t>::max() || c < -std::numeric_limits<std::int64_t>::max()) {
            throw InputError("factor multiplicity does not fit in 64 bits");
        }
        const auto k = static_cast<std::int64_t>(c);
        const Exponent e = s.exponent(i);
        if (max_coordinate && *std::max_element(e.begin(), e.end()) > *max_coordinate) {
            throw InsufficientBound("series is not a product of factors of degree <= " + std::to_string(*max_coordinate));
        }
        multiply_binomial_power(residual, e, k);
        out.multiply_factor(e, -k);
    }
    return out;
}

} // namespace pcs
