#include "pcs/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "pcs/errors.hpp"

namespace pcs {

namespace {

TauSeries one_series(int order)
{
    TauSeries s(order);
    if (order > 0) s[0] = 1;
    return s;
}

// Fraction-free row echelon form over the integers.
class Echelon {
public:
    bool insert(std::vector<BigInt> row)
    {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const std::size_t c = pivots_[k];
            if (row[c] == 0) continue;
            const auto& p = rows_[k];
            const BigInt g = boost::multiprecision::gcd(p[c], row[c]);
            const BigInt fr = p[c] / g;
            const BigInt fp = row[c] / g;
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (p[j] != 0 || row[j] != 0) row[j] = row[j] * fr - p[j] * fp;
            }
        }
        std::size_t lead = 0;
        while (lead < row.size() && row[lead] == 0) ++lead;
        if (lead == row.size()) return false;
        BigInt content = 0;
        for (const auto& c : row) {
            if (c != 0) content = boost::multiprecision::gcd(content, c);
        }
        if (row[lead] < 0) content = -content;
        for (auto& c : row) c /= content;
        rows_.push_back(std::move(row));
        pivots_.push_back(lead);
        return true;
    }

    std::size_t rank() const { return rows_.size(); }

private:
    std::vector<std::vector<BigInt>> rows_;
    std::vector<std::size_t> pivots_;
};

} // namespace

std::optional<int> TauSeries::valuation() const
{
    for (int k = 0; k < order(); ++k) {
        if ((*this)[k] != 0) return k;
    }
    return std::nullopt;
}

TauSeries operator+(const TauSeries& a, const TauSeries& b)
{
    TauSeries out(std::min(a.order(), b.order()));
    for (int k = 0; k < out.order(); ++k) out[k] = a[k] + b[k];
    return out;
}

TauSeries operator-(const TauSeries& a, const TauSeries& b)
{
    TauSeries out(std::min(a.order(), b.order()));
    for (int k = 0; k < out.order(); ++k) out[k] = a[k] - b[k];
    return out;
}

TauSeries operator*(const TauSeries& a, const TauSeries& b)
{
    TauSeries out(std::min(a.order(), b.order()));
    const int n = out.order();
    for (int i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j < n; ++j) {
            if (b[j] != 0) out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

TauSeries TauSeries::scaled(const BigInt& c) const
{
    TauSeries out(order());
    for (int k = 0; k < order(); ++k) out[k] = (*this)[k] * c;
    return out;
}

TauSeries TauSeries::power(int e) const
{
    TauSeries result = one_series(order());
    TauSeries base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

void LambdaSeries::add_term(int j, int k, const BigInt& c)
{
    if (j >= order()) return;
    auto& poly = coeffs_[static_cast<std::size_t>(j)];
    if (poly.size() <= static_cast<std::size_t>(k)) poly.resize(static_cast<std::size_t>(k) + 1, 0);
    poly[static_cast<std::size_t>(k)] += c;
}

int LambdaSeries::lambda_degree() const
{
    int deg = 0;
    for (const auto& poly : coeffs_) deg = std::max(deg, static_cast<int>(poly.size()) - 1);
    return deg;
}

LambdaSeries operator*(const LambdaSeries& a, const LambdaSeries& b)
{
    LambdaSeries out(std::min(a.order(), b.order()));
    const int n = out.order();
    for (int i = 0; i < n; ++i) {
        const auto& pa = a.coeff(i);
        if (pa.empty()) continue;
        for (int j = 0; i + j < n; ++j) {
            const auto& pb = b.coeff(j);
            for (std::size_t k = 0; k < pa.size(); ++k) {
                if (pa[k] == 0) continue;
                for (std::size_t l = 0; l < pb.size(); ++l) {
                    if (pb[l] != 0) out.add_term(i + j, static_cast<int>(k + l), pa[k] * pb[l]);
                }
            }
        }
    }
    return out;
}

LambdaSeries LambdaSeries::plus_constant_times(const BigInt& c, const LambdaSeries& other) const
{
    LambdaSeries out = *this;
    for (int j = 0; j < std::min(order(), other.order()); ++j) {
        const auto& p = other.coeff(j);
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (p[k] != 0) out.add_term(j, static_cast<int>(k), c * p[k]);
        }
    }
    return out;
}

TauSeries LambdaSeries::specialize(const BigInt& lambda) const
{
    TauSeries out(order());
    for (int j = 0; j < order(); ++j) {
        const auto& p = coeff(j);
        BigInt acc = 0;
        for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * lambda + *it;
        out[j] = acc;
    }
    return out;
}

TauSeries evaluate(const PlanePolynomial& f, const TauSeries& x, const TauSeries& y)
{
    const int n = std::min(x.order(), y.order());
    int max_a = 0;
    int max_b = 0;
    for (const auto& [ab, c] : f) {
        max_a = std::max(max_a, ab.first);
        max_b = std::max(max_b, ab.second);
    }
    std::vector<TauSeries> xp{one_series(n)};
    for (int a = 1; a <= max_a; ++a) xp.push_back(xp.back() * x);
    TauSeries out(n);
    TauSeries y_power = one_series(n);
    for (int b = 0; b <= max_b; ++b) {
        TauSeries acc(n);
        bool any = false;
        for (auto it = f.lower_bound({0, 0}); it != f.end(); ++it) {
            if (it->first.second != b || it->second == 0) continue;
            const auto& xs = xp[static_cast<std::size_t>(it->first.first)];
            for (int k = 0; k < n; ++k) {
                if (xs[k] != 0) acc[k] += it->second * xs[k];
            }
            any = true;
        }
        if (any) out = out + acc * y_power;
        if (b < max_b) y_power = y_power * y;
    }
    return out;
}

namespace {

TauSeries truncated_product(const TauSeries& a, const TauSeries& b, int n)
{
    TauSeries out(n);
    for (int i = 0; i < std::min(n, a.order()); ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j < n && j < b.order(); ++j) {
            if (b[j] != 0) out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

BigInt pow_big(const BigInt& base, int e)
{
    BigInt out = 1;
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

} // namespace

PlanePolynomial implicit_equation(const TauSeries& x, const TauSeries& y, int degree)
{
    if (degree < 1) throw InputError("degree must be positive");
    const auto ox = x.valuation();
    const auto oy = y.valuation();
    if (!ox && !oy) throw InputError("the parametrization vanishes identically");
    if (!oy) return {{{0, 1}, 1}};
    if (!ox) return {{{1, 0}, 1}};
    if (*oy < *ox) {
        PlanePolynomial swapped;
        for (const auto& [ab, c] : implicit_equation(y, x, degree)) swapped[{ab.second, ab.first}] = c;
        return swapped;
    }
    // Roots s_k(x) of X(s) = x near 0; power sums of Y(s_k) by residues, then
    // Newton's identities. Substituting tau = c s makes X = C s^m u(s) with
    // u(0) = 1 and integral.
    const int m = *ox;
    const int len = m * degree;
    if (x.order() < m + len || y.order() < m + len) throw InsufficientBound("parametrization truncated too early");
    const BigInt c = x[m];
    const BigInt big_c = pow_big(c, m + 1);
    TauSeries xs(m + len);
    TauSeries ys(m + len);
    BigInt cp = 1;
    for (int i = 0; i < m + len; ++i) {
        xs[i] = x[i] * cp;
        ys[i] = y[i] * cp;
        cp *= c;
    }
    TauSeries u(len);
    for (int k = 0; k < len; ++k) {
        if (xs[m + k] % big_c != 0) throw InvariantError("unit part is not integral");
        u[k] = xs[m + k] / big_c;
    }
    TauSeries u_inv(len);
    u_inv[0] = 1;
    for (int k = 1; k < len; ++k) {
        BigInt acc = 0;
        for (int i = 1; i <= k; ++i) acc -= u[i] * u_inv[k - i];
        u_inv[k] = acc;
    }
    TauSeries xd(len);
    for (int k = 0; k < len; ++k) xd[k] = BigInt(k + 1) * xs[k + 1];

    // p[j][l] = C * (coefficient of z^l in the j-th power sum), x = C z.
    std::vector<std::vector<BigInt>> p(static_cast<std::size_t>(m) + 1,
                                       std::vector<BigInt>(static_cast<std::size_t>(degree), 0));
    std::vector<TauSeries> g;
    TauSeries y_power = one_series(len);
    for (int j = 1; j <= m; ++j) {
        y_power = truncated_product(y_power, ys, len);
        g.push_back(truncated_product(y_power, xd, len));
    }
    TauSeries v = u_inv;
    for (int l = 0; l < degree; ++l) {
        if (l > 0) v = truncated_product(v, u_inv, len);
        const int idx = m * (l + 1) - 1;
        for (int j = 1; j <= m; ++j) {
            BigInt acc = 0;
            const auto& gj = g[static_cast<std::size_t>(j - 1)];
            for (int a = 0; a <= idx; ++a) {
                const int b = idx - a;
                if (b < v.order() && gj[a] != 0 && v[b] != 0) acc += gj[a] * v[b];
            }
            p[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] = acc;
        }
    }
    // e_scaled[k] = C^k k! e_k as series in z.
    std::vector<std::vector<BigInt>> e(static_cast<std::size_t>(m) + 1,
                                       std::vector<BigInt>(static_cast<std::size_t>(degree), 0));
    e[0][0] = 1;
    for (int k = 1; k <= m; ++k) {
        for (int i = 1; i <= k; ++i) {
            BigInt factor = pow_big(big_c, i - 1);
            for (int f = k - i + 1; f <= k - 1; ++f) factor *= f;
            if (i % 2 == 0) factor = -factor;
            const auto& prev = e[static_cast<std::size_t>(k - i)];
            const auto& pi = p[static_cast<std::size_t>(i)];
            for (int a = 0; a < degree; ++a) {
                if (prev[static_cast<std::size_t>(a)] == 0) continue;
                for (int b = 0; a + b < degree; ++b) {
                    if (pi[static_cast<std::size_t>(b)] != 0) {
                        e[static_cast<std::size_t>(k)][static_cast<std::size_t>(a + b)] +=
                            factor * prev[static_cast<std::size_t>(a)] * pi[static_cast<std::size_t>(b)];
                    }
                }
            }
        }
    }
    PlanePolynomial out;
    BigInt m_fact = 1;
    for (int f = 2; f <= m; ++f) m_fact *= f;
    BigInt k_fact = 1;
    BigInt content = 0;
    for (int k = 0; k <= m; ++k) {
        if (k > 0) k_fact *= k;
        BigInt scale = pow_big(big_c, m - k) * (m_fact / k_fact);
        if (k % 2 == 1) scale = -scale;
        for (int l = 0; l < degree; ++l) {
            const auto& coeff = e[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
            if (coeff == 0) continue;
            const BigInt value = scale * coeff * pow_big(big_c, degree - 1 - l);
            out[{l, m - k}] = value;
            content = boost::multiprecision::gcd(content, value);
        }
    }
    for (auto& [ab, value] : out) value /= content;
    return out;
}

LocalCharts::LocalCharts(const DualGraph& graph)
{
    const int n = graph.size();
    if (n == 0) throw InputError("empty graph");
    std::vector<std::int64_t> next_free(static_cast<std::size_t>(n) + 1, -1);
    centers_.push_back(Center{});
    for (VertexId v = 2; v <= n; ++v) {
        const VertexId e = graph.enriques_parent(v);
        const Center& pc = centers_[static_cast<std::size_t>(e - 1)];
        Center c;
        c.parent = e;
        const auto& ps = graph.parents(v);
        if (ps.size() == 1) {
            auto& counter = next_free[static_cast<std::size_t>(e)];
            if (counter < 0) counter = pc.comp_v == 0 ? 0 : 1;
            c.step = Step::free;
            c.shift = counter++;
            c.comp_u = e;
        } else {
            const VertexId q = ps[0] == e ? ps[1] : ps[0];
            if (q == pc.comp_v && q != 0) {
                c.step = Step::along_v;
                c.comp_u = e;
                c.comp_v = q;
            } else if (q == pc.comp_u && q != 0) {
                c.step = Step::along_u;
                c.comp_u = q;
                c.comp_v = e;
            } else {
                throw InvariantError("satellite point on components that do not meet");
            }
        }
        centers_.push_back(c);
    }
}

Parametrization LocalCharts::push_down(VertexId v, LambdaSeries x, LambdaSeries y, bool generic) const
{
    for (VertexId n = v; n != 0;) {
        const Center& c = centers_[static_cast<std::size_t>(n - 1)];
        switch (c.step) {
        case Step::root:
            break;
        case Step::free: {
            LambdaSeries shifted = y;
            shifted.add_term(0, 0, c.shift);
            y = x * shifted;
            break;
        }
        case Step::along_v:
            y = x * y;
            break;
        case Step::along_u:
            x = x * y;
            break;
        }
        n = c.parent;
    }
    return {std::move(x), std::move(y), generic};
}

Parametrization LocalCharts::curvette(VertexId sigma, int truncation) const
{
    if (sigma < 1 || sigma > static_cast<VertexId>(centers_.size())) throw InputError("vertex not in graph");
    LambdaSeries x(truncation);
    LambdaSeries y(truncation);
    x.add_term(1, 0, 1);
    y.add_term(1, 1, 1);
    return push_down(sigma, std::move(x), std::move(y), true);
}

Parametrization LocalCharts::curvette_at(VertexId alpha, std::int64_t lambda, int truncation) const
{
    if (alpha < 1 || alpha > static_cast<VertexId>(centers_.size())) throw InputError("vertex not in graph");
    LambdaSeries x(truncation);
    LambdaSeries y(truncation);
    x.add_term(1, 0, 1);
    y.add_term(1, 0, lambda);
    return push_down(alpha, std::move(x), std::move(y), false);
}

Parametrization curvette_parametrization(const DualGraph& graph, VertexId sigma, int truncation)
{
    if (!graph.contains(sigma)) throw InputError("vertex not in graph");
    if (truncation <= 0) {
        const auto m = multiplicity_matrix(graph);
        std::int64_t top = 0;
        for (VertexId d = 1; d <= graph.size(); ++d) top = std::max(top, m(sigma, d));
        truncation = static_cast<int>(2 * top + 2);
    }
    return LocalCharts(graph).curvette(sigma, truncation);
}

namespace {

// The coefficient of tau^j has lambda-degree at most j, so it vanishes
// identically once it vanishes at j + 1 distinct values.
std::optional<int> generic_order(const Parametrization& param,
                                 const std::function<TauSeries(const TauSeries&, const TauSeries&)>& f)
{
    if (!param.generic) return f(param.x.specialize(0), param.y.specialize(0)).valuation();
    std::optional<int> best;
    const int n = param.truncation();
    for (int k = 0; k < n; ++k) {
        const auto o = f(param.x.specialize(k), param.y.specialize(k)).valuation();
        if (o && (!best || *o < *best)) best = o;
        if (best && k + 1 >= *best) return best;
    }
    return best;
}

} // namespace

std::optional<int> valuation(const Parametrization& param, const PlanePolynomial& f)
{
    return generic_order(param, [&](const TauSeries& x, const TauSeries& y) { return evaluate(f, x, y); });
}

PlanePolynomial curvette_equation(const DualGraph& graph, VertexId delta, int degree)
{
    if (!graph.contains(delta)) throw InputError("vertex not in graph");
    const LocalCharts charts(graph);
    int mult = 0;
    for (int t = 16; mult == 0; t *= 2) {
        const auto param = charts.curvette_at(delta, 100 + delta, t);
        const auto ox = param.x.specialize(0).valuation();
        const auto oy = param.y.specialize(0).valuation();
        if (ox || oy) mult = std::min(ox.value_or(t), oy.value_or(t));
        if (t > (1 << 14)) throw VerificationError("curvette parametrization vanishes");
    }
    const auto param = charts.curvette_at(delta, 100 + delta, mult * (degree + 1) + 1);
    return implicit_equation(param.x.specialize(0), param.y.specialize(0), degree);
}

std::int64_t curvette_intersection(const DualGraph& graph, VertexId sigma, VertexId delta)
{
    if (!graph.contains(sigma) || !graph.contains(delta)) throw InputError("vertex not in graph");
    const LocalCharts charts(graph);
    int mult = 0;
    for (int t = 16; mult == 0; t *= 2) {
        const auto param = charts.curvette(sigma, t);
        const auto ox = valuation(param, PlanePolynomial{{{1, 0}, 1}});
        const auto oy = valuation(param, PlanePolynomial{{{0, 1}, 1}});
        if (ox || oy) mult = std::min(ox.value_or(t), oy.value_or(t));
        if (t > (1 << 14)) throw VerificationError("curvette parametrization vanishes");
    }
    // Terms dropped from the equation have order at least degree * mult on
    // the curvette, so any order found below that is exact.
    for (int degree = 8; degree <= (1 << 12); degree *= 2) {
        const auto h = curvette_equation(graph, delta, degree);
        if (const auto v = valuation(charts.curvette(sigma, degree * mult), h)) return *v;
    }
    throw VerificationError("curvette equation vanishes on the curvette");
}

Parametrization valuation_parametrization(const DualGraph& graph, const LocalCharts& charts,
                                          const ValuationEntry& entry, int truncation)
{
    if (!graph.contains(entry.vertex)) throw InputError("valuation vertex not in graph");
    if (entry.kind == ValuationEntry::Kind::divisorial) return charts.curvette(entry.vertex, truncation);
    return charts.curvette_at(entry.vertex, 200 + entry.branch, truncation);
}

FiltrationOracle::FiltrationOracle(const DualGraph& graph, const ValuationSpec& spec, int max_level)
    : r_(static_cast<int>(spec.size())), max_level_(max_level)
{
    if (r_ < 1) throw InputError("empty valuation spec");
    if (max_level < 1) throw InputError("max level must be positive");
    const int t = max_level;
    std::vector<std::pair<int, int>> monomials;
    for (int d = 0; d < t; ++d) {
        for (int a = d; a >= 0; --a) monomials.emplace_back(a, d - a);
    }
    const LocalCharts charts(graph);

    // Independent constraint rows of each valuation, in level order.
    std::vector<std::vector<std::pair<int, std::vector<BigInt>>>> basis(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const auto param = valuation_parametrization(graph, charts, spec[i], t);
        const int samples = param.generic ? t : 1;
        std::vector<std::vector<TauSeries>> mono(static_cast<std::size_t>(samples));
        for (int s = 0; s < samples; ++s) {
            const auto x = param.x.specialize(s);
            const auto y = param.y.specialize(s);
            std::vector<TauSeries> xp{one_series(t)};
            std::vector<TauSeries> yp{one_series(t)};
            for (int k = 1; k < t; ++k) {
                xp.push_back(xp.back() * x);
                yp.push_back(yp.back() * y);
            }
            for (const auto& [a, b] : monomials) {
                mono[static_cast<std::size_t>(s)].push_back(xp[static_cast<std::size_t>(a)] *
                                                            yp[static_cast<std::size_t>(b)]);
            }
        }
        Echelon ech;
        for (int j = 0; j < t; ++j) {
            for (int s = 0; s < std::min(samples, j + 1); ++s) {
                std::vector<BigInt> row;
                row.reserve(monomials.size());
                for (const auto& m : mono[static_cast<std::size_t>(s)]) row.push_back(m[j]);
                if (ech.insert(row)) basis[i].emplace_back(j, std::move(row));
            }
        }
    }

    std::size_t total = 1;
    for (int i = 0; i < r_; ++i) total *= static_cast<std::size_t>(max_level + 1);
    codim_.assign(total, 0);
    std::vector<int> v(static_cast<std::size_t>(r_), 0);
    std::function<void(std::size_t, Echelon)> fill = [&](std::size_t i, Echelon ech) {
        if (i == static_cast<std::size_t>(r_)) {
            codim_[index(v)] = static_cast<std::int64_t>(ech.rank());
            return;
        }
        std::size_t next = 0;
        for (int n = 0; n <= max_level; ++n) {
            // J(v) with v_i = n imposes the rows of levels below n.
            while (next < basis[i].size() && basis[i][next].first < n) ech.insert(basis[i][next++].second);
            v[i] = n;
            fill(i + 1, ech);
        }
    };
    fill(0, Echelon{});
}

std::size_t FiltrationOracle::index(const std::vector<int>& v) const
{
    if (static_cast<int>(v.size()) != r_) throw InputError("wrong number of coordinates");
    std::size_t idx = 0;
    for (int c : v) {
        if (c < 0 || c > max_level_) throw InputError("ideal index outside the oracle window");
        idx = idx * static_cast<std::size_t>(max_level_ + 1) + static_cast<std::size_t>(c);
    }
    return idx;
}

std::int64_t FiltrationOracle::codimension(const std::vector<int>& v) const
{
    return codim_[index(v)];
}

std::int64_t FiltrationOracle::quotient_dimension(const std::vector<int>& v) const
{
    std::vector<int> lo(v.size());
    std::vector<int> hi(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        lo[i] = std::max(v[i], 0);
        hi[i] = std::max(v[i] + 1, 0);
    }
    return codimension(hi) - codimension(lo);
}

std::int64_t ideal_dim(const DualGraph& graph, const ValuationSpec& spec, const std::vector<int>& v)
{
    int top = 0;
    for (int c : v) top = std::max(top, c);
    return FiltrationOracle(graph, spec, top + 1).quotient_dimension(v);
}

TruncatedSeries definitional_poincare(const DualGraph& graph, const ValuationSpec& spec, int bound)
{
    const int r = static_cast<int>(spec.size());
    if (bound < r) throw InputError("bound must be at least the number of valuations");
    const FiltrationOracle oracle(graph, spec, bound + 1);
    TruncatedSeries p_prime(r, bound);
    for (std::size_t f = 0; f < p_prime.term_count(); ++f) {
        const auto e = p_prime.exponent(f);
        BigInt acc = 0;
        for (unsigned mask = 0; mask < (1u << r); ++mask) {
            std::vector<int> w(static_cast<std::size_t>(r));
            int ones = 0;
            for (int i = 0; i < r; ++i) {
                const bool take = (mask >> i) & 1u;
                ones += take ? 1 : 0;
                w[static_cast<std::size_t>(i)] = static_cast<int>(e[static_cast<std::size_t>(i)]) - (take ? 1 : 0);
            }
            const std::int64_t l = oracle.quotient_dimension(w);
            acc += ((r - ones) % 2 == 0) ? BigInt(l) : BigInt(-l);
        }
        p_prime.flat(f) = acc;
    }
    return divide_torus(p_prime).truncated(bound - r);
}

TruncatedSeries semigroup_series(const std::vector<std::int64_t>& generators, int bound)
{
    if (bound < 0) throw InputError("negative bound");
    for (auto g : generators) {
        if (g <= 0) throw InputError("semigroup generators must be positive");
    }
    TruncatedSeries s(1, bound);
    std::vector<char> member(static_cast<std::size_t>(bound) + 1, 0);
    member[0] = 1;
    for (int n = 1; n <= bound; ++n) {
        for (auto g : generators) {
            if (g <= n && member[static_cast<std::size_t>(n - g)]) member[static_cast<std::size_t>(n)] = 1;
        }
    }
    for (int n = 0; n <= bound; ++n) s.at({n}) = member[static_cast<std::size_t>(n)];
    return s;
}

} // namespace pcs
