#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcs/bigint.hpp"

namespace pcs {

using Exponent = std::vector<std::int64_t>;

// Total degree first, then lexicographic.
bool graded_lex_less(const Exponent& a, const Exponent& b);

struct GradedLexLess {
    bool operator()(const Exponent& a, const Exponent& b) const { return graded_lex_less(a, b); }
};

// Formal product prod (1 - t^m)^{k_m} in r variables. Zero multiplicities are
// never stored.
class FactoredSeries {
public:
    using Factors = std::map<Exponent, std::int64_t, GradedLexLess>;

    explicit FactoredSeries(int r = 1) : r_(r) {}
    FactoredSeries(int r, std::initializer_list<std::pair<const Exponent, std::int64_t>> factors);

    int variables() const { return r_; }
    const Factors& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }
    std::int64_t multiplicity(const Exponent& m) const;

    // Multiplies by (1 - t^m)^k.
    void multiply_factor(const Exponent& m, std::int64_t k);

    // Largest coordinate over all factor exponents (0 for the empty product).
    std::int64_t max_coordinate() const;

    std::string to_string() const;

    friend bool operator==(const FactoredSeries&, const FactoredSeries&) = default;

private:
    int r_ = 1;
    Factors factors_;
};

// Dense power series truncated to exponents 0..bound in every variable.
class TruncatedSeries {
public:
    TruncatedSeries(int r, int bound);

    static TruncatedSeries one(int r, int bound);

    int variables() const { return r_; }
    int bound() const { return bound_; }
    std::size_t term_count() const { return coeffs_.size(); }

    const BigInt& at(const Exponent& e) const { return coeffs_[index(e)]; }
    BigInt& at(const Exponent& e) { return coeffs_[index(e)]; }
    const BigInt& flat(std::size_t i) const { return coeffs_[i]; }
    BigInt& flat(std::size_t i) { return coeffs_[i]; }

    bool in_box(const Exponent& e) const;
    std::size_t index(const Exponent& e) const;
    Exponent exponent(std::size_t flat_index) const;
    // Flat indices of the box in graded-lex order.
    std::vector<std::size_t> graded_lex_order() const;

    // Restriction to a smaller box.
    TruncatedSeries truncated(int new_bound) const;

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    int r_;
    int bound_;
    std::vector<BigInt> coeffs_;
};

// Multiplies in place by (1 - t^m)^k, exactly, within the box.
void multiply_binomial_power(TruncatedSeries& s, const Exponent& m, std::int64_t k);

TruncatedSeries expand(const FactoredSeries& f, int bound);

// Restricts every exponent to the kept coordinates (sorted, 0-based) and
// merges equal exponents. Throws InputError if a factor would degenerate.
FactoredSeries project(const FactoredSeries& f, const std::vector<int>& keep);

// Sums out the coordinates not in `keep` (t_i := 1). Exact only where the
// truncation does not cut contributing terms; the caller picks the bound.
TruncatedSeries substitute_ones(const TruncatedSeries& s, const std::vector<int>& keep);

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries div(const TruncatedSeries& a, const TruncatedSeries& b);

// P = P' / (t_1 ... t_r - 1).
TruncatedSeries divide_torus(const TruncatedSeries& p_prime);

// Greedy peeling in graded-lex order. With `max_coordinate` set, any peeled
// factor with a coordinate above it raises InsufficientBound: the input is not
// a finite product of factors within that degree.
FactoredSeries factorize(const TruncatedSeries& s, std::optional<std::int64_t> max_coordinate = std::nullopt);

} // namespace pcs
