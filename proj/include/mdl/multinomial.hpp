#pragma once

// Code lengths and complexities for the multinomial generalization:
// exact NML COMP via the two-term linear recurrence in the alphabet size,
// the Rissanen and Szpankowski approximations, and the enumerative
// closed form with its Stirling expansion.

#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "mdl/bernoulli.hpp"
#include "mdl/logmath.hpp"

namespace mdl {

// Sufficient statistic of an m-ary string: the per-outcome count vector.
struct MultinomialStat {
    std::vector<std::uint64_t> counts;
    std::uint64_t n;

    explicit MultinomialStat(std::vector<std::uint64_t> counts_)
        : counts(std::move(counts_)),
          n(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0})) {
        if (counts.size() < 2)
            throw std::invalid_argument("MultinomialStat: m must be >= 2");
        if (n == 0) throw std::invalid_argument("MultinomialStat: n must be >= 1");
    }

    std::uint64_t m() const { return counts.size(); }
};

// log2 C(n+m-1, m-1): uniform cost over all count tuples.
inline Bits enum_param_cost_m(std::uint64_t n, std::uint64_t m) {
    if (n == 0 || m < 2)
        throw std::invalid_argument("enum_param_cost_m: need n >= 1, m >= 2");
    return to_bits(log_binomial(n + m - 1, static_cast<std::int64_t>(m - 1)));
}

// log2 of the multinomial coefficient.
inline Bits enum_data_cost_m(const MultinomialStat& stat) {
    return to_bits(log_multinomial_coeff(stat.counts));
}

namespace detail {

// sum n_j ln(n_j/n), 0 ln 0 = 0: natural log of the maximized likelihood.
inline double ln_max_likelihood_m(std::span<const std::uint64_t> counts,
                                  std::uint64_t n) {
    double dn = static_cast<double>(n);
    double r = 0.0;
    for (std::uint64_t c : counts)
        if (c > 0) r += static_cast<double>(c) * std::log(static_cast<double>(c) / dn);
    return r;
}

// Natural log of the Shtarkov sum: S(1) = 1, S(2) = Bernoulli sum, and
// S(j) = S(j-1) + (n/(j-2)) S(j-2) for j >= 3.
inline double ln_shtarkov_sum_m(std::uint64_t n, std::uint64_t m) {
    LogNat s_prev2 = LogNat::one();                       // j = 1
    LogNat s_prev{nml_comp_exact(n).value * M_LN2};       // j = 2
    if (m == 2) return s_prev.v;
    double ln_n = std::log(static_cast<double>(n));
    for (std::uint64_t j = 3; j <= m; ++j) {
        LogNat s = log_add(
            s_prev, LogNat{ln_n - std::log(static_cast<double>(j - 2)) + s_prev2.v});
        s_prev2 = s_prev;
        s_prev = s;
    }
    return s_prev.v;
}

}  // namespace detail

// n log2 n - sum n_j log2 n_j: the NML stochastic complexity.
inline Bits nml_data_cost_m(const MultinomialStat& stat) {
    return Bits{-detail::ln_max_likelihood_m(stat.counts, stat.n) / M_LN2};
}

// Exact log2 of the multinomial Shtarkov sum.
inline Bits nml_comp_exact_m(std::uint64_t n, std::uint64_t m) {
    if (n == 0 || m < 2)
        throw std::invalid_argument("nml_comp_exact_m: need n >= 1, m >= 2");
    if (m == 2) return nml_comp_exact(n);
    return Bits{detail::ln_shtarkov_sum_m(n, m) / M_LN2};
}

// ((m-1)/2) log2(n/(2 pi)) + log2(pi^(m/2) / Gamma(m/2))
inline Bits nml_comp_rissanen(std::uint64_t n, std::uint64_t m) {
    if (n == 0 || m < 2)
        throw std::invalid_argument("nml_comp_rissanen: need n >= 1, m >= 2");
    double dm = static_cast<double>(m);
    double ln_val = 0.5 * (dm - 1.0) * std::log(static_cast<double>(n) / (2.0 * M_PI)) +
                    0.5 * dm * std::log(M_PI) - std::lgamma(dm / 2.0);
    return Bits{ln_val / M_LN2};
}

// ((m-1)/2) log2(n/2) + log2(sqrt(pi) / Gamma(m/2))
inline Bits nml_comp_szpankowski(std::uint64_t n, std::uint64_t m) {
    if (n == 0 || m < 2)
        throw std::invalid_argument("nml_comp_szpankowski: need n >= 1, m >= 2");
    double dm = static_cast<double>(m);
    double ln_val = 0.5 * (dm - 1.0) * std::log(static_cast<double>(n) / 2.0) +
                    0.5 * std::log(M_PI) - std::lgamma(dm / 2.0);
    return Bits{ln_val / M_LN2};
}

// Stirling expansion of log2 C(n+m-1, m-1):
// (m-1)(log2 n - log2(m-1) + log2 e) - 0.5 log2(2 pi (m-1))
inline Bits enum_comp_stirling(std::uint64_t n, std::uint64_t m) {
    if (n == 0 || m < 2)
        throw std::invalid_argument("enum_comp_stirling: need n >= 1, m >= 2");
    double dm1 = static_cast<double>(m - 1);
    double ln_val = dm1 * (std::log(static_cast<double>(n)) - std::log(dm1) + 1.0) -
                    0.5 * std::log(2.0 * M_PI * dm1);
    return Bits{ln_val / M_LN2};
}

// Approximate overall NML-minus-enumerative total code length difference:
// (m/2) log(2 pi m / e) + (1/2) log prod theta_j + log(e/sqrt 2)
//   + (m - 1/2) log(1 - 1/m), in bits. Positive values mean the
// enumerative code is shorter. Diagnostic.
inline Bits delta_overall_approx(std::span<const double> theta, std::uint64_t m,
                                 std::uint64_t /*n*/ = 0) {
    if (theta.size() != m || m < 2)
        throw std::invalid_argument("delta_overall_approx: theta size must equal m >= 2");
    double ln_prod = 0.0;
    for (double t : theta) {
        if (t <= 0.0)
            throw std::invalid_argument("delta_overall_approx: theta_j must be > 0");
        ln_prod += std::log(t);
    }
    double dm = static_cast<double>(m);
    double ln_val = 0.5 * dm * std::log(dm * 2.0 * M_PI / M_E) + 0.5 * ln_prod +
                    std::log(M_E / std::sqrt(2.0)) +
                    (dm - 0.5) * std::log1p(-1.0 / dm);
    return Bits{ln_val / M_LN2};
}

// Peaked distribution at which both codes compress about equally:
// theta_max = 1 - ((m-1)/(m + ln m)) e/(2 pi), remainder equidistributed.
struct PeakBoundary {
    double theta_max;
    double theta_min;
};

inline PeakBoundary peak_boundary(std::uint64_t m) {
    if (m < 2) throw std::invalid_argument("peak_boundary: m must be >= 2");
    double dm = static_cast<double>(m);
    double theta_min = M_E / (2.0 * M_PI * (dm + std::log(dm)));
    double theta_max = 1.0 - (dm - 1.0) * theta_min;
    return {theta_max, theta_min};
}

// The Table 2 triple for the given code (m >= 2). The simplistic code
// pairs the enumerative parameter cost with the NML data cost, matching
// its Bernoulli definition at m = 2.
inline CodeLength code_length_m(CodeId code, const MultinomialStat& stat,
                                NmlComp comp = NmlComp::Exact) {
    Bits param{0.0}, data{0.0};
    switch (code) {
        case CodeId::Enumerative:
            param = enum_param_cost_m(stat.n, stat.m());
            data = enum_data_cost_m(stat);
            break;
        case CodeId::NML:
            param = comp == NmlComp::Exact ? nml_comp_exact_m(stat.n, stat.m())
                                           : nml_comp_szpankowski(stat.n, stat.m());
            data = nml_data_cost_m(stat);
            break;
        case CodeId::Simplistic:
            param = enum_param_cost_m(stat.n, stat.m());
            data = nml_data_cost_m(stat);
            break;
        case CodeId::Random:
            param = Bits{0.0};
            data = Bits{static_cast<double>(stat.n) *
                        std::log2(static_cast<double>(stat.m()))};
            break;
    }
    return {param, data, param + data};
}

}  // namespace mdl
