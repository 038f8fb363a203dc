#pragma once

// Exact numerical experiments: expected code lengths, compressibility
// statistics, compression-rate distributions, bias detection and coin
// classification. Every expectation is an exact sum over the composition
// space, collapsed to weighted partitions.
//
// Probability weights live in log domain and are exponentiated per term;
// code lengths live in linear domain and are accumulated with compensated
// summation.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdl/bernoulli.hpp"
#include "mdl/compositions.hpp"
#include "mdl/logmath.hpp"
#include "mdl/multinomial.hpp"

namespace mdl {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000;

// Raised when a grid point would visit more partitions than the budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::uint64_t required, std::uint64_t budget)
        : std::runtime_error("partition count " + std::to_string(required) +
                             " exceeds budget " + std::to_string(budget)),
          required_(required) {}
    std::uint64_t required() const { return required_; }

private:
    std::uint64_t required_;
};

namespace detail {

inline void check_budget(std::uint64_t n, std::uint64_t m, std::uint64_t budget) {
    if (m > kMaxPartitionSlots)
        throw BudgetExceeded(~std::uint64_t{0}, budget);
    std::uint64_t count = partition_count(n, m);
    if (count > budget) throw BudgetExceeded(count, budget);
}

// Kahan accumulator.
struct Kahan {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        double y = x - comp;
        double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
};

inline double param_cost_bits(CodeId code, std::uint64_t n, std::uint64_t m,
                              NmlComp comp) {
    switch (code) {
        case CodeId::Enumerative:
        case CodeId::Simplistic:
            return enum_param_cost_m(n, m).value;
        case CodeId::NML:
            return (comp == NmlComp::Exact
                        ? nml_comp_exact_m(n, m)
                        : (m == 2 ? nml_comp_approx(static_cast<double>(n))
                                  : nml_comp_szpankowski(n, m)))
                .value;
        case CodeId::Random:
            return 0.0;
    }
    return 0.0;
}

// Data cost in bits from a count span (0 ln 0 = 0 throughout).
inline double data_cost_bits(CodeId code, std::span<const std::uint64_t> counts,
                             std::uint64_t n, std::uint64_t m) {
    switch (code) {
        case CodeId::Enumerative:
            return log_multinomial_coeff(counts).v / M_LN2;
        case CodeId::NML:
        case CodeId::Simplistic:
            return -ln_max_likelihood_m(counts, n) / M_LN2;
        case CodeId::Random:
            return static_cast<double>(n) * std::log2(static_cast<double>(m));
    }
    return 0.0;
}

// Runs f(total_bits) -> contribution over the uniform-source partition
// expansion, weighting each partition by orbit * multinomial / m^n.
template <typename TermFn>
double uniform_expectation(CodeId code, std::uint64_t n, std::uint64_t m,
                           NmlComp comp, std::uint64_t budget, TermFn&& term) {
    check_budget(n, m, budget);
    double param = param_cost_bits(code, n, m, comp);
    double ln_m = std::log(static_cast<double>(m));
    Kahan acc;
    for_each_partition_weighted(n, m, [&](const WeightedPartition& wp) {
        double ln_multinom = log_multinomial_coeff(wp.sorted_counts).v;
        double ln_w = wp.log_orbit + ln_multinom -
                      static_cast<double>(n) * ln_m;
        double data = data_cost_bits(code, wp.sorted_counts, n, m);
        acc.add(std::exp(ln_w) * term(param + data));
    });
    return acc.sum;
}

}  // namespace detail

// Expectation of the total code length under the uniform source (Bits).
inline Bits expected_code_length(CodeId code, std::uint64_t n, std::uint64_t m,
                                 NmlComp comp = NmlComp::Exact,
                                 std::uint64_t budget = kDefaultBudget) {
    if (code == CodeId::Random)
        return Bits{static_cast<double>(n) * std::log2(static_cast<double>(m))};
    return Bits{detail::uniform_expectation(code, n, m, comp, budget,
                                            [](double total) { return total; })};
}

// Probability mass of strings with total code length <= n log2 m
// (non-strict comparison).
inline double percent_compressible(CodeId code, std::uint64_t n, std::uint64_t m,
                                   NmlComp comp = NmlComp::Exact,
                                   std::uint64_t budget = kDefaultBudget) {
    // The baseline code sits exactly on the threshold, so the non-strict
    // indicator accepts every string.
    if (code == CodeId::Random) return 1.0;
    double threshold = static_cast<double>(n) * std::log2(static_cast<double>(m));
    return detail::uniform_expectation(
        code, n, m, comp, budget,
        [threshold](double total) { return total <= threshold ? 1.0 : 0.0; });
}

// One point of the inverse cumulative distribution of compression rates.
struct RatePoint {
    double rate;       // total length / (n log2 2)
    double tail_prob;  // uniform-measure P(rate <= r)
};

// Bernoulli-only: the rate of each statistic value k with the cumulative
// probability of rates at or below it, sorted by rate.
inline std::vector<RatePoint> compression_rate_icdf(CodeId code, std::uint64_t n,
                                                    NmlComp comp = NmlComp::Exact) {
    double param = detail::param_cost_bits(code, n, 2, comp);
    std::vector<std::pair<double, double>> pts;  // (rate, prob mass)
    pts.reserve(n + 1);
    double ln2n = static_cast<double>(n) * M_LN2;
    for (std::uint64_t k = 0; k <= n; ++k) {
        BernoulliStat stat(n, k);
        double data = code == CodeId::Enumerative ? enum_data_cost(stat).value
                      : code == CodeId::Random    ? static_cast<double>(n)
                                                  : nml_data_cost(stat).value;
        double total = (code == CodeId::Random ? 0.0 : param) + data;
        double ln_p = log_binomial(n, static_cast<std::int64_t>(k)).v - ln2n;
        pts.emplace_back(total / static_cast<double>(n), std::exp(ln_p));
    }
    std::stable_sort(pts.begin(), pts.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<RatePoint> out(pts.size());
    detail::Kahan cum;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        cum.add(pts[i].second);
        out[i] = {pts[i].first, cum.sum};
    }
    // Ties share the probability of the whole group.
    for (std::size_t i = out.size(); i-- > 1;)
        if (out[i - 1].rate == out[i].rate) out[i - 1].tail_prob = out[i].tail_prob;
    return out;
}

// Probability that a sample from the biased source is declared biased,
// i.e. has total code length strictly below n log2 m. The biased source
// puts theta_bias on the first outcome and equidistributes the rest.
inline double bias_detection_prob(CodeId code, double theta_bias, std::uint64_t n,
                                  std::uint64_t m, NmlComp comp = NmlComp::Exact,
                                  std::uint64_t budget = kDefaultBudget) {
    if (m < 2) throw std::invalid_argument("bias_detection_prob: m must be >= 2");
    if (m == 2) {
        if (theta_bias <= 0.0 || theta_bias >= 1.0)
            throw std::invalid_argument("bias_detection_prob: theta_bias not in (0,1)");
    } else if (theta_bias <= 1.0 / static_cast<double>(m) || theta_bias >= 1.0) {
        throw std::invalid_argument("bias_detection_prob: need 1/m < theta_bias < 1");
    }
    double threshold = static_cast<double>(n) * std::log2(static_cast<double>(m));
    double param = detail::param_cost_bits(code, n, m, comp);

    if (m == 2) {
        double ln_t = std::log(theta_bias), ln_c = std::log1p(-theta_bias);
        detail::Kahan acc;
        for (std::uint64_t k = 0; k <= n; ++k) {
            std::uint64_t counts[2] = {n - k, k};
            double total = param + detail::data_cost_bits(code, counts, n, 2);
            if (!(total < threshold)) continue;
            double ln_w = log_binomial(n, static_cast<std::int64_t>(k)).v +
                          static_cast<double>(k) * ln_t +
                          static_cast<double>(n - k) * ln_c;
            acc.add(std::exp(ln_w));
        }
        return acc.sum;
    }

    {
        // The traversal below is (n+1) partition sweeps of the tail outcomes.
        if (m - 1 > kMaxPartitionSlots) throw BudgetExceeded(~std::uint64_t{0}, budget);
        std::uint64_t per = partition_count(n, m - 1);
        if (per > budget / (n + 1)) throw BudgetExceeded(per * (n + 1), budget);
    }
    double theta_min = (1.0 - theta_bias) / static_cast<double>(m - 1);
    double ln_t = std::log(theta_bias), ln_min = std::log(theta_min);
    std::vector<std::uint64_t> full(m);
    detail::Kahan acc;
    // The source is symmetric only in outcomes 2..m: fix the first count,
    // collapse the rest to weighted partitions.
    for (std::uint64_t k1 = 0; k1 <= n; ++k1) {
        double ln_choose = log_binomial(n, static_cast<std::int64_t>(k1)).v;
        double ln_theta = static_cast<double>(k1) * ln_t +
                          static_cast<double>(n - k1) * ln_min;
        full[0] = k1;
        for_each_partition_weighted(n - k1, m - 1, [&](const WeightedPartition& wp) {
            std::copy(wp.sorted_counts.begin(), wp.sorted_counts.end(),
                      full.begin() + 1);
            double total = param + detail::data_cost_bits(code, full, n, m);
            if (!(total < threshold)) return;
            double ln_w = ln_choose + wp.log_orbit +
                          log_multinomial_coeff(wp.sorted_counts).v + ln_theta;
            acc.add(std::exp(ln_w));
        });
    }
    return acc.sum;
}

// Lower/upper sample-size thresholds for 50% detection probability over
// the bounded search range [10, n_max]. The lower threshold is the first
// n whose probability reaches 1/2; the upper one is the first n past
// which the probability never dips back below 1/2, i.e. one beyond the
// last sub-50% sample size. Absent optionals mean the crossing was not
// reached within the range (the upper threshold is also reported as not
// reached when it is censored at n_max).
struct DetectionThresholds {
    std::optional<std::uint64_t> lower;
    std::optional<std::uint64_t> upper;
};

inline DetectionThresholds detection_thresholds(CodeId code, double theta_bias,
                                                std::uint64_t m, std::uint64_t n_max,
                                                NmlComp comp = NmlComp::Exact,
                                                std::uint64_t budget = kDefaultBudget) {
    DetectionThresholds out;
    std::optional<std::uint64_t> last_below;
    // Once the probability has stayed essentially at 1 for a long stretch
    // it cannot dip back below 1/2; stop scanning there.
    constexpr double kSettled = 1.0 - 1e-9;
    constexpr std::uint64_t kSettledWindow = 64;
    std::uint64_t settled_run = 0;
    for (std::uint64_t n = 10; n <= n_max; ++n) {
        double prob = bias_detection_prob(code, theta_bias, n, m, comp, budget);
        if (prob >= 0.5 && !out.lower) out.lower = n;
        if (prob <= 0.5) last_below = n;
        settled_run = prob >= kSettled ? settled_run + 1 : 0;
        if (settled_run >= kSettledWindow) break;
    }
    if (!out.lower) return out;  // no crossing at all
    if (!last_below)
        out.upper = out.lower;  // never dipped below 1/2 in range
    else if (*last_below < n_max)
        out.upper = *last_below + 1;
    return out;
}

// TPR/TNR/ACC of the compress-below-baseline classifier on a fair-vs-
// biased coin mixture. The TPR indicator is strict, the TNR one
// non-strict.
struct Classification {
    double tpr;
    double tnr;
    double acc;
};

inline Classification coin_classification(CodeId code, double theta_bias,
                                          std::uint64_t n,
                                          NmlComp comp = NmlComp::Exact) {
    double tpr = bias_detection_prob(code, theta_bias, n, 2, comp);
    double param = detail::param_cost_bits(code, n, 2, comp);
    double threshold = static_cast<double>(n);
    double ln2n = static_cast<double>(n) * M_LN2;
    detail::Kahan tnr;
    for (std::uint64_t k = 0; k <= n; ++k) {
        std::uint64_t counts[2] = {n - k, k};
        double total = param + detail::data_cost_bits(code, counts, n, 2);
        if (total >= threshold)
            tnr.add(std::exp(log_binomial(n, static_cast<std::int64_t>(k)).v - ln2n));
    }
    return {tpr, tnr.sum, 0.5 * (tpr + tnr.sum)};
}

// Ratio of enumerative to NML compressible-string fractions; empty when
// both fractions are zero.
inline std::optional<double> compressible_ratio(std::uint64_t n, std::uint64_t m,
                                                std::uint64_t budget = kDefaultBudget) {
    double e = percent_compressible(CodeId::Enumerative, n, m, NmlComp::Exact, budget);
    double v = percent_compressible(CodeId::NML, n, m, NmlComp::Exact, budget);
    if (e == 0.0 && v == 0.0) return std::nullopt;
    return e / v;
}

}  // namespace mdl
