#pragma once

// Code lengths and parametric complexities for the four Bernoulli codes
// (enumerative, NML, simplistic, random), their approximations, and the
// Bayes-mixture equivalence of the enumerative code.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdl/logmath.hpp"

namespace mdl {

enum class CodeId { Enumerative, NML, Simplistic, Random };

inline const char* code_name(CodeId code) {
    switch (code) {
        case CodeId::Enumerative: return "enum";
        case CodeId::NML: return "nml";
        case CodeId::Simplistic: return "simplistic";
        case CodeId::Random: return "random";
    }
    return "?";
}

inline CodeId parse_code(const std::string& name) {
    if (name == "enum" || name == "enumerative") return CodeId::Enumerative;
    if (name == "nml") return CodeId::NML;
    if (name == "simplistic") return CodeId::Simplistic;
    if (name == "random") return CodeId::Random;
    throw std::invalid_argument("unknown code: " + name);
}

// Sufficient statistic (n, k) of a binary string: length and count of ones.
struct BernoulliStat {
    std::uint64_t n;
    std::uint64_t k;

    BernoulliStat(std::uint64_t n_, std::uint64_t k_) : n(n_), k(k_) {
        if (n == 0) throw std::invalid_argument("BernoulliStat: n must be >= 1");
        if (k > n) throw std::invalid_argument("BernoulliStat: k must be <= n");
    }

    double theta_hat() const { return static_cast<double>(k) / static_cast<double>(n); }
};

struct CodeLength {
    Bits param;
    Bits data;
    Bits total;
};

// log2(n+1): cost of the uniformly encoded ML parameter.
inline Bits enum_param_cost(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("enum_param_cost: n must be >= 1");
    return Bits{std::log2(static_cast<double>(n) + 1.0)};
}

// log2 C(n,k): uniform cost among strings sharing the statistic.
inline Bits enum_data_cost(const BernoulliStat& stat) {
    return to_bits(log_binomial(stat.n, static_cast<std::int64_t>(stat.k)));
}

namespace detail {

// k ln(k/n) + (n-k) ln((n-k)/n) with the 0 ln 0 = 0 convention:
// natural log of the maximized likelihood.
inline double ln_max_likelihood(std::uint64_t n, std::uint64_t k) {
    double dn = static_cast<double>(n);
    double r = 0.0;
    if (k > 0) r += static_cast<double>(k) * std::log(static_cast<double>(k) / dn);
    if (k < n) r += static_cast<double>(n - k) * std::log(static_cast<double>(n - k) / dn);
    return r;
}

}  // namespace detail

// n H(k/n) in bits: the stochastic complexity shared by NML and simplistic.
inline Bits nml_data_cost(const BernoulliStat& stat) {
    return Bits{-detail::ln_max_likelihood(stat.n, stat.k) / M_LN2};
}

// Exact log2 of the Shtarkov sum over all n+1 values of k.
inline Bits nml_comp_exact(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("nml_comp_exact: n must be >= 1");
    reserve_log_factorials(n);
    std::vector<double> terms;
    terms.reserve(n + 1);
    for (std::uint64_t k = 0; k <= n; ++k)
        terms.push_back(log_binomial(n, static_cast<std::int64_t>(k)).v +
                        detail::ln_max_likelihood(n, k));
    return to_bits(log_sum_exp(terms));
}

// 0.5 log2(n pi / 2). Accepts real n so the formula can be probed at the
// zero of its argument.
inline Bits nml_comp_approx(double n) {
    return Bits{0.5 * std::log2(n * M_PI / 2.0)};
}

enum class NmlComp { Exact, Approx };

// The (param, data, total) triple of Table 1 for the given code.
inline CodeLength code_length(CodeId code, const BernoulliStat& stat,
                              NmlComp comp = NmlComp::Exact) {
    Bits param{0.0}, data{0.0};
    switch (code) {
        case CodeId::Enumerative:
            param = enum_param_cost(stat.n);
            data = enum_data_cost(stat);
            break;
        case CodeId::NML:
            param = comp == NmlComp::Exact ? nml_comp_exact(stat.n)
                                           : nml_comp_approx(static_cast<double>(stat.n));
            data = nml_data_cost(stat);
            break;
        case CodeId::Simplistic:
            param = enum_param_cost(stat.n);
            data = nml_data_cost(stat);
            break;
        case CodeId::Random:
            param = Bits{0.0};
            data = Bits{static_cast<double>(stat.n)};
            break;
    }
    return {param, data, param + data};
}

// -log2 P_Bayes under the uniform prior; identical to the enumerative total.
inline Bits bayes_mixture_cost(const BernoulliStat& stat) {
    double ln_p = -std::log(static_cast<double>(stat.n) + 1.0) -
                  log_binomial(stat.n, static_cast<std::int64_t>(stat.k)).v;
    return Bits{-ln_p / M_LN2};
}

// 0.5 log2(2 pi n theta(1-theta)): asymptotic gap between the NML and
// enumerative stochastic complexities. Diagnostic only.
inline Bits delta_stochastic_approx(const BernoulliStat& stat) {
    if (stat.k == 0 || stat.k == stat.n)
        throw std::invalid_argument("delta_stochastic_approx: degenerate stat");
    double var = stat.theta_hat() * (1.0 - stat.theta_hat());
    return Bits{0.5 * std::log2(2.0 * M_PI * static_cast<double>(stat.n) * var)};
}

// Roots of theta(1-theta) = 1/pi^2: the asymptotic compression-rate
// crossover between the two codes.
struct BernoulliBoundary {
    double theta_low;
    double theta_high;
};

inline BernoulliBoundary bernoulli_boundary() {
    double d = std::sqrt(1.0 - 4.0 / (M_PI * M_PI));
    return {0.5 * (1.0 - d), 0.5 * (1.0 + d)};
}

}  // namespace mdl
