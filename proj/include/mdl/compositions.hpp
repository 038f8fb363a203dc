#pragma once

// Exhaustive iteration over the composition space {n_1+...+n_m = n}, plus
// a partition-collapsed mode that visits each multiset of counts once with
// its exact orbit size. Symmetric sums over ~10^10 compositions reduce to
// a few million partition visits this way; neither space is ever
// materialized.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "mdl/logmath.hpp"

namespace mdl {

// Largest m for which m! fits in 64 bits; weighted traversal is capped here.
inline constexpr std::uint64_t kMaxPartitionSlots = 20;

namespace detail {

inline constexpr std::uint64_t kFactorial64[21] = {
    1ull, 1ull, 2ull, 6ull, 24ull, 120ull, 720ull, 5040ull, 40320ull,
    362880ull, 3628800ull, 39916800ull, 479001600ull, 6227020800ull,
    87178291200ull, 1307674368000ull, 20922789888000ull, 355687428096000ull,
    6402373705728000ull, 121645100408832000ull, 2432902008176640000ull};

}  // namespace detail

// Visits every composition of n into m non-negative parts exactly once in
// colexicographic order. The visitor receives a span over a reusable
// buffer; contents are valid only during the call.
template <typename Visitor>
void for_each_composition(std::uint64_t n, std::uint64_t m, Visitor&& visit) {
    if (m == 0) throw std::invalid_argument("for_each_composition: m must be >= 1");
    std::vector<std::uint64_t> c(m, 0);
    c[0] = n;
    std::span<const std::uint64_t> view(c);
    for (;;) {
        visit(view);
        // Successor: move one unit from the first nonzero slot rightward,
        // dumping the remainder back into slot 0.
        std::uint64_t i = 0;
        while (i < m && c[i] == 0) ++i;
        if (i >= m - 1) break;  // all mass in the last slot (or n = 0)
        std::uint64_t t = c[i];
        c[i] = 0;
        c[i + 1] += 1;
        c[0] = t - 1;
    }
}

// A multiset of counts (non-increasing, length m, summing to n) together
// with the exact number of distinct compositions sharing it.
struct WeightedPartition {
    std::span<const std::uint64_t> sorted_counts;
    std::uint64_t orbit_size;  // m! / prod (multiplicity of each value)!
    double log_orbit;          // ln(orbit_size), from log-factorials
};

namespace detail {

inline std::uint64_t orbit_of(std::span<const std::uint64_t> sorted, double* log_orbit) {
    std::uint64_t m = sorted.size();
    std::uint64_t orbit = kFactorial64[m];
    double lo = log_factorial(m).v;
    std::uint64_t run = 1;
    for (std::uint64_t i = 1; i <= m; ++i) {
        if (i < m && sorted[i] == sorted[i - 1]) {
            ++run;
        } else {
            orbit /= kFactorial64[run];
            lo -= log_factorial(run).v;
            run = 1;
        }
    }
    *log_orbit = lo;
    return orbit;
}

template <typename Visitor>
void visit_partitions(std::vector<std::uint64_t>& buf, std::uint64_t pos,
                      std::uint64_t remaining, std::uint64_t max_part,
                      Visitor& visit) {
    std::uint64_t m = buf.size();
    if (pos == m) {
        if (remaining != 0) return;
        WeightedPartition wp;
        wp.sorted_counts = std::span<const std::uint64_t>(buf);
        wp.orbit_size = orbit_of(wp.sorted_counts, &wp.log_orbit);
        visit(wp);
        return;
    }
    std::uint64_t slots_left = m - pos;
    std::uint64_t hi = remaining < max_part ? remaining : max_part;
    // Reverse lexicographic order: largest first part first.
    for (std::uint64_t v = hi + 1; v-- > 0;) {
        if (v * slots_left < remaining) break;  // cannot place the rest
        buf[pos] = v;
        visit_partitions(buf, pos + 1, remaining - v, v, visit);
    }
    buf[pos] = 0;
}

}  // namespace detail

// Visits each multiset of counts once, in reverse lexicographic order of
// the sorted vector, with its exact orbit size. Any sum of a symmetric
// function over compositions equals sum(orbit_size * f(sorted_counts)).
template <typename Visitor>
void for_each_partition_weighted(std::uint64_t n, std::uint64_t m, Visitor&& visit) {
    if (m == 0)
        throw std::invalid_argument("for_each_partition_weighted: m must be >= 1");
    if (m > kMaxPartitionSlots)
        throw std::invalid_argument(
            "for_each_partition_weighted: m exceeds the 64-bit orbit limit");
    reserve_log_factorials(n);
    std::vector<std::uint64_t> buf(m, 0);
    detail::visit_partitions(buf, 0, n, n, visit);
}

// Number of partitions of n into at most m parts, saturating at
// uint64 max. This is the visit count of the weighted traversal.
inline std::uint64_t partition_count(std::uint64_t n, std::uint64_t m) {
    // p(n, m) = p(n, m-1) + p(n-m, m); rolling table over n.
    constexpr std::uint64_t kSat = ~std::uint64_t{0};
    std::vector<std::uint64_t> p(n + 1, 0);
    p[0] = 1;
    for (std::uint64_t parts = 1; parts <= m; ++parts)
        for (std::uint64_t t = parts; t <= n; ++t) {
            std::uint64_t a = p[t], b = p[t - parts];
            p[t] = (a > kSat - b) ? kSat : a + b;
        }
    return p[n];
}

}  // namespace mdl
