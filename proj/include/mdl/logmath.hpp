#pragma once

// Log-domain primitives shared by every code-length formula.
// All internal arithmetic is in natural log; conversion to bits happens
// only at the API boundary (to_bits).

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

namespace mdl {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// Natural log of a non-negative quantity; -inf encodes zero, NaN is invalid.
struct LogNat {
    double v = kNegInf;

    constexpr LogNat() = default;
    constexpr explicit LogNat(double value) : v(value) {}

    static constexpr LogNat zero() { return LogNat{kNegInf}; }
    static constexpr LogNat one() { return LogNat{0.0}; }

    bool is_zero() const { return v == kNegInf; }
};

// Adds two log-domain values: ln(e^a + e^b).
inline LogNat log_add(LogNat a, LogNat b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    double hi = a.v, lo = b.v;
    if (lo > hi) std::swap(hi, lo);
    return LogNat{hi + std::log1p(std::exp(lo - hi))};
}

// A code length in bits. A zero-probability event has infinite length,
// which doubles as the "undefined" marker.
struct Bits {
    double value = 0.0;

    constexpr Bits() = default;
    constexpr explicit Bits(double bits) : value(bits) {}

    static constexpr Bits undefined() { return Bits{kPosInf}; }
    bool defined() const { return std::isfinite(value); }

    friend Bits operator+(Bits a, Bits b) { return Bits{a.value + b.value}; }
    friend Bits operator-(Bits a, Bits b) { return Bits{a.value - b.value}; }
    friend bool operator<(Bits a, Bits b) { return a.value < b.value; }
    friend bool operator<=(Bits a, Bits b) { return a.value <= b.value; }
    friend bool operator>(Bits a, Bits b) { return a.value > b.value; }
    friend bool operator>=(Bits a, Bits b) { return a.value >= b.value; }
};

inline Bits to_bits(LogNat x) {
    if (x.is_zero()) return Bits::undefined();
    return Bits{x.v / M_LN2};
}

namespace detail {

// Cached table of ln(i!), grown on demand up to a cap; lgamma beyond.
// Readers are lock-free: the current table is published through an atomic
// pointer and superseded tables are retained until process exit.
class LogFactorialTable {
public:
    static constexpr std::uint64_t kDefaultCap = 10'000'000;

    static double value(std::uint64_t n) {
        const std::vector<double>* t = current_.load(std::memory_order_acquire);
        if (t && n < t->size()) return (*t)[n];
        if (n >= kDefaultCap) return std::lgamma(static_cast<double>(n) + 1.0);
        grow(n);
        t = current_.load(std::memory_order_acquire);
        return (*t)[n];
    }

    static void reserve(std::uint64_t n) {
        if (n >= kDefaultCap) n = kDefaultCap - 1;
        const std::vector<double>* t = current_.load(std::memory_order_acquire);
        if (!t || n >= t->size()) grow(n);
    }

private:
    static void grow(std::uint64_t n) {
        std::scoped_lock lock(mu_);
        const std::vector<double>* old = current_.load(std::memory_order_relaxed);
        std::uint64_t old_size = old ? old->size() : 0;
        if (n < old_size) return;
        std::uint64_t size = old_size ? old_size : 1024;
        while (size <= n) size *= 2;
        if (size > kDefaultCap) size = kDefaultCap;
        auto next = std::make_unique<std::vector<double>>();
        next->reserve(size);
        if (old) next->assign(old->begin(), old->end());
        if (next->empty()) next->push_back(0.0);  // ln 0! = 0
        for (std::uint64_t i = next->size(); i < size; ++i)
            next->push_back(std::lgamma(static_cast<double>(i) + 1.0));
        current_.store(next.get(), std::memory_order_release);
        retired_.push_back(std::move(next));
    }

    inline static std::atomic<const std::vector<double>*> current_{nullptr};
    inline static std::mutex mu_;
    inline static std::vector<std::unique_ptr<std::vector<double>>> retired_;
};

}  // namespace detail

// ln(n!), exact to ~1e-14 relative via a cached table (lgamma above the cap).
inline LogNat log_factorial(std::uint64_t n) {
    return LogNat{detail::LogFactorialTable::value(n)};
}

// Pre-warms the factorial table; call before parallel regions for best
// throughput (value() is safe either way).
inline void reserve_log_factorials(std::uint64_t n) {
    detail::LogFactorialTable::reserve(n);
}

// ln C(n,k)
inline LogNat log_binomial(std::uint64_t n, std::int64_t k) {
    if (k < 0 || static_cast<std::uint64_t>(k) > n)
        throw std::invalid_argument("log_binomial: k out of [0, n]");
    std::uint64_t uk = static_cast<std::uint64_t>(k);
    return LogNat{log_factorial(n).v - log_factorial(uk).v - log_factorial(n - uk).v};
}

// ln of the multinomial coefficient n! / prod n_j!, summed in vector order.
inline LogNat log_multinomial_coeff(std::span<const std::uint64_t> counts) {
    if (counts.empty())
        throw std::invalid_argument("log_multinomial_coeff: empty counts");
    std::uint64_t n = 0;
    double denom = 0.0;
    for (std::uint64_t c : counts) {
        n += c;
        denom += log_factorial(c).v;
    }
    return LogNat{log_factorial(n).v - denom};
}

// ln(sum exp(t_i)) with max subtraction and compensated accumulation in a
// single left-to-right pass. Parallel callers must reduce contiguous chunks
// and combine them in ascending chunk order.
inline LogNat log_sum_exp(std::span<const double> terms) {
    double hi = kNegInf;
    for (double t : terms)
        if (t > hi) hi = t;
    if (hi == kNegInf) return LogNat::zero();
    double sum = 0.0, comp = 0.0;
    for (double t : terms) {
        double term = std::exp(t - hi);
        double y = term - comp;
        double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return LogNat{hi + std::log(sum)};
}

inline LogNat log_sum_exp(std::span<const LogNat> terms) {
    static_assert(sizeof(LogNat) == sizeof(double));
    return log_sum_exp(std::span<const double>(
        reinterpret_cast<const double*>(terms.data()), terms.size()));
}

}  // namespace mdl
