#pragma once

// Tabular wrappers around the experiment operations: one ExperimentResult
// per plotted point, deterministic CSV serialization, and a worker pool
// whose output is identical for any worker count (each grid point is an
// independent task written into its own slot).

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mdl/comp_cache.hpp"
#include "mdl/experiments.hpp"

namespace mdl {

// One row of a reproduced figure or table.
struct ExperimentResult {
    std::string experiment_id;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<std::pair<std::string, double>> metrics;
};

// 12 significant digits; NaN renders as the missing marker "NA".
inline std::string format_value(double v) {
    if (std::isnan(v)) return "NA";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string format_param(double v) { return format_value(v); }

// CSV with a header row; rows must share one schema.
inline std::string to_csv(const std::vector<ExperimentResult>& rows) {
    std::ostringstream out;
    if (rows.empty()) return "";
    for (std::size_t i = 0; i < rows[0].parameters.size(); ++i)
        out << (i ? "," : "") << rows[0].parameters[i].first;
    for (const auto& [name, _] : rows[0].metrics) out << "," << name;
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.parameters.size(); ++i)
            out << (i ? "," : "") << row.parameters[i].second;
        for (const auto& [_, v] : row.metrics) out << "," << format_value(v);
        out << "\n";
    }
    return out.str();
}

namespace detail {

// Runs f(i) for i in [0, count) on `workers` threads. Tasks write into
// disjoint slots, so scheduling order cannot affect results.
template <typename F>
void parallel_for_index(std::size_t count, unsigned workers, F&& f) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mu;
    auto body = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                f(i);
            } catch (...) {
                std::scoped_lock lock(error_mu);
                if (!error) error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
    body();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace detail

// Integer grid helpers -------------------------------------------------

inline std::vector<std::uint64_t> lin_grid(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> g;
    for (std::uint64_t n = lo; n <= hi; ++n) g.push_back(n);
    return g;
}

// Roughly `points` log-spaced integers in [lo, hi], deduplicated.
inline std::vector<std::uint64_t> log_grid(std::uint64_t lo, std::uint64_t hi,
                                           std::size_t points) {
    std::set<std::uint64_t> g;
    double llo = std::log(static_cast<double>(lo));
    double lhi = std::log(static_cast<double>(hi));
    for (std::size_t i = 0; i < points; ++i) {
        double t = points > 1 ? static_cast<double>(i) / (points - 1) : 0.0;
        g.insert(static_cast<std::uint64_t>(
            std::llround(std::exp(llo + t * (lhi - llo)))));
    }
    g.insert(lo);
    g.insert(hi);
    return {g.begin(), g.end()};
}

// Dense for small n, log-spaced beyond; mirrors the paper's figure grids
// at desk scale.
inline std::vector<std::uint64_t> desk_grid(std::uint64_t hi) {
    if (hi <= 200) return lin_grid(1, hi);
    std::set<std::uint64_t> g;
    for (std::uint64_t n = 1; n <= 200; ++n) g.insert(n);
    for (std::uint64_t n : log_grid(200, hi, 80)) g.insert(n);
    return {g.begin(), g.end()};
}

// Row producers --------------------------------------------------------

struct RunOptions {
    unsigned workers = std::thread::hardware_concurrency();
    std::uint64_t budget = kDefaultBudget;
    NmlComp comp = NmlComp::Exact;
    CompCache* cache = nullptr;
};

namespace detail {

inline Bits cached_comp(std::uint64_t n, std::uint64_t m, const RunOptions& opt) {
    return opt.cache ? opt.cache->bits(n, m) : nml_comp_exact_m(n, m);
}

template <typename PointFn>
std::vector<ExperimentResult> map_points(std::size_t count, const RunOptions& opt,
                                         PointFn&& point) {
    std::vector<ExperimentResult> rows(count);
    parallel_for_index(count, opt.workers,
                       [&](std::size_t i) { rows[i] = point(i); });
    return rows;
}

}  // namespace detail

inline std::vector<ExperimentResult> complexity_curve_rows(
    const std::vector<std::uint64_t>& m_list, const std::vector<std::uint64_t>& n_grid,
    const RunOptions& opt = {}) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> points;
    for (std::uint64_t m : m_list)
        for (std::uint64_t n : n_grid) points.emplace_back(n, m);
    return detail::map_points(points.size(), opt, [&](std::size_t i) {
        auto [n, m] = points[i];
        ExperimentResult row;
        row.experiment_id = "complexity_curve";
        row.parameters = {{"n", std::to_string(n)}, {"m", std::to_string(m)}};
        row.metrics = {
            {"comp_enum", enum_param_cost_m(n, m).value},
            {"comp_nml_exact", detail::cached_comp(n, m, opt).value},
            {"comp_rissanen", nml_comp_rissanen(n, m).value},
            {"comp_szpankowski", nml_comp_szpankowski(n, m).value},
            {"bic", 0.5 * static_cast<double>(m - 1) *
                        std::log2(static_cast<double>(n))}};
        return row;
    });
}

inline std::vector<ExperimentResult> expected_length_rows(
    const std::vector<CodeId>& codes, std::uint64_t m,
    const std::vector<std::uint64_t>& n_grid, const RunOptions& opt = {}) {
    std::vector<std::pair<std::uint64_t, CodeId>> points;
    for (std::uint64_t n : n_grid)
        for (CodeId code : codes) points.emplace_back(n, code);
    return detail::map_points(points.size(), opt, [&](std::size_t i) {
        auto [n, code] = points[i];
        double baseline =
            static_cast<double>(n) * std::log2(static_cast<double>(m));
        double e = expected_code_length(code, n, m, opt.comp, opt.budget).value;
        ExperimentResult row;
        row.experiment_id = "expected_length";
        row.parameters = {{"n", std::to_string(n)},
                          {"m", std::to_string(m)},
                          {"code", code_name(code)}};
        row.metrics = {{"overhead_bits", e - baseline}};
        return row;
    });
}

inline std::vector<ExperimentResult> percent_compressible_rows(
    const std::vector<CodeId>& codes, std::uint64_t m,
    const std::vector<std::uint64_t>& n_grid, const RunOptions& opt = {}) {
    std::vector<std::pair<std::uint64_t, CodeId>> points;
    for (std::uint64_t n : n_grid)
        for (CodeId code : codes) points.emplace_back(n, code);
    return detail::map_points(points.size(), opt, [&](std::size_t i) {
        auto [n, code] = points[i];
        ExperimentResult row;
        row.experiment_id = "percent_compressible";
        row.parameters = {{"n", std::to_string(n)},
                          {"m", std::to_string(m)},
                          {"code", code_name(code)}};
        row.metrics = {
            {"fraction", percent_compressible(code, n, m, opt.comp, opt.budget)}};
        return row;
    });
}

inline std::vector<ExperimentResult> icdf_rows(
    const std::vector<CodeId>& codes, const std::vector<std::uint64_t>& n_list,
    const RunOptions& opt = {}) {
    std::vector<ExperimentResult> rows;
    for (std::uint64_t n : n_list)
        for (CodeId code : codes)
            for (const RatePoint& pt : compression_rate_icdf(code, n, opt.comp)) {
                ExperimentResult row;
                row.experiment_id = "icdf";
                row.parameters = {{"n", std::to_string(n)}, {"code", code_name(code)}};
                row.metrics = {{"rate", pt.rate}, {"tail_prob", pt.tail_prob}};
                rows.push_back(std::move(row));
            }
    return rows;
}

inline std::vector<ExperimentResult> bias_detection_rows(
    const std::vector<CodeId>& codes, std::uint64_t m, double theta_bias,
    const std::vector<std::uint64_t>& n_grid, const RunOptions& opt = {}) {
    std::vector<std::pair<std::uint64_t, CodeId>> points;
    for (std::uint64_t n : n_grid)
        for (CodeId code : codes) points.emplace_back(n, code);
    return detail::map_points(points.size(), opt, [&](std::size_t i) {
        auto [n, code] = points[i];
        ExperimentResult row;
        row.experiment_id = "bias_detection";
        row.parameters = {{"n", std::to_string(n)},
                          {"m", std::to_string(m)},
                          {"code", code_name(code)},
                          {"theta_bias", format_param(theta_bias)}};
        row.metrics = {{"prob", bias_detection_prob(code, theta_bias, n, m,
                                                    opt.comp, opt.budget)}};
        return row;
    });
}

inline std::vector<ExperimentResult> thresholds_rows(
    const std::vector<CodeId>& codes, std::uint64_t m,
    const std::vector<double>& theta_list, std::uint64_t n_max,
    const RunOptions& opt = {}) {
    std::vector<std::pair<double, CodeId>> points;
    for (double t : theta_list)
        for (CodeId code : codes) points.emplace_back(t, code);
    return detail::map_points(points.size(), opt, [&](std::size_t i) {
        auto [theta, code] = points[i];
        DetectionThresholds th =
            detection_thresholds(code, theta, m, n_max, opt.comp, opt.budget);
        double nan = std::nan("");
        ExperimentResult row;
        row.experiment_id = "thresholds";
        row.parameters = {{"m", std::to_string(m)},
                          {"code", code_name(code)},
                          {"theta_bias", format_param(theta)}};
        row.metrics = {
            {"lower", th.lower ? static_cast<double>(*th.lower) : nan},
            {"upper", th.upper ? static_cast<double>(*th.upper) : nan}};
        return row;
    });
}

inline std::vector<ExperimentResult> classification_rows(
    const std::vector<CodeId>& codes, double theta_bias,
    const std::vector<std::uint64_t>& n_grid, const RunOptions& opt = {}) {
    std::vector<std::pair<std::uint64_t, CodeId>> points;
    for (std::uint64_t n : n_grid)
        for (CodeId code : codes) points.emplace_back(n, code);
    return detail::map_points(points.size(), opt, [&](std::size_t i) {
        auto [n, code] = points[i];
        Classification c = coin_classification(code, theta_bias, n, opt.comp);
        ExperimentResult row;
        row.experiment_id = "classification";
        row.parameters = {{"n", std::to_string(n)},
                          {"code", code_name(code)},
                          {"theta_bias", format_param(theta_bias)}};
        row.metrics = {{"tpr", c.tpr}, {"tnr", c.tnr}, {"acc", c.acc}};
        return row;
    });
}

inline std::vector<ExperimentResult> comp_ratio_table(
    const std::vector<std::uint64_t>& m_list, const std::vector<std::uint64_t>& n_grid,
    const RunOptions& opt = {}) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> points;
    for (std::uint64_t m : m_list)
        for (std::uint64_t n : n_grid) points.emplace_back(n, m);
    return detail::map_points(points.size(), opt, [&](std::size_t i) {
        auto [n, m] = points[i];
        ExperimentResult row;
        row.experiment_id = "comp_ratio";
        row.parameters = {{"n", std::to_string(n)}, {"m", std::to_string(m)}};
        row.metrics = {{"ratio", enum_param_cost_m(n, m).value /
                                     detail::cached_comp(n, m, opt).value}};
        return row;
    });
}

inline std::vector<ExperimentResult> compressible_ratio_rows(
    const std::vector<std::uint64_t>& m_list, const std::vector<std::uint64_t>& n_grid,
    const RunOptions& opt = {}) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> points;
    for (std::uint64_t m : m_list)
        for (std::uint64_t n : n_grid) points.emplace_back(n, m);
    return detail::map_points(points.size(), opt, [&](std::size_t i) {
        auto [n, m] = points[i];
        std::optional<double> r = compressible_ratio(n, m, opt.budget);
        ExperimentResult row;
        row.experiment_id = "compressible_ratio";
        row.parameters = {{"n", std::to_string(n)}, {"m", std::to_string(m)}};
        row.metrics = {{"ratio", r ? *r : std::nan("")}};
        return row;
    });
}

}  // namespace mdl
