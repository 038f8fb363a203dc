// Command-line front end: single code lengths, complexity tables, and the
// named experiments with CSV and SVG output.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mdl/bernoulli.hpp"
#include "mdl/comp_cache.hpp"
#include "mdl/experiments.hpp"
#include "mdl/multinomial.hpp"
#include "mdl/runner.hpp"
#include "mdl/svg_plot.hpp"

namespace fs = std::filesystem;
using namespace mdl;

namespace {

std::vector<std::uint64_t> parse_u64_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoull(item));
    if (out.empty()) throw CLI::ValidationError("empty list: " + s);
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    if (out.empty()) throw CLI::ValidationError("empty list: " + s);
    return out;
}

// "lo:hi[:points[:log|lin]]"; omitted points means every integer.
std::vector<std::uint64_t> parse_grid(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() < 2 || parts.size() > 4)
        throw CLI::ValidationError("bad grid spec: " + s);
    std::uint64_t lo = std::stoull(parts[0]), hi = std::stoull(parts[1]);
    if (lo == 0 || hi < lo) throw CLI::ValidationError("bad grid range: " + s);
    if (parts.size() == 2) return lin_grid(lo, hi);
    std::size_t points = std::stoull(parts[2]);
    bool log_scale = parts.size() == 4 ? parts[3] == "log" : false;
    if (log_scale) return log_grid(lo, hi, points);
    std::set<std::uint64_t> g;
    for (std::size_t i = 0; i < points; ++i) {
        double t = points > 1 ? static_cast<double>(i) / (points - 1) : 0.0;
        g.insert(lo + static_cast<std::uint64_t>(
                          std::llround(t * static_cast<double>(hi - lo))));
    }
    return {g.begin(), g.end()};
}

std::vector<CodeId> parse_codes(const std::string& s) {
    std::vector<CodeId> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_code(item));
    if (out.empty()) throw CLI::ValidationError("empty code list");
    return out;
}

void cmd_codelen(std::uint64_t n, std::optional<std::uint64_t> k,
                 const std::string& counts_arg, const std::string& code_arg) {
    CodeId code = parse_code(code_arg);
    CodeLength len{};
    if (!counts_arg.empty()) {
        MultinomialStat stat(parse_u64_list(counts_arg));
        len = code_length_m(code, stat);
    } else {
        if (!k) throw CLI::ValidationError("codelen needs --k or --counts");
        len = code_length(code, BernoulliStat(n, *k));
    }
    std::printf("param %.6f\ndata  %.6f\ntotal %.6f\n", len.param.value,
                len.data.value, len.total.value);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

// One SVG per experiment: x is n (or rate/theta), one series per value of
// the remaining parameters and metric.
void write_plot(const fs::path& path, const std::string& id,
                const std::vector<ExperimentResult>& rows) {
    if (rows.empty()) return;
    std::string x_name = "n";
    std::string y_pick;  // empty: all metrics
    PlotSpec spec;
    spec.title = id;
    spec.log_x = true;
    if (id == "icdf") {
        x_name = "";  // special-cased below
    } else if (id == "thresholds") {
        x_name = "theta_bias";
        spec.log_x = false;
        spec.log_y = true;
    } else if (id == "percent_compressible") {
        spec.log_y = true;
    } else if (id == "classification") {
        y_pick = "acc";
    }
    spec.x_label = x_name.empty() ? "rate" : x_name;

    std::map<std::string, PlotSeries> by_key;
    for (const auto& row : rows) {
        if (id == "icdf") {
            std::string key;
            for (const auto& [pname, pval] : row.parameters)
                key += pname + "=" + pval + " ";
            auto& s = by_key[key];
            s.name = key;
            double rate = 0, tail = 0;
            for (const auto& [mname, v] : row.metrics)
                (mname == "rate" ? rate : tail) = v;
            s.points.emplace_back(tail, rate);
            continue;
        }
        double x = 0;
        std::string label;
        for (const auto& [pname, pval] : row.parameters) {
            if (pname == x_name)
                x = std::stod(pval);
            else
                label += pname + "=" + pval + " ";
        }
        for (const auto& [mname, v] : row.metrics) {
            if (!y_pick.empty() && mname != y_pick) continue;
            if (std::isnan(v)) continue;
            std::string key = label + mname;
            auto& s = by_key[key];
            s.name = key;
            s.points.emplace_back(x, v);
        }
    }
    if (id == "icdf") {
        spec.x_label = "cumulative fraction of strings";
        spec.log_x = false;
    }
    spec.y_label = y_pick.empty() ? "value" : y_pick;
    std::vector<PlotSeries> series;
    for (auto& [_, s] : by_key) series.push_back(std::move(s));
    write_file(path, render_svg_plot(spec, series));
}

struct ExperimentArgs {
    std::string id;
    std::vector<std::uint64_t> m_list{};
    std::vector<std::uint64_t> n_list{};
    std::string grid;
    std::vector<CodeId> codes{CodeId::Enumerative, CodeId::NML};
    std::vector<double> theta_list{};
    std::uint64_t n_max = 100000;
    std::string out_dir = ".";
    std::string format = "csv";
    std::string cache_path;
    unsigned workers = std::thread::hardware_concurrency();
    std::uint64_t budget = kDefaultBudget;
};

std::vector<std::uint64_t> default_n_grid(const std::string& id, std::uint64_t m) {
    if (id == "complexity_curve" || id == "comp_ratio")
        return log_grid(1, 100000, 100);
    if (id == "expected_length") {
        if (m == 2) return lin_grid(1, 1000);
        if (m == 5) return lin_grid(1, 100);
        if (m == 10) return lin_grid(1, 50);
        return lin_grid(1, 100);
    }
    if (id == "percent_compressible" || id == "compressible_ratio") {
        if (m == 2) return lin_grid(1, 1000);
        if (m == 3) return desk_grid(5000);
        if (m == 5) return desk_grid(500);
        return desk_grid(200);
    }
    if (id == "bias_detection") return lin_grid(1, 1000);
    if (id == "classification") return log_grid(1, 10000, 80);
    return lin_grid(1, 100);
}

std::vector<ExperimentResult> run_experiment(const ExperimentArgs& args,
                                             const RunOptions& opt) {
    const std::string& id = args.id;
    std::vector<std::uint64_t> m_list = args.m_list;
    if (m_list.empty()) {
        if (id == "comp_ratio")
            m_list = {2, 3, 5, 10};
        else if (id == "compressible_ratio" || id == "complexity_curve")
            m_list = {2, 3, 5};
        else
            m_list = {2};
    }
    auto n_for = [&](std::uint64_t m) {
        if (!args.n_list.empty()) return args.n_list;
        if (!args.grid.empty()) return parse_grid(args.grid);
        return default_n_grid(id, m);
    };
    std::vector<double> thetas = args.theta_list;
    if (thetas.empty()) thetas = {0.40};

    std::vector<ExperimentResult> rows;
    auto append = [&rows](std::vector<ExperimentResult> part) {
        rows.insert(rows.end(), std::make_move_iterator(part.begin()),
                    std::make_move_iterator(part.end()));
    };

    if (id == "complexity_curve") {
        for (std::uint64_t m : m_list)
            append(complexity_curve_rows({m}, n_for(m), opt));
    } else if (id == "expected_length") {
        for (std::uint64_t m : m_list)
            append(expected_length_rows(args.codes, m, n_for(m), opt));
    } else if (id == "percent_compressible") {
        for (std::uint64_t m : m_list)
            append(percent_compressible_rows(args.codes, m, n_for(m), opt));
    } else if (id == "icdf") {
        std::vector<std::uint64_t> n_list =
            args.n_list.empty() ? std::vector<std::uint64_t>{10, 100, 1000}
                                : args.n_list;
        append(icdf_rows(args.codes, n_list, opt));
    } else if (id == "bias_detection") {
        for (std::uint64_t m : m_list)
            for (double theta : thetas)
                append(bias_detection_rows(args.codes, m, theta, n_for(m), opt));
    } else if (id == "thresholds") {
        for (std::uint64_t m : m_list)
            append(thresholds_rows(args.codes, m, thetas, args.n_max, opt));
    } else if (id == "classification") {
        for (double theta : thetas)
            append(classification_rows(args.codes, theta, n_for(2), opt));
    } else if (id == "comp_ratio") {
        for (std::uint64_t m : m_list) append(comp_ratio_table({m}, n_for(m), opt));
    } else if (id == "compressible_ratio") {
        for (std::uint64_t m : m_list)
            append(compressible_ratio_rows({m}, n_for(m), opt));
    } else {
        throw CLI::ValidationError("unknown experiment id: " + id);
    }
    return rows;
}

int cmd_experiment(const ExperimentArgs& args) {
    RunOptions opt;
    opt.workers = args.workers == 0 ? 1 : args.workers;
    opt.budget = args.budget;
    CompCache cache(args.cache_path);
    CompCache mem_cache;
    opt.cache = args.cache_path.empty() ? &mem_cache : &cache;

    fs::path csv_path = fs::path(args.out_dir) / (args.id + ".csv");
    fs::path svg_path = fs::path(args.out_dir) / (args.id + ".svg");
    try {
        fs::create_directories(args.out_dir);
        std::vector<ExperimentResult> rows = run_experiment(args, opt);
        if (args.format == "csv" || args.format == "both")
            write_file(csv_path, to_csv(rows));
        if (args.format == "plot" || args.format == "both")
            write_plot(svg_path, args.id, rows);
        return 0;
    } catch (const std::exception& e) {
        std::error_code ec;
        fs::remove(csv_path, ec);
        fs::remove(svg_path, ec);
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MDL code lengths and comparative experiments for Bernoulli "
                 "and multinomial models"};
    app.require_subcommand(1);

    // codelen
    std::uint64_t n = 0;
    std::optional<std::uint64_t> k;
    std::string counts_arg, code_arg = "enum";
    auto* codelen = app.add_subcommand("codelen", "Code length of one statistic");
    codelen->add_option("--n", n, "string length (Bernoulli)");
    codelen->add_option("--k", k, "count of ones (Bernoulli)");
    codelen->add_option("--counts", counts_arg, "m-ary count vector, e.g. 2,2,1");
    codelen->add_option("--code", code_arg, "enum|nml|simplistic|random");

    // complexity
    std::uint64_t cm = 2;
    std::string c_n_list, c_grid, c_out, c_cache;
    unsigned c_workers = std::thread::hardware_concurrency();
    auto* complexity =
        app.add_subcommand("complexity", "Parametric complexity table");
    complexity->add_option("--m", cm, "number of outcomes");
    complexity->add_option("--n", c_n_list, "comma-separated n values");
    complexity->add_option("--grid", c_grid, "n grid lo:hi[:points[:log|lin]]");
    complexity->add_option("--out", c_out, "output CSV path (default stdout)");
    complexity->add_option("--cache", c_cache, "complexity cache file");
    complexity->add_option("--workers", c_workers, "worker threads");

    // experiment
    ExperimentArgs ex;
    std::string ex_m, ex_n, ex_codes, ex_theta;
    auto* experiment =
        app.add_subcommand("experiment", "Run a named experiment to CSV/SVG");
    experiment->add_option("id", ex.id,
                           "complexity_curve|expected_length|percent_compressible|"
                           "icdf|bias_detection|thresholds|classification|"
                           "comp_ratio|compressible_ratio")
        ->required();
    experiment->add_option("--m", ex_m, "comma-separated m values");
    experiment->add_option("--n", ex_n, "comma-separated n values");
    experiment->add_option("--grid", ex.grid, "n grid lo:hi[:points[:log|lin]]");
    experiment->add_option("--code", ex_codes, "comma-separated codes");
    experiment->add_option("--theta-bias", ex_theta, "comma-separated biases");
    experiment->add_option("--n-max", ex.n_max, "threshold search bound");
    experiment->add_option("--out", ex.out_dir, "output directory");
    experiment->add_option("--format", ex.format, "csv|plot|both");
    experiment->add_option("--cache", ex.cache_path, "complexity cache file");
    experiment->add_option("--workers", ex.workers, "worker threads");
    experiment->add_option("--budget", ex.budget, "max partitions per grid point");

    CLI11_PARSE(app, argc, argv);

    try {
        if (codelen->parsed()) {
            cmd_codelen(n, k, counts_arg, code_arg);
            return 0;
        }
        if (complexity->parsed()) {
            std::vector<std::uint64_t> grid =
                !c_n_list.empty() ? parse_u64_list(c_n_list)
                : !c_grid.empty() ? parse_grid(c_grid)
                                  : log_grid(1, 100000, 100);
            RunOptions opt;
            opt.workers = c_workers == 0 ? 1 : c_workers;
            CompCache cache(c_cache);
            CompCache mem_cache;
            opt.cache = c_cache.empty() ? &mem_cache : &cache;
            std::string csv = to_csv(complexity_curve_rows({cm}, grid, opt));
            if (c_out.empty())
                std::cout << csv;
            else
                write_file(c_out, csv);
            return 0;
        }
        if (!ex_m.empty()) ex.m_list = parse_u64_list(ex_m);
        if (!ex_n.empty()) ex.n_list = parse_u64_list(ex_n);
        if (!ex_codes.empty()) ex.codes = parse_codes(ex_codes);
        if (!ex_theta.empty()) ex.theta_list = parse_double_list(ex_theta);
        return cmd_experiment(ex);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
