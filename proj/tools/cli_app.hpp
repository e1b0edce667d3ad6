#pragma once

// Command-line front end. Kept in a header so tests can drive run_cli directly.
//
// Exit codes: 0 success, 1 cross-check mismatch, 2 usage error,
// 3 budget exceeded, 4 non-convergence.

#include "kcolor/kcolor.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace kcolor::cli {

enum ExitCode : int { ok = 0, mismatch = 1, usage = 2, budget = 3, no_convergence = 4 };

class Mismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "a..b" or a single integer.
inline std::pair<int, int> parse_range(const std::string& s) {
    auto to_int = [&](const std::string& t) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (t.empty() || used != t.size()) throw std::invalid_argument("bad range '" + s + "' (expected a..b)");
        return v;
    };
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        const int v = to_int(s);
        return {v, v};
    }
    const int lo = to_int(s.substr(0, dots)), hi = to_int(s.substr(dots + 2));
    if (lo > hi) throw std::invalid_argument("empty range '" + s + "'");
    return {lo, hi};
}

inline constexpr double verify_search_leaves = 5e7;

struct CountOutcome {
    BigInt count;
    std::string method;
    std::vector<std::string> agreeing;
    /// Paths not run because they would exceed a budget.
    std::vector<std::string> skipped;
};

/// Runs every computation path that applies, returning the first; with verify,
/// all available paths must agree.
inline CountOutcome count_dispatch(int m, int p, int k, Boundary boundary, CountTarget what, bool verify,
                                   const Budget& budget) {
    using Path = std::pair<std::string, std::function<BigInt()>>;
    std::vector<Path> paths;
    if (what == CountTarget::edge_states) {
        if (boundary == Boundary::cylinder) {
            if (k == 3 && m >= 2 && m <= 4) paths.emplace_back("closed-form", [=] { return strip_count(m, p); });
            paths.emplace_back("dense-trace", [=] { return strip_count_dense(m, p, k, budget); });
        } else if (boundary == Boundary::open) {
            paths.emplace_back("dense-sum", [=] { return open_lattice_count(m, p, k, budget); });
        }
    }
    // Behind another path, brute force gets a small search budget and is skipped when it would run long.
    const SearchBudget search = paths.empty() ? SearchBudget{} : SearchBudget{verify_search_leaves};
    paths.emplace_back("brute-force", [=] { return brute_force_count(m, p, k, boundary, what, search); });

    CountOutcome out;
    bool have = false;
    std::string last_budget_error;
    for (const auto& [name, fn] : paths) {
        BigInt value;
        try {
            value = fn();
        } catch (const BudgetExceeded& e) {
            last_budget_error = e.what();
            out.skipped.push_back(name);
            continue;
        }
        if (!have) {
            out.count = value;
            out.method = name;
            out.agreeing.push_back(name);
            have = true;
            if (!verify) break;
        } else if (value != out.count) {
            throw Mismatch(name + " gives " + to_decimal(value) + " but " + out.method + " gives " +
                           to_decimal(out.count));
        } else {
            out.agreeing.push_back(name);
        }
    }
    if (!have) throw BudgetExceeded(last_budget_error.empty() ? "no computation path fits the budget" : last_budget_error);
    return out;
}

inline void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Transfer matrices, exact counts and series estimates for k-colorings of the square lattice", "kcolor"};
    app.require_subcommand(1);

    std::uint64_t max_dense_dim = Budget{}.max_dense_dim;
    std::uint64_t max_implicit_dim = Budget{}.max_implicit_dim;
    std::string output_path;
    app.add_option("--memory-budget", max_dense_dim, "Largest dense matrix dimension")->capture_default_str();
    app.add_option("--implicit-budget", max_implicit_dim, "Largest dimension for matrix-free products")
        ->capture_default_str();
    app.add_option("-o,--output", output_path, "Write results to this file instead of stdout");

    // eigen
    auto* eigen = app.add_subcommand("eigen", "Largest eigenvalue of B_p and lambda^(1/p) over a range of p");
    int eig_k = 3;
    std::string eig_range = "1..10";
    std::string eig_format = "table";
    double eig_tol = EigenOptions{}.tolerance;
    long eig_max_iter = EigenOptions{}.max_iterations;
    eigen->add_option("--k", eig_k, "Number of colors")->capture_default_str();
    eigen->add_option("--p", eig_range, "Row length or range a..b")->capture_default_str();
    eigen->add_option("--format", eig_format, "json, csv or table")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();
    eigen->add_option("--tolerance", eig_tol, "Relative residual tolerance")->capture_default_str();
    eigen->add_option("--max-iterations", eig_max_iter, "Power-iteration limit")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // count
    auto* count = app.add_subcommand("count", "Exact number of edge-state assignments or colorings");
    int cnt_m = 2, cnt_p = 1, cnt_k = 3;
    std::string cnt_boundary = "cylinder", cnt_what = "edge-states";
    bool cnt_verify = false, cnt_no_timing = false;
    count->add_option("--m", cnt_m, "Rows")->required();
    count->add_option("--p", cnt_p, "Columns")->required();
    count->add_option("--k", cnt_k, "Number of colors")->capture_default_str();
    count->add_option("--boundary", cnt_boundary, "open, cylinder or torus")
        ->check(CLI::IsMember({"open", "cylinder", "torus"}))
        ->capture_default_str();
    count->add_option("--what", cnt_what, "edge-states or colorings")
        ->check(CLI::IsMember({"edge-states", "colorings"}))
        ->capture_default_str();
    count->add_flag("--verify", cnt_verify, "Run every applicable computation path and require agreement");
    count->add_flag("--no-timing", cnt_no_timing, "Omit elapsed_ms for byte-identical output");

    // strip
    auto* strip = app.add_subcommand("strip", "Closed-form m x p cylinder counts (k = 3, m in 2..4)");
    int strip_m = 2;
    std::string strip_range = "1..10";
    strip->add_option("--m", strip_m, "Rows (2, 3 or 4)")->required();
    strip->add_option("--p", strip_range, "Column count or range a..b")->capture_default_str();

    // series
    auto* series = app.add_subcommand("series", "Pauling estimate with the square-cycle correction");
    int ser_k = 3;
    series->add_option("--k", ser_k, "Number of colors")->required();

    // fit
    auto* fit = app.add_subcommand("fit", "Fit p,value data to a polynomial in 1/p");
    std::string fit_input, fit_plot;
    int fit_degree = 5;
    fit->add_option("--input", fit_input, "CSV file with header p,value")->required();
    fit->add_option("--degree", fit_degree, "Polynomial degree (1..8)")
        ->check(CLI::Range(1, 8))
        ->capture_default_str();
    fit->add_option("--plot", fit_plot, "Write gnuplot data (points and fitted curve) here");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "List vertex configurations, and row configurations for --p");
    int en_k = 3;
    std::optional<int> en_p;
    enumerate->add_option("--k", en_k, "Number of colors")->required();
    enumerate->add_option("--p", en_p, "Also list the ordered row configurations of length p");

    // matrix
    auto* matrix = app.add_subcommand("matrix", "Export a dense transfer matrix");
    int mat_k = 3, mat_p = 1;
    std::optional<int> mat_n;
    std::string mat_format = "json";
    bool mat_direct = false;
    matrix->add_option("--k", mat_k, "Number of colors")->capture_default_str();
    matrix->add_option("--p", mat_p, "Row length")->required();
    matrix->add_option("--n", mat_n, "Component A_n; omit for B_p");
    matrix->add_option("--format", mat_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    matrix->add_flag("--direct", mat_direct, "Build B_p by direct row sweeps instead of the block recursion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return usage;
    }

    Budget budget;
    budget.max_dense_dim = max_dense_dim;
    budget.max_implicit_dim = max_implicit_dim;

    std::ofstream file;
    if (!output_path.empty()) {
        file.open(output_path);
        if (!file) {
            err << "error: cannot open " << output_path << " for writing\n";
            return usage;
        }
    }
    std::ostream& os = output_path.empty() ? out : file;

    try {
        if (*eigen) {
            const auto [lo, hi] = parse_range(eig_range);
            if (lo < 1) throw std::invalid_argument("p must be at least 1");
            EigenOptions opts;
            opts.tolerance = eig_tol;
            opts.max_iterations = eig_max_iter;
            json rows = json::array();
            if (eig_format == "csv") os << "p,lambda_max,per_site\n";
            if (eig_format == "table") os << std::setw(4) << "p" << std::setw(22) << "lambda_max" << std::setw(12)
                                          << "per_site" << '\n';
            int status = ok;
            for (int p = lo; p <= hi; ++p) {
                EigenResult r;
                try {
                    r = lambda_max(eig_k, p, opts, budget);
                } catch (const BudgetExceeded& e) {
                    err << "warning: stopping at p=" << p << ": " << e.what() << '\n';
                    status = ExitCode::budget;
                    break;
                }
                if (eig_format == "json") {
                    rows.push_back(eigen_json(eig_k, p, r));
                } else if (eig_format == "csv") {
                    os << p << ',' << std::setprecision(15) << r.lambda_max << ',' << r.per_site_estimate << '\n';
                } else {
                    os << std::setw(4) << p << std::setw(22) << std::fixed << std::setprecision(10) << r.lambda_max
                       << std::setw(12) << std::setprecision(5) << r.per_site_estimate << '\n';
                    os.unsetf(std::ios::floatfield);
                }
            }
            if (eig_format == "json") emit_json(os, rows);
            return status;
        }
        if (*count) {
            const auto start = std::chrono::steady_clock::now();
            const auto b = parse_boundary(cnt_boundary);
            const auto w = parse_count_target(cnt_what);
            const auto res = count_dispatch(cnt_m, cnt_p, cnt_k, b, w, cnt_verify, budget);
            json j = {{"m", cnt_m},           {"p", cnt_p},
                      {"k", cnt_k},           {"boundary", std::string(to_string(b))},
                      {"what", std::string(to_string(w))}, {"count", to_decimal(res.count)},
                      {"method", res.method}};
            if (cnt_verify) {
                j["verified_by"] = res.agreeing;
                j["skipped"] = res.skipped;
            }
            if (!cnt_no_timing)
                j["elapsed_ms"] =
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            emit_json(os, j);
            return ok;
        }
        if (*strip) {
            const auto [lo, hi] = parse_range(strip_range);
            json rows = json::array();
            for (int p = lo; p <= hi; ++p) rows.push_back(strip_json(strip_m, p, strip_count(strip_m, p)));
            emit_json(os, {{"m", strip_m}, {"limit", strip_limit(strip_m)}, {"records", rows}});
            return ok;
        }
        if (*series) {
            emit_json(os, series_json(w_estimate(ser_k)));
            return ok;
        }
        if (*fit) {
            std::ifstream in(fit_input);
            if (!in) throw std::invalid_argument("cannot open " + fit_input);
            const FitResult f = fit_inverse_poly(read_fit_csv(in), fit_degree);
            if (!fit_plot.empty()) {
                std::ofstream plot(fit_plot);
                if (!plot) throw std::invalid_argument("cannot open " + fit_plot + " for writing");
                write_gnuplot(plot, f);
            }
            emit_json(os, fit_json(f));
            return ok;
        }
        if (*enumerate) {
            json configs = json::array();
            for (const auto& v : enumerate_vertex_configs(en_k)) configs.push_back(v.states);
            json j = {{"k", en_k}, {"M_k", vertex_count(en_k)}, {"vertex_configs", configs}};
            if (en_p) {
                const auto n = detail::checked_dim(en_k, *en_p, budget.max_dense_dim, "row listing");
                json rows = json::array();
                for (std::uint64_t i = 0; i < n; ++i) rows.push_back(decode(i, *en_p, en_k));
                j["p"] = *en_p;
                j["row_configs"] = rows;
            }
            emit_json(os, j);
            return ok;
        }
        if (*matrix) {
            TransferMatrix m = mat_n ? build_A_recursive(mat_k, *mat_n, mat_p, budget)
                               : mat_direct ? build_B_direct(mat_k, mat_p, budget)
                                            : build_B_recursive(mat_k, mat_p, budget);
            if (mat_format == "csv")
                write_csv(os, m.entries());
            else
                emit_json(os, matrix_json(m));
            return ok;
        }
    } catch (const Mismatch& e) {
        err << "error: cross-check mismatch: " << e.what() << '\n';
        return mismatch;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::budget;
    } catch (const NonConvergence& e) {
        err << "error: " << e.what() << '\n';
        return no_convergence;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
    return usage;
}

}  // namespace kcolor::cli
