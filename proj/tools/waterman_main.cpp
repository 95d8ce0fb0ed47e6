// Batch front-end: kernel tables, variation searches, convergence sweeps
// and the diagonal construction, with reproducible CSV/JSON outputs.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "waterman/counterexample.hpp"
#include "waterman/kernels.hpp"
#include "waterman/sequences.hpp"
#include "waterman/summation.hpp"
#include "waterman/util.hpp"
#include "waterman/variation.hpp"

namespace {

using json = nlohmann::json;
using namespace waterman;

json real(double x) { return json(format_real(x)); }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

void write_manifest(const std::string& out_path, const std::string& command, const json& params,
                    long long seed) {
    json m;
    m["command"] = command;
    m["version"] = kToolkitVersion;
    m["seed"] = seed;
    m["parameters"] = params;
    write_file(out_path + ".manifest.json", m.dump(2) + "\n");
}

std::vector<double> parse_csv_reals(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::strtod(item.c_str(), nullptr));
    return out;
}

struct NamedFunction {
    Func1 fn;
    Interval base{0.0, 1.0};
    std::vector<double> default_grid;
    std::vector<double> breakpoints;
    double f_star = 0.0;  // value the means should settle to at x = 0
};

NamedFunction lookup_function(const std::string& name, long long N, double alpha1, int deg) {
    NamedFunction nf;
    if (name == "zero") {
        nf.fn = [](double) { return 0.0; };
        nf.base = {0.0, 1.0};
        for (int i = 0; i <= 4; ++i) nf.default_grid.push_back(i / 4.0);
        return nf;
    }
    if (name == "linear") {
        nf.fn = [](double t) { return t; };
        nf.base = {0.0, 1.0};
        for (int i = 0; i <= 4; ++i) nf.default_grid.push_back(i / 4.0);
        return nf;
    }
    if (name == "chi") {
        nf.fn = [](double t) { return (t > 0.4 && t < 0.6) ? 1.0 : 0.0; };
        nf.base = {0.0, 1.0};
        nf.default_grid = {0.0, 0.2, 0.5, 0.8, 1.0};
        nf.breakpoints = {0.4, 0.6};
        return nf;
    }
    if (name == "jump") {
        nf.fn = [](double t) { return sawtooth_jump(t); };
        nf.base = {-kPi, kPi};
        for (int i = 0; i <= 16; ++i) nf.default_grid.push_back(-kPi + 2.0 * kPi * i / 16.0);
        nf.breakpoints = {0.0};
        nf.f_star = 0.0;
        return nf;
    }
    if (name == "trigpoly") {
        // fixed deterministic polynomial of the requested degree
        nf.fn = [deg](double t) {
            double v = 0.3;
            for (int j = 1; j <= deg; ++j)
                v += std::cos(j * t) / (j + 1.0) + std::sin(j * t) / (2.0 * j + 1.0);
            return v;
        };
        nf.base = {-kPi, kPi};
        for (int i = 0; i <= 16; ++i) nf.default_grid.push_back(-kPi + 2.0 * kPi * i / 16.0);
        nf.f_star = nf.fn(0.0);
        return nf;
    }
    if (name == "stage_f") {
        const auto atom = stage_oscillation(N, alpha1);
        nf.fn = [atom](double t) { return atom_eval(TrigAtom{atom}, t); };
        nf.base = {0.0, kPi};
        // zero- and peak-aligned grid over the window
        const double nu = atom.freq;
        const auto l_lo = static_cast<long long>(std::llround(nu * atom.lo / kPi - 0.5 * alpha1));
        const auto l_hi = static_cast<long long>(std::llround(nu * atom.hi / kPi - 0.5 * alpha1));
        for (long long l = l_lo; l <= l_hi; ++l) {
            nf.default_grid.push_back((static_cast<double>(l) + 0.5 * alpha1) * kPi / nu);
            if (l < l_hi)
                nf.default_grid.push_back((static_cast<double>(l) + 0.5 + 0.5 * alpha1) * kPi / nu);
        }
        nf.breakpoints = {atom.lo, atom.hi};
        return nf;
    }
    throw CLI::ValidationError("--fn", "unknown function name: " + name);
}

int cmd_kernel(int n, double alpha, int points, double tmin, double tmax, double tol,
               const std::string& out, long long seed) {
    CesaroKernel kernel(n, alpha);
    std::ostringstream csv;
    csv << "n,alpha,t,value,main_term,remainder\n";
    double max_ratio = 0.0;
    for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? tmin : tmin + (tmax - tmin) * i / (points - 1);
        const auto e = kernel.eval(t);
        csv << n << ',' << format_real(alpha) << ',' << format_real(t) << ','
            << format_real(e.value) << ',';
        if (e.main_term) csv << format_real(*e.main_term);
        csv << ',';
        if (e.remainder) {
            csv << format_real(*e.remainder);
            if (alpha != 0.0) {
                const double denom = 2.0 * std::abs(alpha);
                const double ratio =
                    std::abs(*e.remainder) * n * std::pow(2.0 * std::sin(std::abs(t) / 2.0), 2) / denom;
                max_ratio = std::max(max_ratio, ratio);
            }
        }
        csv << '\n';
    }
    write_file(out, csv.str());

    json summary;
    summary["normalization_integral"] = real(kernel_integral(n, alpha, -kPi, kPi, tol));
    summary["max_remainder_ratio"] = real(max_ratio);
    write_file(out + ".summary.json", summary.dump(2) + "\n");

    json params{{"n", n},       {"alpha", real(alpha)}, {"points", points}, {"tmin", real(tmin)},
                {"tmax", real(tmax)}, {"tol", real(tol)},     {"out", out}};
    write_manifest(out, "kernel", params, seed);
    return 0;
}

int cmd_variation(const std::string& fn_name, const std::string& lambda_name, int grid_count,
                  const std::string& grid_points, long long N, double alpha1, int max_intervals,
                  int span_limit, const std::string& out, const std::string& witness_csv,
                  long long seed) {
    LambdaSequence seq = LambdaSequence::harmonic();
    if (lambda_name.rfind("power:", 0) == 0)
        seq = LambdaSequence::power(std::strtod(lambda_name.c_str() + 6, nullptr));
    else if (lambda_name != "harmonic")
        throw CLI::ValidationError("--lambda", "expected 'harmonic' or 'power:<beta>'");

    NamedFunction nf = lookup_function(fn_name, N, alpha1, 4);
    std::vector<double> grid;
    if (!grid_points.empty())
        grid = parse_csv_reals(grid_points);
    else if (grid_count > 1)
        for (int i = 0; i < grid_count; ++i)
            grid.push_back(nf.base.lo + (nf.base.hi - nf.base.lo) * i / (grid_count - 1));
    else
        grid = nf.default_grid;

    SearchBudget budget;
    budget.max_intervals = static_cast<std::size_t>(max_intervals);
    if (span_limit > 0) budget.candidate_span_limit = static_cast<std::size_t>(span_limit);
    if (grid.size() > 4096) budget.local_search_rounds = 0;

    const auto res = variation_1d(nf.fn, seq, nf.base, grid, budget);

    json doc;
    doc["function"] = fn_name;
    doc["lambda"] = seq.describe();
    doc["value"] = real(res.value);
    doc["exact"] = res.exact;
    json witness = json::array();
    for (std::size_t i = 0; i < res.witness[0].intervals.size(); ++i) {
        const auto& iv = res.witness[0].intervals[i];
        witness.push_back({{"axis", 1},
                           {"k", i + 1},
                           {"a", real(iv.lo)},
                           {"b", real(iv.hi)},
                           {"contribution", real(res.contributions[0][i])}});
    }
    doc["witness"] = witness;
    write_file(out, doc.dump(2) + "\n");

    if (!witness_csv.empty()) {
        std::ostringstream csv;
        csv << "axis,k,a,b,contribution\n";
        for (std::size_t i = 0; i < res.witness[0].intervals.size(); ++i) {
            const auto& iv = res.witness[0].intervals[i];
            csv << 1 << ',' << i + 1 << ',' << format_real(iv.lo) << ',' << format_real(iv.hi)
                << ',' << format_real(res.contributions[0][i]) << '\n';
        }
        write_file(witness_csv, csv.str());
    }

    json params{{"fn", fn_name},       {"lambda", lambda_name},   {"grid", grid_count},
                {"grid_points", grid_points}, {"N", N},           {"alpha1", real(alpha1)},
                {"max_intervals", max_intervals}, {"span_limit", span_limit}, {"out", out}};
    write_manifest(out, "variation", params, seed);
    return 0;
}

int cmd_converge(const std::string& fn_name, int deg, const std::string& alphas_text,
                 const std::string& schedule_text, const std::string& out, long long seed) {
    const std::vector<double> alphas = parse_csv_reals(alphas_text);
    CesaroOrder order(alphas);
    const auto m = order.dims();

    // schedule: diag:LO:HI doubles every axis together; aniso:LO:HI:AXIS
    // grows one axis and pins the others at LO.
    std::vector<std::vector<int>> schedule;
    {
        std::vector<std::string> parts;
        std::stringstream ss(schedule_text);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        if (parts.size() < 3) throw CLI::ValidationError("--schedule", "expected kind:lo:hi[:axis]");
        const int lo = std::atoi(parts[1].c_str());
        const int hi = std::atoi(parts[2].c_str());
        if (lo < 1 || hi < lo) throw CLI::ValidationError("--schedule", "bad range");
        if (parts[0] == "diag") {
            for (int n = lo; n <= hi; n *= 2) schedule.push_back(std::vector<int>(m, n));
        } else if (parts[0] == "aniso") {
            if (parts.size() != 4) throw CLI::ValidationError("--schedule", "aniso needs an axis");
            const auto axis = static_cast<std::size_t>(std::atoi(parts[3].c_str()));
            if (axis < 1 || axis > m) throw CLI::ValidationError("--schedule", "axis out of range");
            for (int n = lo; n <= hi; n *= 2) {
                std::vector<int> nvec(m, lo);
                nvec[axis - 1] = n;
                schedule.push_back(nvec);
            }
        } else {
            throw CLI::ValidationError("--schedule", "kind must be diag or aniso");
        }
    }

    int n_top = 1;
    for (const auto& nvec : schedule)
        for (int n : nvec) n_top = std::max(n_top, n);

    NamedFunction nf = lookup_function(fn_name, 10, -0.3, deg);
    MultiFourierData data = [&] {
        if (fn_name == "jump") {
            std::vector<FourierData> axes(m, sawtooth_jump_data(n_top));
            return MultiFourierData::separable(std::move(axes));
        }
        std::vector<FourierData> axes(
            m, FourierData::from_function(nf.fn, n_top, nf.breakpoints));
        return MultiFourierData::separable(std::move(axes));
    }();

    const double f_star = std::pow(nf.f_star, static_cast<double>(m));
    const std::vector<double> x(m, 0.0);
    std::ostringstream csv;
    for (std::size_t j = 1; j <= m; ++j) csv << "n_" << j << ',';
    csv << "mean,error\n";
    for (const auto& nvec : schedule) {
        const double mean = cesaro_mean_multi(data, nvec, order, x);
        for (int n : nvec) csv << n << ',';
        csv << format_real(mean) << ',' << format_real(std::abs(mean - f_star)) << '\n';
    }
    write_file(out, csv.str());

    json params{{"fn", fn_name},           {"deg", deg},       {"alphas", alphas_text},
                {"schedule", schedule_text}, {"out", out}};
    write_manifest(out, "converge", params, seed);
    return 0;
}

int cmd_counterexample_build(int m, const std::string& alphas_text, int depth, long long cap,
                             const std::string& out, long long seed) {
    BuildOptions opts;
    opts.m = m;
    opts.alphas = parse_csv_reals(alphas_text);
    opts.depth = depth;
    opts.cap = cap;
    const auto spec = build_diagonal(opts);
    write_file(out, diagonal_to_json(spec));
    json params{{"m", m}, {"alphas", alphas_text}, {"depth", depth}, {"cap", cap}, {"out", out}};
    write_manifest(out, "counterexample build", params, seed);
    std::printf("built %d stages; N_last = %lld; rho = %s\n",
                static_cast<int>(spec.stages.size()), spec.stages.back().N,
                format_real(spec.rho).c_str());
    return 0;
}

int cmd_counterexample_verify(const std::string& spec_path, const std::string& out,
                              long long seed) {
    std::ifstream in(spec_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read spec: " + spec_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const auto spec = diagonal_from_json(buffer.str());

    bool all_ok = true;
    json report = json::array();
    for (int s = 1; s <= static_cast<int>(spec.stages.size()); ++s) {
        const auto chk = verify_stage(spec, s);
        all_ok = all_ok && chk.ok;
        const double needed = 0.5 * spec.rho - chk.truncation_allowance;
        std::printf("stage %d: %s  |sigma(f,0)| = %s vs rho/2 - allowance = %s\n", s,
                    chk.ok ? "ok" : "FAILED", format_real(std::abs(chk.assembled_sigma)).c_str(),
                    format_real(needed).c_str());
        for (const auto& f : chk.failures) std::printf("  violated: %s\n", f.c_str());
        json entry{{"stage", s},
                   {"ok", chk.ok},
                   {"assembled_sigma", real(chk.assembled_sigma)},
                   {"truncation_allowance", real(chk.truncation_allowance)},
                   {"final_gap", real(chk.final_gap)},
                   {"max_recompute_drift", real(chk.max_recompute_drift)},
                   {"failures", chk.failures}};
        report.push_back(std::move(entry));
    }
    if (!out.empty()) {
        write_file(out, report.dump(2) + "\n");
        json params{{"spec", spec_path}, {"out", out}};
        write_manifest(out, "counterexample verify", params, seed);
    }
    if (!all_ok) throw ThresholdError("certificate verification failed");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Waterman-variation and Cesaro-summability toolkit"};
    app.require_subcommand(1);
    long long seed = 0;
    app.add_option("--seed", seed, "echoed into the run manifest");

    // kernel
    auto* kernel = app.add_subcommand("kernel", "dump a Cesaro kernel table as CSV");
    int k_n = 64, k_points = 256;
    double k_alpha = -0.5, k_tmin = -kPi, k_tmax = kPi, k_tol = 1e-8;
    std::string k_out = "kernel.csv";
    kernel->add_option("--n", k_n, "kernel order")->required();
    kernel->add_option("--alpha", k_alpha, "Cesaro order, > -1")->required();
    kernel->add_option("--points", k_points, "table rows");
    kernel->add_option("--tmin", k_tmin);
    kernel->add_option("--tmax", k_tmax);
    kernel->add_option("--tol", k_tol, "normalization quadrature tolerance");
    kernel->add_option("--out", k_out);

    // variation
    auto* variation = app.add_subcommand("variation", "grid-restricted variation search");
    std::string v_fn = "linear", v_lambda = "harmonic", v_grid_points, v_out = "variation.json",
                v_witness_csv;
    int v_grid = 0, v_max_intervals = 4, v_span = 0;
    long long v_N = 10;
    double v_alpha1 = -0.3;
    variation->add_option("--fn", v_fn, "zero|linear|chi|jump|trigpoly|stage_f")->required();
    variation->add_option("--lambda", v_lambda, "harmonic|power:<beta>");
    variation->add_option("--grid", v_grid, "uniform grid point count");
    variation->add_option("--grid-points", v_grid_points, "comma-separated endpoints");
    variation->add_option("--N", v_N, "stage_f order");
    variation->add_option("--alpha1", v_alpha1, "stage_f Cesaro order");
    variation->add_option("--max-intervals", v_max_intervals);
    variation->add_option("--span-limit", v_span, "candidate endpoint span cap");
    variation->add_option("--out", v_out);
    variation->add_option("--witness-csv", v_witness_csv, "also export the witness as CSV");

    // converge
    auto* converge = app.add_subcommand("converge", "Cesaro mean convergence table");
    std::string c_fn = "jump", c_alphas = "-0.5", c_schedule = "diag:8:512",
                c_out = "converge.csv";
    int c_deg = 4;
    converge->add_option("--fn", c_fn, "const via trigpoly deg 0, jump, trigpoly")->required();
    converge->add_option("--deg", c_deg, "trigpoly degree");
    converge->add_option("--alphas", c_alphas, "comma-separated Cesaro orders (one per axis)");
    converge->add_option("--schedule", c_schedule, "diag:lo:hi or aniso:lo:hi:axis");
    converge->add_option("--out", c_out);

    // counterexample
    auto* cx = app.add_subcommand("counterexample", "diagonal divergence construction");
    cx->require_subcommand(1);
    auto* cx_build = cx->add_subcommand("build", "run the inductive construction");
    int x_m = 3, x_depth = 2;
    std::string x_alphas = "-0.3,-0.3,-0.3", x_out = "diagonal.json", x_spec, x_report;
    long long x_cap = 1LL << 20;
    cx_build->add_option("--m", x_m, "dimension, >= 3");
    cx_build->add_option("--alphas", x_alphas, "comma-separated, each in (-1, 0)");
    cx_build->add_option("--depth", x_depth, "stages to build");
    cx_build->add_option("--cap", x_cap, "upper bound for the stage orders N_s");
    cx_build->add_option("--out", x_out);
    auto* cx_verify = cx->add_subcommand("verify", "recompute certificates from a spec file");
    cx_verify->add_option("--spec", x_spec)->required();
    cx_verify->add_option("--out", x_report, "optional JSON report path");

    try {
        app.parse(argc, argv);
        if (kernel->parsed())
            return cmd_kernel(k_n, k_alpha, k_points, k_tmin, k_tmax, k_tol, k_out, seed);
        if (variation->parsed())
            return cmd_variation(v_fn, v_lambda, v_grid, v_grid_points, v_N, v_alpha1,
                                 v_max_intervals, v_span, v_out, v_witness_csv, seed);
        if (converge->parsed())
            return cmd_converge(c_fn, c_deg, c_alphas, c_schedule, c_out, seed);
        if (cx_build->parsed())
            return cmd_counterexample_build(x_m, x_alphas, x_depth, x_cap, x_out, seed);
        if (cx_verify->parsed()) return cmd_counterexample_verify(x_spec, x_report, seed);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::fprintf(stderr, "error: usage: %s\n", e.what());
        return 2;
    } catch (const QuadratureError& e) {
        std::fprintf(stderr, "error: numerical: %s\n", e.what());
        return 3;
    } catch (const ThresholdError& e) {
        std::fprintf(stderr, "error: numerical: %s\n", e.what());
        return 3;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: usage: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
