// mgdens: shape-constrained density estimation for second-price auction
// valuations. Estimation, confidence intervals, simulation experiments and
// the two-point risk-bound certificate, all seed-reproducible.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mgdens/distributions.hpp"
#include "mgdens/estimator.hpp"
#include "mgdens/inference.hpp"
#include "mgdens/io.hpp"
#include "mgdens/minimax.hpp"
#include "mgdens/montecarlo.hpp"

namespace {

using namespace mgdens;

// Exit codes: 0 success, 2 usage/parse, 3 insufficient data,
// 4 invalid parameter, 5 internal failure.
enum ExitCode : int { kOk = 0, kUsage = 2, kInsufficientData = 3, kInvalidParam = 4, kInternal = 5 };

struct FamilyFlags {
    std::string family = "uniform";
    double lo = 0.0, hi = 1.0;
    double rate = 1.0;
    double delta = 0.1;
    double w = 0.5, lo1 = 0.0, hi1 = 0.1, lo2 = 0.9, hi2 = 1.0;
};

void add_family_flags(CLI::App* cmd, FamilyFlags& ff) {
    cmd->add_option("--family", ff.family, "uniform | trunc_exp | perturbed_uniform | gap_mixture")
        ->required();
    cmd->add_option("--lo", ff.lo, "support lower end (uniform, trunc_exp)");
    cmd->add_option("--hi", ff.hi, "support upper end (uniform, trunc_exp)");
    cmd->add_option("--rate", ff.rate, "trunc_exp rate");
    cmd->add_option("--delta", ff.delta, "perturbed_uniform perturbation height");
    cmd->add_option("--w", ff.w, "gap_mixture weight of the first block");
    cmd->add_option("--lo1", ff.lo1);
    cmd->add_option("--hi1", ff.hi1);
    cmd->add_option("--lo2", ff.lo2);
    cmd->add_option("--hi2", ff.hi2);
}

DistributionSpec make_spec(const FamilyFlags& ff) {
    if (ff.family == "uniform") return DistributionSpec{Uniform{ff.lo, ff.hi}};
    if (ff.family == "trunc_exp") return DistributionSpec{TruncExp{ff.rate, ff.lo, ff.hi}};
    if (ff.family == "perturbed_uniform") return DistributionSpec{PerturbedUniform{ff.delta}};
    if (ff.family == "gap_mixture")
        return DistributionSpec{GapMixture{ff.w, ff.lo1, ff.hi1, ff.lo2, ff.hi2}};
    throw std::invalid_argument("unknown family: " + ff.family);
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        io::write_text_file(out_path, text);
    }
}

ValueSample load_sample(const std::string& path) {
    auto values = io::read_values_csv(path);
    if (values.empty()) throw InsufficientDataError("input file has no data rows: " + path);
    return ValueSample::from_unsorted(std::move(values));
}

std::pair<double, double> resolve_interval(const ValueSample& s, std::optional<double> a,
                                           std::optional<double> b) {
    const auto dflt = default_interval(s);
    const double lo = a.value_or(dflt.first);
    const double hi = b.value_or(dflt.second);
    if (!(lo < hi)) throw std::invalid_argument("invalid interval: requires --a < --b");
    return {lo, hi};
}

int run(int argc, char** argv) {
    CLI::App app{"Tuning-parameter-free density estimation for second-price auction valuations"};
    app.require_subcommand(1);

    // estimate
    auto* est_cmd = app.add_subcommand("estimate", "Estimate the valuation density from a CSV of values");
    std::string est_in, est_out, est_format = "csv";
    std::optional<double> est_a, est_b;
    std::size_t est_grid_points = 257;
    est_cmd->add_option("--in", est_in, "input CSV, one value per line")->required();
    est_cmd->add_option("--out", est_out, "output path (default: stdout)");
    est_cmd->add_option("--format", est_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    est_cmd->add_option("--a", est_a, "working interval lower end (default: 5% quantile)");
    est_cmd->add_option("--b", est_b, "working interval upper end (default: 95% quantile)");
    est_cmd->add_option("--grid-points", est_grid_points, "evaluation grid size")->check(CLI::PositiveNumber);

    // infer
    auto* inf_cmd = app.add_subcommand("infer", "Confidence interval for f(v) at a point");
    std::string inf_in, inf_out, inf_table;
    double inf_v = 0.0, inf_level = 0.95;
    std::optional<double> inf_a, inf_b;
    inf_cmd->add_option("--in", inf_in, "input CSV, one value per line")->required();
    inf_cmd->add_option("--v", inf_v, "evaluation point")->required();
    inf_cmd->add_option("--level", inf_level, "confidence level (default 0.95)");
    inf_cmd->add_option("--quantile-table", inf_table, "JSON table of pivot quantiles");
    inf_cmd->add_option("--a", inf_a);
    inf_cmd->add_option("--b", inf_b);
    inf_cmd->add_option("--out", inf_out, "output path (default: stdout)");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Draw a reproducible sample from a built-in family");
    FamilyFlags sim_ff;
    std::string sim_out;
    std::size_t sim_n = 1000;
    std::uint64_t sim_seed = 1;
    add_family_flags(sim_cmd, sim_ff);
    sim_cmd->add_option("--n", sim_n, "sample size")->required();
    sim_cmd->add_option("--seed", sim_seed, "RNG seed");
    sim_cmd->add_option("--out", sim_out, "output CSV path")->required();

    // rate / coverage share their configuration
    FamilyFlags rate_ff, cov_ff;
    McConfig base_cfg{DistributionSpec{Uniform{0.0, 1.0}}};
    auto add_mc_flags = [&](CLI::App* cmd, FamilyFlags& ff, McConfig& cfg, std::string& out,
                            std::string& per_n_csv, std::string& errors_csv) {
        add_family_flags(cmd, ff);
        cmd->add_option("--v", cfg.v, "evaluation point");
        cmd->add_option("--n-grid", cfg.n_grid, "comma-separated sample sizes")
            ->required()
            ->delimiter(',');
        cmd->add_option("--reps", cfg.reps, "replications per sample size");
        cmd->add_option("--seed", cfg.seed, "experiment seed");
        cmd->add_option("--level", cfg.level, "confidence level (coverage)");
        cmd->add_option("--a", cfg.a, "estimation interval lower end");
        cmd->add_option("--b", cfg.b, "estimation interval upper end");
        cmd->add_option("--out", out, "JSON report path (default: stdout)");
        cmd->add_option("--per-n-csv", per_n_csv, "per-n statistics CSV for log-log plots");
        cmd->add_option("--errors-csv", errors_csv, "per-replication error CSV");
    };
    auto* rate_cmd = app.add_subcommand("rate", "Monte Carlo error decay across sample sizes");
    std::string rate_out, rate_per_n, rate_errors;
    McConfig rate_cfg = base_cfg;
    add_mc_flags(rate_cmd, rate_ff, rate_cfg, rate_out, rate_per_n, rate_errors);

    auto* cov_cmd = app.add_subcommand("coverage", "Monte Carlo confidence-interval coverage");
    std::string cov_out, cov_per_n, cov_errors;
    McConfig cov_cfg = base_cfg;
    add_mc_flags(cov_cmd, cov_ff, cov_cfg, cov_out, cov_per_n, cov_errors);

    // minimax
    auto* mm_cmd = app.add_subcommand("minimax", "Two-point risk lower-bound certificate");
    std::size_t mm_n = 1000;
    std::string mm_out;
    mm_cmd->add_option("--n", mm_n, "sample size")->required();
    mm_cmd->add_option("--out", mm_out, "output path (default: stdout)");

    // regularity
    auto* reg_cmd = app.add_subcommand("regularity", "Check the shape restriction for a family");
    FamilyFlags reg_ff;
    std::size_t reg_grid = 10001;
    double reg_tol = 1e-9;
    std::string reg_out;
    add_family_flags(reg_cmd, reg_ff);
    reg_cmd->add_option("--grid-size", reg_grid);
    reg_cmd->add_option("--tol", reg_tol);
    reg_cmd->add_option("--out", reg_out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (est_cmd->parsed()) {
        const ValueSample s = load_sample(est_in);
        const auto [a, b] = resolve_interval(s, est_a, est_b);
        const DensityEstimate est = estimate_density(s, a, b, uniform_grid(a, b, est_grid_points));
        emit(est_out, est_format == "json" ? io::estimate_to_json(est) : io::estimate_to_csv(est));
    } else if (inf_cmd->parsed()) {
        const ValueSample s = load_sample(inf_in);
        const auto [a, b] = resolve_interval(s, inf_a, inf_b);
        ChernoffApprox approx;
        if (!inf_table.empty()) approx = io::read_quantile_table(inf_table);
        const InferenceResult res = confidence_interval(s, inf_v, inf_level, approx, a, b);
        emit(inf_out, io::inference_to_json(res));
    } else if (sim_cmd->parsed()) {
        const ValueSample s = sample(make_spec(sim_ff), sim_n, sim_seed);
        io::write_values_csv(sim_out, s.values);
    } else if (rate_cmd->parsed() || cov_cmd->parsed()) {
        const bool is_rate = rate_cmd->parsed();
        McConfig cfg = is_rate ? rate_cfg : cov_cfg;
        cfg.spec = make_spec(is_rate ? rate_ff : cov_ff);
        const McReport rep =
            is_rate ? run_rate_experiment(cfg) : run_coverage_experiment(cfg);
        const std::string& out = is_rate ? rate_out : cov_out;
        const std::string& per_n = is_rate ? rate_per_n : cov_per_n;
        const std::string& errors = is_rate ? rate_errors : cov_errors;
        emit(out, io::report_to_json(cfg, rep));
        if (!per_n.empty()) io::write_report_per_n_csv(per_n, rep);
        if (!errors.empty()) io::write_report_errors_csv(errors, rep);
    } else if (mm_cmd->parsed()) {
        emit(mm_out, io::certificate_to_json(build_certificate(mm_n)));
    } else if (reg_cmd->parsed()) {
        const DistributionSpec spec = make_spec(reg_ff);
        emit(reg_out, io::regularity_to_json(spec, check_regularity(spec, reg_grid, reg_tol)));
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const io::ParseError& e) {
        std::cerr << "error";
        if (e.line > 0) std::cerr << " (line " << e.line << ")";
        std::cerr << ": " << e.what() << "\n";
        return kUsage;
    } catch (const InsufficientDataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInsufficientData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidParam;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidParam;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}
