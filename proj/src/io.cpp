#include "mgdens/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mgdens::io {

namespace {

using nlohmann::json;

std::string trimmed(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

json json_num(double x) {
    // null for NaN so reports stay valid JSON
    if (std::isnan(x)) return nullptr;
    return x;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open file: " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    return out;
}

json spec_json(const DistributionSpec& spec) {
    json j;
    j["family"] = spec.family_name();
    std::visit(
        [&](const auto& fam) {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                j["lo"] = fam.lo;
                j["hi"] = fam.hi;
            } else if constexpr (std::is_same_v<T, TruncExp>) {
                j["rate"] = fam.rate;
                j["lo"] = fam.lo;
                j["hi"] = fam.hi;
            } else if constexpr (std::is_same_v<T, PerturbedUniform>) {
                j["delta"] = fam.delta;
            } else {
                j["w"] = fam.w;
                j["lo1"] = fam.lo1;
                j["hi1"] = fam.hi1;
                j["lo2"] = fam.lo2;
                j["hi2"] = fam.hi2;
            }
        },
        spec.family());
    return j;
}

}  // namespace

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::vector<double> read_values_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string cell = trimmed(line);
        if (line_no == 1 && cell == "value") continue;
        double x = 0.0;
        if (!parse_double(cell, x))
            throw ParseError(line_no, "non-numeric row in " + path + ": \"" + cell + "\"");
        values.push_back(x);
    }
    return values;
}

void write_values_csv(const std::string& path, const std::vector<double>& values) {
    std::ofstream out = open_out(path);
    out << "value\n";
    for (double v : values) out << format_g17(v) << "\n";
}

std::string estimate_to_csv(const DensityEstimate& est) {
    std::string out = "v,f_hat,lambda_hat,F_n\n";
    for (std::size_t i = 0; i < est.grid.size(); ++i) {
        out += format_g17(est.grid[i]) + ',' + format_g17(est.f_hat[i]) + ',' +
               format_g17(est.lambda_hat[i]) + ',' + format_g17(est.F_n_vals[i]) + '\n';
    }
    return out;
}

void write_estimate_csv(const std::string& path, const DensityEstimate& est) {
    std::ofstream out = open_out(path);
    out << estimate_to_csv(est);
}

std::string estimate_to_json(const DensityEstimate& est) {
    json j;
    j["n"] = est.n;
    j["a"] = est.a;
    j["b"] = est.b;
    j["v"] = est.grid;
    j["f_hat"] = est.f_hat;
    j["lambda_hat"] = est.lambda_hat;
    j["F_n"] = est.F_n_vals;
    return j.dump(2) + "\n";
}

std::string inference_to_json(const InferenceResult& res) {
    json j;
    j["v"] = res.v;
    j["f_hat"] = res.f_hat;
    j["c_hat"] = res.c_hat;
    j["f_prime_hat"] = res.f_prime_hat;
    j["ci_lo"] = res.ci_lo;
    j["ci_hi"] = res.ci_hi;
    j["level"] = res.level;
    j["n"] = res.n;
    j["c_fallback"] = res.c_fallback;
    return j.dump(2) + "\n";
}

std::string spec_to_json(const DistributionSpec& spec) { return spec_json(spec).dump(2) + "\n"; }

DistributionSpec spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(0, std::string("invalid JSON: ") + e.what());
    }
    const std::string family = j.value("family", "");
    try {
        if (family == "uniform")
            return DistributionSpec{Uniform{j.at("lo").get<double>(), j.at("hi").get<double>()}};
        if (family == "trunc_exp")
            return DistributionSpec{TruncExp{j.at("rate").get<double>(), j.at("lo").get<double>(),
                                             j.at("hi").get<double>()}};
        if (family == "perturbed_uniform")
            return DistributionSpec{PerturbedUniform{j.at("delta").get<double>()}};
        if (family == "gap_mixture")
            return DistributionSpec{GapMixture{j.at("w").get<double>(), j.at("lo1").get<double>(),
                                               j.at("hi1").get<double>(), j.at("lo2").get<double>(),
                                               j.at("hi2").get<double>()}};
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("bad distribution spec: ") + e.what());
    }
    throw ParseError(0, "unknown family: \"" + family + "\"");
}

std::string report_to_json(const McConfig& cfg, const McReport& rep) {
    json j;
    j["spec"] = spec_json(cfg.spec);
    j["v"] = cfg.v;
    j["n_grid"] = cfg.n_grid;
    j["reps"] = cfg.reps;
    j["seed"] = cfg.seed;
    j["level"] = cfg.level;
    j["a"] = cfg.a;
    j["b"] = cfg.b;
    j["per_n"] = json::array();
    for (const auto& pn : rep.per_n) {
        json row;
        row["n"] = pn.n;
        row["mean_abs_err"] = json_num(pn.mean_abs_err);
        row["median_abs_err"] = json_num(pn.median_abs_err);
        row["sup_err_mean"] = json_num(pn.sup_err_mean);
        row["coverage"] = json_num(pn.coverage);
        row["failed"] = pn.failed;
        j["per_n"].push_back(row);
    }
    j["slope"] = json_num(rep.slope);
    j["slope_stderr"] = json_num(rep.slope_stderr);
    return j.dump(2) + "\n";
}

void write_report_per_n_csv(const std::string& path, const McReport& rep) {
    std::ofstream out = open_out(path);
    out << "n,mean_abs_err,median_abs_err,sup_err_mean,coverage,failed\n";
    auto cell = [](double x) { return std::isnan(x) ? std::string() : format_g17(x); };
    for (const auto& pn : rep.per_n) {
        out << pn.n << ',' << cell(pn.mean_abs_err) << ',' << cell(pn.median_abs_err) << ','
            << cell(pn.sup_err_mean) << ',' << cell(pn.coverage) << ',' << pn.failed << "\n";
    }
}

void write_report_errors_csv(const std::string& path, const McReport& rep) {
    std::ofstream out = open_out(path);
    out << "n,rep,error\n";
    for (const auto& pn : rep.per_n) {
        for (std::size_t i = 0; i < pn.errors.size(); ++i) {
            out << pn.n << ',' << i << ',' << format_g17(pn.errors[i]) << "\n";
        }
    }
}

std::string certificate_to_json(const MinimaxCertificate& cert) {
    json j;
    j["n"] = cert.n;
    j["delta"] = cert.delta;
    j["hellinger_sq"] = cert.hellinger_sq;
    j["bound"] = cert.bound;
    j["separation"] = cert.separation;
    j["psi_min"] = cert.psi_min;
    j["lower_bound_constant"] = minimax_lower_bound_constant();
    return j.dump(2) + "\n";
}

std::string regularity_to_json(const DistributionSpec& spec, const RegularityReport& rep) {
    json j;
    j["spec"] = spec_json(spec);
    j["is_regular"] = rep.is_regular;
    j["min_psi"] = rep.min_psi;
    j["argmin_v"] = rep.argmin_v;
    j["grid_size"] = rep.grid_size;
    return j.dump(2) + "\n";
}

ChernoffApprox read_quantile_table(const std::string& path) {
    std::ifstream in = open_in(path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError(0, std::string("invalid quantile table JSON: ") + e.what());
    }
    if (!j.is_array() || j.empty()) throw ParseError(0, "quantile table must be a nonempty array");

    ChernoffApprox approx;
    std::size_t row_no = 0;
    for (const auto& row : j) {
        ++row_no;
        if (!row.is_object() || !row.contains("p") || !row.contains("q"))
            throw ParseError(row_no, "quantile table rows need fields p and q");
        const double p = row["p"].get<double>();
        const double q = row["q"].get<double>();
        if (!(p > 0.0 && p < 1.0)) throw ParseError(row_no, "quantile table p outside (0, 1)");
        if (!approx.table.empty() &&
            (p <= approx.table.back().first || q <= approx.table.back().second))
            throw ParseError(row_no, "quantile table must be strictly increasing in p and q");
        approx.table.emplace_back(p, q);
    }
    return approx;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out = open_out(path);
    out << text;
}

}  // namespace mgdens::io
