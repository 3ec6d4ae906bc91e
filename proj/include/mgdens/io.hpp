#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mgdens/distributions.hpp"
#include "mgdens/estimator.hpp"
#include "mgdens/inference.hpp"
#include "mgdens/minimax.hpp"
#include "mgdens/montecarlo.hpp"

namespace mgdens::io {

// Malformed input file; line is 1-based (0 when no line applies).
struct ParseError : std::runtime_error {
    std::size_t line = 0;
    ParseError(std::size_t line_, const std::string& what_)
        : std::runtime_error(what_), line(line_) {}
};

// %.17g: enough digits for exact double round-trips, so golden files and
// re-reads are stable.
std::string format_g17(double x);

// One numeric value per line, optional single header line "value".
std::vector<double> read_values_csv(const std::string& path);
void write_values_csv(const std::string& path, const std::vector<double>& values);

std::string estimate_to_csv(const DensityEstimate& est);
void write_estimate_csv(const std::string& path, const DensityEstimate& est);
std::string estimate_to_json(const DensityEstimate& est);

std::string inference_to_json(const InferenceResult& res);

std::string spec_to_json(const DistributionSpec& spec);
DistributionSpec spec_from_json(const std::string& text);

std::string report_to_json(const McConfig& cfg, const McReport& rep);
void write_report_per_n_csv(const std::string& path, const McReport& rep);
void write_report_errors_csv(const std::string& path, const McReport& rep);

std::string certificate_to_json(const MinimaxCertificate& cert);
std::string regularity_to_json(const DistributionSpec& spec, const RegularityReport& rep);

// JSON array [{"p": .., "q": ..}, ...]; both coordinates must be strictly
// increasing.
ChernoffApprox read_quantile_table(const std::string& path);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace mgdens::io
