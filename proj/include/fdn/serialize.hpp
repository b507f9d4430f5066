#pragma once

#include "fdn/model.hpp"
#include "fdn/region.hpp"
#include "fdn/unilossless.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace fdn {

// Input-file diagnostics carry "path:line:col: message".
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Matrix files: JSON {"n": N, "entries": [[re, im], ...]} in row-major
// order, or plain-text CSV of complex tokens like "0.5-0.25j" (one matrix
// row per line). System files additionally carry "A", "b", "c", "d", "m";
// load_matrix accepts those too and returns the feedback matrix.
Mat load_matrix(const std::string& path);
FdnSystem load_system(const std::string& path);

nlohmann::json matrix_to_json(const Mat& a);
nlohmann::json system_to_json(const FdnSystem& sys);
FdnSystem system_from_json(const nlohmann::json& j);
Mat matrix_from_json(const nlohmann::json& j);

void save_json(const nlohmann::json& j, const std::string& path);

// Machine-readable certification report: verdict, per-block Perron
// diagnostics and certificates, the decomposition, tolerances, and the
// eigenvalue magnitudes of A.
nlohmann::json report_to_json(const Mat& a, const UnilosslessReport& report);

// Re-checks the certificates carried by a report against a matrix,
// independently of the code that produced them. Returns the largest
// relative residual ||A_blk E A_blk^H - E||_F / ||E||_F over the certified
// blocks; throws when the report shape does not match the matrix.
double recheck_certificates(const Mat& a, const nlohmann::json& report);

// CSV polyline "theta_rad,radius,a11_re,a11_im" with a header row.
std::string region_csv(const std::vector<BoundaryPoint>& points);

// Complex scalar from a token such as "1.5", "-2j", "0.5-0.25j".
Cplx parse_complex_token(const std::string& token);

}  // namespace fdn
