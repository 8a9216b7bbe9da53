#pragma once

#include <string>
#include <vector>

#include "qwass/gaussian.hpp"
#include "qwass/lindblad.hpp"
#include "qwass/types.hpp"

#include <json.hpp>

namespace qwass {

using json = nlohmann::json;

/// Complex matrix <-> { "dim": n, "re": [[...]], "im": [[...]] } (row-major).
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

/// { "sigma": operator, "terms": [{ "V": op, "omega": w, "adjoint": k }] }.
json generator_to_json(const LindbladGenerator& gen);
LindbladGenerator generator_from_json(const json& j,
                                      const NumericSettings& ns = {});

/// { "Sigma": [[...]], "mu": [...] }.
json gaussian_to_json(const GaussianState& s);
GaussianState gaussian_from_json(const json& j, double tol = 1e-10);

/// Fixed-format numeric text: 17 significant digits, '.' decimal point.
std::string format_number(double v);

/// CSV with LF line endings and format_number cells.
class CsvWriter {
 public:
  explicit CsvWriter(std::string path);
  void header(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  void close();

 private:
  std::string path_;
  std::string buffer_;
  bool closed_ = false;
};

/// Writes `j` to `path` atomically (temp file + rename).
void write_json_atomic(const std::string& path, const json& j);

}  // namespace qwass
