#include "qwass/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qwass {

json matrix_to_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rrow = json::array(), irow = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rrow.push_back(m(i, j).real());
      irow.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const json& j) {
  const Eigen::Index d = j.at("dim").get<Eigen::Index>();
  const json& re = j.at("re");
  const json& im = j.at("im");
  if (static_cast<Eigen::Index>(re.size()) != d ||
      static_cast<Eigen::Index>(im.size()) != d)
    throw size_error("matrix_from_json: row count does not match dim");
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (static_cast<Eigen::Index>(re[i].size()) != d ||
        static_cast<Eigen::Index>(im[i].size()) != d)
      throw size_error("matrix_from_json: column count does not match dim");
    for (Eigen::Index k = 0; k < d; ++k)
      m(i, k) = Complex(re[i][k].get<double>(), im[i][k].get<double>());
  }
  return m;
}

json generator_to_json(const LindbladGenerator& gen) {
  json terms = json::array();
  for (const JumpTerm& t : gen.terms)
    terms.push_back(json{{"V", matrix_to_json(t.v)},
                         {"omega", t.omega},
                         {"adjoint", t.adjoint_index}});
  return json{{"sigma", matrix_to_json(gen.sigma.mat)},
              {"terms", std::move(terms)}};
}

LindbladGenerator generator_from_json(const json& j,
                                      const NumericSettings& ns) {
  LindbladGenerator gen;
  gen.sigma = DensityOperator(matrix_from_json(j.at("sigma")),
                              TraceConvention::Standard, ns);
  for (const json& t : j.at("terms")) {
    JumpTerm term;
    term.v = matrix_from_json(t.at("V"));
    term.omega = t.at("omega").get<double>();
    term.adjoint_index = t.at("adjoint").get<int>();
    gen.terms.push_back(std::move(term));
  }
  return gen;
}

json gaussian_to_json(const GaussianState& s) {
  json sig = json::array();
  for (Eigen::Index i = 0; i < s.sigma.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < s.sigma.cols(); ++j)
      row.push_back(s.sigma(i, j));
    sig.push_back(std::move(row));
  }
  json mu = json::array();
  for (Eigen::Index i = 0; i < s.mu.size(); ++i) mu.push_back(s.mu[i]);
  return json{{"Sigma", std::move(sig)}, {"mu", std::move(mu)}};
}

GaussianState gaussian_from_json(const json& j, double tol) {
  const json& sig = j.at("Sigma");
  const Eigen::Index d = static_cast<Eigen::Index>(sig.size());
  RealMatrix sigma(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (static_cast<Eigen::Index>(sig[i].size()) != d)
      throw size_error("gaussian_from_json: Sigma is not square");
    for (Eigen::Index k = 0; k < d; ++k) sigma(i, k) = sig[i][k].get<double>();
  }
  const json& muj = j.at("mu");
  RealVector mu(static_cast<Eigen::Index>(muj.size()));
  for (Eigen::Index i = 0; i < mu.size(); ++i) mu[i] = muj[i].get<double>();
  return validate_gaussian(sigma, mu, tol);
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::string path) : path_(std::move(path)) {}

void CsvWriter::header(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += names[i];
  }
  buffer_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += format_number(values[i]);
  }
  buffer_ += '\n';
}

void CsvWriter::close() {
  if (closed_) return;
  std::ofstream out(path_, std::ios::binary);
  if (!out) throw std::runtime_error("CsvWriter: cannot open " + path_);
  out.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
  out.close();
  closed_ = true;
}

void write_json_atomic(const std::string& path, const json& j) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("write_json_atomic: cannot open " + tmp);
    out << j.dump(2) << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("write_json_atomic: rename to " + path +
                             " failed");
}

}  // namespace qwass
