// Copyright 2026 The ncmarkov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ncm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ncm/error.hpp"

#ifndef NCM_VERSION
#define NCM_VERSION "0.0.0"
#endif

namespace ncm::io {
namespace {

using Json = nlohmann::ordered_json;

int read_dim(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) {
    throw ShapeError(std::string("model: '") + key + "' must be an integer");
  }
  const auto v = doc[key].get<long long>();
  if (v < 1 || v > 1 << 20) throw ShapeError(std::string("model: '") + key + "' out of range");
  return static_cast<int>(v);
}

Complex read_pair(const Json& pair, const char* key) {
  if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
    throw ShapeError(std::string("model: entries of '") + key + "' must be [re, im] pairs");
  }
  return {pair[0].get<double>(), pair[1].get<double>()};
}

ComplexVector read_vector(const Json& doc, const char* key, Eigen::Index expected) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw ShapeError(std::string("model: '") + key + "' must be an array");
  }
  const Json& arr = doc[key];
  if (static_cast<Eigen::Index>(arr.size()) != expected) {
    throw ShapeError(std::string("model: '") + key + "' has " + std::to_string(arr.size()) +
                     " entries, expected " + std::to_string(expected));
  }
  ComplexVector v(expected);
  for (Eigen::Index i = 0; i < expected; ++i) v(i) = read_pair(arr[static_cast<std::size_t>(i)], key);
  return v;
}

void write_pair(std::ostringstream& out, Complex z) {
  out << '[' << format_real(z.real()) << ", " << format_real(z.imag()) << ']';
}

void write_vector(std::ostringstream& out, const char* key, const ComplexVector& v) {
  out << "  \"" << key << "\": [";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out << ", ";
    write_pair(out, v(i));
  }
  out << ']';
}

Json complex_matrix(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Json header_json(const Header& header) {
  Json config = Json::object();
  for (const auto& [k, v] : header.config) config[k] = v;
  return Json{{"tool", "ncmarkov"},
              {"version", tool_version()},
              {"command", header.command},
              {"seed", header.seed},
              {"config", std::move(config)}};
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

InteractionModel parse_model(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ShapeError(std::string("model: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ShapeError("model: top level must be an object");
  InteractionModel m;
  m.dim_h = read_dim(doc, "dim_h");
  m.dim_k = read_dim(doc, "dim_k");
  m.dim_p = read_dim(doc, "dim_p");
  if (m.dim_k != m.dim_p) {
    throw ShapeError("model: dim_k (" + std::to_string(m.dim_k) + ") != dim_p (" + std::to_string(m.dim_p) +
                     "): U cannot be unitary");
  }
  m.omega_h = read_vector(doc, "omega_h", m.dim_h);
  m.omega_k = read_vector(doc, "omega_k", m.dim_k);
  m.omega_p = read_vector(doc, "omega_p", m.dim_p);
  const Eigen::Index rows = Eigen::Index{m.dim_h} * m.dim_p;
  const Eigen::Index cols = Eigen::Index{m.dim_h} * m.dim_k;
  const ComplexVector flat = read_vector(doc, "u", rows * cols);
  m.u.resize(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m.u(i, j) = flat(i * cols + j);
  }
  return m;
}

InteractionModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ShapeError("cannot read model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string model_to_json(const InteractionModel& model) {
  std::ostringstream out;
  out << "{\n  \"dim_h\": " << model.dim_h << ",\n  \"dim_k\": " << model.dim_k
      << ",\n  \"dim_p\": " << model.dim_p << ",\n";
  write_vector(out, "omega_h", model.omega_h);
  out << ",\n";
  write_vector(out, "omega_k", model.omega_k);
  out << ",\n";
  write_vector(out, "omega_p", model.omega_p);
  out << ",\n  \"u\": [";
  for (Eigen::Index i = 0; i < model.u.rows(); ++i) {
    out << (i == 0 ? "\n    " : ",\n    ");
    for (Eigen::Index j = 0; j < model.u.cols(); ++j) {
      if (j > 0) out << ", ";
      write_pair(out, model.u(i, j));
    }
  }
  out << "\n  ]\n}\n";
  return out.str();
}

std::string tool_version() { return NCM_VERSION; }

std::string header_comment(const Header& header) {
  std::ostringstream out;
  out << "# tool: ncmarkov " << tool_version() << "\n# command: " << header.command
      << "\n# seed: " << header.seed << '\n';
  for (const auto& [k, v] : header.config) out << "# " << k << ": " << v << '\n';
  return out.str();
}

std::string validation_json(const Header& header, const ValidationReport& report) {
  Json violations = Json::array();
  for (const auto& v : report) violations.push_back({{"name", v.name}, {"defect", v.defect}});
  return dump(Json{{"header", header_json(header)}, {"valid", report.empty()}, {"violations", violations}});
}

std::string validation_table(const Header& header, const ValidationReport& report) {
  std::ostringstream out;
  out << header_comment(header);
  if (report.empty()) {
    out << "valid\n";
    return out.str();
  }
  out << "invalid\n";
  for (const auto& v : report) out << "  " << v.name << "  defect " << format_real(v.defect) << '\n';
  return out.str();
}

std::string coefficients_csv(const Header& header, const TransferSeries& series) {
  std::vector<double> partial(static_cast<std::size_t>(series.max_len) + 1);
  for (int n = 0; n <= series.max_len; ++n) partial[static_cast<std::size_t>(n)] = inner_defect(series, n);
  std::ostringstream out;
  out << header_comment(header) << "word,length,row,col,re,im,partial_defect\n";
  for (std::size_t i = 0; i < series.index.total(); ++i) {
    const Word w = series.index.word_at(i);
    const ComplexMatrix& c = series.coeffs[i];
    const std::string tail = "," + format_real(partial[w.size()]) + "\n";
    for (Eigen::Index r = 0; r < c.rows(); ++r) {
      for (Eigen::Index col = 0; col < c.cols(); ++col) {
        out << w.to_string() << ',' << w.size() << ',' << r << ',' << col << ',' << format_real(c(r, col).real())
            << ',' << format_real(c(r, col).imag()) << tail;
      }
    }
  }
  return out.str();
}

std::string records_csv(const Header& header, const RecordDistribution& dist) {
  std::ostringstream out;
  out << header_comment(header) << "word,probability\n";
  for (std::size_t i = 0; i < dist.words.size(); ++i) {
    out << dist.words[i].to_string() << ',' << format_real(dist.probabilities[i]) << '\n';
  }
  out << "residual," << format_real(dist.residual) << '\n';
  return out.str();
}

std::string diagnostics_json(const Header& header, const DiagnosticsReport& r) {
  Json inner = Json::array();
  for (const auto& e : r.inner_defects) inner.push_back({{"n", e.n}, {"defect", e.defect}, {"tail_bound", e.tail_bound}});
  return dump(Json{{"header", header_json(header)},
                   {"fixed_space_dim", r.fixed_space_dim},
                   {"ergodic", r.ergodic},
                   {"gramian", complex_matrix(r.gramian)},
                   {"gramian_defect", r.gramian_defect},
                   {"observable", r.observable},
                   {"stability_radius_estimate", r.stability_radius_estimate},
                   {"stable", r.stable},
                   {"inner_defects", inner},
                   {"consistent", r.consistent},
                   {"xfixed", complex_matrix(r.xfixed)},
                   {"gramian_min_eigenvalue", r.gramian_min_eigenvalue},
                   {"gramian_converged", r.gramian_converged},
                   {"xfixed_converged", r.xfixed_converged},
                   {"gramian_fixed_point_discrepancy", r.gramian_fixed_point_discrepancy},
                   {"indeterminate", r.indeterminate}});
}

std::string diagnostics_table(const Header& header, const DiagnosticsReport& r) {
  std::ostringstream out;
  out << header_comment(header);
  out << "ergodic      " << yes_no(r.ergodic) << "   fixed space dim " << r.fixed_space_dim << '\n';
  out << "observable   " << yes_no(r.observable) << "   gramian defect " << format_real(r.gramian_defect)
      << ", min eigenvalue " << format_real(r.gramian_min_eigenvalue) << '\n';
  out << "stable       " << yes_no(r.stable) << "   radius " << format_real(r.stability_radius_estimate) << '\n';
  for (const auto& e : r.inner_defects) {
    out << "inner defect N=" << e.n << "  " << format_real(e.defect) << "  (tail bound " << format_real(e.tail_bound)
        << ")\n";
  }
  out << "converged    " << yes_no(r.converged()) << '\n';
  out << "consistent   " << yes_no(r.consistent) << '\n';
  if (!r.indeterminate.empty()) {
    out << "indeterminate";
    for (const auto& name : r.indeterminate) out << ' ' << name;
    out << '\n';
  }
  return out.str();
}

std::string comparison_json(const Header& header, const Comparison& cmp, double tolerance, bool passed) {
  return dump(Json{{"header", header_json(header)},
                   {"max_discrepancy", cmp.max_discrepancy},
                   {"worst_word", cmp.worst_word},
                   {"words_checked", cmp.words_checked},
                   {"samples", cmp.samples},
                   {"tolerance", tolerance},
                   {"passed", passed}});
}

std::string scattering_json(const Header& header, const ScatteringDefects& d, double tolerance, bool passed) {
  return dump(Json{{"header", header_json(header)},
                   {"row_isometry", d.row_isometry},
                   {"vacuum_invariance", d.vacuum_invariance},
                   {"wandering_orthonormality", d.wandering_orthonormality},
                   {"wandering_span", d.wandering_span},
                   {"e_star_orthogonality", d.e_star_orthogonality},
                   {"e_star_span", d.e_star_span},
                   {"intertwining", d.intertwining},
                   {"w_norm_monotonicity", d.w_norm_monotonicity},
                   {"max", d.max()},
                   {"tolerance", tolerance},
                   {"passed", passed}});
}

}  // namespace ncm::io
