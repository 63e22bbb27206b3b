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

#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ncm/error.hpp"
#include "ncm/io.hpp"
#include "ncm/markov.hpp"
#include "ncm/model.hpp"
#include "ncm/scattering.hpp"
#include "ncm/transfer.hpp"

namespace ncm::cli {
namespace {

struct RunConfig {
  std::string command;
  std::string model_path;
  std::string generator;
  std::string dims = "2,2,2";
  int max_len = 6;
  int slots = 6;
  int samples = 20;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string format;
  std::string out_path;
  bool records = false;
  std::string inject_fault;
};

Dims parse_dims(const std::string& text) {
  Dims d;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> d.h >> c1 >> d.k >> c2 >> d.p) || c1 != ',' || c2 != ',' || !(in >> std::ws).eof()) {
    throw ShapeError("--dims expects H,K,P (got '" + text + "')");
  }
  return d;
}

InteractionModel load(const RunConfig& cfg) {
  if (cfg.model_path.empty() == cfg.generator.empty()) {
    throw ShapeError("give exactly one of --model FILE or --generate KIND[:PARAMS]");
  }
  if (!cfg.model_path.empty()) return io::load_model(cfg.model_path);
  return generate(GeneratorSpec::parse(cfg.generator), parse_dims(cfg.dims));
}

io::Header header_for(const RunConfig& cfg) {
  io::Header h;
  h.command = cfg.command;
  h.seed = cfg.seed;
  if (!cfg.model_path.empty()) {
    h.config.emplace_back("model", cfg.model_path);
  } else {
    h.config.emplace_back("generate", cfg.generator);
    h.config.emplace_back("dims", cfg.dims);
  }
  h.config.emplace_back("max_len", std::to_string(cfg.max_len));
  h.config.emplace_back("slots", std::to_string(cfg.slots));
  h.config.emplace_back("samples", std::to_string(cfg.samples));
  h.config.emplace_back("tol", cfg.tol ? io::format_real(*cfg.tol) : "default");
  h.config.emplace_back("format", cfg.format);
  if (cfg.records) h.config.emplace_back("records", "true");
  return h;
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (cfg.format == f) return;
  }
  throw ShapeError("format '" + cfg.format + "' is not available for " + cfg.command);
}

// Returns false (after reporting) when the model violates its axioms.
bool check_model(const InteractionModel& model, std::ostream& err) {
  const ValidationReport report = validate(model);
  if (report.empty()) return true;
  err << "error: model is invalid:";
  for (const auto& v : report) err << ' ' << v.name << " (" << io::format_real(v.defect) << ')';
  err << '\n';
  return false;
}

int cmd_validate(const RunConfig& cfg, std::string& text, std::ostream&) {
  require_format(cfg, {"json", "table"});
  Tolerances tol;
  if (cfg.tol) tol.validation = *cfg.tol;
  const ValidationReport report = validate(load(cfg), tol);
  text = cfg.format == "json" ? io::validation_json(header_for(cfg), report)
                              : io::validation_table(header_for(cfg), report);
  return report.empty() ? kOk : kViolation;
}

int cmd_transfer(const RunConfig& cfg, std::string& text, std::ostream& err) {
  require_format(cfg, {"csv"});
  const InteractionModel model = load(cfg);
  if (!check_model(model, err)) return kViolation;
  const TransferSeries s = series(extract_colligation(model, canonical_frame(model)), cfg.max_len);
  if (!cfg.records) {
    text = io::coefficients_csv(header_for(cfg), s);
    return kOk;
  }
  const ComplexVector eta = s.dim_u > 0 ? random_unit_vector(s.dim_u, cfg.seed) : ComplexVector();
  RecordDistribution dist;
  double captured = 0.0;
  for (std::size_t i = 0; i < s.index.total(); ++i) {
    dist.words.push_back(s.index.word_at(i));
    dist.probabilities.push_back(record_probability(s, eta, dist.words.back()));
    captured += dist.probabilities.back();
  }
  dist.residual = eta.squaredNorm() - captured;
  text = io::records_csv(header_for(cfg), dist);
  return kOk;
}

int cmd_diagnose(const RunConfig& cfg, std::string& text, std::ostream& err) {
  require_format(cfg, {"json", "table"});
  const InteractionModel model = load(cfg);
  if (!check_model(model, err)) return kViolation;
  DiagnoseOptions opt;
  if (cfg.tol) opt.tol.verdict = *cfg.tol;
  const DiagnosticsReport r = diagnose(model, opt);
  text = cfg.format == "json" ? io::diagnostics_json(header_for(cfg), r) : io::diagnostics_table(header_for(cfg), r);
  if (!r.consistent) {
    err << "error: verdicts are inconsistent\n";
    return kViolation;
  }
  if (!r.indeterminate.empty() || !r.converged()) {
    err << "warning: indeterminate result\n";
    return kIndeterminate;
  }
  return kOk;
}

int cmd_compare(const RunConfig& cfg, std::string& text, std::ostream& err) {
  require_format(cfg, {"json"});
  const InteractionModel model = load(cfg);
  if (!check_model(model, err)) return kViolation;
  if (cfg.slots < 1) throw ShapeError("--slots must be >= 1");
  check_amplitude_guard(model.dim_h, model.dim_k, cfg.slots);
  TransferSeries s = series(extract_colligation(model, canonical_frame(model)), cfg.slots - 1);
  if (!cfg.inject_fault.empty()) {
    const Word w = Word::parse(cfg.inject_fault);
    if (static_cast<int>(w.size()) > s.max_len) throw ShapeError("--inject-fault word is longer than the series");
    ComplexMatrix& c = s.coeffs[s.index.index_of(w)];
    if (c.size() > 0) c(0, 0) += 1e-3;
  }
  const double tol = cfg.tol.value_or(1e-9);
  const Comparison cmp = compare_with_simulation(model, canonical_frame(model), s, cfg.slots, cfg.samples, cfg.seed);
  const bool passed = cmp.max_discrepancy <= tol;
  text = io::comparison_json(header_for(cfg), cmp, tol, passed);
  if (!passed) {
    err << "error: discrepancy " << io::format_real(cmp.max_discrepancy) << " at word " << cmp.worst_word << '\n';
    return kViolation;
  }
  return kOk;
}

int cmd_scatter(const RunConfig& cfg, std::string& text, std::ostream& err) {
  require_format(cfg, {"json"});
  const InteractionModel model = load(cfg);
  if (!check_model(model, err)) return kViolation;
  const double tol = cfg.tol.value_or(1e-10);
  const ScatteringDefects d = scattering_axioms_check(model, cfg.slots, cfg.samples, cfg.seed);
  const bool passed = d.max() <= tol;
  text = io::scattering_json(header_for(cfg), d, tol, passed);
  if (!passed) {
    err << "error: scattering defect " << io::format_real(d.max()) << " above " << io::format_real(tol) << '\n';
    return kViolation;
  }
  return kOk;
}

int cmd_generate(const RunConfig& cfg, std::string& text, std::ostream&) {
  require_format(cfg, {"json"});
  if (cfg.generator.empty() || !cfg.model_path.empty()) throw ShapeError("generate needs --generate and no --model");
  text = io::model_to_json(load(cfg));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Repeated quantum interactions as multidimensional linear systems", "ncmarkov"};
  app.require_subcommand(1);

  const auto add_common = [&cfg](CLI::App* sub, bool slots) {
    auto* model = sub->add_option("--model", cfg.model_path, "Model JSON file");
    auto* gen = sub->add_option("--generate", cfg.generator, "identity | swap | partial_swap:THETA | random:SEED");
    model->excludes(gen);
    sub->add_option("--dims", cfg.dims, "H,K,P for --generate")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Seed for every random draw")->capture_default_str();
    sub->add_option("--tol", cfg.tol, "Tolerance override");
    sub->add_option("--format", cfg.format, "json | csv | table");
    sub->add_option("--out", cfg.out_path, "Write the report here instead of stdout");
    if (slots) {
      sub->add_option("--slots", cfg.slots, "Simulated slots")->capture_default_str()->check(CLI::PositiveNumber);
      sub->add_option("--samples", cfg.samples, "Random samples")->capture_default_str()->check(CLI::PositiveNumber);
    }
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check the model axioms");
  add_common(validate_cmd, false);
  auto* transfer_cmd = app.add_subcommand("transfer", "Transfer coefficients or record probabilities as CSV");
  add_common(transfer_cmd, false);
  transfer_cmd->add_option("--max-len", cfg.max_len, "Longest word")->capture_default_str()->check(CLI::NonNegativeNumber);
  transfer_cmd->add_flag("--records", cfg.records, "Record probabilities for a seeded random input");
  auto* diagnose_cmd = app.add_subcommand("diagnose", "Ergodicity, observability and stability verdicts");
  add_common(diagnose_cmd, false);
  auto* compare_cmd = app.add_subcommand("compare", "Transfer function against the chain simulation");
  add_common(compare_cmd, true);
  compare_cmd->add_option("--inject-fault", cfg.inject_fault)->group("");
  auto* scatter_cmd = app.add_subcommand("scatter", "Scattering structure defects");
  add_common(scatter_cmd, true);
  auto* generate_cmd = app.add_subcommand("generate", "Write a generated model as JSON");
  add_common(generate_cmd, false);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  if (cfg.format.empty()) cfg.format = cfg.command == "transfer" ? "csv" : "json";

  std::string text;
  int code = kOk;
  try {
    if (cfg.command == "validate") {
      code = cmd_validate(cfg, text, err);
    } else if (cfg.command == "transfer") {
      code = cmd_transfer(cfg, text, err);
    } else if (cfg.command == "diagnose") {
      code = cmd_diagnose(cfg, text, err);
    } else if (cfg.command == "compare") {
      code = cmd_compare(cfg, text, err);
    } else if (cfg.command == "scatter") {
      code = cmd_scatter(cfg, text, err);
    } else {
      code = cmd_generate(cfg, text, err);
    }
  } catch (const GuardError& e) {
    err << "error: " << e.what() << '\n';
    return kGuard;
  } catch (const ShapeError& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kViolation;
  }

  if (cfg.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!(file << text)) {
      err << "error: cannot write '" << cfg.out_path << "'\n";
      return kMalformed;
    }
  }
  return code;
}

}  // namespace ncm::cli
