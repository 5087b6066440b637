// Command line surface for the quarter-scale Bernoulli transform library:
// point evaluation with certified error, spectral-set checks, operator
// checks, and reproducible grid tables.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or config error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cantor4/cantor4.hpp"

namespace {

using nlohmann::json;

constexpr double cross_check_bound = 1e-10;

struct GridFlags {
  double from = -2.0;
  double to = 2.0;
  double step = 0.01;
};

void add_grid_flags(CLI::App* cmd, GridFlags& g) {
  cmd->add_option("--from", g.from, "Grid start")->capture_default_str();
  cmd->add_option("--to", g.to, "Grid end")->capture_default_str();
  cmd->add_option("--step", g.step, "Grid step")->capture_default_str();
}

// Output sink: stdout by default, file when --out is given.  Files are
// opened in binary mode so line endings are LF on every platform.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::out | std::ios::binary | std::ios::trunc);
      if (!file_) throw std::invalid_argument("cannot open output path: " + path);
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_ = &std::cout;
};

cantor4::DigitSystem make_system(const std::string& set, std::int64_t p) {
  if (set == "canonical") return cantor4::canonical();
  if (set == "scaled") return cantor4::scaled(p);
  if (set == "additive") return cantor4::additive(p);
  throw std::invalid_argument("unknown set: " + set);
}

std::string report_line(const cantor4::CheckReport& r) {
  std::string line = r.pass ? "PASS " : "FAIL ";
  line += r.check_name;
  for (const auto& [k, v] : r.parameters) line += " " + k + "=" + std::to_string(v);
  if (!r.pass) {
    if (r.counterexample)
      line += " counterexample=(" + std::to_string(r.counterexample->first) + ", " +
              std::to_string(r.counterexample->second) + ")";
    line += ": " + r.details;
  }
  return line;
}

int run_eval(double t, int factors, const std::string& format) {
  const cantor4::ProductConfig cfg{factors, std::max(1.0, std::abs(t))};
  const double value = cantor4::transform_product(t, cfg);
  const double bound = cantor4::tail_bound(cfg);

  const int atom_level = std::min(factors, 16);
  const double atom_value = cantor4::transform_atoms(t, atom_level);
  const cantor4::ProductConfig atom_cfg{atom_level, cfg.domain_radius};
  const double cross_diff = std::abs(atom_value - cantor4::transform_product(t, atom_cfg));
  const bool cross_pass = cross_diff < cross_check_bound;

  const double rounded = std::nearbyint(t);
  const bool integral = t == rounded && std::abs(t) < 1e15;
  bool integer_zero = false;
  if (integral && rounded != 0.0)
    integer_zero = cantor4::is_transform_zero(cantor4::Frequency(static_cast<std::int64_t>(rounded)));

  if (format == "json") {
    json j{{"t", t},
           {"factors", factors},
           {"value", value},
           {"tailBound", bound},
           {"atomLevel", atom_level},
           {"atomValue", atom_value},
           {"crossDifference", cross_diff},
           {"crossPass", cross_pass}};
    if (integral) j["integerZero"] = integer_zero;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "t           = " << cantor4::format_sig12(t) << "\n"
              << "factors     = " << factors << "\n"
              << "value       = " << cantor4::format_sig12(value) << "\n"
              << "tail bound  = " << cantor4::format_sig12(bound) << "\n";
    if (integral)
      std::cout << "integer zero = " << (integer_zero ? "true" : "false") << "\n";
    std::cout << "atom oracle  = " << cantor4::format_sig12(atom_value) << " (level "
              << atom_level << "), diff " << cantor4::format_sig12(cross_diff) << " -> "
              << (cross_pass ? "PASS" : "FAIL") << "\n";
  }
  return cross_pass ? 0 : 1;
}

int run_figure(const GridFlags& g, int level, int factors, const std::string& out,
               const std::string& format) {
  const cantor4::GridSpec grid(g.from, g.to, g.step);
  const double t_max = std::max(std::abs(g.from), std::abs(g.to));
  const cantor4::ProductConfig cfg{factors,
                                   cantor4::required_radius_residue(level, 1, t_max)};
  const cantor4::SpectralSample sample =
      cantor4::sample_grid({"c0", "c1"}, grid, level, cfg);

  Sink sink(out);
  if (format == "json")
    sink.stream() << cantor4::to_json(sample).dump(2) << "\n";
  else
    cantor4::write_csv(sink.stream(), sample);
  return 0;
}

int run_check_spectrum(const std::string& set, std::int64_t p, int level, int factors,
                       const GridFlags& g, double max_deficiency, bool include_elements,
                       const std::string& format) {
  const cantor4::DigitSystem ds = make_system(set, p);
  const cantor4::LevelSet elements = cantor4::enumerate_level(ds, level);
  const cantor4::CheckReport orth = cantor4::orthogonality_check(elements);

  const cantor4::GridSpec grid(g.from, g.to, g.step);
  const double t_max = std::max(std::abs(g.from), std::abs(g.to));
  const cantor4::ProductConfig cfg{factors, cantor4::required_radius(elements, t_max)};
  const cantor4::DefectReport defect = cantor4::completeness_defect(ds, grid, level, cfg);
  const double overshoot_allowed = cantor4::bessel_slack(elements.size(), cfg);
  const bool completeness_pass =
      defect.max_deficiency <= max_deficiency && defect.max_overshoot <= overshoot_allowed;

  if (format == "json") {
    json completeness = cantor4::to_json(defect);
    completeness["maxDeficiencyAllowed"] = max_deficiency;
    completeness["maxOvershootAllowed"] = overshoot_allowed;
    completeness["pass"] = completeness_pass;
    json j{{"orthogonality", cantor4::to_json(orth)}, {"completeness", completeness}};
    if (include_elements) j["elements"] = cantor4::to_json(elements);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << report_line(orth) << "\n"
              << (completeness_pass ? "PASS" : "FAIL") << " completeness "
              << ds.label() << " m=" << level
              << " deficiency=" << cantor4::format_sig12(defect.max_deficiency)
              << " (allowed " << cantor4::format_sig12(max_deficiency) << ")"
              << " overshoot=" << cantor4::format_sig12(defect.max_overshoot)
              << " (allowed " << cantor4::format_sig12(overshoot_allowed) << ")\n";
  }
  return (orth.pass && completeness_pass) ? 0 : 1;
}

int run_check_operators(std::int64_t p, int level, const std::string& format) {
  const std::vector<cantor4::CheckReport> reports{
      cantor4::cuntz_relations_check(level),
      cantor4::dilation_commutation_check(p, level),
      cantor4::additive_exchange_bijection_check(p, level),
      cantor4::invariance_check(level),
  };
  bool all_pass = true;
  for (const auto& r : reports) all_pass = all_pass && r.pass;

  if (format == "json") {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(cantor4::to_json(r));
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const auto& r : reports) std::cout << report_line(r) << "\n";
  }
  return all_pass ? 0 : 1;
}

int run_enumerate(const std::string& set, std::int64_t p, int level, const std::string& out) {
  const cantor4::LevelSet elements =
      cantor4::enumerate_level(make_system(set, p), level);
  Sink sink(out);
  sink.stream() << cantor4::to_json(elements).dump() << "\n";
  return 0;
}

void require_odd_flag(std::int64_t p) {
  if (p < 1 || p % 2 == 0)
    throw CLI::ValidationError("--p", "p must be an odd positive integer, got " +
                                          std::to_string(p));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transform of the quarter-scale Bernoulli measure: evaluation, "
               "spectral-set checks, operator checks, grid tables"};
  app.require_subcommand(1);

  // eval-mu
  double eval_t = 0.0;
  int eval_factors = 16;
  std::string eval_format = "text";
  CLI::App* eval_cmd =
      app.add_subcommand("eval-mu", "Evaluate the transform with a certified tail bound");
  eval_cmd->add_option("--t", eval_t, "Evaluation point")->required();
  eval_cmd->add_option("--factors", eval_factors, "Retained product factors")
      ->capture_default_str();
  eval_cmd->add_option("--format", eval_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  // figure1
  GridFlags fig_grid;
  int fig_level = 7;
  int fig_factors = 16;
  std::string fig_out;
  std::string fig_format = "csv";
  CLI::App* fig_cmd = app.add_subcommand(
      "figure1", "Emit the residue components c0, c1 and their sum on a grid");
  add_grid_flags(fig_cmd, fig_grid);
  fig_cmd->add_option("--m", fig_level, "Level of the frequency set")->capture_default_str();
  fig_cmd->add_option("--factors", fig_factors, "Retained product factors")
      ->capture_default_str();
  fig_cmd->add_option("--out", fig_out, "Output path (default stdout)");
  fig_cmd->add_option("--format", fig_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // check-spectrum
  std::string spec_set = "canonical";
  std::int64_t spec_p = 1;
  int spec_level = 12;
  int spec_factors = 20;
  GridFlags spec_grid;
  double spec_max_deficiency = 1e-3;
  bool spec_include_elements = false;
  std::string spec_format = "json";
  CLI::App* spec_cmd = app.add_subcommand(
      "check-spectrum", "Exact pairwise orthogonality plus completeness defect of a level set");
  spec_cmd->add_option("--set", spec_set, "canonical, scaled, or additive")
      ->check(CLI::IsMember({"canonical", "scaled", "additive"}))
      ->capture_default_str();
  spec_cmd->add_option("--p", spec_p, "Odd scaling parameter")->capture_default_str();
  spec_cmd->add_option("--m", spec_level, "Level of the frequency set")->capture_default_str();
  spec_cmd->add_option("--factors", spec_factors, "Retained product factors")
      ->capture_default_str();
  add_grid_flags(spec_cmd, spec_grid);
  spec_cmd->add_option("--max-deficiency", spec_max_deficiency,
                       "Completeness deficiency threshold")
      ->capture_default_str();
  spec_cmd->add_flag("--include-elements", spec_include_elements,
                     "Include the enumerated elements in the JSON output");
  spec_cmd->add_option("--format", spec_format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  // check-operators
  std::int64_t op_p = 1;
  int op_level = 8;
  std::string op_format = "text";
  CLI::App* op_cmd = app.add_subcommand(
      "check-operators", "Exhaustive operator identities on a level set");
  op_cmd->add_option("--p", op_p, "Odd scaling parameter")->capture_default_str();
  op_cmd->add_option("--m", op_level, "Level of the frequency set")->capture_default_str();
  op_cmd->add_option("--format", op_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  // enumerate
  std::string enum_set = "canonical";
  std::int64_t enum_p = 1;
  int enum_level = 4;
  std::string enum_out;
  CLI::App* enum_cmd =
      app.add_subcommand("enumerate", "List a level set as a JSON array");
  enum_cmd->add_option("--set", enum_set, "canonical, scaled, or additive")
      ->check(CLI::IsMember({"canonical", "scaled", "additive"}))
      ->capture_default_str();
  enum_cmd->add_option("--p", enum_p, "Odd scaling parameter")->capture_default_str();
  enum_cmd->add_option("--m", enum_level, "Level of the frequency set")->capture_default_str();
  enum_cmd->add_option("--out", enum_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eval_cmd) return run_eval(eval_t, eval_factors, eval_format);
    if (*fig_cmd) return run_figure(fig_grid, fig_level, fig_factors, fig_out, fig_format);
    if (*spec_cmd) {
      require_odd_flag(spec_p);
      return run_check_spectrum(spec_set, spec_p, spec_level, spec_factors, spec_grid,
                                spec_max_deficiency, spec_include_elements, spec_format);
    }
    if (*op_cmd) {
      require_odd_flag(op_p);
      return run_check_operators(op_p, op_level, op_format);
    }
    if (*enum_cmd) {
      require_odd_flag(enum_p);
      return run_enumerate(enum_set, enum_p, enum_level, enum_out);
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
