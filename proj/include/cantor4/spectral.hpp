#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cantor4/check_report.hpp"
#include "cantor4/digit_system.hpp"
#include "cantor4/frequency.hpp"
#include "cantor4/parallel.hpp"
#include "cantor4/summation.hpp"
#include "cantor4/transform.hpp"

// Spectral diagnostics: the sum of squared transform values over a frequency
// set measures how close that set is to an orthonormal basis (the sum is
// identically 1 exactly for a spectrum).  Everything here evaluates truncated
// sums on real grids and reports the truncation-aware defects.

namespace cantor4 {

// Uniform evaluation grid.  Points are from + i*step, never accumulated, so
// repeated runs are bit-identical.
struct GridSpec {
  double from;
  double to;
  double step;

  GridSpec(double f, double t, double s) : from(f), to(t), step(s) {
    if (!(s > 0.0)) throw std::invalid_argument("GridSpec: step must be > 0");
    if (t < f) throw std::invalid_argument("GridSpec: inverted range");
  }

  [[nodiscard]] std::size_t points() const {
    const double span = (to - from) / step;
    const auto rounded = static_cast<long long>(std::llround(span));
    if (std::abs(span - static_cast<double>(rounded)) < 1e-6)
      return static_cast<std::size_t>(rounded) + 1;
    return static_cast<std::size_t>(span) + 1;
  }

  [[nodiscard]] double at(std::size_t i) const { return from + static_cast<double>(i) * step; }
};

namespace detail {
inline std::int64_t max_abs_value(const std::vector<Frequency>& elems) {
  std::int64_t m = 0;
  for (Frequency f : elems) m = std::max(m, std::abs(f.value()));
  return m;
}

inline void require_radius(double needed, const ProductConfig& cfg, const char* who) {
  if (needed > cfg.domain_radius)
    throw std::domain_error(std::string(who) + ": evaluation needs radius " +
                            std::to_string(needed) + " but the tail bound was configured for " +
                            std::to_string(cfg.domain_radius));
}
}  // namespace detail

// Truncation allowance for a sum of `terms` squared product values: each
// truncated square exceeds its exact value by at most 2 * tail_bound, and
// the exact sum obeys Bessel's inequality (<= 1 for orthonormal families).
inline double bessel_slack(std::size_t terms, const ProductConfig& cfg) {
  return 2.0 * static_cast<double>(terms) * tail_bound(cfg);
}

// sum over the level set of transform_product(t - gamma)^2.  Nonnegative and
// nondecreasing in the element set.
inline double spectral_function(const LevelSet& elements, double t, const ProductConfig& cfg) {
  detail::require_radius(std::abs(t) + static_cast<double>(detail::max_abs_value(elements.elements())),
                         cfg, "spectral_function");
  KahanSum acc;
  for (Frequency g : elements.elements()) {
    const double v = transform_product(t - static_cast<double>(g.value()), cfg);
    acc.add(v * v);
  }
  return acc.value();
}

// Residue slice of the spectral sum: offsets run over 4*gamma + m0 with
// gamma in the canonical level set.  Slices for m0 = 0 and m0 = 1 are the
// two halves of the full sum one level up.
inline double residue_component(std::int64_t m0, double t, const LevelSet& canonical_set,
                                const ProductConfig& cfg) {
  if (m0 < 0) throw std::invalid_argument("residue_component: offset must be >= 0");
  const std::int64_t max_off =
      checked_add(checked_mul(4, detail::max_abs_value(canonical_set.elements())), m0);
  detail::require_radius(std::abs(t) + static_cast<double>(max_off), cfg, "residue_component");
  KahanSum acc;
  for (Frequency g : canonical_set.elements()) {
    const std::int64_t offset = checked_add(checked_mul(4, g.value()), m0);
    const double v = transform_product(t - static_cast<double>(offset), cfg);
    acc.add(v * v);
  }
  return acc.value();
}

inline double residue_component(std::int64_t m0, double t, int level, const ProductConfig& cfg) {
  return residue_component(m0, t, enumerate_level(canonical(), level), cfg);
}

// Exact pairwise orthogonality: every difference of distinct elements must
// satisfy the integer zero predicate of the transform.  Pure integer
// arithmetic, no tolerances.
inline CheckReport orthogonality_check(const LevelSet& elements) {
  const std::string name = "orthogonality";
  const std::map<std::string, std::int64_t> params{
      {"m", elements.level()}, {"size", static_cast<std::int64_t>(elements.size())}};
  const auto& v = elements.elements();
  std::int64_t pairs = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      ++pairs;
      const Frequency diff = v[j] - v[i];
      if (!is_transform_zero(diff))
        return CheckReport::fail(name, params, {v[i].value(), v[j].value()},
                                 "transform does not vanish on the difference of these two "
                                 "elements of " + elements.system().label());
    }
  return CheckReport::ok(name, params,
                         "zero predicate holds on all " + std::to_string(pairs) +
                             " pairwise differences of " + elements.system().label());
}

struct SampleMeta {
  ProductConfig cfg;
  int level;
  std::string system;
};

// Grid of per-residue spectral values with the truncation setup that
// produced them.
struct SpectralSample {
  std::vector<double> grid;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> columns;  // aligned with grid, one per label
  SampleMeta meta;

  [[nodiscard]] const std::vector<double>& column(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return columns[i];
    throw std::invalid_argument("SpectralSample: no component named " + label);
  }
};

namespace detail {
inline std::int64_t parse_residue_label(const std::string& label) {
  if (label.size() < 2 || label[0] != 'c')
    throw std::invalid_argument("unknown component label: " + label +
                                " (expected c<nonnegative integer>)");
  std::size_t consumed = 0;
  std::int64_t m0;
  try {
    m0 = std::stoll(label.substr(1), &consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument("unknown component label: " + label);
  }
  if (consumed + 1 != label.size() || m0 < 0)
    throw std::invalid_argument("unknown component label: " + label);
  return m0;
}
}  // namespace detail

// Evaluates the requested residue components ("c0", "c1", ...) on the grid.
// Grid points are independent; evaluation parallelizes over t with results
// assembled by index.
inline SpectralSample sample_grid(const std::vector<std::string>& components, const GridSpec& grid,
                                  int level, const ProductConfig& cfg) {
  if (components.empty()) throw std::invalid_argument("sample_grid: no components requested");
  std::vector<std::int64_t> offsets;
  offsets.reserve(components.size());
  for (const auto& label : components) offsets.push_back(detail::parse_residue_label(label));

  const LevelSet base = enumerate_level(canonical(), level);
  const std::size_t n = grid.points();

  SpectralSample out{std::vector<double>(n), components,
                     std::vector<std::vector<double>>(components.size(), std::vector<double>(n)),
                     SampleMeta{cfg, level, "canonical"}};
  for (std::size_t i = 0; i < n; ++i) out.grid[i] = grid.at(i);

  parallel_for(n, [&](std::size_t i) {
    for (std::size_t c = 0; c < offsets.size(); ++c)
      out.columns[c][i] = residue_component(offsets[c], out.grid[i], base, cfg);
  });
  return out;
}

// Max |f(t + period) - f(t)| over grid points whose partner also lies on the
// grid.  The period must be an integer number of steps.
inline double periodicity_defect(const SpectralSample& sample, const std::string& component,
                                 double period) {
  if (!(period > 0.0)) throw std::invalid_argument("periodicity_defect: period must be > 0");
  if (sample.grid.size() < 2)
    throw std::invalid_argument("periodicity_defect: grid has no matched pairs");
  const double step = sample.grid[1] - sample.grid[0];
  const double ratio = period / step;
  const auto shift = static_cast<std::size_t>(std::llround(ratio));
  if (std::abs(ratio - static_cast<double>(shift)) > 1e-6 * ratio || shift == 0 ||
      shift >= sample.grid.size())
    throw std::invalid_argument("periodicity_defect: grid has no matched pairs at period " +
                                std::to_string(period));
  const auto& col = sample.column(component);
  double defect = 0.0;
  for (std::size_t i = 0; i + shift < col.size(); ++i)
    defect = std::max(defect, std::abs(col[i + shift] - col[i]));
  return defect;
}

// Completeness measurement over a grid: how far the truncated spectral sum
// falls below 1 (deficiency, driven by the sum truncation) and how far it
// rises above 1 (overshoot, driven by the product truncation).  The two are
// reported separately.
struct DefectReport {
  double max_deficiency = 0.0;
  double max_overshoot = 0.0;
  double argmax_t = 0.0;  // grid point of the worst deficiency
  std::size_t terms = 0;
  int factors = 0;
  double domain_radius = 0.0;
  int level = 0;
  std::string system;
};

inline DefectReport completeness_defect(const DigitSystem& ds, const GridSpec& grid, int level,
                                        const ProductConfig& cfg) {
  const LevelSet elements = enumerate_level(ds, level);
  const std::size_t n = grid.points();
  std::vector<double> values(n);
  parallel_for(n, [&](std::size_t i) {
    values[i] = spectral_function(elements, grid.at(i), cfg);
  });

  DefectReport report;
  report.terms = elements.size();
  report.factors = cfg.factors;
  report.domain_radius = cfg.domain_radius;
  report.level = level;
  report.system = ds.label();
  report.argmax_t = grid.at(0);
  double min_value = values[0];
  double max_value = values[0];
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i] < min_value) {
      min_value = values[i];
      report.argmax_t = grid.at(i);
    }
    max_value = std::max(max_value, values[i]);
  }
  report.max_deficiency = std::max(0.0, 1.0 - min_value);
  report.max_overshoot = std::max(0.0, max_value - 1.0);
  return report;
}

inline nlohmann::json to_json(const DefectReport& r) {
  return nlohmann::json{{"config",
                         {{"system", r.system},
                          {"level", r.level},
                          {"factors", r.factors},
                          {"domainRadius", r.domain_radius},
                          {"terms", r.terms}}},
                        {"maxDeficiency", r.max_deficiency},
                        {"maxOvershoot", r.max_overshoot},
                        {"argmaxT", r.argmax_t}};
}

// Smallest radius a ProductConfig needs so every evaluation of the spectral
// sum over `elements` at |t| <= t_max stays inside the certified domain.
inline double required_radius(const LevelSet& elements, double t_max) {
  return t_max + static_cast<double>(detail::max_abs_value(elements.elements()));
}

inline double required_radius_residue(int level, std::int64_t max_offset, double t_max) {
  const std::int64_t max_elem =
      detail::max_abs_value(enumerate_level(canonical(), level).elements());
  return t_max + static_cast<double>(checked_add(checked_mul(4, max_elem), max_offset));
}

}  // namespace cantor4
