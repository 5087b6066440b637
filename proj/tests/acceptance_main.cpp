// Acceptance gate: runs the ten headline verifications end to end, prints
// one PASS/FAIL line per criterion, and exits nonzero if any fail.
// Thresholds live in frozen.hpp next to their provenance notes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "cantor4/cantor4.hpp"
#include "frozen.hpp"

#ifndef CANTOR4_CLI_PATH
#error "CANTOR4_CLI_PATH must point at the built command line binary"
#endif

namespace {

using namespace cantor4;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

double weyl_point(int i, double lo, double hi) {
  constexpr double phi = 0.61803398874989484820;
  const double frac = std::fmod(0.5 + (i + 1) * phi, 1.0);
  return lo + (hi - lo) * frac;
}

std::vector<double> grid_values(const DigitSystem& ds, const GridSpec& grid, int level,
                                int factors) {
  const LevelSet elements = enumerate_level(ds, level);
  const double t_max = std::max(std::abs(grid.from), std::abs(grid.to));
  const ProductConfig cfg{factors, required_radius(elements, t_max)};
  std::vector<double> out(grid.points());
  parallel_for(out.size(), [&](std::size_t i) {
    out[i] = spectral_function(elements, grid.at(i), cfg);
  });
  return out;
}

// --- criteria -------------------------------------------------------------

std::pair<bool, std::string> zero_set_exactness() {
  const ProductConfig cfg{25, 4100.0};
  double worst_zero = 0.0;
  double best_nonzero = 1.0;
  for (std::int64_t n = -4096; n <= 4096; ++n) {
    if (n == 0) continue;
    const double v = std::abs(transform_product(static_cast<double>(n), cfg));
    if (is_transform_zero(freq(n)))
      worst_zero = std::max(worst_zero, v);
    else
      best_nonzero = std::min(best_nonzero, v);
  }
  const bool pass = worst_zero < 1e-8 && best_nonzero > frozen::nonzero_floor;
  return {pass, "max|value| on zero set " + fmt(worst_zero) + " (<1e-8), min off zero set " +
                    fmt(best_nonzero) + " (>" + fmt(frozen::nonzero_floor) + ")"};
}

std::pair<bool, std::string> pairwise_orthogonality() {
  std::int64_t pairs = 0;
  for (std::int64_t p : {1, 3, 5, 7, 9, 15, 17}) {
    for (const DigitSystem& ds : {additive(p), scaled(p)}) {
      const CheckReport r = orthogonality_check(enumerate_level(ds, 8));
      if (!r.pass)
        return {false, ds.label() + " m=8: " + r.details + " at (" +
                           std::to_string(r.counterexample->first) + ", " +
                           std::to_string(r.counterexample->second) + ")"};
      pairs += 32640;  // C(256, 2) unordered pairs
    }
  }
  return {true, std::to_string(pairs) +
                    " pairwise differences over 7 scalings, additive and scaled, exact"};
}

std::pair<bool, std::string> relations_and_invariance() {
  for (int m = 1; m <= 10; ++m) {
    for (const CheckReport& r : {cuntz_relations_check(m), invariance_check(m)}) {
      if (!r.pass) return {false, r.check_name + " failed at m=" + std::to_string(m)};
    }
  }
  return {true, "isometry relations and set invariance exact for m = 1..10"};
}

std::pair<bool, std::string> dilation_commutation() {
  for (std::int64_t p : {3, 5, 7, 9, 15})
    for (int m = 1; m <= 8; ++m) {
      const CheckReport r = dilation_commutation_check(p, m);
      if (!r.pass)
        return {false, "failed at p=" + std::to_string(p) + " m=" + std::to_string(m)};
    }
  return {true, "dilation intertwines the appenders for p in {3,5,7,9,15}, m = 1..8"};
}

std::pair<bool, std::string> exchange_bijection() {
  for (std::int64_t p : {3, 5, 7, 9, 15})
    for (int level = 1; level <= 9; ++level) {
      const CheckReport r = additive_exchange_bijection_check(p, level);
      if (!r.pass)
        return {false, "failed at p=" + std::to_string(p) + " level=" + std::to_string(level)};
    }
  return {true, "exchange maps canonical onto additive sets for p in {3,5,7,9,15}, levels 1..9"};
}

std::pair<bool, std::string> completeness_defects() {
  const GridSpec grid(-2.0, 2.0, 0.01);
  const int factors = 20;
  double worst_canonical = 0.0;
  double worst_additive = 0.0;
  for (std::int64_t p : {1, 3, 5, 7, 9}) {
    const DigitSystem ds = additive(p);  // p = 1 is the canonical set
    const std::vector<double> deep = grid_values(ds, grid, 12, factors);
    const std::vector<double> shallow = grid_values(ds, grid, 8, factors);

    double low = 1.0, high = 1.0;
    for (std::size_t i = 0; i < deep.size(); ++i) {
      low = std::min(low, deep[i]);
      high = std::max(high, deep[i]);
      if (deep[i] < shallow[i] - 1e-12)
        return {false, ds.label() + ": spectral sum decreased from m=8 to m=12 at t=" +
                           fmt(grid.at(i))};
    }
    const double deficiency = 1.0 - low;
    const double overshoot = std::max(0.0, high - 1.0);
    const double ceiling =
        p == 1 ? frozen::deficiency_canonical_m12 : frozen::deficiency_additive_m12;
    const ProductConfig cfg{factors,
                            required_radius(enumerate_level(ds, 12), 2.0)};
    if (deficiency > ceiling)
      return {false, ds.label() + " deficiency " + fmt(deficiency) + " exceeds " + fmt(ceiling)};
    if (overshoot > bessel_slack(std::size_t{1} << 12, cfg))
      return {false, ds.label() + " overshoot " + fmt(overshoot) + " exceeds the slack"};
    if (p == 1)
      worst_canonical = deficiency;
    else
      worst_additive = std::max(worst_additive, deficiency);
  }
  return {true, "m=12 deficiency: canonical " + fmt(worst_canonical) + " (<=" +
                    fmt(frozen::deficiency_canonical_m12) + "), additive max " +
                    fmt(worst_additive) + " (<=" + fmt(frozen::deficiency_additive_m12) +
                    "), overshoot within slack, pointwise monotone in m"};
}

std::pair<bool, std::string> residue_periodicity() {
  const GridSpec grid(-2.0, 2.0, 0.01);
  const int factors = 20;
  const auto sample_at = [&](int level) {
    const ProductConfig cfg{factors, required_radius_residue(level, 1, 2.0)};
    return sample_grid({"c0", "c1"}, grid, level, cfg);
  };
  const SpectralSample deep = sample_at(12);
  const SpectralSample shallow = sample_at(8);

  const double d1 = periodicity_defect(deep, "c1", 2.0);
  const double d0 = periodicity_defect(deep, "c0", 2.0);
  const double d1_shallow = periodicity_defect(shallow, "c1", 2.0);
  const double d0_shallow = periodicity_defect(shallow, "c0", 2.0);

  const bool pass = d1 < frozen::period_defect_m12 && d0 < frozen::period_defect_m12 &&
                    d1 < d1_shallow && d0 < d0_shallow;
  return {pass, "period-2 defect at m=12: c1 " + fmt(d1) + ", c0 " + fmt(d0) + " (<=" +
                    fmt(frozen::period_defect_m12) + "); m=8 gives " + fmt(d1_shallow) + ", " +
                    fmt(d0_shallow) + " (rate check)"};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CANTOR4_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<bool, std::string> figure_reproduction() {
  const std::string pa = "/tmp/cantor4_acceptance_a.csv";
  const std::string pb = "/tmp/cantor4_acceptance_b.csv";
  if (run_cli("figure1 --out " + pa) != 0 || run_cli("figure1 --out " + pb) != 0)
    return {false, "figure1 command failed"};
  const std::string a = slurp(pa);
  const std::string b = slurp(pb);
  std::remove(pa.c_str());
  std::remove(pb.c_str());
  if (a.empty() || a != b) return {false, "reruns are not byte-identical"};

  std::istringstream lines(a);
  std::string line;
  if (!std::getline(lines, line) || line != "t,c0,c1,c0_plus_c1")
    return {false, "unexpected header: " + line};
  int rows = 0;
  double worst_sum = 0.0, c1_min = 2.0, c1_max = -1.0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    ++rows;
    std::istringstream cells(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(cells, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() != 4) return {false, "malformed row: " + line};
    worst_sum = std::max(worst_sum, std::abs(vals[3] - 1.0));
    c1_min = std::min(c1_min, vals[2]);
    c1_max = std::max(c1_max, vals[2]);
  }
  if (rows != 401) return {false, "expected 401 data rows, got " + std::to_string(rows)};
  if (worst_sum >= frozen::figure_sum_defect)
    return {false, "max |c0+c1-1| = " + fmt(worst_sum)};
  if (!(c1_min < 0.01 && c1_max > 0.99))
    return {false, "c1 range [" + fmt(c1_min) + ", " + fmt(c1_max) +
                       "] misses the expected oscillation"};
  return {true, "401 rows, byte-identical reruns, max |c0+c1-1| = " + fmt(worst_sum) +
                    " (<" + fmt(frozen::figure_sum_defect) + "), c1 spans [" + fmt(c1_min) +
                    ", " + fmt(c1_max) + "]"};
}

std::pair<bool, std::string> oracle_equivalence() {
  const ProductConfig cfg{16, 4.0};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = weyl_point(i, -4.0, 4.0);
    worst = std::max(worst, std::abs(transform_atoms(t, 16) - transform_product(t, cfg)));
  }
  return {worst < 1e-10,
          "max |atom sum - product| = " + fmt(worst) + " over 100 points (<1e-10)"};
}

std::pair<bool, std::string> gram_spot_check() {
  const LevelSet set = enumerate_level(additive(3), 5);
  const ProductConfig cfg{25, 700.0};
  double worst_off = 0.0;
  for (Frequency a : set.elements())
    for (Frequency b : set.elements()) {
      const double g = transform_product(static_cast<double>((a - b).value()), cfg);
      if (a == b) {
        if (g != 1.0) return {false, "diagonal entry is not exactly 1"};
      } else {
        worst_off = std::max(worst_off, std::abs(g));
      }
    }
  return {worst_off < 1e-8, "32x32 matrix: diagonal exactly 1, max off-diagonal " +
                                fmt(worst_off) + " (<1e-8)"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<std::pair<bool, std::string>()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "zero-set exactness", zero_set_exactness},
      {2, "pairwise orthogonality", pairwise_orthogonality},
      {3, "isometry relations and invariance", relations_and_invariance},
      {4, "dilation commutation", dilation_commutation},
      {5, "digit-exchange bijection", exchange_bijection},
      {6, "completeness defect", completeness_defects},
      {7, "residue periodicity", residue_periodicity},
      {8, "figure table reproduction", figure_reproduction},
      {9, "oracle equivalence", oracle_equivalence},
      {10, "Gram matrix spot check", gram_spot_check},
  };

  bool all_pass = true;
  for (const auto& c : criteria) {
    bool pass = false;
    std::string note;
    try {
      std::tie(pass, note) = c.run();
    } catch (const std::exception& e) {
      pass = false;
      note = std::string("exception: ") + e.what();
    }
    all_pass = all_pass && pass;
    std::printf("%s %2d %s: %s\n", pass ? "PASS" : "FAIL", c.id, c.name, note.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
