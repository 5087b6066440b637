#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cantor4/check_report.hpp"
#include "cantor4/frequency.hpp"

// Base-4 positional digit rules generating frequency sets.  One abstraction
// covers the three constructions used throughout: the canonical set (all
// digits {0,1}), its odd scalings (all digits {0,p}), and the additive sets
// (digit {0,p} in position 0, {0,1} above).

namespace cantor4 {

// A two-element digit set {0, d} with d not divisible by 4, so residues
// mod 4 are distinct and greedy digit extraction is unambiguous.
class DigitSet {
 public:
  explicit DigitSet(std::int64_t nonzero_digit) : nonzero_(nonzero_digit) {
    if (nonzero_digit <= 0)
      throw std::invalid_argument("DigitSet: nonzero digit must be positive");
    if (nonzero_digit % 4 == 0)
      throw std::invalid_argument("DigitSet: digits must be distinct mod 4");
  }

  [[nodiscard]] std::array<std::int64_t, 2> digits() const { return {0, nonzero_}; }
  [[nodiscard]] std::int64_t nonzero() const { return nonzero_; }

  friend bool operator==(const DigitSet&, const DigitSet&) = default;

 private:
  std::int64_t nonzero_;
};

class DigitSystem {
 public:
  DigitSystem(std::vector<DigitSet> position_digits, DigitSet tail_digits, std::string label)
      : positions_(std::move(position_digits)), tail_(tail_digits), label_(std::move(label)) {}

  // Digit set governing position `pos` (coefficient of 4^pos).
  [[nodiscard]] const DigitSet& digits_at(std::size_t pos) const {
    return pos < positions_.size() ? positions_[pos] : tail_;
  }

  [[nodiscard]] const std::string& label() const { return label_; }

  // Structural equality: same digit set at every position.
  friend bool operator==(const DigitSystem& a, const DigitSystem& b) {
    if (!(a.tail_ == b.tail_)) return false;
    const std::size_t n = std::max(a.positions_.size(), b.positions_.size());
    for (std::size_t i = 0; i < n; ++i)
      if (!(a.digits_at(i) == b.digits_at(i))) return false;
    return true;
  }

 private:
  std::vector<DigitSet> positions_;
  DigitSet tail_;
  std::string label_;
};

namespace detail {
inline void require_odd_positive(std::int64_t p, const char* who) {
  if (p < 1 || p % 2 == 0)
    throw std::invalid_argument(std::string(who) + ": scaling must be an odd positive integer, got " +
                                std::to_string(p));
}
}  // namespace detail

// All positions {0,1}: the canonical frequency set.
inline DigitSystem canonical() { return DigitSystem({}, DigitSet(1), "canonical"); }

// All positions {0,p}: elementwise p-scaling of the canonical set.  p = 1
// is the canonical set itself and is labeled as such.
inline DigitSystem scaled(std::int64_t p) {
  detail::require_odd_positive(p, "scaled");
  if (p == 1) return canonical();
  return DigitSystem({}, DigitSet(p), "scaled(" + std::to_string(p) + ")");
}

// Position 0 uses {0,p}, all higher positions {0,1}: at level m this is
// 4*G_{m-1} union (4*G_{m-1} + p) for the canonical G.  p = 1 is the
// canonical set itself and is labeled as such.
inline DigitSystem additive(std::int64_t p) {
  detail::require_odd_positive(p, "additive");
  if (p == 1) return canonical();
  return DigitSystem({DigitSet(p)}, DigitSet(1), "additive(" + std::to_string(p) + ")");
}

inline constexpr int max_level = 14;

// All sums over admissible digit strings of a fixed length, sorted.
class LevelSet {
 public:
  LevelSet(DigitSystem system, int level, std::vector<Frequency> elements)
      : system_(std::move(system)), level_(level), elements_(std::move(elements)) {}

  [[nodiscard]] const DigitSystem& system() const { return system_; }
  [[nodiscard]] int level() const { return level_; }
  // rvalue overload keeps `for (auto g : enumerate_level(...).elements())` safe
  [[nodiscard]] const std::vector<Frequency>& elements() const& { return elements_; }
  [[nodiscard]] std::vector<Frequency> elements() && { return std::move(elements_); }
  [[nodiscard]] std::size_t size() const { return elements_.size(); }

 private:
  DigitSystem system_;
  int level_;
  std::vector<Frequency> elements_;
};

inline LevelSet enumerate_level(const DigitSystem& ds, int m) {
  if (m < 0 || m > max_level)
    throw std::invalid_argument("enumerate_level: level must be in [0, " +
                                std::to_string(max_level) + "], got " + std::to_string(m));
  std::vector<std::int64_t> values{0};
  std::int64_t power = 1;  // 4^i
  for (int i = 0; i < m; ++i) {
    const std::int64_t d = ds.digits_at(static_cast<std::size_t>(i)).nonzero();
    const std::int64_t offset = checked_mul(d, power);
    const std::size_t n = values.size();
    values.reserve(2 * n);
    for (std::size_t j = 0; j < n; ++j) values.push_back(checked_add(values[j], offset));
    power = checked_mul(power, 4);
  }
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end())
    throw std::logic_error("enumerate_level: digit strings produced duplicate elements");
  std::vector<Frequency> elements;
  elements.reserve(values.size());
  for (std::int64_t v : values) elements.emplace_back(v);
  return LevelSet(ds, m, std::move(elements));
}

// Membership by greedy digit peeling: match n mod 4 against the position's
// digit residues and recurse on (n - d)/4.  Finite expansions with
// nonnegative digits are nonnegative, so negative labels are never members;
// positive labels strictly decrease, so the loop terminates.
inline bool contains(const DigitSystem& ds, Frequency n) {
  std::int64_t v = n.value();
  std::size_t pos = 0;
  while (v > 0) {
    const std::int64_t r = v & 3;
    const std::int64_t d = ds.digits_at(pos).nonzero();
    std::int64_t matched;
    if (r == 0)
      matched = 0;
    else if ((d & 3) == r)
      matched = d;
    else
      return false;
    v = (v - matched) >> 2;
    ++pos;
  }
  return v == 0;
}

// Verifies the level-m canonical set equals the disjoint union of the
// quadrupled level-(m-1) set and its shift by 1.
inline CheckReport invariance_check(int m) {
  if (m < 1) throw std::invalid_argument("invariance_check: level must be >= 1");
  const std::string name = "invariance";
  const std::map<std::string, std::int64_t> params{{"m", m}};

  const auto whole = enumerate_level(canonical(), m);
  const auto half = enumerate_level(canonical(), m - 1);

  std::vector<std::int64_t> rebuilt;
  rebuilt.reserve(2 * half.size());
  for (Frequency g : half.elements()) rebuilt.push_back(4 * g.value());
  for (Frequency g : half.elements()) rebuilt.push_back(4 * g.value() + 1);
  std::sort(rebuilt.begin(), rebuilt.end());

  if (auto dup = std::adjacent_find(rebuilt.begin(), rebuilt.end()); dup != rebuilt.end())
    return CheckReport::fail(name, params, {*dup, *dup}, "branch images are not disjoint");

  for (std::size_t i = 0; i < rebuilt.size(); ++i) {
    if (rebuilt[i] != whole.elements()[i].value())
      return CheckReport::fail(name, params, {rebuilt[i], whole.elements()[i].value()},
                               "rebuilt union differs from direct enumeration");
  }
  return CheckReport::ok(name, params,
                         "level set equals 4*previous disjoint-union (4*previous + 1)");
}

inline nlohmann::json to_json(const LevelSet& ls) {
  nlohmann::json arr = nlohmann::json::array();
  for (Frequency f : ls.elements()) arr.push_back(f.value());
  return arr;
}

}  // namespace cantor4
