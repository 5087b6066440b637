#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cantor4/check_report.hpp"
#include "cantor4/digit_system.hpp"
#include "cantor4/frequency.hpp"

// Operators acting on basis vectors indexed by integer frequencies.  Every
// operator used here sends a basis vector either to a single basis vector or
// to zero, so it is faithfully represented as a guarded piecewise-affine map
// on labels.  Operator identities then become statements about integer maps
// and are verified exactly, with no floating point involved.

namespace cantor4 {

// Thrown when a sum of label maps sends some basis vector through both
// summands at once.  Sums are represented this way only while the summands
// have disjoint supports, so a collision is a structural error and carries
// the offending input.
class RangeCollisionError : public std::runtime_error {
 public:
  RangeCollisionError(std::int64_t input, std::string what)
      : std::runtime_error(std::move(what)), input_(input) {}
  [[nodiscard]] std::int64_t input() const { return input_; }

 private:
  std::int64_t input_;
};

namespace detail {

// n -> (mul*n + offset) / div, valid only where the division is exact.
struct AffineRule {
  std::int64_t mul = 1;
  std::int64_t offset = 0;
  std::int64_t div = 1;
};

// Applies an affine rule to one residue class.  modulus == 1 matches every
// label.  Construction enforces that the rule stays integral on the whole
// class: div must divide both mul*residue + offset and mul*modulus.
struct Branch {
  std::int64_t modulus = 1;
  std::int64_t residue = 0;
  AffineRule rule;

  [[nodiscard]] bool matches(std::int64_t n) const {
    if (modulus == 1) return true;
    return ((n % modulus) + modulus) % modulus == residue;
  }

  [[nodiscard]] std::int64_t apply(std::int64_t n) const {
    const std::int64_t num = checked_add(checked_mul(rule.mul, n), rule.offset);
    if (num % rule.div != 0)
      throw std::logic_error("Branch: non-integral image despite construction checks");
    return num / rule.div;
  }
};

inline void validate_branch(const Branch& b) {
  if (b.modulus < 1) throw std::invalid_argument("Branch: modulus must be >= 1");
  if (b.modulus != 1) {
    std::int64_t m = b.modulus;
    while (m % 4 == 0) m /= 4;
    if (m != 1) throw std::invalid_argument("Branch: modulus must be a power of 4");
  }
  if (b.residue < 0 || b.residue >= b.modulus)
    throw std::invalid_argument("Branch: residue out of range");
  if (b.rule.div < 1) throw std::invalid_argument("Branch: divisor must be >= 1");
  if ((b.rule.mul * b.residue + b.rule.offset) % b.rule.div != 0 ||
      (b.rule.mul * b.modulus) % b.rule.div != 0)
    throw std::invalid_argument("Branch: rule is not integral on its residue class");
}

struct OpNode {
  virtual ~OpNode() = default;
  [[nodiscard]] virtual std::optional<std::int64_t> apply(std::int64_t n) const = 0;
};

struct PrimitiveNode final : OpNode {
  std::string name;
  std::optional<DigitSystem> guard;
  std::vector<Branch> branches;

  PrimitiveNode(std::string nm, std::optional<DigitSystem> g, std::vector<Branch> br)
      : name(std::move(nm)), guard(std::move(g)), branches(std::move(br)) {
    for (const Branch& b : branches) validate_branch(b);
    for (std::size_t i = 0; i < branches.size(); ++i)
      for (std::size_t j = i + 1; j < branches.size(); ++j) {
        const std::int64_t g2 = std::gcd(branches[i].modulus, branches[j].modulus);
        if (((branches[i].residue - branches[j].residue) % g2 + g2) % g2 == 0)
          throw std::invalid_argument(name + ": branches overlap on a residue class");
      }
  }

  [[nodiscard]] std::optional<std::int64_t> apply(std::int64_t n) const override {
    if (guard && !contains(*guard, Frequency(n)))
      throw std::domain_error(name + ": label " + std::to_string(n) +
                              " lies outside the guarded index set " + guard->label());
    for (const Branch& b : branches)
      if (b.matches(n)) return b.apply(n);
    return std::nullopt;
  }
};

struct ComposeNode final : OpNode {
  std::shared_ptr<const OpNode> outer;
  std::shared_ptr<const OpNode> inner;

  [[nodiscard]] std::optional<std::int64_t> apply(std::int64_t n) const override {
    const auto mid = inner->apply(n);
    if (!mid) return std::nullopt;
    return outer->apply(*mid);
  }
};

struct SumNode final : OpNode {
  std::shared_ptr<const OpNode> left;
  std::shared_ptr<const OpNode> right;

  [[nodiscard]] std::optional<std::int64_t> apply(std::int64_t n) const override {
    const auto a = left->apply(n);
    const auto b = right->apply(n);
    if (a && b)
      throw RangeCollisionError(n, "operator sum hit label " + std::to_string(n) +
                                       " through both summands");
    return a ? a : b;
  }
};

}  // namespace detail

// Immutable handle to a label map.  apply returns the image label, or
// nullopt when the operator annihilates that basis vector.
class IndexOp {
 public:
  [[nodiscard]] std::optional<Frequency> apply(Frequency n) const {
    const auto image = node_->apply(n.value());
    if (!image) return std::nullopt;
    return Frequency(*image);
  }

  friend IndexOp compose(const IndexOp& outer, const IndexOp& inner);
  friend IndexOp add(const IndexOp& left, const IndexOp& right);

  explicit IndexOp(std::shared_ptr<const detail::OpNode> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<const detail::OpNode> node_;
};

// n -> 4n + digit: appends one base-4 digit.  An isometry on the full
// integer label space, so no guard.
inline IndexOp generator(std::int64_t digit) {
  if (digit < 0) throw std::invalid_argument("generator: digit must be >= 0");
  return IndexOp(std::make_shared<detail::PrimitiveNode>(
      "generator(" + std::to_string(digit) + ")", std::nullopt,
      std::vector<detail::Branch>{{1, 0, {4, digit, 1}}}));
}

// Adjoint of generator(digit) on the canonical index set: strips the final
// digit when it equals `digit`, annihilates otherwise.  Guarded because it
// is only defined on canonical labels.
inline IndexOp generator_adjoint(std::int64_t digit) {
  if (digit < 0) throw std::invalid_argument("generator_adjoint: digit must be >= 0");
  return IndexOp(std::make_shared<detail::PrimitiveNode>(
      "generator_adjoint(" + std::to_string(digit) + ")", canonical(),
      std::vector<detail::Branch>{{4, digit % 4, {1, -digit, 4}}}));
}

// n -> n + k: multiplication by the exponential with frequency k.
inline IndexOp modulation(std::int64_t k) {
  return IndexOp(std::make_shared<detail::PrimitiveNode>(
      "modulation(" + std::to_string(k) + ")", std::nullopt,
      std::vector<detail::Branch>{{1, 0, {1, k, 1}}}));
}

// n -> p*n for odd p: carries the canonical index set onto its p-scaled
// copy.  Guarded to canonical labels.
inline IndexOp dilation(std::int64_t p) {
  detail::require_odd_positive(p, "dilation");
  return IndexOp(std::make_shared<detail::PrimitiveNode>(
      "dilation(" + std::to_string(p) + ")", canonical(),
      std::vector<detail::Branch>{{1, 0, {p, 0, 1}}}));
}

// Fixes labels divisible by 4 and rewrites a trailing digit 1 to p, carrying
// the canonical index set onto the additive-p set.  Guarded to canonical
// labels, where only trailing digits 0 and 1 occur.
inline IndexOp additive_exchange(std::int64_t p) {
  detail::require_odd_positive(p, "additive_exchange");
  return IndexOp(std::make_shared<detail::PrimitiveNode>(
      "additive_exchange(" + std::to_string(p) + ")", canonical(),
      std::vector<detail::Branch>{{4, 0, {1, 0, 1}}, {4, 1, {1, p - 1, 1}}}));
}

inline IndexOp compose(const IndexOp& outer, const IndexOp& inner) {
  auto node = std::make_shared<detail::ComposeNode>();
  node->outer = outer.node_;
  node->inner = inner.node_;
  return IndexOp(std::move(node));
}

inline IndexOp add(const IndexOp& left, const IndexOp& right) {
  auto node = std::make_shared<detail::SumNode>();
  node->left = left.node_;
  node->right = right.node_;
  return IndexOp(std::move(node));
}

namespace detail {
inline std::pair<std::int64_t, std::int64_t> witness(Frequency input,
                                                     const std::optional<Frequency>& got) {
  return {input.value(), got ? got->value() : input.value()};
}
}  // namespace detail

// Exhaustively verifies, on every canonical label of the given level, that
// the two digit-append maps behave as a complete orthogonal isometry family:
// adjoint(i) o generator(j) is the identity for i == j and annihilates for
// i != j, the two range projections sum to the identity, and both generators
// keep labels inside the canonical set.
inline CheckReport cuntz_relations_check(int level) {
  if (level < 1) throw std::invalid_argument("cuntz_relations_check: level must be >= 1");
  const std::string name = "cuntz_relations";
  const std::map<std::string, std::int64_t> params{{"m", level}};

  const IndexOp gen[2] = {generator(0), generator(1)};
  const IndexOp adj[2] = {generator_adjoint(0), generator_adjoint(1)};
  IndexOp pair_ops[2][2] = {{compose(adj[0], gen[0]), compose(adj[0], gen[1])},
                            {compose(adj[1], gen[0]), compose(adj[1], gen[1])}};
  const IndexOp completeness =
      add(compose(gen[0], adj[0]), compose(gen[1], adj[1]));

  const LevelSet set = enumerate_level(canonical(), level);
  for (Frequency g : set.elements()) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const auto got = pair_ops[i][j].apply(g);
        if (i == j && (!got || *got != g))
          return CheckReport::fail(name, params, detail::witness(g, got),
                                   "adjoint(" + std::to_string(i) + ") o generator(" +
                                       std::to_string(j) + ") is not the identity here");
        if (i != j && got)
          return CheckReport::fail(name, params, detail::witness(g, got),
                                   "adjoint(" + std::to_string(i) + ") o generator(" +
                                       std::to_string(j) + ") failed to annihilate");
      }
    const auto round = completeness.apply(g);
    if (!round || *round != g)
      return CheckReport::fail(name, params, detail::witness(g, round),
                               "range projections of the two generators do not sum to the "
                               "identity here");
    for (int j = 0; j < 2; ++j) {
      const auto img = gen[j].apply(g);
      if (!img || !contains(canonical(), *img))
        return CheckReport::fail(name, params, detail::witness(g, img),
                                 "generator(" + std::to_string(j) +
                                     ") left the canonical index set");
    }
  }
  return CheckReport::ok(name, params,
                         "isometry family relations hold on all " +
                             std::to_string(set.size()) + " labels");
}

// Verifies on every canonical label of the given level that dilation by p
// intertwines the digit appenders: it commutes with appending 0, and turns
// appending 1 into appending p.
inline CheckReport dilation_commutation_check(std::int64_t p, int level) {
  detail::require_odd_positive(p, "dilation_commutation_check");
  if (level < 1)
    throw std::invalid_argument("dilation_commutation_check: level must be >= 1");
  const std::string name = "dilation_commutation";
  const std::map<std::string, std::int64_t> params{{"p", p}, {"m", level}};

  const IndexOp up = dilation(p);
  const IndexOp lhs0 = compose(up, generator(0));
  const IndexOp rhs0 = compose(generator(0), up);
  const IndexOp lhs1 = compose(up, generator(1));
  const IndexOp rhs1 = compose(generator(p), up);

  const LevelSet set = enumerate_level(canonical(), level);
  for (Frequency g : set.elements()) {
    const auto a0 = lhs0.apply(g);
    const auto b0 = rhs0.apply(g);
    if (!a0 || !b0 || *a0 != *b0)
      return CheckReport::fail(name, params, detail::witness(g, a0),
                               "dilation does not commute with appending digit 0 here");
    const auto a1 = lhs1.apply(g);
    const auto b1 = rhs1.apply(g);
    if (!a1 || !b1 || *a1 != *b1)
      return CheckReport::fail(name, params, detail::witness(g, a1),
                               "dilation o append(1) differs from append(p) o dilation here");
  }
  return CheckReport::ok(name, params,
                         "dilation intertwines the digit appenders on all " +
                             std::to_string(set.size()) + " labels");
}

// Verifies the digit-exchange map is injective on the canonical level set
// and that its image is exactly the additive-p level set.
inline CheckReport additive_exchange_bijection_check(std::int64_t p, int level) {
  detail::require_odd_positive(p, "additive_exchange_bijection_check");
  if (level < 1)
    throw std::invalid_argument("additive_exchange_bijection_check: level must be >= 1");
  const std::string name = "additive_exchange_bijection";
  const std::map<std::string, std::int64_t> params{{"p", p}, {"m", level}};

  const IndexOp w = additive_exchange(p);
  const LevelSet dom = enumerate_level(canonical(), level);
  const LevelSet target = enumerate_level(additive(p), level);

  std::vector<std::int64_t> images;
  images.reserve(dom.size());
  for (Frequency g : dom.elements()) {
    const auto img = w.apply(g);
    if (!img)
      return CheckReport::fail(name, params, {g.value(), g.value()},
                               "exchange map annihilated a canonical label");
    images.push_back(img->value());
  }
  std::sort(images.begin(), images.end());
  if (auto dup = std::adjacent_find(images.begin(), images.end()); dup != images.end())
    return CheckReport::fail(name, params, {*dup, *dup},
                             "exchange map is not injective on the level set");
  for (std::size_t i = 0; i < images.size(); ++i)
    if (images[i] != target.elements()[i].value())
      return CheckReport::fail(name, params, {images[i], target.elements()[i].value()},
                               "image of the canonical level set differs from the additive "
                               "level set");
  return CheckReport::ok(name, params,
                         "exchange map carries the canonical level set bijectively onto "
                         "the additive level set (" +
                             std::to_string(dom.size()) + " labels)");
}

}  // namespace cantor4
