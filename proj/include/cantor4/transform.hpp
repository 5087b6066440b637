#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cantor4/frequency.hpp"

// Fourier transform of the quarter-scale Bernoulli measure (equal weights on
// the attractor of x -> (x +/- 1)/4).  The transform is the infinite cosine
// product
//
//     F(t) = prod_{k>=1} cos(2*pi*t / 4^k),
//
// evaluated here as a truncated product with a certified tail bound, plus an
// independent atom-sum oracle built from the level-L approximation of the
// measure itself.

namespace cantor4 {

// Truncation setup: K retained factors, valid for arguments |t| <= T.
struct ProductConfig {
  int factors;
  double domain_radius;

  ProductConfig(int k, double t) : factors(k), domain_radius(t) {
    if (k < 1) throw std::invalid_argument("ProductConfig: factors must be >= 1");
    if (!(t > 0.0)) throw std::invalid_argument("ProductConfig: domain radius must be > 0");
  }
};

// Largest m with 4^m | n.  Undefined for n = 0.
inline int valuation4(Frequency n) {
  std::int64_t v = n.value();
  if (v == 0) throw std::invalid_argument("valuation4: undefined at 0");
  int m = 0;
  while ((v & 3) == 0) {
    v >>= 2;
    ++m;
  }
  return m;
}

// Exact zero set of the transform on integers.  The k-th factor
// cos(2*pi*n/4^k) vanishes iff n/4^k is an odd multiple of 1/4, i.e.
// n = 4^(k-1) * odd.  An integer n != 0 has that form for some k exactly
// when n / 4^v(n) is odd (v = 4-adic valuation); otherwise every factor is
// nonzero and the product converges to a nonzero value, since
// sum_k |1 - cos(2*pi*n/4^k)| < inf.
inline bool is_transform_zero(Frequency n) {
  std::int64_t v = n.value();
  if (v == 0) return false;  // F(0) = 1
  while ((v & 3) == 0) v >>= 2;
  return (v & 1) != 0;
}

// Upper bound on |truncated - exact| over |t| <= T.  Writing the omitted
// factors as a_k = cos(2*pi*t/4^k), telescoping gives
// |prod a_k - 1| <= sum (1 - a_k) since |a_k| <= 1, and 1 - cos x <= x^2/2
// bounds each term; the geometric sum over k > K evaluates to
// (2*pi*T)^2/2 * 16^-K / 15.
inline double tail_bound(double domain_radius, int factors) {
  if (!(domain_radius > 0.0)) throw std::invalid_argument("tail_bound: radius must be > 0");
  if (factors < 0) throw std::invalid_argument("tail_bound: factors must be >= 0");
  const double a = 2.0 * std::numbers::pi * domain_radius;
  return a * a / 2.0 * std::ldexp(1.0, -4 * factors) / 15.0;
}

inline double tail_bound(const ProductConfig& cfg) {
  return tail_bound(cfg.domain_radius, cfg.factors);
}

// Truncated product: prod_{k=1..K} cos(2*pi*t/4^k).  Within tail_bound(cfg)
// of the exact transform for |t| <= cfg.domain_radius.
inline double transform_product(double t, const ProductConfig& cfg) {
  if (std::abs(t) > cfg.domain_radius)
    throw std::domain_error("transform_product: |t| = " + std::to_string(std::abs(t)) +
                            " exceeds the configured radius " +
                            std::to_string(cfg.domain_radius));
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double acc = 1.0;
  for (int k = 1; k <= cfg.factors; ++k) {
    // t/4^k is an exact binary scaling
    acc *= std::cos(two_pi * std::ldexp(t, -2 * k));
  }
  return acc;
}

inline constexpr int max_atom_level = 24;

// Atom-sum oracle.  The level-L approximation of the measure places 2^L
// equal atoms at sum_{k=1..L} e_k 4^-k over sign vectors e in {-1,+1}^L, so
// its transform is the mean of cos(2*pi*t*x) over the atoms; analytically
// this equals transform_product(t, K=L).  The measure is symmetric, so the
// sine part vanishes (asserted in debug builds).  Atoms are visited in
// Gray-code order: each step flips one sign, and every intermediate
// position is an exact dyadic, so the walk carries no rounding error.
inline double transform_atoms(double t, int level) {
  if (level < 1 || level > max_atom_level)
    throw std::invalid_argument("transform_atoms: level must be in [1, " +
                                std::to_string(max_atom_level) + "]");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const std::uint64_t count = std::uint64_t{1} << level;

  // all signs -1: x = -(4^L - 1)/3 / 4^L
  const std::int64_t all_ones = ((std::int64_t{1} << (2 * level)) - 1) / 3;
  double x = -std::ldexp(static_cast<double>(all_ones), -2 * level);

  double sum = 0.0, comp = 0.0;
#ifndef NDEBUG
  double sin_sum = 0.0;
#endif
  std::uint64_t signs = 0;  // bit b set <=> e_{b+1} = +1
  for (std::uint64_t i = 0;; ++i) {
    const double term = std::cos(two_pi * t * x);
    const double y = term - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
#ifndef NDEBUG
    sin_sum += std::sin(two_pi * t * x);
#endif
    if (i + 1 == count) break;
    const int b = __builtin_ctzll(i + 1);  // Gray-code flip position
    const double delta = std::ldexp(2.0, -2 * (b + 1));
    if (signs & (std::uint64_t{1} << b))
      x -= delta;
    else
      x += delta;
    signs ^= std::uint64_t{1} << b;
  }
#ifndef NDEBUG
  assert(std::abs(sin_sum / static_cast<double>(count)) < 1e-12);
#endif
  return sum / static_cast<double>(count);
}

}  // namespace cantor4
