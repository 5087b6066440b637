#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cantor4 {

// Exponential-basis labels are signed 64-bit integers capped at |n| < 4^30.
// Desk-scale experiments (levels m <= 14, odd scalings p < 100) stay orders
// of magnitude below the cap, so reaching it indicates a programming error;
// all arithmetic checks and throws instead of wrapping.
inline constexpr std::int64_t frequency_cap = std::int64_t{1} << 60;  // 4^30

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("integer addition overflow: " + std::to_string(a) + " + " +
                              std::to_string(b));
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw std::overflow_error("integer subtraction overflow: " + std::to_string(a) + " - " +
                              std::to_string(b));
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("integer multiplication overflow: " + std::to_string(a) + " * " +
                              std::to_string(b));
  return r;
}

class Frequency {
 public:
  constexpr Frequency() = default;

  explicit Frequency(std::int64_t v) : value_(v) {
    if (v <= -frequency_cap || v >= frequency_cap)
      throw std::overflow_error("frequency label exceeds the 4^30 magnitude cap: " +
                                std::to_string(v));
  }

  [[nodiscard]] constexpr std::int64_t value() const { return value_; }

  friend constexpr auto operator<=>(Frequency, Frequency) = default;

 private:
  std::int64_t value_ = 0;
};

inline Frequency freq(std::int64_t v) { return Frequency(v); }

inline Frequency operator+(Frequency a, Frequency b) {
  return Frequency(checked_add(a.value(), b.value()));
}

inline Frequency operator-(Frequency a, Frequency b) {
  return Frequency(checked_sub(a.value(), b.value()));
}

inline Frequency operator-(Frequency a) { return Frequency(-a.value()); }

inline Frequency operator*(std::int64_t s, Frequency a) {
  return Frequency(checked_mul(s, a.value()));
}

}  // namespace cantor4
