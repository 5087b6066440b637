#pragma once

#include <charconv>
#include <ostream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "cantor4/spectral.hpp"

namespace cantor4 {

// Locale-independent shortest-faithful rendering at 12 significant digits.
// Identical inputs always produce identical bytes, which keeps emitted
// tables reproducible across runs and machines.
inline std::string format_sig12(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 12);
  if (res.ec != std::errc{}) throw std::runtime_error("format_sig12: conversion failed");
  return std::string(buf, res.ptr);
}

// One row per grid point: t, each component column, then the component sum.
// LF line endings regardless of platform.
inline void write_csv(std::ostream& os, const SpectralSample& sample, bool include_sum = true) {
  os << "t";
  for (const auto& label : sample.labels) os << "," << label;
  if (include_sum) {
    os << ",";
    for (std::size_t i = 0; i < sample.labels.size(); ++i)
      os << (i ? "_plus_" : "") << sample.labels[i];
  }
  os << "\n";
  for (std::size_t i = 0; i < sample.grid.size(); ++i) {
    os << format_sig12(sample.grid[i]);
    KahanSum row;
    for (std::size_t c = 0; c < sample.columns.size(); ++c) {
      os << "," << format_sig12(sample.columns[c][i]);
      row.add(sample.columns[c][i]);
    }
    if (include_sum) os << "," << format_sig12(row.value());
    os << "\n";
  }
}

inline nlohmann::json to_json(const SpectralSample& sample) {
  nlohmann::json j;
  j["meta"] = {{"system", sample.meta.system},
               {"level", sample.meta.level},
               {"factors", sample.meta.cfg.factors},
               {"domainRadius", sample.meta.cfg.domain_radius},
               {"tailBound", tail_bound(sample.meta.cfg)}};
  j["t"] = sample.grid;
  for (std::size_t c = 0; c < sample.labels.size(); ++c)
    j[sample.labels[c]] = sample.columns[c];
  return j;
}

}  // namespace cantor4
