#pragma once

#include <cmath>
#include <cstdint>

namespace wfe {

// Mergeable moment accumulator (Welford online update, Chan pairwise merge).
// Merging is associative and order-independent up to floating rounding, which
// is what makes chunked parallel reduction deterministic.
struct McSummary {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations from the mean

  void add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }

  double variance() const {
    return count >= 2 ? m2 / static_cast<double>(count - 1) : 0.0;
  }
  double stddev() const { return std::sqrt(variance()); }
  double se() const {
    return count >= 2 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
  }
};

inline McSummary mc_merge(const McSummary &a, const McSummary &b) {
  if (a.count == 0) return b;
  if (b.count == 0) return a;
  McSummary out;
  out.count = a.count + b.count;
  const double na = static_cast<double>(a.count);
  const double nb = static_cast<double>(b.count);
  const double n = na + nb;
  const double delta = b.mean - a.mean;
  out.mean = a.mean + delta * (nb / n);
  out.m2 = a.m2 + b.m2 + delta * delta * (na * nb / n);
  return out;
}

}  // namespace wfe
