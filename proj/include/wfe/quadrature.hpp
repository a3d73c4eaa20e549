#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <stdexcept>
#include <vector>

namespace wfe {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 10000;
};

struct QuadratureResult {
  double value = 0.0;
  double err_estimate = 0.0;
};

// Thrown when the subdivision budget is exhausted; carries the partial value.
class QuadratureFailure : public std::runtime_error {
 public:
  QuadratureFailure(double partial, double err)
      : std::runtime_error("adaptive quadrature did not converge"),
        partial_value(partial),
        err_estimate(err) {}
  double partial_value;
  double err_estimate;
};

namespace gk15 {
// 15-point Kronrod extension of the 7-point Gauss rule on [-1,1].
// Even-index abscissae are the Kronrod-only points, odd-index the Gauss points.
inline constexpr double nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};
}  // namespace gk15

namespace detail {

template <class F>
inline void gk15_segment(F &&f, double a, double b, double &value, double &err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = gk15::wk[7] * fc;
  double gauss = gk15::wg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * gk15::nodes[i];
    const double fsum = f(c - dx) + f(c + dx);
    kron += gk15::wk[i] * fsum;
    if (i % 2 == 1) gauss += gk15::wg[i / 2] * fsum;
  }
  value = kron * h;
  err = std::abs((kron - gauss) * h);
}

struct Segment {
  double a, b, value, err;
  bool operator<(const Segment &o) const { return err < o.err; }
};

}  // namespace detail

// Adaptive Gauss-Kronrod (G7,K15), worst-segment-first bisection.
// Stops when the summed error estimate meets max(abs_tol, rel_tol*|I|).
template <class F>
QuadratureResult adaptive_quadrature(F &&f, double a, double b, const QuadratureSpec &spec = {}) {
  if (!(a <= b)) throw std::invalid_argument("adaptive_quadrature: requires a <= b");
  if (a == b) return {0.0, 0.0};
  std::priority_queue<detail::Segment> segs;
  detail::Segment s0{a, b, 0.0, 0.0};
  detail::gk15_segment(f, a, b, s0.value, s0.err);
  segs.push(s0);
  double total = s0.value;
  double total_err = s0.err;
  for (int n = 0; n < spec.max_subdivisions; ++n) {
    if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) break;
    const detail::Segment worst = segs.top();
    segs.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    detail::Segment left{worst.a, mid, 0.0, 0.0}, right{mid, worst.b, 0.0, 0.0};
    detail::gk15_segment(f, left.a, left.b, left.value, left.err);
    detail::gk15_segment(f, right.a, right.b, right.value, right.err);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    segs.push(left);
    segs.push(right);
  }
  if (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) ||
      !std::isfinite(total))
    throw QuadratureFailure(total, total_err);
  return {total, total_err};
}

}  // namespace wfe
