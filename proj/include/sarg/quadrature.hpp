#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <vector>

#include "sarg/error.hpp"

namespace sarg {

struct QuadratureResult {
  std::complex<double> value;
  double abs_error = 0.0;
  int evaluations = 0;
  int segments = 0;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod nodes on [-1, 1] (non-negative half).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
QuadratureResult gk15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const std::complex<double> fc = f(c);
  std::complex<double> kron = kKronrodWeights[7] * fc;
  std::complex<double> gauss = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kKronrodNodes[i];
    const std::complex<double> pair = f(c - dx) + f(c + dx);
    kron += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kron *= h;
  gauss *= h;
  return {kron, std::abs(kron - gauss), 15, 1};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of a complex integrand.
/// Splits the worst segment until the summed error estimate meets abs_tol.
/// Throws RefinementError carrying the achieved estimate if max_segments is hit.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol, int max_segments = 2000) {
  struct Segment {
    double a, b;
    QuadratureResult r;
    bool operator<(const Segment& o) const { return r.abs_error < o.r.abs_error; }
  };
  std::priority_queue<Segment> heap;
  auto first = detail::gk15(f, a, b);
  QuadratureResult total = first;
  heap.push({a, b, first});
  while (total.abs_error > abs_tol) {
    if (total.segments >= max_segments) {
      throw RefinementError("integrate_adaptive: segment budget exhausted", total.abs_error);
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::gk15(f, worst.a, mid);
    auto right = detail::gk15(f, mid, worst.b);
    total.value += left.value + right.value - worst.r.value;
    total.abs_error += left.abs_error + right.abs_error - worst.r.abs_error;
    total.evaluations += 30;
    total.segments += 1;
    heap.push({worst.a, mid, left});
    heap.push({mid, worst.b, right});
    if (total.abs_error <= abs_tol) {
      // resum to clear accumulated rounding in the running totals
      std::complex<double> v = 0.0;
      double e = 0.0;
      auto copy = heap;
      while (!copy.empty()) {
        v += copy.top().r.value;
        e += copy.top().r.abs_error;
        copy.pop();
      }
      total.value = v;
      total.abs_error = e;
    }
  }
  return total;
}

}  // namespace sarg
