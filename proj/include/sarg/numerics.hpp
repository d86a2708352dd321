#pragma once

#include <complex>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace sarg {

using cplx = std::complex<double>;

/// A point s = sigma + i t of the complex plane.
struct ComplexPoint {
  double sigma = 0.0;
  double t = 0.0;

  ComplexPoint() = default;
  ComplexPoint(double sigma_, double t_);
  explicit ComplexPoint(cplx z) : ComplexPoint(z.real(), z.imag()) {}

  cplx value() const { return {sigma, t}; }
  ComplexPoint conj() const { return {sigma, -t}; }
};

/// Euler-Maclaurin truncation: N explicit terms, M Bernoulli corrections.
struct EmConfig {
  int cutoff_terms = 30;
  int correction_order = 12;
  double target_abs_error = 1e-12;

  /// Throws DomainError unless N >= 10, 1 <= M <= 30 and target > 0.
  void validate() const;

  /// N = max(30, ceil(2|t|)), M = 12.
  static EmConfig defaults_for(double t, double target_abs_error = 1e-12);

  /// Smallest N (M = 12) whose a-priori remainder bound at s meets the target.
  static EmConfig tuned_for(ComplexPoint s, double target_abs_error);
};

/// A value together with a bound on its absolute error.
struct Estimate {
  cplx value;
  double abs_error = 0.0;
};

struct ValueAndDerivative {
  Estimate value;
  Estimate derivative;
};

struct BernoulliNumber {
  boost::multiprecision::cpp_int numerator;
  boost::multiprecision::cpp_int denominator;

  double to_double() const;
  std::string str() const;
};

/// Exact B_k for even k in [2, 60]; computed once and cached.
BernoulliNumber bernoulli(int k);

/// B_k in double precision, even k in [2, 60].
double bernoulli_double(int k);

/// Principal branch of log Gamma(z), analytic on C minus (-inf, 0].
cplx lngamma(cplx z);
inline cplx lngamma(ComplexPoint z) { return lngamma(z.value()); }

/// Hurwitz zeta(s, alpha) by Euler-Maclaurin with a rigorous remainder bound.
/// Throws PoleError at s = 1 and PrecisionError if the bound exceeds the target.
Estimate hurwitz_zeta(ComplexPoint s, double alpha, const EmConfig& cfg);

/// d/ds zeta(s, alpha), term-wise derivative of the same expansion.
Estimate hurwitz_zeta_ds(ComplexPoint s, double alpha, const EmConfig& cfg);

/// Both of the above from one pass over the summands.
ValueAndDerivative hurwitz_zeta_with_ds(ComplexPoint s, double alpha, const EmConfig& cfg);

/// zeta(s, alpha) - 1/(s-1) and its derivative; finite at s = 1. Combinations
/// sum_r c_r zeta(s, r/q) with sum_r c_r = 0 are unaffected by the subtraction.
ValueAndDerivative hurwitz_zeta_regular(ComplexPoint s, double alpha, const EmConfig& cfg);

/// Remainder bound of the expansion with the given N and M, without summing.
double hurwitz_remainder_bound(ComplexPoint s, double alpha, int cutoff_terms, int correction_order);

/// Principal argument of z, in (-pi, pi].
inline double principal_arg(cplx z) { return std::arg(z); }

}  // namespace sarg
