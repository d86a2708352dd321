#pragma once

#include <complex>

#include "sarg/characters.hpp"
#include "sarg/numerics.hpp"

namespace sarg {

/// Which expansion evaluates L(s, chi).
enum class LRoute {
  automatic,  ///< Dirichlet series for sigma >= 2.5 when cheaper, Hurwitz otherwise
  hurwitz,    ///< q^{-s} sum_r chi(r) zeta(s, r/q)
  series,     ///< truncated Dirichlet series with a partial-summation tail bound
};

inline constexpr double kSeriesSwitchSigma = 2.5;
inline constexpr double kNearZeroThreshold = 1e-12;
inline constexpr double kDefaultLTarget = 1e-12;

struct LEvaluation {
  Estimate value;       ///< L(s, chi)
  Estimate derivative;  ///< L'(s, chi)
  LRoute route = LRoute::automatic;
};

/// L and L' at s. Without cfg the Euler-Maclaurin cutoff is tuned to the target.
LEvaluation l_evaluate(ComplexPoint s, const DirichletCharacter& chi, LRoute route = LRoute::automatic,
                       double target_abs_error = kDefaultLTarget);
LEvaluation l_evaluate(ComplexPoint s, const DirichletCharacter& chi, const EmConfig& cfg,
                       LRoute route = LRoute::automatic);

/// L(s, chi) for primitive chi mod q > 1, sigma in [-2, 50].
std::complex<double> l_value(ComplexPoint s, const DirichletCharacter& chi, const EmConfig& cfg);
std::complex<double> l_value(ComplexPoint s, const DirichletCharacter& chi);

/// L'/L(s, chi); throws NearZeroError when |L| <= 1e-12.
std::complex<double> l_log_deriv(ComplexPoint s, const DirichletCharacter& chi, const EmConfig& cfg);
std::complex<double> l_log_deriv(ComplexPoint s, const DirichletCharacter& chi);

/// Maximum of |sum_{n <= u} chi(n)| over u; bounds the Dirichlet-series tails.
double character_partial_sum_bound(const DirichletCharacter& chi);

/// Number of Dirichlet-series terms needed for |tail| <= target (value and derivative).
long long series_terms_needed(ComplexPoint s, double partial_sum_bound, double target_abs_error);

struct CompletedValue {
  std::complex<double> lambda;   ///< (q/pi)^{(s+a)/2} Gamma((s+a)/2) L(s, chi)
  double gamma_phase = 0.0;      ///< arg of the archimedean factor (continuous branch)
  std::complex<double> l_value;
  std::complex<double> log_archimedean;  ///< ((s+a)/2) log(q/pi) + lngamma((s+a)/2)
};

CompletedValue completed(ComplexPoint s, const DirichletCharacter& chi);

/// ((s+a)/2) log(q/pi) + lngamma((s+a)/2); requires Re(s) > -a.
std::complex<double> log_archimedean_factor(ComplexPoint s, const DirichletCharacter& chi);

enum class SqrtBranch { plus, minus };

struct RootNumber {
  std::complex<double> epsilon;
  SqrtBranch sqrt_branch = SqrtBranch::plus;
  /// epsilon^{1/2} on the recorded branch (plus = principal square root).
  std::complex<double> sqrt_epsilon() const;
};

/// epsilon(chi) = tau(chi) / (i^a sqrt q); principal square-root branch.
RootNumber root_number(const DirichletCharacter& chi);

/// theta(t) such that exp(i theta(t)) L(1/2+it, chi) is real:
/// Im log_archimedean(1/2+it) - arg(epsilon)/2.
double hardy_theta(double t, const DirichletCharacter& chi);

/// exp(i theta(t)) L(1/2+it, chi); real up to rounding.
std::complex<double> hardy_rotated(double t, const DirichletCharacter& chi);

/// Z(t, chi) = epsilon^{-1/2} Lambda(1/2+it, chi) (real). Throws PrecisionError if the
/// rotated value has |Im| > 1e-9 (1 + |Re|) in units of the archimedean magnitude.
double hardy_z(double t, const DirichletCharacter& chi);

}  // namespace sarg
