#include "sarg/numerics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sarg/error.hpp"

namespace sarg {

namespace mp = boost::multiprecision;

ComplexPoint::ComplexPoint(double sigma_, double t_) : sigma(sigma_), t(t_) {
  if (!std::isfinite(sigma) || !std::isfinite(t)) {
    throw DomainError("ComplexPoint: non-finite component");
  }
}

namespace {

constexpr int kMaxBernoulli = 60;

struct BernoulliCache {
  std::vector<mp::cpp_rational> exact;  // B_0 .. B_60
  std::array<double, kMaxBernoulli + 1> approx{};
  // |B_2j| / (2j)! for j = 0..30
  std::array<double, kMaxBernoulli / 2 + 1> scaled{};

  BernoulliCache() : exact(kMaxBernoulli + 1) {
    exact[0] = 1;
    for (int m = 1; m <= kMaxBernoulli; ++m) {
      // sum_{j=0}^{m} C(m+1, j) B_j = 0
      mp::cpp_rational acc = 0;
      mp::cpp_int binom = 1;  // C(m+1, 0)
      for (int j = 0; j < m; ++j) {
        acc += mp::cpp_rational(binom) * exact[j];
        binom = binom * (m + 1 - j) / (j + 1);
      }
      exact[m] = -acc / (m + 1);
    }
    for (int k = 0; k <= kMaxBernoulli; ++k) approx[k] = exact[k].convert_to<double>();
    mp::cpp_int fact = 1;
    for (int j = 0; j <= kMaxBernoulli / 2; ++j) {
      if (j > 0) fact *= (2 * j - 1) * (2 * j);
      mp::cpp_rational r = exact[2 * j] / mp::cpp_rational(fact);
      scaled[j] = std::abs(r.convert_to<double>());
    }
  }
};

const BernoulliCache& bernoulli_cache() {
  static const BernoulliCache cache;
  return cache;
}

void check_even_index(int k) {
  if (k < 2 || k > kMaxBernoulli || k % 2 != 0) {
    throw DomainError("bernoulli: index must be even and in [2, 60], got " + std::to_string(k));
  }
}

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

cplx stirling_lngamma(cplx w) {
  const auto& c = bernoulli_cache();
  cplx result = (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * std::numbers::pi);
  const cplx inv = 1.0 / w;
  const cplx inv2 = inv * inv;
  cplx pw = inv;
  for (int k = 1; k <= 12; ++k) {
    result += c.approx[2 * k] / (2.0 * k * (2.0 * k - 1.0)) * pw;
    pw *= inv2;
  }
  return result;
}

// Bound of the remainder after m corrections, for the value and its s-derivative.
struct RemainderBounds {
  double value;
  double derivative;
};

RemainderBounds remainder_bounds(cplx s, double base, int m, double abs_rising, double abs_rising_ds) {
  const double sigma = s.real();
  const double expo = sigma + 2.0 * m - 1.0;
  if (expo <= 0.0) {
    return {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  }
  const double scaled = bernoulli_cache().scaled[m];
  const double tail = std::pow(base, -expo) / expo;
  const double value = scaled * abs_rising * tail;
  const double deriv = scaled * (abs_rising_ds * tail + abs_rising * tail * (std::log(base) + 1.0 / expo));
  return {value, deriv};
}

}  // namespace

double BernoulliNumber::to_double() const {
  return mp::cpp_rational(numerator, denominator).convert_to<double>();
}

std::string BernoulliNumber::str() const { return numerator.str() + "/" + denominator.str(); }

BernoulliNumber bernoulli(int k) {
  check_even_index(k);
  const auto& r = bernoulli_cache().exact[k];
  return {mp::numerator(r), mp::denominator(r)};
}

double bernoulli_double(int k) {
  check_even_index(k);
  return bernoulli_cache().approx[k];
}

cplx lngamma(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("lngamma: non-finite argument");
  }
  if (is_nonpositive_integer(z)) {
    throw DomainError("lngamma: pole at non-positive integer");
  }
  cplx shift = 0.0;
  cplx w = z;
  while (w.real() < 10.0) {
    shift += std::log(w);
    w += 1.0;
  }
  return stirling_lngamma(w) - shift;
}

void EmConfig::validate() const {
  if (cutoff_terms < 10) throw DomainError("EmConfig: cutoff_terms must be >= 10");
  if (correction_order < 1 || correction_order > 30) {
    throw DomainError("EmConfig: correction_order must be in [1, 30]");
  }
  if (!(target_abs_error > 0.0)) throw DomainError("EmConfig: target_abs_error must be > 0");
}

EmConfig EmConfig::defaults_for(double t, double target_abs_error) {
  EmConfig cfg;
  cfg.cutoff_terms = std::max(30, static_cast<int>(std::ceil(2.0 * std::abs(t))));
  cfg.correction_order = 12;
  cfg.target_abs_error = target_abs_error;
  return cfg;
}

double hurwitz_remainder_bound(ComplexPoint sp, double alpha, int cutoff_terms, int correction_order) {
  const cplx s = sp.value();
  const double base = cutoff_terms + alpha;
  double best = std::numeric_limits<double>::infinity();
  cplx rising = 1.0;     // (s)_k
  cplx rising_ds = 0.0;  // d/ds (s)_k
  for (int k = 0; k < 2 * correction_order; ++k) {
    rising_ds = rising_ds * (s + double(k)) + rising;
    rising *= (s + double(k));
    if ((k + 1) % 2 == 0) {
      const int m = (k + 1) / 2;
      auto b = remainder_bounds(s, base, m, std::abs(rising), std::abs(rising_ds));
      best = std::min(best, std::max(b.value, b.derivative));
    }
  }
  return best;
}

EmConfig EmConfig::tuned_for(ComplexPoint s, double target_abs_error) {
  EmConfig cfg;
  cfg.correction_order = 12;
  cfg.target_abs_error = target_abs_error;
  // alpha -> 0 is the worst case of the bound; the result holds for every alpha in (0, 1].
  auto ok = [&](int n) { return hurwitz_remainder_bound(s, 0.0, n, 12) <= target_abs_error; };
  int lo = 10;
  if (ok(lo)) {
    cfg.cutoff_terms = lo;
    return cfg;
  }
  int hi = 20;
  while (!ok(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > (1 << 24)) {
      cfg.cutoff_terms = hi;
      return cfg;
    }
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  cfg.cutoff_terms = hi;
  return cfg;
}

namespace {

// (N+a)^{1-s}/(s-1) minus the pole 1/(s-1), and its s-derivative; finite at s = 1.
std::pair<cplx, cplx> regular_integral_term(cplx s, double log_base) {
  const cplx w = s - 1.0;
  const cplx x = -w * log_base;
  if (std::abs(x) > 0.1) {
    const cplx e = std::exp(x);
    return {(e - 1.0) / w, (-log_base * e * w - (e - 1.0)) / (w * w)};
  }
  // (e^x - 1)/w = sum_{k>=1} (-L)^k w^{k-1} / k!
  cplx value = 0.0, deriv = 0.0;
  cplx lk = -log_base;  // (-L)^k
  cplx wk = 1.0;        // w^{k-1}
  cplx wk2 = 0.0;       // w^{k-2}
  double fact = 1.0;
  for (int k = 1; k <= 30; ++k) {
    fact *= k;
    value += lk * wk / fact;
    if (k >= 2) deriv += double(k - 1) * lk * wk2 / fact;
    wk2 = wk;
    wk *= w;
    lk *= -log_base;
  }
  return {value, deriv};
}

ValueAndDerivative hurwitz_expansion(ComplexPoint sp, double alpha, const EmConfig& cfg, bool subtract_pole) {
  cfg.validate();
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("hurwitz_zeta: alpha must lie in (0, 1]");
  const cplx s = sp.value();
  if (!subtract_pole && sp.sigma == 1.0 && sp.t == 0.0) throw PoleError("hurwitz_zeta: pole at s = 1");

  const int n_terms = cfg.cutoff_terms;
  cplx sum = 0.0;
  cplx sum_ds = 0.0;
  for (int n = 0; n < n_terms; ++n) {
    const double lg = std::log(n + alpha);
    const cplx term = std::exp(-s * lg);
    sum += term;
    sum_ds -= lg * term;
  }

  const double base = n_terms + alpha;
  const double log_base = std::log(base);
  const cplx base_pow = std::exp(-s * log_base);  // (N+a)^{-s}
  auto [integral, integral_ds] = regular_integral_term(s, log_base);
  if (!subtract_pole) {
    const cplx w = s - 1.0;
    integral += 1.0 / w;
    integral_ds -= 1.0 / (w * w);
  }
  sum += integral + 0.5 * base_pow;
  sum_ds += integral_ds - 0.5 * log_base * base_pow;

  // Corrections B_2j/(2j)! (s)_{2j-1} (N+a)^{1-s-2j}, stopping at the smallest remainder bound.
  const auto& cache = bernoulli_cache();
  const double inv_base = 1.0 / base;
  const double inv_base2 = inv_base * inv_base;
  cplx rising = 1.0;
  cplx rising_ds = 0.0;
  cplx pw = base_pow * inv_base;  // (N+a)^{-s-1}
  cplx corr = 0.0, corr_ds = 0.0;
  cplx best_corr = 0.0, best_corr_ds = 0.0;
  RemainderBounds best{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (int j = 1; j <= cfg.correction_order; ++j) {
    // advance (s)_k to k = 2j-1
    for (int k = (j == 1 ? 0 : 2 * j - 3); k < 2 * j - 1; ++k) {
      rising_ds = rising_ds * (s + double(k)) + rising;
      rising *= (s + double(k));
    }
    const double b_over_fact = (cache.approx[2 * j] < 0 ? -1.0 : 1.0) * cache.scaled[j];
    corr += b_over_fact * rising * pw;
    corr_ds += b_over_fact * (rising_ds - rising * log_base) * pw;

    // remainder after j corrections needs (s)_{2j}
    const cplx r2 = rising * (s + double(2 * j - 1));
    const cplx r2_ds = rising_ds * (s + double(2 * j - 1)) + rising;
    auto b = remainder_bounds(s, base, j, std::abs(r2), std::abs(r2_ds));
    if (std::max(b.value, b.derivative) < std::max(best.value, best.derivative)) {
      best = b;
      best_corr = corr;
      best_corr_ds = corr_ds;
    }
    pw *= inv_base2;
  }

  ValueAndDerivative out;
  out.value = {sum + best_corr, best.value};
  out.derivative = {sum_ds + best_corr_ds, best.derivative};
  return out;
}

}  // namespace

ValueAndDerivative hurwitz_zeta_with_ds(ComplexPoint s, double alpha, const EmConfig& cfg) {
  return hurwitz_expansion(s, alpha, cfg, false);
}

ValueAndDerivative hurwitz_zeta_regular(ComplexPoint s, double alpha, const EmConfig& cfg) {
  return hurwitz_expansion(s, alpha, cfg, true);
}

Estimate hurwitz_zeta(ComplexPoint s, double alpha, const EmConfig& cfg) {
  auto r = hurwitz_zeta_with_ds(s, alpha, cfg);
  if (!(r.value.abs_error <= cfg.target_abs_error)) {
    throw PrecisionError("hurwitz_zeta: remainder bound exceeds target", r.value.abs_error);
  }
  return r.value;
}

Estimate hurwitz_zeta_ds(ComplexPoint s, double alpha, const EmConfig& cfg) {
  auto r = hurwitz_zeta_with_ds(s, alpha, cfg);
  if (!(r.derivative.abs_error <= cfg.target_abs_error)) {
    throw PrecisionError("hurwitz_zeta_ds: remainder bound exceeds target", r.derivative.abs_error);
  }
  return r.derivative;
}

}  // namespace sarg
