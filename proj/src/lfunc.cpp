#include "sarg/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sarg/error.hpp"

namespace sarg {

namespace {

using std::numbers::pi;

void require_analytic_input(ComplexPoint s, const DirichletCharacter& chi) {
  if (!chi.is_primitive()) {
    throw DomainError("L-function evaluation requires a primitive character, got " + chi.label());
  }
  if (s.sigma < -2.0 || s.sigma > 50.0) throw DomainError("L-function evaluation: sigma outside [-2, 50]");
}

double series_tail_bound(ComplexPoint s, double bound, double n) {
  const double sigma = s.sigma;
  const double abs_s = std::abs(s.value());
  const double np = std::pow(n, -sigma);
  const double ln = std::log(n);
  const double value = bound * np * (1.0 + abs_s / sigma);
  const double deriv = bound * (ln * np + np / sigma + abs_s * (ln * np / sigma + np / (sigma * sigma)));
  return std::max(value, deriv);
}

LEvaluation evaluate_series(ComplexPoint s, const DirichletCharacter& chi, double target) {
  const double bound = character_partial_sum_bound(chi);
  const long long n_terms = series_terms_needed(s, bound, target);
  if (n_terms > 50'000'000) {
    throw PrecisionError("l_value: Dirichlet series too long at this sigma", series_tail_bound(s, bound, 5e7));
  }
  const cplx sv = s.value();
  cplx sum = 0.0, sum_ds = 0.0;
  for (long long n = 1; n <= n_terms; ++n) {
    const auto c = chi(n);
    if (c == 0.0) continue;
    const double lg = std::log(static_cast<double>(n));
    const cplx term = c * std::exp(-sv * lg);
    sum += term;
    sum_ds -= lg * term;
  }
  const double tail = n_terms > 1 ? series_tail_bound(s, bound, static_cast<double>(n_terms)) : 0.0;
  return {{sum, tail}, {sum_ds, tail}, LRoute::series};
}

LEvaluation evaluate_hurwitz(ComplexPoint s, const DirichletCharacter& chi, const EmConfig& per_term) {
  const int q = chi.modulus();
  const cplx sv = s.value();
  cplx sum = 0.0, sum_ds = 0.0;
  double err = 0.0, err_ds = 0.0;
  for (int r = 1; r < q; ++r) {
    const auto c = chi(r);
    if (c == 0.0) continue;
    auto z = hurwitz_zeta_regular(s, static_cast<double>(r) / q, per_term);
    if (!(z.value.abs_error <= per_term.target_abs_error) ||
        !(z.derivative.abs_error <= per_term.target_abs_error)) {
      throw PrecisionError("l_value: Hurwitz term misses its error target",
                           std::max(z.value.abs_error, z.derivative.abs_error));
    }
    sum += c * z.value.value;
    sum_ds += c * z.derivative.value;
    err += z.value.abs_error;
    err_ds += z.derivative.abs_error;
  }
  const double lq = std::log(static_cast<double>(q));
  const cplx scale = std::exp(-sv * lq);
  const double abs_scale = std::abs(scale);
  const cplx l = scale * sum;
  const cplx dl = scale * sum_ds - lq * l;
  return {{l, abs_scale * err}, {dl, abs_scale * (err_ds + lq * err)}, LRoute::hurwitz};
}

}  // namespace

double character_partial_sum_bound(const DirichletCharacter& chi) {
  cplx acc = 0.0;
  double best = 0.0;
  for (int n = 1; n <= chi.modulus(); ++n) {
    acc += chi(n);
    best = std::max(best, std::abs(acc));
  }
  return std::max(best, 1.0);
}

long long series_terms_needed(ComplexPoint s, double bound, double target) {
  if (s.sigma <= 1.0) throw DomainError("series_terms_needed: Dirichlet series diverges for sigma <= 1");
  auto ok = [&](double n) { return series_tail_bound(s, bound, n) <= target; };
  long long lo = 2;
  if (ok(static_cast<double>(lo))) return lo;
  long long hi = 4;
  while (!ok(static_cast<double>(hi))) {
    lo = hi;
    hi *= 2;
    if (hi > (1LL << 40)) return hi;
  }
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    (ok(static_cast<double>(mid)) ? hi : lo) = mid;
  }
  return hi;
}

LEvaluation l_evaluate(ComplexPoint s, const DirichletCharacter& chi, LRoute route, double target) {
  require_analytic_input(s, chi);
  const int q = chi.modulus();
  EmConfig per_term = EmConfig::tuned_for(s, target / q);
  if (route == LRoute::automatic) {
    route = LRoute::hurwitz;
    if (s.sigma >= kSeriesSwitchSigma) {
      const long long n_series = series_terms_needed(s, character_partial_sum_bound(chi), target);
      const long long hurwitz_cost =
          static_cast<long long>(euler_phi(q)) * (per_term.cutoff_terms + per_term.correction_order);
      if (n_series <= std::max<long long>(64, hurwitz_cost)) route = LRoute::series;
    }
  }
  if (route == LRoute::series) return evaluate_series(s, chi, target);
  return evaluate_hurwitz(s, chi, per_term);
}

LEvaluation l_evaluate(ComplexPoint s, const DirichletCharacter& chi, const EmConfig& cfg, LRoute route) {
  require_analytic_input(s, chi);
  cfg.validate();
  if (route == LRoute::series ||
      (route == LRoute::automatic && s.sigma >= kSeriesSwitchSigma &&
       series_terms_needed(s, character_partial_sum_bound(chi), cfg.target_abs_error) <=
           static_cast<long long>(euler_phi(chi.modulus())) * (cfg.cutoff_terms + cfg.correction_order))) {
    return evaluate_series(s, chi, cfg.target_abs_error);
  }
  EmConfig per_term = cfg;
  per_term.target_abs_error = cfg.target_abs_error / chi.modulus();
  return evaluate_hurwitz(s, chi, per_term);
}

cplx l_value(ComplexPoint s, const DirichletCharacter& chi, const EmConfig& cfg) {
  return l_evaluate(s, chi, cfg).value.value;
}

cplx l_value(ComplexPoint s, const DirichletCharacter& chi) { return l_evaluate(s, chi).value.value; }

namespace {
cplx log_deriv_from(const LEvaluation& ev) {
  const double mag = std::abs(ev.value.value);
  if (mag <= kNearZeroThreshold) {
    throw NearZeroError("l_log_deriv: |L| too small to divide by", mag);
  }
  return ev.derivative.value / ev.value.value;
}
}  // namespace

cplx l_log_deriv(ComplexPoint s, const DirichletCharacter& chi, const EmConfig& cfg) {
  return log_deriv_from(l_evaluate(s, chi, cfg));
}

cplx l_log_deriv(ComplexPoint s, const DirichletCharacter& chi) { return log_deriv_from(l_evaluate(s, chi)); }

cplx log_archimedean_factor(ComplexPoint s, const DirichletCharacter& chi) {
  const double a = chi.parity();
  const cplx half = (s.value() + a) / 2.0;
  return half * std::log(chi.modulus() / pi) + lngamma(half);
}

CompletedValue completed(ComplexPoint s, const DirichletCharacter& chi) {
  CompletedValue out;
  out.l_value = l_value(s, chi);
  out.log_archimedean = log_archimedean_factor(s, chi);
  out.gamma_phase = out.log_archimedean.imag();
  out.lambda = std::exp(out.log_archimedean) * out.l_value;
  return out;
}

cplx RootNumber::sqrt_epsilon() const {
  const cplx r = std::sqrt(epsilon);
  return sqrt_branch == SqrtBranch::plus ? r : -r;
}

RootNumber root_number(const DirichletCharacter& chi) {
  const cplx tau = gauss_sum(chi);
  const cplx i_a = chi.parity() == 0 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
  return {tau / (i_a * std::sqrt(static_cast<double>(chi.modulus()))), SqrtBranch::plus};
}

double hardy_theta(double t, const DirichletCharacter& chi) {
  const RootNumber eps = root_number(chi);
  return log_archimedean_factor({0.5, t}, chi).imag() - std::arg(eps.sqrt_epsilon());
}

cplx hardy_rotated(double t, const DirichletCharacter& chi) {
  return std::polar(1.0, hardy_theta(t, chi)) * l_value({0.5, t}, chi);
}

double hardy_z(double t, const DirichletCharacter& chi) {
  const cplx rot = hardy_rotated(t, chi);
  if (std::abs(rot.imag()) > 1e-9 * (1.0 + std::abs(rot.real()))) {
    throw PrecisionError("hardy_z: rotated value is not real", std::abs(rot.imag()));
  }
  const double magnitude = std::exp(log_archimedean_factor({0.5, t}, chi).real());
  return magnitude * rot.real();
}

}  // namespace sarg
