#include "sarg/explicit_formula.hpp"

#include <cmath>
#include <numbers>

#include "sarg/error.hpp"
#include "sarg/lfunc.hpp"

namespace sarg {

namespace {

using std::numbers::pi;

void require_zero_set_for(const ZeroSet& zeros, const DirichletCharacter& chi) {
  if (zeros.upper.label != chi.label()) {
    throw IntegrityError("zero set for " + zeros.upper.label + " used with " + chi.label());
  }
}

// Bound for sum_{|gamma - t| > H} 1/(gamma - t)^2 from the zero density.
double density_tail(int q, double t, double window) {
  return 2.0 / window + (1.0 / pi) * std::log(q * (std::abs(t) + window + 3.0)) * (2.0 / window);
}

void require_window(const ZeroSet& zeros, double t, double window) {
  if (!zeros.certified()) throw CertificationError("zero sum: zero lists are not certified");
  if (!(window > 0.0)) throw DomainError("zero sum: window must be positive");
  if (zeros.height() < std::abs(t) + window) {
    throw CertificationError("zero sum: zeros known to T = " + std::to_string(zeros.height()) +
                             " but |t| + H = " + std::to_string(std::abs(t) + window));
  }
}

}  // namespace

ExplicitFormulaParams::ExplicitFormulaParams(double x, double t) : x_(x), t_(t) {
  if (!(t >= 2.0)) throw DomainError("explicit formula parameters: t must be >= 2");
  if (!(x >= 4.0 && x <= t * t)) throw DomainError("explicit formula parameters: need 4 <= x <= t^2");
}

VonMangoldtTable::VonMangoldtTable(std::int64_t limit) : limit_(limit), base_(static_cast<std::size_t>(limit + 1), 0) {
  if (limit < 1) throw DomainError("VonMangoldtTable: limit must be >= 1");
  std::vector<bool> composite(static_cast<std::size_t>(limit + 1), false);
  for (std::int64_t p = 2; p <= limit; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    for (std::int64_t m = p * p; m <= limit; m += p) composite[static_cast<std::size_t>(m)] = true;
    for (std::int64_t pk = p; pk <= limit; pk *= p) {
      base_[static_cast<std::size_t>(pk)] = p;
      if (pk > limit / p) break;
    }
  }
}

double VonMangoldtTable::operator()(std::int64_t n) const {
  if (n < 1 || n > limit_) throw DomainError("VonMangoldtTable: n outside [1, limit]");
  const auto p = base_[static_cast<std::size_t>(n)];
  return p ? std::log(static_cast<double>(p)) : 0.0;
}

WeightedLambdaTable::WeightedLambdaTable(double x)
    : x_(x), last_(static_cast<std::int64_t>(std::ceil(x * x)) - 1), lambda_(std::max<std::int64_t>(last_, 1)) {
  if (!(x >= 2.0 && x <= 1000.0)) throw DomainError("WeightedLambdaTable: x must lie in [2, 1000]");
}

double WeightedLambdaTable::weighted(std::int64_t n) const {
  if (n < 1) throw DomainError("WeightedLambdaTable: n must be >= 1");
  if (n > last_) return 0.0;
  const double lam = lambda_(n);
  if (lam == 0.0 || static_cast<double>(n) <= x_) return lam;
  return lam * std::log(x_ * x_ / static_cast<double>(n)) / std::log(x_);
}

double lambda_x(std::int64_t n, double x) {
  if (n < 1) throw DomainError("lambda_x: n must be >= 1");
  if (!(x >= 2.0)) throw DomainError("lambda_x: x must be >= 2");
  const double nd = static_cast<double>(n);
  if (nd >= x * x) return 0.0;
  // Lambda(n) by trial division
  std::int64_t m = n, p = 0;
  for (std::int64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      p = d;
      while (m % d == 0) m /= d;
      break;
    }
  }
  if (p == 0) {
    if (n < 2) return 0.0;
    p = n;
    m = 1;
  }
  if (m != 1) return 0.0;
  const double lam = std::log(static_cast<double>(p));
  if (nd <= x) return lam;
  return lam * std::log(x * x / nd) / std::log(x);
}

std::complex<double> truncated_sum(ComplexPoint s, const DirichletCharacter& chi, double x) {
  const WeightedLambdaTable table(x);
  const cplx sv = s.value();
  cplx acc = 0.0;
  for (std::int64_t n = 2; n <= table.last(); ++n) {
    const double w = table.weighted(n);
    if (w == 0.0) continue;
    const auto c = chi(n);
    if (c == 0.0) continue;
    acc += w * c * std::exp(-sv * std::log(static_cast<double>(n)));
  }
  return acc;
}

TruncatedSumResult trivial_zero_sum(ComplexPoint s, double x, int parity, int terms) {
  if (!(x > 1.0)) throw DomainError("trivial_zero_sum: x must exceed 1");
  if (parity != 0 && parity != 1) throw DomainError("trivial_zero_sum: parity must be 0 or 1");
  if (terms < 0) throw DomainError("trivial_zero_sum: negative term count");
  const cplx sv = s.value();
  const double lx = std::log(x);
  cplx acc = 0.0;
  for (int k = 0; k <= terms; ++k) {
    const cplx w = 2.0 * k + parity + sv;  // s + 2k + a
    if (std::abs(w) == 0.0) throw DomainError("trivial_zero_sum: s coincides with a trivial zero");
    acc += (std::exp(-w * lx) - std::exp(-2.0 * w * lx)) / (w * w);
  }
  TruncatedSumResult r;
  r.value = acc / lx;
  r.terms_used = terms + 1;
  const double e = 2.0 * terms + parity + s.sigma;
  r.tail_estimate = e > 0.0 ? (1.0 / lx) * 2.0 * std::pow(x, -e) / (e * e * (1.0 - 1.0 / (x * x)))
                            : std::numeric_limits<double>::infinity();
  return r;
}

TruncatedSumResult nontrivial_zero_sum(ComplexPoint s, double x, const ZeroSet& zeros, double window) {
  if (!(x > 1.0)) throw DomainError("nontrivial_zero_sum: x must exceed 1");
  require_window(zeros, s.t, window);
  const cplx sv = s.value();
  const double lx = std::log(x);
  cplx acc = 0.0;
  long used = 0;
  for (double g : zeros.ordinates_within(s.t, window)) {
    const cplx z = cplx(0.5, g) - sv;  // rho - s
    if (std::abs(z) == 0.0) throw DomainError("nontrivial_zero_sum: s is a zero");
    acc += (std::exp(z * lx) - std::exp(2.0 * z * lx)) / (z * z);
    ++used;
  }
  TruncatedSumResult r;
  r.value = acc / lx;
  r.terms_used = used;
  r.tail_estimate = (std::pow(x, 0.5 - s.sigma) + std::pow(x, 1.0 - 2.0 * s.sigma)) / lx *
                    density_tail(zeros.modulus(), s.t, window);
  return r;
}

TruncatedSumResult zero_kernel_sum(double t, double x, const ZeroSet& zeros, double window) {
  if (!(x > 1.0)) throw DomainError("zero_kernel_sum: x must exceed 1");
  require_window(zeros, t, window);
  const double d = 1.0 / std::log(x);  // sigma_1 - 1/2
  double acc = 0.0;
  long used = 0;
  for (double g : zeros.ordinates_within(t, window)) {
    acc += d / (d * d + (t - g) * (t - g));
    ++used;
  }
  return {acc, d * density_tail(zeros.modulus(), t, window), used};
}

double effective_window(const ZeroSet& zeros, double t, double requested) {
  const double w = std::min(requested, zeros.height() - std::abs(t));
  if (!(w > 0.0)) {
    throw CertificationError("zero window: zeros known only to T = " + std::to_string(zeros.height()));
  }
  return w;
}

nlohmann::json ResidualReport::to_json() const {
  nlohmann::json j;
  j["check"] = check;
  j["character"] = character;
  j["inputs"] = inputs;
  j["value"] = {value.real(), value.imag()};
  j["residual"] = residual;
  j["tail_estimate"] = tail_estimate;
  j["threshold"] = threshold;
  j["pass"] = pass;
  j["margins"] = margins;
  return j;
}

ResidualReport verify_lemma2(ComplexPoint s, const DirichletCharacter& chi, double x, const ZeroSet& zeros,
                             double window) {
  require_zero_set_for(zeros, chi);
  if (!(x > 1.0)) throw DomainError("verify_lemma2: x must exceed 1");
  const double h = effective_window(zeros, s.t, window);
  const cplx lhs = l_log_deriv(s, chi);
  const cplx trunc = truncated_sum(s, chi, x);
  const auto triv = trivial_zero_sum(s, x, chi.parity());
  const auto nontriv = nontrivial_zero_sum(s, x, zeros, h);
  const cplx rhs = -trunc + triv.value + nontriv.value;

  ResidualReport r;
  r.check = "lemma2";
  r.character = chi.label();
  r.inputs = {{"sigma", s.sigma}, {"t", s.t}, {"x", x}, {"H", h}, {"T", zeros.height()}};
  r.value = rhs;
  r.residual = std::abs(lhs - rhs);
  r.tail_estimate = triv.tail_estimate + nontriv.tail_estimate;
  r.threshold = 2.0 * r.tail_estimate + 1e-8;
  r.pass = r.residual <= r.threshold;
  r.margins = {{"threshold_minus_residual", r.threshold - r.residual},
               {"log_deriv_re", lhs.real()},
               {"log_deriv_im", lhs.imag()}};
  return r;
}

ResidualReport verify_eq3(double t, const DirichletCharacter& chi, double x, const ZeroSet& zeros, double window) {
  require_zero_set_for(zeros, chi);
  if (!(t >= 2.0)) throw DomainError("verify_eq3: requires t >= 2");
  if (!(x > 1.0)) throw DomainError("verify_eq3: x must exceed 1");
  const double h = effective_window(zeros, t, window);
  const double sigma1 = 0.5 + 1.0 / std::log(x);
  const cplx ld = l_log_deriv({sigma1, t}, chi);
  const double main_term = 0.5 * std::log(chi.modulus() * (t + 1.0));
  const auto kernel = zero_kernel_sum(t, x, zeros, h);

  ResidualReport r;
  r.check = "eq3";
  r.character = chi.label();
  r.inputs = {{"t", t}, {"x", x}, {"sigma1", sigma1}, {"H", h}, {"T", zeros.height()}};
  r.value = kernel.value;
  r.residual = ld.real() + main_term - kernel.value.real();
  r.tail_estimate = kernel.tail_estimate;
  r.threshold = kEq3Budget + kernel.tail_estimate;
  r.pass = std::abs(r.residual) <= r.threshold;
  r.margins = {{"threshold_minus_abs_residual", r.threshold - std::abs(r.residual)},
               {"re_log_deriv", ld.real()},
               {"half_log_qt", main_term}};
  return r;
}

ResidualReport lemma1_inequality_check(ComplexPoint s, const DirichletCharacter& chi, double x,
                                       const ZeroSet& zeros, double window) {
  require_zero_set_for(zeros, chi);
  if (!(x > 1.0)) throw DomainError("lemma1_inequality_check: x must exceed 1");
  const double d = 1.0 / std::log(x);  // sigma_1 - 1/2
  if (!(s.sigma >= 0.5 + d)) throw DomainError("lemma1_inequality_check: requires sigma >= sigma_1");
  const double h = effective_window(zeros, s.t, window);
  const double decay = std::pow(x, 0.5 - s.sigma);
  const double coeff = decay * (1.0 + decay);
  const cplx sv = s.value();
  const double lx = std::log(x);

  cplx lhs_sum = 0.0;
  double kernel = 0.0;
  double min_term_margin = std::numeric_limits<double>::infinity();
  for (double g : zeros.ordinates_within(s.t, h)) {
    const cplx z = cplx(0.5, g) - sv;
    const cplx term = (std::exp(z * lx) - std::exp(2.0 * z * lx)) / (z * z) / lx;
    const double k = d / (d * d + (s.t - g) * (s.t - g));
    lhs_sum += term;
    kernel += k;
    min_term_margin = std::min(min_term_margin, coeff * k - std::abs(term));
  }
  ResidualReport r;
  r.check = "lemma1";
  r.character = chi.label();
  r.inputs = {{"sigma", s.sigma}, {"t", s.t}, {"x", x}, {"sigma1", 0.5 + d}, {"H", h}};
  r.value = lhs_sum;
  r.residual = std::abs(lhs_sum);
  r.threshold = coeff * kernel;
  // equality is attained for a zero at gamma = t when sigma = sigma_1; allow rounding
  constexpr double rel = 1e-12;
  r.pass = r.residual <= r.threshold * (1.0 + rel) && min_term_margin >= -rel * coeff / d;
  r.margins = {{"rhs_minus_lhs", r.threshold - r.residual},
               {"min_term_margin", std::isfinite(min_term_margin) ? min_term_margin : 0.0},
               {"coefficient", coeff}};
  return r;
}

}  // namespace sarg
