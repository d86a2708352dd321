#include "sarg/argzeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "sarg/error.hpp"

namespace sarg {

namespace {

using std::numbers::pi;

// n = p^k -> k (0 if n is not a prime power)
int prime_power_exponent(long long n) {
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    return n == 1 ? k : 0;
  }
  return n > 1 ? 1 : 0;
}

}  // namespace

double initial_argument(ComplexPoint s, const DirichletCharacter& chi) {
  if (s.sigma < 5.0) throw DomainError("initial_argument: sigma too small for the prime-power series");
  const cplx sv = s.value();
  cplx acc = 0.0;
  // terms n^{-sigma}/k; stop once n^{-sigma} < 1e-18, the rest is below 2 n^{1-sigma}/(sigma-1)
  for (long long n = 2;; ++n) {
    const double mag = std::pow(static_cast<double>(n), -s.sigma);
    if (mag < 1e-18) break;
    const int k = prime_power_exponent(n);
    if (k == 0) continue;
    const auto c = chi(n);
    if (c == 0.0) continue;
    acc += c * std::exp(-sv * std::log(static_cast<double>(n))) / static_cast<double>(k);
  }
  return acc.imag();
}

ArgumentTrace trace_argument(double t, const DirichletCharacter& chi, const TraceOptions& opts) {
  ArgumentTrace tr;
  tr.t = t;
  tr.label = chi.label();
  tr.step_budget = opts.step_budget;

  double sigma = opts.sigma_start;
  cplx prev = l_evaluate({sigma, t}, chi, LRoute::automatic, opts.l_target).value.value;
  double phase = initial_argument({sigma, t}, chi);
  // the series phase and the principal phase of L agree for large sigma
  tr.samples.push_back({sigma, prev, phase});
  tr.evaluations = 1;
  tr.min_abs_l = std::abs(prev);

  while (sigma > 0.5) {
    double h = std::min(opts.initial_step, sigma - 0.5);
    while (true) {
      if (tr.evaluations >= opts.step_budget) {
        throw RefinementError("s_value: step budget exhausted at sigma = " + std::to_string(sigma), sigma);
      }
      const double next_sigma = (sigma - h <= 0.5) ? 0.5 : sigma - h;
      const cplx next = l_evaluate({next_sigma, t}, chi, LRoute::automatic, opts.l_target).value.value;
      ++tr.evaluations;
      const double d = std::arg(next / prev);
      if (std::abs(d) < pi / 2 && next != 0.0) {
        phase += d;
        sigma = next_sigma;
        prev = next;
        tr.max_abs_step_phase = std::max(tr.max_abs_step_phase, std::abs(d));
        tr.min_abs_l = std::min(tr.min_abs_l, std::abs(next));
        tr.samples.push_back({sigma, next, phase});
        break;
      }
      h *= 0.5;
      if (h < 1e-14) throw RefinementError("s_value: step underflow near sigma = " + std::to_string(sigma), sigma);
    }
  }
  tr.s_value = phase / pi;
  return tr;
}

ArgumentTrace s_value(double t, const DirichletCharacter& chi, const TraceOptions& opts) {
  if (!(t >= 2.0)) throw DomainError("s_value: requires t >= 2");
  if (!chi.is_primitive()) throw DomainError("s_value: character " + chi.label() + " is not primitive");
  const double at_line = std::abs(l_evaluate({0.5, t}, chi, LRoute::automatic, opts.l_target).value.value);
  if (at_line > kOnZeroThreshold) return trace_argument(t, chi, opts);

  ArgumentTrace above = trace_argument(t + kAveragingOffset, chi, opts);
  const ArgumentTrace below = trace_argument(t - kAveragingOffset, chi, opts);
  above.t = t;
  above.s_value = 0.5 * (above.s_value + below.s_value);
  above.evaluations += below.evaluations;
  above.averaged = true;
  return above;
}

// ---------------------------------------------------------------------------

namespace {

struct PhasePoint {
  double arch;  // continuous archimedean phase
  cplx l;
};

// Lambda(s, chi) is represented as exp(arch) L(s, chi) for sigma >= 1/2 and as
// epsilon exp(arch') L(1 - s, conj chi) below, so every Gamma argument has
// positive real part and the archimedean phase is analytic along the path.
class ContourEvaluator {
 public:
  explicit ContourEvaluator(const DirichletCharacter& chi) : chi_(chi), conj_(chi.conj()) {}

  PhasePoint at(cplx s, bool reflected) {
    ++evaluations;
    if (!reflected) {
      ComplexPoint p(s);
      return {log_archimedean_factor(p, chi_).imag(), l_value(p, chi_)};
    }
    ComplexPoint w(1.0 - s);
    return {log_archimedean_factor(w, conj_).imag(), l_value(w, conj_)};
  }

  // Continuous change of arg Lambda along the segment z0 -> z1 in one representation.
  double segment(cplx z0, cplx z1, bool reflected) {
    const double length = std::abs(z1 - z0);
    if (length == 0.0) return 0.0;
    const cplx dir = (z1 - z0) / length;
    double u = 0.0;
    PhasePoint cur = at(z0, reflected);
    double total = 0.0;
    long steps = 0;
    while (u < length) {
      double h = std::min(kMaxStep, length - u);
      while (true) {
        const double nu = (u + h >= length) ? length : u + h;
        const PhasePoint nxt = at(z0 + nu * dir, reflected);
        const double dl = std::arg(nxt.l / cur.l);
        const double d = (nxt.arch - cur.arch) + dl;
        if (std::abs(dl) < pi / 2 && std::abs(d) < pi / 2 && nxt.l != 0.0) {
          total += d;
          u = nu;
          cur = nxt;
          break;
        }
        h *= 0.5;
        if (h < 1e-12) throw ContourError("count_zeros: contour passes through a zero; perturb the bounds");
      }
      if (++steps > 1'000'000) throw ContourError("count_zeros: step budget exhausted");
    }
    return total;
  }

  long evaluations = 0;

 private:
  static constexpr double kMaxStep = 0.25;
  DirichletCharacter chi_;
  DirichletCharacter conj_;
};

}  // namespace

ContourCount count_zeros_detailed(const DirichletCharacter& chi, double t1, double t2) {
  if (!(t1 < t2)) throw DomainError("count_zeros: requires t1 < t2");
  if (!chi.is_primitive()) throw DomainError("count_zeros: character " + chi.label() + " is not primitive");
  constexpr double left = -1.0, right = 2.0, mid = 0.5;

  ContourEvaluator ev(chi);
  ContourCount out;
  out.min_abs_l_on_line = std::min(std::abs(l_value({mid, t1}, chi)), std::abs(l_value({mid, t2}, chi)));
  if (out.min_abs_l_on_line < 1e-7) {
    throw ContourError("count_zeros: a zero lies within ~1e-6 of t1 or t2; perturb the bounds");
  }
  const cplx a(left, t1), b(mid, t1), c(right, t1), d(right, t2), e(mid, t2), f(left, t2);
  double total = 0.0;
  total += ev.segment(a, b, true);   // bottom, reflected half
  total += ev.segment(b, c, false);  // bottom, direct half
  total += ev.segment(c, d, false);  // right edge
  total += ev.segment(d, e, false);  // top, direct half
  total += ev.segment(e, f, true);   // top, reflected half
  total += ev.segment(f, a, true);   // left edge
  out.evaluations = ev.evaluations;
  out.winding = total / (2.0 * pi);
  const double rounded = std::round(out.winding);
  if (std::abs(out.winding - rounded) > 0.01 || rounded < 0) {
    throw PrecisionError("count_zeros: winding number not within 0.01 of a non-negative integer",
                         std::abs(out.winding - rounded));
  }
  out.count = static_cast<int>(rounded);
  return out;
}

int count_zeros(const DirichletCharacter& chi, double t1, double t2) {
  return count_zeros_detailed(chi, t1, t2).count;
}

// ---------------------------------------------------------------------------

std::size_t ZeroList::count_in(double t1, double t2) const {
  const auto lo = std::upper_bound(ordinates.begin(), ordinates.end(), t1);
  const auto hi = std::upper_bound(ordinates.begin(), ordinates.end(), t2);
  return hi > lo ? static_cast<std::size_t>(hi - lo) : 0;
}

namespace {

// Illinois variant of regula falsi on a sign-change bracket.
double refine_sign_change(const DirichletCharacter& chi, double a, double fa, double b, double fb) {
  int side = 0;
  for (int iter = 0; iter < 200 && b - a >= 1e-9; ++iter) {
    double c = (a * fb - b * fa) / (fb - fa);
    // fall back to bisection when the secant point hugs an end
    if (!(c > a && c < b) || iter % 4 == 3) c = 0.5 * (a + b);
    const double fc = hardy_z(c, chi);
    if (fc == 0.0) return c;
    if ((fc < 0) == (fa < 0)) {
      a = c;
      fa = fc;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = c;
      fb = fc;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

namespace {

// Ordinates of sign changes of Z over consecutive grid points.
std::vector<double> scan_sign_changes(const DirichletCharacter& chi, const std::vector<double>& grid) {
  std::vector<double> found;
  double ta = grid.front();
  double fa = hardy_z(ta, chi);
  if (fa == 0.0 && ta > 0.0) found.push_back(ta);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double tb = grid[k];
    const double fb = hardy_z(tb, chi);
    if (fb == 0.0) {
      found.push_back(tb);
    } else if (fa != 0.0 && (fa < 0) != (fb < 0)) {
      found.push_back(refine_sign_change(chi, ta, fa, tb, fb));
    }
    ta = tb;
    fa = fb;
  }
  return found;
}

// Splits the coarse grid into short segments, counts each by the argument
// principle and rescans those with missing zeros on finer grids.
std::vector<double> rescan_short_segments(const DirichletCharacter& chi, const std::vector<double>& grid,
                                          std::vector<double> found) {
  constexpr std::size_t kSegmentPoints = 40;
  constexpr int kRefinements = 3;
  constexpr int kSplit = 16;
  std::vector<double> result;
  std::size_t lo = 0;
  while (lo + 1 < grid.size()) {
    std::size_t hi = std::min(grid.size() - 1, lo + kSegmentPoints);
    std::optional<int> expected;
    // a segment edge too close to a zero makes the contour unusable; move it
    for (; hi < grid.size(); ++hi) {
      try {
        expected = count_zeros(chi, grid[lo], grid[hi]);
        break;
      } catch (const ContourError&) {
      }
    }
    if (!expected) hi = grid.size() - 1;
    const double a = grid[lo];
    const double b = grid[hi];
    std::vector<double> here;
    for (double g : found) {
      if (g > a && g <= b) here.push_back(g);
    }
    std::vector<double> fine(grid.begin() + static_cast<std::ptrdiff_t>(lo),
                             grid.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    for (int r = 0; r < kRefinements && expected && static_cast<int>(here.size()) < *expected; ++r) {
      std::vector<double> finer;
      for (std::size_t k = 0; k + 1 < fine.size(); ++k) {
        for (int j = 0; j < kSplit; ++j) finer.push_back(fine[k] + (fine[k + 1] - fine[k]) * j / kSplit);
      }
      finer.push_back(fine.back());
      fine = std::move(finer);
      here = scan_sign_changes(chi, fine);
      here.erase(std::remove_if(here.begin(), here.end(), [&](double g) { return !(g > a && g <= b); }), here.end());
    }
    result.insert(result.end(), here.begin(), here.end());
    lo = hi;
  }
  return result;
}

}  // namespace

ZeroList find_zeros(const DirichletCharacter& chi, double height) {
  if (!chi.is_primitive()) throw DomainError("find_zeros: character " + chi.label() + " is not primitive");
  if (!(height > 0.0 && height <= 200.0)) throw DomainError("find_zeros: height must lie in (0, 200]");
  ZeroList out;
  out.modulus = chi.modulus();
  out.label = chi.label();
  out.height = height;
  out.branch_constant = root_number(chi).sqrt_epsilon();

  const double q = chi.modulus();
  const double step = std::min(0.2, pi / std::log(q * (height + 3.0)));
  std::vector<double> grid;
  const long n = static_cast<long>(std::ceil(height / step));
  for (long k = 0; k <= n; ++k) grid.push_back(k == n ? height : k * step);
  out.ordinates = scan_sign_changes(chi, grid);

  const auto contour_total = [&]() -> std::optional<int> {
    try {
      return count_zeros(chi, 0.0, height);
    } catch (const Error& e) {
      out.diagnostic = std::string("contour count failed: ") + e.what();
      return std::nullopt;
    }
  }();
  if (!contour_total) return out;
  if (*contour_total > static_cast<int>(out.ordinates.size())) {
    out.ordinates = rescan_short_segments(chi, grid, std::move(out.ordinates));
  }

  for (std::size_t i = 1; i < out.ordinates.size(); ++i) {
    if (!(out.ordinates[i] - out.ordinates[i - 1] > 1e-7)) {
      out.diagnostic = "ordinate spacing below 1e-7 near " + std::to_string(out.ordinates[i]) +
                       " (possible multiple zero)";
      return out;
    }
  }
  if (*contour_total == static_cast<int>(out.ordinates.size())) {
    out.completeness = Completeness::certified;
  } else {
    out.diagnostic = "sign changes " + std::to_string(out.ordinates.size()) + " != contour count " +
                     std::to_string(*contour_total) + " (suspected missed pair)";
  }
  return out;
}

void verify_zero_list(const ZeroList& zeros, const DirichletCharacter& chi) {
  if (zeros.label != chi.label() || zeros.modulus != chi.modulus()) {
    throw IntegrityError("zero list for " + zeros.label + " does not belong to " + chi.label());
  }
  for (double g : zeros.ordinates) {
    const double lo = hardy_z(g - 1e-6, chi);
    const double hi = hardy_z(g + 1e-6, chi);
    if (!((lo < 0) != (hi < 0)) && lo != 0.0 && hi != 0.0) {
      throw IntegrityError("no sign change of Z(t, " + chi.label() + ") around stored ordinate " +
                           std::to_string(g));
    }
  }
}

std::vector<double> ZeroSet::ordinates_within(double center, double radius) const {
  std::vector<double> out;
  for (double g : upper.ordinates) {
    if (std::abs(g - center) <= radius) out.push_back(g);
  }
  for (double g : lower.ordinates) {
    if (std::abs(-g - center) <= radius) out.push_back(-g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ZeroSet zero_set(const DirichletCharacter& chi, double height) {
  ZeroSet zs;
  zs.upper = find_zeros(chi, height);
  zs.lower = chi.is_real() ? zs.upper : find_zeros(chi.conj(), height);
  return zs;
}

// ---------------------------------------------------------------------------

ArgumentContinuation::ArgumentContinuation(const DirichletCharacter& chi, ZeroList zeros, double anchor_t,
                                           const TraceOptions& opts)
    : chi_(chi), zeros_(std::move(zeros)), anchor_t_(anchor_t) {
  if (zeros_.label != chi.label()) throw IntegrityError("continuation: zero list belongs to " + zeros_.label);
  if (!zeros_.certified()) throw CertificationError("continuation: zero list for " + zeros_.label + " is uncertified");
  if (!(anchor_t_ > 0.0 && anchor_t_ <= zeros_.height)) throw DomainError("continuation: anchor outside (0, T]");
  if (distance_to_zero(anchor_t_) < 1e-3) anchor_t_ += (anchor_t_ + 2e-3 <= zeros_.height) ? 2e-3 : -2e-3;
  anchor_s_ = trace_argument(anchor_t_, chi_, opts).s_value;
  anchor_theta_ = hardy_theta(anchor_t_, chi_);
  anchor_rank_ = std::upper_bound(zeros_.ordinates.begin(), zeros_.ordinates.end(), anchor_t_) -
                 zeros_.ordinates.begin();
}

double ArgumentContinuation::distance_to_zero(double t) const {
  double best = std::numeric_limits<double>::infinity();
  auto it = std::lower_bound(zeros_.ordinates.begin(), zeros_.ordinates.end(), t);
  if (it != zeros_.ordinates.end()) best = std::min(best, *it - t);
  if (it != zeros_.ordinates.begin()) best = std::min(best, t - *std::prev(it));
  return best;
}

double ArgumentContinuation::value(double t) const {
  if (!(t > 0.0 && t <= zeros_.height)) throw DomainError("continuation: t outside (0, T]");
  constexpr double tol = 1e-9;
  const auto& z = zeros_.ordinates;
  const auto below = std::lower_bound(z.begin(), z.end(), t - tol) - z.begin();
  const auto through = std::upper_bound(z.begin(), z.end(), t + tol) - z.begin();
  const double jumps = static_cast<double>(below - anchor_rank_) + 0.5 * static_cast<double>(through - below);
  return anchor_s_ - (hardy_theta(t, chi_) - anchor_theta_) / pi + jumps;
}

}  // namespace sarg
