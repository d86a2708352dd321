#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "sarg/argzeros.hpp"
#include "sarg/characters.hpp"
#include "sarg/numerics.hpp"

namespace sarg {

inline constexpr double kDefaultZeroWindow = 40.0;

/// (x, sigma_1, t) with 4 <= x <= t^2, t >= 2; sigma_1 = 1/2 + 1/log x is derived.
class ExplicitFormulaParams {
 public:
  ExplicitFormulaParams(double x, double t);
  double x() const { return x_; }
  double t() const { return t_; }
  double sigma1() const { return 0.5 + 1.0 / std::log(x_); }

 private:
  double x_;
  double t_;
};

/// von Mangoldt Lambda(n) by a sieve up to a bound.
class VonMangoldtTable {
 public:
  explicit VonMangoldtTable(std::int64_t limit);
  std::int64_t limit() const { return limit_; }
  double operator()(std::int64_t n) const;
  /// p if n = p^k, else 0.
  std::int64_t prime_base(std::int64_t n) const { return base_.at(static_cast<std::size_t>(n)); }

 private:
  std::int64_t limit_;
  std::vector<std::int64_t> base_;
};

/// Lambda_x(n) for 1 <= n < x^2: Lambda(n) up to x, Lambda(n) log(x^2/n)/log x beyond.
class WeightedLambdaTable {
 public:
  explicit WeightedLambdaTable(double x);
  double x() const { return x_; }
  /// Last n with n < x^2.
  std::int64_t last() const { return last_; }
  double weighted(std::int64_t n) const;
  double base(std::int64_t n) const { return lambda_(n); }

 private:
  double x_;
  std::int64_t last_;
  VonMangoldtTable lambda_;
};

/// Lambda_x(n); 0 for n >= x^2 and for non prime powers. Requires n >= 1, x >= 2.
double lambda_x(std::int64_t n, double x);

struct TruncatedSumResult {
  std::complex<double> value;
  double tail_estimate = 0.0;
  long terms_used = 0;
};

/// sum_{n < x^2} Lambda_x(n) chi(n) n^{-s} (exact finite sum).
std::complex<double> truncated_sum(ComplexPoint s, const DirichletCharacter& chi, double x);

/// (1/log x) sum_{k=0}^{K} [x^{-2k-a-s} - x^{-2(2k+a+s)}] / (2k+a+s)^2.
TruncatedSumResult trivial_zero_sum(ComplexPoint s, double x, int parity, int terms = 50);

/// (1/log x) sum_{|gamma - t| <= H} (x^{rho-s} - x^{2(rho-s)}) / (s - rho)^2, rho = 1/2 + i gamma,
/// plus a zero-density bound on the omitted zeros. Requires certified zeros to |t| + H.
TruncatedSumResult nontrivial_zero_sum(ComplexPoint s, double x, const ZeroSet& zeros, double window);

/// sum_{|gamma - t| <= H} (sigma_1 - 1/2) / ((sigma_1 - 1/2)^2 + (t - gamma)^2) with its density tail.
TruncatedSumResult zero_kernel_sum(double t, double x, const ZeroSet& zeros, double window);

/// Outcome of one numerical check; serializes to a flat JSON record.
struct ResidualReport {
  std::string check;
  std::map<std::string, double> inputs;
  std::string character;
  std::complex<double> value;
  double residual = 0.0;
  double tail_estimate = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::map<std::string, double> margins;

  nlohmann::json to_json() const;
};

/// Largest window the zero set supports at height t, capped at `requested`.
double effective_window(const ZeroSet& zeros, double t, double requested = kDefaultZeroWindow);

/// |L'/L(s) - (-truncated + trivial + nontrivial)| <= 2 (tails) + 1e-8.
ResidualReport verify_lemma2(ComplexPoint s, const DirichletCharacter& chi, double x, const ZeroSet& zeros,
                             double window = kDefaultZeroWindow);

/// Re L'/L(sigma_1 + it) + (1/2) log q(t+1) - kernel sum; |residual| <= 5 + tail.
ResidualReport verify_eq3(double t, const DirichletCharacter& chi, double x, const ZeroSet& zeros,
                          double window = kDefaultZeroWindow);

inline constexpr double kEq3Budget = 5.0;

/// |(1/log x) sum_window (x^{rho-s} - x^{2(rho-s)})/(s-rho)^2|
///   <= x^{1/2-sigma}(1 + x^{1/2-sigma}) sum_window kernel(sigma_1), checked term by term.
ResidualReport lemma1_inequality_check(ComplexPoint s, const DirichletCharacter& chi, double x,
                                       const ZeroSet& zeros, double window = kDefaultZeroWindow);

}  // namespace sarg
