#pragma once

#include <algorithm>
#include <complex>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sarg/characters.hpp"
#include "sarg/lfunc.hpp"

namespace sarg {

// ---------------------------------------------------------------------------
// S(t, chi) by continuous variation of arg L(sigma + it) from sigma_start to 1/2.

struct TraceSample {
  double sigma = 0.0;
  std::complex<double> l_value;
  double accumulated_arg = 0.0;
};

struct TraceOptions {
  double sigma_start = 45.0;
  double initial_step = 0.25;
  long step_budget = 1'000'000;
  double l_target = kDefaultLTarget;
};

struct ArgumentTrace {
  double t = 0.0;
  std::string label;
  std::vector<TraceSample> samples;  ///< strictly decreasing sigma, sigma_start .. 1/2
  double s_value = 0.0;              ///< accumulated arg at sigma = 1/2, over pi
  long step_budget = 0;
  long evaluations = 0;
  double max_abs_step_phase = 0.0;   ///< largest accepted |delta arg|, always < pi/2
  double min_abs_l = 0.0;
  bool averaged = false;             ///< endpoint on a zero: mean of S(t +- 1e-6)
};

inline constexpr double kOnZeroThreshold = 1e-10;
inline constexpr double kAveragingOffset = 1e-6;

/// arg L(s, chi) at large sigma from Im sum_{p^k} chi(p^k) / (k p^{ks}); tail < 1e-12.
double initial_argument(ComplexPoint s, const DirichletCharacter& chi);

/// Path tracking at any height t (no endpoint-on-zero handling).
ArgumentTrace trace_argument(double t, const DirichletCharacter& chi, const TraceOptions& opts = {});

/// S(t, chi) for t >= 2 and primitive chi. If |L(1/2+it)| <= 1e-10 returns the
/// average of S(t +- 1e-6) with `averaged` set. Throws RefinementError if the
/// step budget is exhausted.
ArgumentTrace s_value(double t, const DirichletCharacter& chi, const TraceOptions& opts = {});

// ---------------------------------------------------------------------------
// Zeros on the critical line.

struct ContourCount {
  int count = 0;
  double winding = 0.0;  ///< total arg variation / 2 pi before rounding
  long evaluations = 0;
  double min_abs_l_on_line = 0.0;
};

/// Zeros of Lambda(s, chi) inside [-1, 2] x (t1, t2) by the argument principle.
/// Throws ContourError when the contour passes too close to a zero and
/// PrecisionError when the winding is not within 0.01 of an integer.
ContourCount count_zeros_detailed(const DirichletCharacter& chi, double t1, double t2);
int count_zeros(const DirichletCharacter& chi, double t1, double t2);

enum class Completeness { certified, uncertified };

struct ZeroList {
  int modulus = 0;
  std::string label;
  double height = 0.0;                   ///< T: ordinates cover (0, T]
  std::vector<double> ordinates;         ///< strictly increasing
  Completeness completeness = Completeness::uncertified;
  std::complex<double> branch_constant;  ///< epsilon^{1/2} used for Z
  std::string diagnostic;                ///< why a list is uncertified (not serialized)

  bool certified() const { return completeness == Completeness::certified; }
  /// Number of stored ordinates in (t1, t2].
  std::size_t count_in(double t1, double t2) const;
  bool operator==(const ZeroList& o) const {
    return modulus == o.modulus && label == o.label && height == o.height && ordinates == o.ordinates &&
           completeness == o.completeness && branch_constant == o.branch_constant;
  }
};

/// Sign-change scan of Z on (0, T] with step min(0.2, pi/log(q(T+3))), Illinois
/// refinement to brackets < 1e-9, certified against count_zeros(chi, 0, T).
ZeroList find_zeros(const DirichletCharacter& chi, double height);

/// Re-validates every ordinate against the sign of Z; throws IntegrityError.
void verify_zero_list(const ZeroList& zeros, const DirichletCharacter& chi);

/// Zeros of L(s, chi) on both halves of the line: ordinates of chi above the
/// real axis and, negated, those of conj(chi) below it.
struct ZeroSet {
  ZeroList upper;
  ZeroList lower;  ///< zeros of conj(chi); L(s, chi) vanishes at 1/2 - i gamma

  int modulus() const { return upper.modulus; }
  double height() const { return std::min(upper.height, lower.height); }
  bool certified() const { return upper.certified() && lower.certified(); }
  /// All signed ordinates gamma with |gamma - center| <= radius.
  std::vector<double> ordinates_within(double center, double radius) const;
};

ZeroSet zero_set(const DirichletCharacter& chi, double height);

// ---------------------------------------------------------------------------
// Zero-cache files.

/// Header `# zeros v1 q=<q> chi=<label> T=<T> branch=<re>,<im> complete=<0|1>`,
/// then one ordinate per line.
std::string format_zero_list(const ZeroList& zeros);
ZeroList parse_zero_list(const std::string& text);

/// Written to a temporary file in the same directory, then renamed.
void save_zeros(const ZeroList& zeros, const std::filesystem::path& destination);
ZeroList load_zeros(const std::filesystem::path& source);

/// Loads `<dir>/<label>.zeros` when it is certified to at least `height` and
/// passes verify_zero_list; otherwise computes, saves and returns a fresh list.
ZeroList cached_zeros(const DirichletCharacter& chi, double height, const std::filesystem::path& dir);
ZeroSet cached_zero_set(const DirichletCharacter& chi, double height, const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// S along a line of heights from one traced anchor.

/// Between ordinates S(t) + theta(t)/pi is constant and it jumps by +1 at each
/// simple zero, so a certified zero list and one traced value determine S on
/// (0, T]. Used for dense height scans.
class ArgumentContinuation {
 public:
  ArgumentContinuation(const DirichletCharacter& chi, ZeroList zeros, double anchor_t,
                       const TraceOptions& opts = {});

  /// S(t); at an ordinate (within 1e-9) the mean of the one-sided limits.
  double value(double t) const;
  double anchor_t() const { return anchor_t_; }
  double anchor_s() const { return anchor_s_; }
  const ZeroList& zeros() const { return zeros_; }
  /// Distance from t to the nearest stored ordinate (infinity if none).
  double distance_to_zero(double t) const;

 private:
  DirichletCharacter chi_;
  ZeroList zeros_;
  double anchor_t_;
  double anchor_s_;
  double anchor_theta_;
  std::ptrdiff_t anchor_rank_;
};

}  // namespace sarg
