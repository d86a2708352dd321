#pragma once

#include <complex>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sarg/argzeros.hpp"
#include "sarg/characters.hpp"

namespace sarg {

inline constexpr double kRoundedConstant = 0.804;

/// (1/pi) / (1 - (1/e)(1 + 1/e)) * [(1/e + 1/(2e^2))/2 + (1/e + 1/e^2)/2 + pi/4].
double theorem_constant();

/// c log(q(t+1)) / log log(q(t+3)).
double envelope(int q, double t, double constant = kRoundedConstant);

/// -(1/pi) Im(m1 + m2 + m3) split of S(t, chi) at sigma_1 = 1/2 + 1/log x.
struct MDecomposition {
  double t = 0.0;
  std::string label;
  double x = 0.0;
  double sigma1 = 0.0;
  std::complex<double> m1, m2, m3;
  double s_from_parts = 0.0;
  double s_direct = 0.0;
  double quadrature_error = 0.0;

  double identity_residual() const { return std::abs(s_from_parts - s_direct); }
};

inline constexpr double kDecompositionQuadratureTol = 1e-9;

/// Requires t >= 2, primitive chi, 4 <= x <= t^2 and |L(1/2+it)| > 1e-10.
MDecomposition m_decomposition(double t, const DirichletCharacter& chi, double x);

/// (log q(t+3))^{3/2} clamped to [4, t^2]; `clamped` reports whether clamping happened.
double default_audit_x(int q, double t, bool* clamped = nullptr);

struct AuditGrid {
  std::vector<int> moduli;
  double t_min = 2.0;
  double t_max = 80.0;
  double step = 0.05;

  /// t_min + i step for i = 0, 1, ... while <= t_max (1e-9 slack).
  std::vector<double> heights() const;
  void validate() const;
};

enum class AuditMethod {
  continuation,  ///< one trace per character, carried along heights by the zero list
  direct         ///< a full path trace at every height
};

struct AuditOptions {
  AuditMethod method = AuditMethod::continuation;
  /// Zero lists are read from / written to this directory when set.
  std::optional<std::filesystem::path> zero_cache;
  /// Direct traces compared against the continuation per character.
  int checkpoints = 8;
  double checkpoint_tolerance = 1e-8;
  unsigned threads = 1;
  TraceOptions trace;
};

struct AuditRow {
  int q = 0;
  std::string label;
  double t = 0.0;
  double x_used = 0.0;
  double s_value = 0.0;
  double envelope = 0.0;
  double ratio = 0.0;
  std::vector<std::string> flags;  ///< x_clamped, near_zero, averaged, direct_fallback
  std::string error;               ///< non-empty when the row failed

  bool ok() const { return error.empty(); }
};

struct AuditSummary {
  std::size_t rows = 0;
  std::size_t failed = 0;
  std::size_t characters = 0;
  double max_ratio = 0.0;
  std::optional<AuditRow> argmax;
  std::vector<AuditRow> top;  ///< highest ratios first
  std::size_t checkpoints = 0;
  double max_checkpoint_deviation = 0.0;
};

struct AuditReport {
  AuditGrid grid;
  std::vector<AuditRow> rows;  ///< ordered by (q, label, t)
  AuditSummary summary;

  /// Header `q,chi,t,x,S,envelope,ratio,flags`, 12 significant digits.
  std::string csv() const;
  nlohmann::json summary_json(const nlohmann::json& config = nlohmann::json::object()) const;
};

AuditReport audit_scan(const AuditGrid& grid, const AuditOptions& opts = {});

nlohmann::json row_to_json(const AuditRow& row);

}  // namespace sarg
