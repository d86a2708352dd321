#include "sarg/audit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "sarg/error.hpp"
#include "sarg/explicit_formula.hpp"
#include "sarg/format.hpp"
#include "sarg/lfunc.hpp"
#include "sarg/quadrature.hpp"

#ifndef SARG_VERSION
#define SARG_VERSION "dev"
#endif

namespace sarg {

namespace {

using std::numbers::pi;

constexpr double kSigmaStart = 45.0;
constexpr double kNearZeroRadius = 1e-4;
constexpr std::size_t kTopRows = 20;

struct CharacterResult {
  std::vector<AuditRow> rows;
  std::size_t checkpoints = 0;
  double max_deviation = 0.0;
};

AuditRow base_row(const DirichletCharacter& chi, double t) {
  AuditRow row;
  row.q = chi.modulus();
  row.label = chi.label();
  row.t = t;
  bool clamped = false;
  row.x_used = default_audit_x(row.q, t, &clamped);
  if (clamped) row.flags.emplace_back("x_clamped");
  row.envelope = envelope(row.q, t);
  return row;
}

void finish_row(AuditRow& row, double s) {
  row.s_value = s;
  row.ratio = std::abs(s) / row.envelope;
}

AuditRow direct_row(const DirichletCharacter& chi, double t, const TraceOptions& trace) {
  AuditRow row = base_row(chi, t);
  try {
    const auto tr = s_value(t, chi, trace);
    if (tr.averaged) row.flags.emplace_back("averaged");
    finish_row(row, tr.s_value);
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

std::optional<ZeroList> zeros_for(const DirichletCharacter& chi, double height, const AuditOptions& opts) {
  try {
    ZeroList z = opts.zero_cache ? cached_zeros(chi, height, *opts.zero_cache) : find_zeros(chi, height);
    if (z.certified()) return z;
  } catch (const Error&) {
  }
  return std::nullopt;
}

CharacterResult scan_character(const DirichletCharacter& chi, const std::vector<double>& heights,
                               const AuditOptions& opts) {
  CharacterResult out;
  out.rows.reserve(heights.size());
  auto all_direct = [&](bool fallback) {
    out.rows.clear();
    for (double t : heights) {
      out.rows.push_back(direct_row(chi, t, opts.trace));
      if (fallback) out.rows.back().flags.emplace_back("direct_fallback");
    }
  };
  if (opts.method == AuditMethod::direct || heights.empty()) {
    all_direct(false);
    return out;
  }

  const double height = heights.back() + 1.0;
  const auto zeros = zeros_for(chi, height, opts);
  if (!zeros) {
    all_direct(true);
    return out;
  }
  std::optional<ArgumentContinuation> cont;
  try {
    cont.emplace(chi, *zeros, heights.front(), opts.trace);
  } catch (const Error&) {
    all_direct(true);
    return out;
  }

  // independent traces spread across the grid guard the continuation
  const int n_check = std::max(0, opts.checkpoints);
  for (int k = 0; k < n_check; ++k) {
    const std::size_t idx = heights.size() == 1 ? 0 : (heights.size() - 1) * (k + 1) / (n_check + 1);
    const double t = heights[idx];
    if (cont->distance_to_zero(t) < kNearZeroRadius) continue;
    try {
      const double d = std::abs(s_value(t, chi, opts.trace).s_value - cont->value(t));
      ++out.checkpoints;
      out.max_deviation = std::max(out.max_deviation, d);
    } catch (const Error&) {
      out.max_deviation = std::numeric_limits<double>::infinity();
    }
  }
  if (!(out.max_deviation <= opts.checkpoint_tolerance)) {
    all_direct(true);
    return out;
  }

  for (double t : heights) {
    AuditRow row = base_row(chi, t);
    if (cont->distance_to_zero(t) < kNearZeroRadius) row.flags.emplace_back("near_zero");
    try {
      finish_row(row, cont->value(t));
    } catch (const Error& e) {
      row.error = e.what();
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string flags_field(const AuditRow& row) {
  std::string f;
  for (const auto& flag : row.flags) {
    if (!f.empty()) f += ';';
    f += flag;
  }
  if (!row.ok()) {
    std::string msg = row.error;
    std::replace_if(msg.begin(), msg.end(), [](char c) { return c == ',' || c == '\n' || c == ';'; }, ' ');
    if (!f.empty()) f += ';';
    f += "error=" + msg;
  }
  return f;
}

}  // namespace

double theorem_constant() {
  const double ie = std::exp(-1.0);
  const double inner = 1.0 / (1.0 - ie * (1.0 + ie));
  const double bracket = (ie + 0.5 * ie * ie) / 2.0 + (ie + ie * ie) / 2.0 + pi / 4.0;
  return inner * bracket / pi;
}

double envelope(int q, double t, double constant) {
  const double inner = q * (t + 3.0);
  if (!(inner > std::numbers::e)) throw DomainError("envelope: requires q(t+3) > e");
  return constant * std::log(q * (t + 1.0)) / std::log(std::log(inner));
}

double default_audit_x(int q, double t, bool* clamped) {
  if (!(t >= 2.0) || q < 1) throw DomainError("default_audit_x: requires q >= 1, t >= 2");
  const double raw = std::pow(std::log(q * (t + 3.0)), 1.5);
  const double x = std::clamp(raw, 4.0, t * t);
  if (clamped) *clamped = x != raw;
  return x;
}

MDecomposition m_decomposition(double t, const DirichletCharacter& chi, double x) {
  const ExplicitFormulaParams params(x, t);
  if (!chi.is_primitive()) throw DomainError("m_decomposition: character must be primitive");
  if (std::abs(l_value({0.5, t}, chi)) <= kOnZeroThreshold) {
    throw NearZeroError("m_decomposition: t is an ordinate", std::abs(l_value({0.5, t}, chi)));
  }
  MDecomposition d;
  d.t = t;
  d.label = chi.label();
  d.x = x;
  d.sigma1 = params.sigma1();

  auto log_deriv = [&](double sigma) { return l_log_deriv({sigma, t}, chi); };
  const auto q1 = integrate_adaptive(log_deriv, d.sigma1, kSigmaStart, kDecompositionQuadratureTol);
  // int_{45}^{inf} L'/L = -sum Lambda(n) chi(n) n^{-45-it} / log n; n <= 64 leaves < 1e-30
  const VonMangoldtTable lam(64);
  std::complex<double> tail = 0.0;
  for (std::int64_t n = 2; n <= 64; ++n) {
    if (lam(n) == 0.0) continue;
    const double ln = std::log(static_cast<double>(n));
    tail -= lam(n) * chi(n) * std::exp(-std::complex<double>(kSigmaStart, t) * ln) / ln;
  }
  d.m1 = q1.value + tail;

  const auto at_sigma1 = log_deriv(d.sigma1);
  d.m2 = (d.sigma1 - 0.5) * at_sigma1;
  const auto q3 = integrate_adaptive([&](double sigma) { return at_sigma1 - log_deriv(sigma); }, 0.5, d.sigma1,
                                     kDecompositionQuadratureTol);
  d.m3 = -q3.value;
  d.quadrature_error = q1.abs_error + q3.abs_error;

  d.s_from_parts = -(d.m1 + d.m2 + d.m3).imag() / pi;
  d.s_direct = s_value(t, chi).s_value;
  return d;
}

std::vector<double> AuditGrid::heights() const {
  validate();
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((t_max - t_min) / step + 1e-9));
  out.reserve(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= n; ++i) out.push_back(t_min + static_cast<double>(i) * step);
  return out;
}

void AuditGrid::validate() const {
  if (moduli.empty()) throw DomainError("audit grid: no moduli");
  for (int q : moduli) {
    if (q < 3) throw DomainError("audit grid: moduli must be >= 3");
  }
  if (!(t_min >= 2.0)) throw DomainError("audit grid: t_min must be >= 2");
  if (!(t_max >= t_min)) throw DomainError("audit grid: t_max must be >= t_min");
  if (!(step > 0.0)) throw DomainError("audit grid: step must be positive");
}

AuditReport audit_scan(const AuditGrid& grid, const AuditOptions& opts) {
  const auto heights = grid.heights();
  std::vector<int> moduli = grid.moduli;
  std::sort(moduli.begin(), moduli.end());
  moduli.erase(std::unique(moduli.begin(), moduli.end()), moduli.end());

  std::vector<DirichletCharacter> chars;
  for (int q : moduli) {
    auto prim = primitive_characters(q);
    chars.insert(chars.end(), prim.begin(), prim.end());
  }

  std::vector<CharacterResult> results(chars.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < chars.size(); i = next++) results[i] = scan_character(chars[i], heights, opts);
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(chars.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  AuditReport report;
  report.grid = grid;
  report.grid.moduli = moduli;
  report.summary.characters = chars.size();
  for (auto& r : results) {
    report.summary.checkpoints += r.checkpoints;
    report.summary.max_checkpoint_deviation = std::max(report.summary.max_checkpoint_deviation, r.max_deviation);
    std::move(r.rows.begin(), r.rows.end(), std::back_inserter(report.rows));
  }
  std::stable_sort(report.rows.begin(), report.rows.end(), [](const AuditRow& a, const AuditRow& b) {
    if (a.q != b.q) return a.q < b.q;
    if (a.label != b.label) return a.label < b.label;
    return a.t < b.t;
  });

  auto& s = report.summary;
  s.rows = report.rows.size();
  std::vector<const AuditRow*> ranked;
  for (const auto& row : report.rows) {
    if (!row.ok()) {
      ++s.failed;
      continue;
    }
    ranked.push_back(&row);
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const AuditRow* a, const AuditRow* b) { return a->ratio > b->ratio; });
  if (!ranked.empty()) {
    s.max_ratio = ranked.front()->ratio;
    s.argmax = *ranked.front();
  }
  for (std::size_t i = 0; i < std::min(kTopRows, ranked.size()); ++i) s.top.push_back(*ranked[i]);
  return report;
}

std::string AuditReport::csv() const {
  std::ostringstream os;
  os << "q,chi,t,x,S,envelope,ratio,flags\n";
  for (const auto& r : rows) {
    os << r.q << ',' << r.label << ',' << fmt12(r.t) << ',' << fmt12(r.x_used) << ',';
    if (r.ok()) {
      os << fmt12(r.s_value) << ',' << fmt12(r.envelope) << ',' << fmt12(r.ratio);
    } else {
      os << "nan," << fmt12(r.envelope) << ",nan";
    }
    os << ',' << flags_field(r) << '\n';
  }
  return os.str();
}

nlohmann::json row_to_json(const AuditRow& row) {
  nlohmann::json j;
  j["q"] = row.q;
  j["chi"] = row.label;
  j["t"] = fmt12(row.t);
  j["x"] = fmt12(row.x_used);
  j["S"] = fmt12(row.s_value);
  j["envelope"] = fmt12(row.envelope);
  j["ratio"] = fmt12(row.ratio);
  j["flags"] = row.flags;
  if (!row.ok()) j["error"] = row.error;
  return j;
}

nlohmann::json AuditReport::summary_json(const nlohmann::json& config) const {
  nlohmann::json j;
  j["max_ratio"] = fmt12(summary.max_ratio);
  j["argmax"] = summary.argmax ? row_to_json(*summary.argmax) : nlohmann::json(nullptr);
  j["grid"] = {{"moduli", grid.moduli},
               {"t_min", fmt12(grid.t_min)},
               {"t_max", fmt12(grid.t_max)},
               {"step", fmt12(grid.step)},
               {"points", grid.heights().size()}};
  j["rows"] = summary.rows;
  j["failed_rows"] = summary.failed;
  j["characters"] = summary.characters;
  j["checkpoints"] = {{"count", summary.checkpoints},
                      {"max_deviation", fmt12(summary.max_checkpoint_deviation)}};
  nlohmann::json top = nlohmann::json::array();
  for (const auto& r : summary.top) top.push_back(row_to_json(r));
  j["top"] = top;
  j["versions"] = {{"sarg", SARG_VERSION}, {"report_format", 1}, {"zero_cache_format", "v1"}};
  j["config"] = config;
  return j;
}

}  // namespace sarg
