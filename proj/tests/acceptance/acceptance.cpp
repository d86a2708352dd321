// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sarg/argzeros.hpp"
#include "sarg/audit.hpp"
#include "sarg/characters.hpp"
#include "sarg/error.hpp"
#include "sarg/explicit_formula.hpp"
#include "sarg/lfunc.hpp"
#include "../unit/support.hpp"

using namespace sarg;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<DirichletCharacter> primitive_set(std::initializer_list<int> moduli) {
  std::vector<DirichletCharacter> out;
  for (int q : moduli) {
    for (auto& c : primitive_characters(q)) out.push_back(c);
  }
  return out;
}

const ZeroSet& zeros60(const DirichletCharacter& chi) {
  static std::map<std::string, ZeroSet> cache;
  auto it = cache.find(chi.label());
  if (it == cache.end()) it = cache.emplace(chi.label(), zero_set(chi, 60.0)).first;
  return it->second;
}

Outcome constant() {
  const double c = theorem_constant();
  const double dev = std::abs(c - 0.803986);
  return {dev <= 2e-6 && c < 0.804, "C=" + std::to_string(c) + " |C-0.803986|=" + num(dev) + " (tol 2e-6), C<0.804"};
}

Outcome character_algebra() {
  long chars = 0, failures = 0;
  double worst_tau = 0.0;
  std::mt19937_64 rng(1);
  for (int q = 3; q <= 100; ++q) {
    const auto all = characters(q);
    if (static_cast<int>(all.size()) != euler_phi(q)) ++failures;
    std::vector<long> units;
    for (long n = 1; n < q; ++n) {
      if (testsupport::gcd(n, q) == 1) units.push_back(n);
    }
    std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
    for (const auto& chi : all) {
      ++chars;
      std::complex<double> total = 0.0;
      for (long n = 0; n < q; ++n) total += chi(n);
      if (!chi.is_principal() && std::abs(total) > 1e-9) ++failures;
      for (int k = 0; k < 200; ++k) {
        const long m = units[pick(rng)], n = units[pick(rng)];
        if (std::abs(chi(m * n) - chi(m) * chi(n)) > 1e-12) ++failures;
      }
      // orthogonality of distinct characters
      for (const auto& psi : all) {
        if (&psi == &chi) continue;
        std::complex<double> inner = 0.0;
        for (long n : units) inner += chi(n) * std::conj(psi(n));
        if (std::abs(inner) > 1e-9) ++failures;
      }
      if (chi.is_primitive()) {
        std::complex<double> tau = 0.0;
        for (long r = 1; r <= q; ++r) tau += chi(r) * std::polar(1.0, 2 * pi * r / q);
        worst_tau = std::max({worst_tau, std::abs(std::abs(tau) - std::sqrt(q)),
                              std::abs(std::abs(gauss_sum(chi)) - std::sqrt(q))});
      }
    }
  }
  return {failures == 0 && worst_tau < 1e-9, std::to_string(chars) + " characters q<=100, " +
                                                 std::to_string(failures) + " property failures, max ||tau|-sqrt q|=" +
                                                 num(worst_tau) + " (tol 1e-9)"};
}

Outcome l_function() {
  const auto chi4 = parse_character_label("4.1");
  const double leibniz = testsupport::alternating_sum([](int k) { return 1.0 / (2 * k + 1); });
  const double catalan = testsupport::alternating_sum([](int k) { return 1.0 / ((2.0 * k + 1) * (2.0 * k + 1)); });
  const double e1 = std::abs(l_value({1, 0}, chi4) - leibniz);
  const double e2 = std::abs(l_value({2, 0}, chi4) - catalan);
  const double e2c = std::abs(catalan - 0.91596559417722);
  std::vector<DirichletCharacter> pool;
  for (int q = 3; q <= 50; ++q) {
    for (auto& c : primitive_characters(q)) pool.push_back(c);
  }
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_real_distribution<double> sig(-1.0, 2.0), tt(-30.0, 30.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto& chi = pool[pick(rng)];
    const ComplexPoint s(sig(rng), tt(rng));
    const auto lhs = completed(s, chi).lambda;
    const auto rhs = root_number(chi).epsilon * completed({1 - s.sigma, -s.t}, chi.conj()).lambda;
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
  }
  return {e1 < 1e-10 && e2 < 1e-10 && e2c < 1e-13 && worst < 1e-8,
          "|L(1)-pi/4|=" + num(e1) + " |L(2)-G|=" + num(e2) + " (tol 1e-10), FE max rel residual " + num(worst) +
              " over 100 samples (tol 1e-8)"};
}

double bisect_z(const DirichletCharacter& chi, double a, double b) {
  double fa = hardy_z(a, chi);
  while (b - a > 1e-11) {
    const double m = 0.5 * (a + b);
    const double fm = hardy_z(m, chi);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

Outcome zero_machinery() {
  int lists = 0, mismatched = 0;
  double worst_reflect = 0.0;
  for (const auto& chi : primitive_set({3, 4, 5, 7, 8, 11})) {
    const auto z = find_zeros(chi, 50.0);
    ++lists;
    if (!z.certified() || static_cast<int>(z.ordinates.size()) != count_zeros(chi, 0.0, 50.0)) ++mismatched;
    if (chi.is_real()) continue;
    // zeros of chi below the axis by an independent scan, against the conjugate's list
    std::vector<double> below;
    double prev = hardy_z(-50.0, chi);
    for (double t = -50.0 + 0.01; t < 0.0; t += 0.01) {
      const double zt = hardy_z(t, chi);
      if ((zt < 0) != (prev < 0)) below.push_back(-bisect_z(chi, t - 0.01, t));
      prev = zt;
    }
    std::sort(below.begin(), below.end());
    const auto zc = find_zeros(chi.conj(), 50.0);
    if (below.size() != zc.ordinates.size()) {
      ++mismatched;
      continue;
    }
    for (std::size_t i = 0; i < below.size(); ++i) worst_reflect = std::max(worst_reflect, std::abs(below[i] - zc.ordinates[i]));
  }
  return {mismatched == 0 && worst_reflect < 1e-7, std::to_string(lists) + " lists to T=50, " +
                                                        std::to_string(mismatched) +
                                                        " count mismatches, max reflection error " +
                                                        num(worst_reflect) + " (tol 1e-7)"};
}

Outcome lemma2() {
  int n = 0, failed = 0;
  double worst_ratio = 0.0;
  for (const auto& chi : primitive_set({3, 4, 5})) {
    for (double x : {4.0, 9.0, 16.0}) {
      for (double t : {5.0, 14.0, 21.0}) {
        const auto r = verify_lemma2({0.5 + 1 / std::log(x), t}, chi, x, zeros60(chi));
        ++n;
        failed += !r.pass;
        worst_ratio = std::max(worst_ratio, r.residual / (2 * r.tail_estimate + 1e-8));
      }
    }
  }
  return {failed == 0, std::to_string(n) + " points, " + std::to_string(failed) +
                           " failures, max residual/(2 tail + 1e-8)=" + num(worst_ratio)};
}

Outcome lemma1() {
  const auto chars = primitive_set({3, 4, 5});
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::size_t> pc(0, chars.size() - 1), pick3(0, 2);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  const double xs[] = {4.0, 9.0, 16.0}, ts[] = {5.0, 14.0, 21.0};
  int failed = 0;
  double min_margin = INFINITY;
  for (int i = 0; i < 100; ++i) {
    const auto& chi = chars[pc(rng)];
    const double x = xs[pick3(rng)], t = ts[pick3(rng)];
    const double sigma = 0.5 + 1 / std::log(x) + u(rng);
    const auto r = lemma1_inequality_check({sigma, t}, chi, x, zeros60(chi));
    failed += !r.pass;
    min_margin = std::min(min_margin, r.margins.at("rhs_minus_lhs"));
  }
  return {failed == 0, "100 samples, " + std::to_string(failed) + " failures, min rhs-lhs " + num(min_margin)};
}

Outcome eq3() {
  double worst = 0.0;
  int n = 0;
  for (const auto& chi : primitive_set({3, 4, 5})) {
    for (double t : {5.0, 14.0, 21.0}) {
      const double x = std::pow(std::log(chi.modulus() * (t + 3.0)), 1.5);
      worst = std::max(worst, std::abs(verify_eq3(t, chi, x, zeros60(chi)).residual));
      ++n;
    }
  }
  return {worst <= 5.0, std::to_string(n) + " points, max |residual|=" + num(worst) + " (budget 5)"};
}

Outcome decomposition() {
  std::vector<DirichletCharacter> pool;
  for (int q = 3; q <= 13; ++q) {
    for (auto& c : primitive_characters(q)) pool.push_back(c);
  }
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_real_distribution<double> tt(2.0, 80.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto& chi = pool[pick(rng)];
    const double t = tt(rng);
    const auto d = m_decomposition(t, chi, default_audit_x(chi.modulus(), t));
    worst = std::max(worst, std::abs(d.s_direct + (d.m1 + d.m2 + d.m3).imag() / pi));
  }
  double spread = 0.0;
  const auto chi = parse_character_label("5.1");
  const double ref = m_decomposition(20.0, chi, 4.0).s_from_parts;
  for (double x : {9.0, 16.0, 50.0, 150.0, 400.0}) {
    spread = std::max(spread, std::abs(m_decomposition(20.0, chi, x).s_from_parts - ref));
  }
  return {worst < 1e-6 && spread < 2e-6,
          "50 points max |S + Im(M1+M2+M3)/pi|=" + num(worst) + " (tol 1e-6), x-spread " + num(spread) + " (tol 2e-6)"};
}

Outcome s_robustness() {
  std::vector<DirichletCharacter> pool;
  for (int q = 3; q <= 20; ++q) {
    for (auto& c : primitive_characters(q)) pool.push_back(c);
  }
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_real_distribution<double> tt(2.0, 80.0);
  TraceOptions halved;
  halved.initial_step = 0.125;
  double worst_halving = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto& chi = pool[pick(rng)];
    const double t = tt(rng);
    worst_halving = std::max(worst_halving, std::abs(s_value(t, chi).s_value - s_value(t, chi, halved).s_value));
  }
  double worst_jump = 0.0;
  int jumps = 0;
  for (const auto& chi : primitive_set({3, 4, 5})) {
    const auto z = find_zeros(chi, 30.0);
    for (std::size_t i = 0; i < z.ordinates.size() && i < 4 && jumps < 10; ++i, ++jumps) {
      const double g = z.ordinates[i];
      const double jump = s_value(g + 1e-4, chi).s_value - s_value(g - 1e-4, chi).s_value;
      worst_jump = std::max(worst_jump, std::abs(jump - 1.0));
    }
  }
  const auto fixture = testsupport::load_fixture();
  double worst_fixture = 0.0;
  for (const auto& row : fixture["s_values"]) {
    const auto chi = parse_character_label(row["chi"].get<std::string>());
    worst_fixture = std::max(worst_fixture, std::abs(s_value(row["t"].get<double>(), chi).s_value -
                                                     std::stod(row["S_str"].get<std::string>())));
  }
  return {worst_halving < 1e-8 && jumps == 10 && worst_jump <= 0.05 && worst_fixture < 1e-8,
          "halving " + num(worst_halving) + " (tol 1e-8), " + std::to_string(jumps) + " jumps max |jump-1|=" +
              num(worst_jump) + " (tol 0.05), fixture " + num(worst_fixture) + " (tol 1e-8)"};
}

Outcome audit() {
  AuditGrid grid;
  for (int q = 3; q <= 50; ++q) grid.moduli.push_back(q);
  grid.t_min = 2.0;
  grid.t_max = 80.0;
  grid.step = 0.05;
  const auto start = std::chrono::steady_clock::now();
  const auto a = audit_scan(grid);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  // determinism: a restricted rerun reproduces the same rows bit for bit
  AuditGrid sub = grid;
  sub.moduli = {3, 4, 5};
  const auto b1 = audit_scan(sub), b2 = audit_scan(sub);
  const bool deterministic = b1.csv() == b2.csv() && b1.summary_json().dump() == b2.summary_json().dump();
  std::string where;
  if (a.summary.argmax) where = " at " + a.summary.argmax->label + " t=" + num(a.summary.argmax->t);
  return {a.summary.failed == 0 && a.summary.max_ratio < 1.0 && deterministic && seconds < 1800,
          std::to_string(a.summary.rows) + " rows, max |S|/envelope=" + num(a.summary.max_ratio) + where + ", " +
              std::to_string(a.summary.failed) + " failed rows, deterministic=" + (deterministic ? "yes" : "no") +
              ", " + num(seconds) + " s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"closed-form constant", constant},
      {"character algebra", character_algebra},
      {"L-function values and functional equation", l_function},
      {"zero counting and conjugate reflection", zero_machinery},
      {"explicit-formula identity for L'/L", lemma2},
      {"term-wise zero-sum inequality", lemma1},
      {"kernel-sum O(1) witness", eq3},
      {"M1/M2/M3 decomposition", decomposition},
      {"S(t, chi) robustness", s_robustness},
      {"bound audit", audit},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("criterion %zu %s: %s  [%s]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
