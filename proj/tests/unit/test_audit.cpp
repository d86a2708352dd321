#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "sarg/audit.hpp"
#include "sarg/error.hpp"

using namespace sarg;

TEST_CASE("closed-form constant") {
  const double c = theorem_constant();
  CHECK(std::abs(c - 0.803986) <= 2e-6);
  CHECK(c < 0.804);
  const double ie = std::exp(-1.0);
  CHECK(1.0 / (1.0 - ie - ie * ie) == doctest::Approx(2.0129421).epsilon(5e-7));
}

TEST_CASE("envelope") {
  CHECK(std::abs(envelope(3, 2.0) - 1.7733) < 1e-4);
  CHECK(std::abs(envelope(3, 2.0) - 0.804 * std::log(9.0) / std::log(std::log(15.0))) < 1e-14);
  CHECK(envelope(3, 2.0, theorem_constant()) < envelope(3, 2.0));
  double prev = envelope(3, 20.0);
  for (double t = 25.0; t < 2000.0; t *= 1.3) {
    CHECK(envelope(3, t) > prev);
    prev = envelope(3, t);
  }
  for (double t = 2.0; t <= 80.0; t += 0.5) {
    for (int q = 3; q < 50; ++q) CHECK(envelope(q + 1, t) > envelope(q, t));
  }
  CHECK_THROWS_AS(envelope(1, -2.5), DomainError);
}

TEST_CASE("default x") {
  bool clamped = false;
  const double x = default_audit_x(3, 2.0, &clamped);
  CHECK(clamped);
  CHECK(x == 4.0);
  const double x2 = default_audit_x(13, 40.0, &clamped);
  CHECK_FALSE(clamped);
  CHECK(x2 == doctest::Approx(std::pow(std::log(13.0 * 43.0), 1.5)));
}

TEST_CASE("M decomposition") {
  const auto chi = parse_character_label("3.1");
  const auto d = m_decomposition(10.0, chi, 4.0);
  CHECK(d.identity_residual() < 1e-6);
  CHECK(std::abs(d.s_from_parts + (d.m1 + d.m2 + d.m3).imag() / std::numbers::pi) < 1e-15);
  CHECK(std::abs(d.m2 - (d.sigma1 - 0.5) * l_log_deriv({d.sigma1, 10.0}, chi)) < 1e-12);

  const auto d2 = m_decomposition(10.0, chi, 9.0);
  CHECK(std::abs(d2.s_from_parts - d.s_from_parts) < 2e-6);
  CHECK(std::abs(d2.m2 - d.m2) > 1e-3);

  std::mt19937_64 rng(99);
  std::vector<DirichletCharacter> pool;
  for (int q = 3; q <= 13; ++q) {
    for (auto& c : primitive_characters(q)) pool.push_back(c);
  }
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_real_distribution<double> tt(2.0, 80.0);
  for (int i = 0; i < 20; ++i) {
    const auto& c = pool[pick(rng)];
    const double t = tt(rng);
    const auto m = m_decomposition(t, c, default_audit_x(c.modulus(), t));
    CHECK_MESSAGE(m.identity_residual() < 1e-6, c.label(), " t=", t);
  }
  CHECK_THROWS_AS(m_decomposition(10.0, chi, 3.0), DomainError);
  CHECK_THROWS_AS(m_decomposition(10.0, characters(9).front(), 4.0), DomainError);
  CHECK_THROWS_AS(m_decomposition(6.0209489046975966549, parse_character_label("4.1"), 4.0), NearZeroError);
}

TEST_CASE("audit scan bookkeeping") {
  AuditGrid grid{{3, 4, 5}, 2.0, 12.0, 0.5};
  CHECK(grid.heights().size() == 21);
  const auto report = audit_scan(grid);
  std::size_t n_chars = 0;
  for (int q : grid.moduli) n_chars += primitive_characters(q).size();
  CHECK(report.rows.size() == n_chars * 21);
  CHECK(report.summary.failed == 0);
  CHECK(report.summary.max_ratio < 1.0);
  CHECK(report.summary.checkpoints > 0);
  CHECK(report.summary.max_checkpoint_deviation < 1e-8);
  for (std::size_t i = 1; i < report.summary.top.size(); ++i) {
    CHECK(report.summary.top[i].ratio <= report.summary.top[i - 1].ratio);
  }
  for (const auto& row : report.rows) {
    CHECK(row.ratio == doctest::Approx(std::abs(row.s_value) / row.envelope).epsilon(1e-14));
  }
  CHECK(report.rows.front().flags == std::vector<std::string>{"x_clamped"});

  // continuation and direct traces agree row by row
  AuditOptions direct;
  direct.method = AuditMethod::direct;
  const auto again = audit_scan(grid, direct);
  REQUIRE(again.rows.size() == report.rows.size());
  for (std::size_t i = 0; i < again.rows.size(); ++i) {
    CHECK(std::abs(again.rows[i].s_value - report.rows[i].s_value) < 1e-8);
  }

  // halved path steps
  AuditOptions halved;
  halved.trace.initial_step = 0.125;
  const auto h = audit_scan(grid, halved);
  for (std::size_t i = 0; i < h.rows.size(); ++i) CHECK(std::abs(h.rows[i].ratio - report.rows[i].ratio) < 1e-6);

  // single point reproduces s_value
  const auto one = audit_scan(AuditGrid{{5}, 7.25, 7.25, 1.0}, direct);
  const auto chi = primitive_characters(5).front();
  CHECK(one.rows.front().s_value == s_value(7.25, chi).s_value);

  const std::string csv = report.csv();
  CHECK(csv.rfind("q,chi,t,x,S,envelope,ratio,flags\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(report.rows.size() + 1));

  AuditOptions threaded;
  threaded.threads = 3;
  const auto par = audit_scan(grid, threaded);
  CHECK(par.csv() == csv);
  CHECK(par.summary_json().dump() == report.summary_json().dump());

  const auto j = report.summary_json({{"seed", 1}});
  CHECK(j.contains("max_ratio"));
  CHECK(j.contains("argmax"));
  CHECK(j["grid"]["points"] == 21);
  CHECK(j["config"]["seed"] == 1);
  CHECK(j["versions"].contains("sarg"));
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS((AuditGrid{{3}, 1.0, 5.0, 0.1}.validate()), DomainError);
  CHECK_THROWS_AS((AuditGrid{{3}, 2.0, 5.0, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((AuditGrid{{2}, 2.0, 5.0, 0.1}.validate()), DomainError);
  CHECK_THROWS_AS((AuditGrid{{}, 2.0, 5.0, 0.1}.validate()), DomainError);
}
