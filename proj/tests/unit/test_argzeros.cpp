#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "sarg/argzeros.hpp"
#include "sarg/error.hpp"
#include "support.hpp"

using namespace sarg;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

DirichletCharacter chi(const char* label) { return parse_character_label(label); }

const ZeroList& zeros_of(const char* label, double height) {
  static std::map<std::pair<std::string, double>, ZeroList> cache;
  auto key = std::make_pair(std::string(label), height);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, find_zeros(chi(label), height)).first;
  return it->second;
}

// sign changes of Z on a fine uniform grid
int fine_sign_changes(const DirichletCharacter& c, double t1, double t2, double h) {
  int n = 0;
  double prev = hardy_z(t1, c);
  for (double t = t1 + h; t <= t2; t += h) {
    const double z = hardy_z(t, c);
    if ((z < 0) != (prev < 0)) ++n;
    prev = z;
  }
  return n;
}

fs::path scratch_dir(const char* name) {
  auto p = fs::temp_directory_path() / ("sarg-test-" + std::string(name));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("S agrees with the high-precision fixture") {
  const auto fixture = testsupport::load_fixture();
  REQUIRE(fixture["s_values"].size() >= 9);
  for (const auto& row : fixture["s_values"]) {
    const auto c = parse_character_label(row["chi"].get<std::string>());
    const double t = row["t"].get<double>();
    const auto tr = s_value(t, c);
    INFO(row["chi"].get<std::string>(), " t=", t);
    CHECK(std::abs(tr.s_value - std::stod(row["S_str"].get<std::string>())) < 1e-8);
  }
}

TEST_CASE("trace invariants") {
  const auto tr = s_value(33.3, chi("7.1"));
  REQUIRE(tr.samples.size() > 2);
  CHECK(tr.samples.front().sigma == 45.0);
  CHECK(tr.samples.back().sigma == 0.5);
  for (std::size_t i = 1; i < tr.samples.size(); ++i) CHECK(tr.samples[i].sigma < tr.samples[i - 1].sigma);
  CHECK(tr.max_abs_step_phase < pi / 2);
  CHECK(tr.min_abs_l > 0.0);
  CHECK(tr.s_value == doctest::Approx(tr.samples.back().accumulated_arg / pi).epsilon(1e-15));
  CHECK_FALSE(tr.averaged);
  CHECK(tr.label == "7.1");
}

TEST_CASE("initial argument matches log L at large sigma") {
  for (const char* label : {"3.1", "5.1", "7.2"}) {
    const auto c = chi(label);
    const double direct = std::arg(l_value({12.0, 9.0}, c));
    CHECK(std::abs(initial_argument({12.0, 9.0}, c) - direct) < 1e-12);
  }
  CHECK_THROWS_AS(initial_argument({3.0, 1.0}, chi("5.1")), DomainError);
}

TEST_CASE("S is stable under halving the path step") {
  std::mt19937_64 rng(17);
  std::vector<DirichletCharacter> pool;
  for (int q = 3; q <= 20; ++q) {
    for (auto& c : primitive_characters(q)) pool.push_back(c);
  }
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_real_distribution<double> tt(2.0, 80.0);
  TraceOptions fine;
  fine.initial_step = 0.125;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto& c = pool[pick(rng)];
    const double t = tt(rng);
    worst = std::max(worst, std::abs(s_value(t, c).s_value - s_value(t, c, fine).s_value));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("S jumps by one at zeros and averages on them") {
  int checked = 0;
  for (const char* label : {"3.1", "4.1", "5.1", "5.2"}) {
    const auto& z = zeros_of(label, 30.0);
    for (std::size_t i = 0; i < z.ordinates.size() && i < 3; ++i) {
      const double g = z.ordinates[i];
      const double jump = s_value(g + 1e-4, chi(label)).s_value - s_value(g - 1e-4, chi(label)).s_value;
      CHECK(jump == doctest::Approx(1.0).epsilon(0.05));
      ++checked;
    }
  }
  CHECK(checked >= 10);
  const double g = zeros_of("4.1", 30.0).ordinates.front();
  const auto on = s_value(g, chi("4.1"));
  CHECK(on.averaged);
  const double mean = 0.5 * (s_value(g + 1e-6, chi("4.1")).s_value + s_value(g - 1e-6, chi("4.1")).s_value);
  CHECK(on.s_value == doctest::Approx(mean).epsilon(1e-12));
}

TEST_CASE("conjugate reflection of S") {
  for (const char* label : {"5.1", "7.1", "13.3"}) {
    const auto c = chi(label);
    for (double t : {3.5, 17.25, 42.0}) {
      CHECK(std::abs(trace_argument(-t, c).s_value + s_value(t, c.conj()).s_value) < 1e-8);
    }
  }
}

TEST_CASE("S preconditions") {
  CHECK_THROWS_AS(s_value(1.5, chi("5.1")), DomainError);
  CHECK_THROWS_AS(s_value(10.0, characters(9).front()), DomainError);
  TraceOptions tiny;
  tiny.step_budget = 3;
  CHECK_THROWS_AS(s_value(10.0, chi("5.1"), tiny), RefinementError);
}

TEST_CASE("contour counts") {
  CHECK(count_zeros(chi("4.1"), 3.0, 3.0 + 1e-9) == 0);
  CHECK(count_zeros(chi("4.1"), 0.0, 30.0) == fine_sign_changes(chi("4.1"), 0.0, 30.0, 0.01));
  for (const char* label : {"5.1", "7.2"}) {
    const auto c = chi(label);
    CHECK(count_zeros(c, 0.0, 25.0) + count_zeros(c.conj(), 0.0, 25.0) == count_zeros(c, -25.0, 25.0));
  }
  const auto detail = count_zeros_detailed(chi("3.1"), 0.0, 20.0);
  CHECK(std::abs(detail.winding - detail.count) < 0.01);
  const double g = zeros_of("4.1", 30.0).ordinates.front();
  CHECK_THROWS_AS(count_zeros(chi("4.1"), g, 20.0), ContourError);
  CHECK_THROWS_AS(count_zeros(chi("4.1"), 5.0, 4.0), DomainError);
}

TEST_CASE("zero lists") {
  const auto fixture = testsupport::load_fixture();
  for (const auto& row : fixture["first_zeros"]) {
    const auto& z = zeros_of(row["chi"].get<std::string>().c_str(), 30.0);
    REQUIRE_FALSE(z.ordinates.empty());
    CHECK(std::abs(z.ordinates.front() - std::stod(row["gamma_str"].get<std::string>())) < 1e-8);
  }
  const auto& z3 = zeros_of("3.1", 50.0);
  CHECK(z3.certified());
  CHECK(static_cast<int>(z3.ordinates.size()) == count_zeros(chi("3.1"), 0.0, 50.0));
  for (std::size_t i = 1; i < z3.ordinates.size(); ++i) CHECK(z3.ordinates[i] - z3.ordinates[i - 1] > 1e-7);
  CHECK(z3.count_in(0.0, 50.0) == z3.ordinates.size());
  CHECK(z3.count_in(10.0, 20.0) == static_cast<std::size_t>(count_zeros(chi("3.1"), 10.0, 20.0)));
  CHECK_NOTHROW(verify_zero_list(z3, chi("3.1")));

  // conjugate character: ordinates of chi-bar are the reflected zeros of chi below the axis
  const auto c = chi("5.1");
  const auto zs = zero_set(c, 30.0);
  for (double g : zs.lower.ordinates) CHECK(std::abs(l_value({0.5, -g}, c)) < 1e-8);
  const auto below = count_zeros(c, -30.0, 0.0);
  CHECK(static_cast<int>(zs.lower.ordinates.size()) == below);
  const auto window = zs.ordinates_within(0.0, 10.0);
  for (double g : window) CHECK(std::abs(g) <= 10.0);

  CHECK_THROWS_AS(find_zeros(c, 0.0), DomainError);
  CHECK_THROWS_AS(find_zeros(c, 250.0), DomainError);
  CHECK_THROWS_AS(find_zeros(characters(12)[1], 10.0), DomainError);
}

TEST_CASE("zero counts match contour counts for small moduli") {
  for (int q : {3, 4, 5, 7, 8, 11}) {
    for (const auto& c : primitive_characters(q)) {
      const auto z = find_zeros(c, 50.0);
      CHECK_MESSAGE(z.certified(), c.label(), " ", z.diagnostic);
    }
  }
}

TEST_CASE("zero cache files") {
  const auto dir = scratch_dir("cache");
  const auto& z = zeros_of("5.2", 30.0);
  const auto path = dir / "5.2.zeros";
  save_zeros(z, path);
  CHECK(load_zeros(path) == z);
  CHECK(parse_zero_list(format_zero_list(z)) == z);
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() == ".zeros");

  const std::string text = format_zero_list(z);
  const auto first_nl = text.find('\n');
  const std::string header = text.substr(0, first_nl);

  SUBCASE("unsorted ordinates") {
    try {
      parse_zero_list(header + "\n7.5\n7.0\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("header grammar") {
    CHECK_THROWS_AS(parse_zero_list("# zeros v2 q=5 chi=5.2 T=30 branch=1,0 complete=1\n"), ParseError);
    CHECK_THROWS_AS(parse_zero_list("# zeros v1 q=5 chi=5.2 T=30 branch=1,0 complete=2\n"), ParseError);
    CHECK_THROWS_AS(parse_zero_list("#zeros v1 q=5 chi=5.2 T=30 branch=1,0 complete=1\n"), ParseError);
    CHECK_THROWS_AS(parse_zero_list(""), ParseError);
    CHECK_THROWS_AS(parse_zero_list(header + "\nabc\n"), ParseError);
    CHECK_THROWS_AS(parse_zero_list(header + "\n31.5\n"), ParseError);  // above T
  }
  SUBCASE("label and modulus mismatch") {
    CHECK_THROWS_AS(parse_zero_list("# zeros v1 q=7 chi=5.2 T=30 branch=1,0 complete=1\n"), IntegrityError);
  }
  SUBCASE("hand-edited ordinate fails re-validation") {
    ZeroList edited = z;
    edited.ordinates[2] += 0.1;
    save_zeros(edited, path);
    CHECK_THROWS_AS(verify_zero_list(load_zeros(path), chi("5.2")), IntegrityError);
    CHECK_THROWS_AS(verify_zero_list(z, chi("5.1")), IntegrityError);
  }
  SUBCASE("cached lists are reused and damaged ones replaced") {
    const auto dir2 = scratch_dir("cache2");
    const auto a = cached_zeros(chi("5.2"), 30.0, dir2);
    CHECK(fs::exists(dir2 / "5.2.zeros"));
    const auto lower = cached_zeros(chi("5.2"), 20.0, dir2);  // served from the taller list
    CHECK(lower.height == 20.0);
    CHECK(lower.ordinates.size() == a.count_in(0.0, 20.0));
    CHECK(load_zeros(dir2 / "5.2.zeros") == a);
    std::ofstream(dir2 / "5.2.zeros") << "garbage\n";
    CHECK(cached_zeros(chi("5.2"), 30.0, dir2) == a);
    ZeroList edited = a;
    edited.ordinates[0] += 0.1;
    save_zeros(edited, dir2 / "5.2.zeros");
    CHECK(cached_zeros(chi("5.2"), 30.0, dir2) == a);
  }
}

TEST_CASE("continuation from a traced anchor matches direct traces") {
  for (const char* label : {"3.1", "8.0-1", "13.3"}) {
    const auto c = chi(label);
    const ArgumentContinuation cont(c, find_zeros(c, 40.0), 2.0);
    for (double t : {2.5, 9.75, 21.3, 37.0}) CHECK(std::abs(cont.value(t) - s_value(t, c).s_value) < 1e-9);
    const double g = cont.zeros().ordinates[1];
    CHECK(cont.distance_to_zero(g + 0.25) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(cont.value(g) == doctest::Approx(0.5 * (cont.value(g - 1e-7) + cont.value(g + 1e-7))).epsilon(1e-6));
  }
  ZeroList unc = find_zeros(chi("3.1"), 20.0);
  unc.completeness = Completeness::uncertified;
  CHECK_THROWS_AS(ArgumentContinuation(chi("3.1"), unc, 5.0), CertificationError);
}
