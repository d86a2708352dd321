#pragma once

#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace testsupport {

inline nlohmann::json load_fixture() {
  std::ifstream in(SARG_FIXTURE_PATH);
  std::stringstream ss;
  ss << in.rdbuf();
  return nlohmann::json::parse(ss.str());
}

/// Cohen-Rodriguez Villegas-Zagier acceleration of sum_{k>=0} (-1)^k a_k.
template <class F>
double alternating_sum(F&& a, int n = 40) {
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = (d + 1.0 / d) / 2.0;
  double b = -1.0, c = -d, s = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    s += c * a(k);
    b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0));
  }
  return s / d;
}

/// Lambda(n) by trial division.
inline double mangoldt(long n) {
  if (n < 2) return 0.0;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      long m = n;
      while (m % p == 0) m /= p;
      return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
    }
  }
  return std::log(static_cast<double>(n));
}

inline long gcd(long a, long b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a < 0 ? -a : a;
}

}  // namespace testsupport
