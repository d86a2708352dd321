#include "sarg/characters.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>

#include "sarg/error.hpp"

namespace sarg {

namespace {

std::vector<std::pair<int, int>> factorize(int n) {
  std::vector<std::pair<int, int>> out;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    out.emplace_back(p, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int mulmod(int a, int b, int m) {
  return static_cast<int>(static_cast<std::int64_t>(a) * b % m);
}

int multiplicative_order(int g, int m) {
  int k = 1;
  int x = g % m;
  while (x != 1) {
    x = mulmod(x, g, m);
    ++k;
  }
  return k;
}

// x = g (mod pk), x = 1 (mod rest)
int crt_lift(int g, int pk, int rest) {
  const int q = pk * rest;
  for (int x = g % pk; x < q; x += pk) {
    if (x % rest == 1 % rest) return x;
  }
  return g;
}

int discrete_log(int base, int target, int order, int m) {
  int x = 1;
  for (int k = 0; k < order; ++k) {
    if (x == target % m) return k;
    x = mulmod(x, base, m);
  }
  throw DomainError("discrete_log: target not in the subgroup");
}

}  // namespace

int gcd_int(int a, int b) { return std::gcd(a, b); }

int euler_phi(int n) {
  int r = n;
  for (auto [p, k] : factorize(n)) r = r / p * (p - 1);
  return r;
}

int UnitGroupStructure::order() const {
  int r = 1;
  for (int o : orders) r *= o;
  return r;
}

std::vector<int> UnitGroupStructure::exponents_of(int n) const {
  n %= modulus;
  if (n < 0) n += modulus;
  if (std::gcd(n, modulus) != 1) throw DomainError("exponents_of: not a unit");
  std::vector<int> e(generators.size(), 0);
  std::size_t i = 0;
  while (i < generators.size()) {
    const int pk = components[i];
    const int r = n % pk;
    if (pk % 8 == 0 && i + 1 < generators.size() && components[i + 1] == pk) {
      // <-1> x <3> on 2^k, k >= 3
      const int sign = (r % 8 == 1 || r % 8 == 3) ? 0 : 1;
      const int rr = sign ? mulmod(r, pk - 1, pk) : r;
      e[i] = sign;
      e[i + 1] = discrete_log(3, rr, orders[i + 1], pk);
      i += 2;
    } else {
      e[i] = discrete_log(generators[i] % pk, r, orders[i], pk);
      i += 1;
    }
  }
  return e;
}

UnitGroupStructure unit_group_structure(int q) {
  if (q < 3) throw DomainError("unit_group_structure: modulus must be >= 3");
  UnitGroupStructure g;
  g.modulus = q;
  for (auto [p, k] : factorize(q)) {
    const int pk = ipow(p, k);
    const int rest = q / pk;
    if (p == 2) {
      if (k == 1) continue;
      g.generators.push_back(crt_lift(pk - 1, pk, rest));
      g.orders.push_back(2);
      g.components.push_back(pk);
      if (k >= 3) {
        g.generators.push_back(crt_lift(3, pk, rest));
        g.orders.push_back(pk / 4);
        g.components.push_back(pk);
      }
    } else {
      const int o = pk / p * (p - 1);
      int root = 2;
      while (root % p == 0 || multiplicative_order(root, pk) != o) ++root;
      g.generators.push_back(crt_lift(root, pk, rest));
      g.orders.push_back(o);
      g.components.push_back(pk);
    }
  }
  return g;
}

DirichletCharacter::DirichletCharacter(const UnitGroupStructure& group, std::vector<int> exponents)
    : modulus_(group.modulus),
      exponents_(std::move(exponents)),
      orders_(group.orders),
      phase_(static_cast<std::size_t>(group.modulus), -1),
      phase_den_(1),
      values_(static_cast<std::size_t>(group.modulus), 0.0),
      conductor_(group.modulus),
      parity_(0),
      group_(group) {
  if (exponents_.size() != orders_.size()) throw DomainError("character: exponent vector has wrong length");
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (exponents_[i] < 0 || exponents_[i] >= orders_[i]) {
      throw DomainError("character: exponent out of range for generator " + std::to_string(i));
    }
    phase_den_ = std::lcm(phase_den_, orders_[i]);
  }
  // Walk the group through the generator powers.
  const int n_units = group.order();
  std::vector<int> ks(orders_.size(), 0);
  for (int idx = 0; idx < n_units; ++idx) {
    int n = 1;
    long long num = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      int gp = 1;
      for (int j = 0; j < ks[i]; ++j) gp = mulmod(gp, group.generators[i], modulus_);
      n = mulmod(n, gp, modulus_);
      num += static_cast<long long>(exponents_[i]) * ks[i] * (phase_den_ / orders_[i]);
    }
    const int ph = static_cast<int>(num % phase_den_);
    phase_[static_cast<std::size_t>(n)] = ph;
    const double ang = 2.0 * std::numbers::pi * ph / phase_den_;
    // exact values on the axes keep real characters real
    std::complex<double> v;
    if (4 * ph == 0) v = 1.0;
    else if (4 * ph == phase_den_) v = {0.0, 1.0};
    else if (2 * ph == phase_den_) v = -1.0;
    else if (4 * ph == 3 * phase_den_) v = {0.0, -1.0};
    else v = std::polar(1.0, ang);
    values_[static_cast<std::size_t>(n)] = v;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      if (++ks[i] < orders_[i]) break;
      ks[i] = 0;
    }
  }
  parity_ = phase_[static_cast<std::size_t>(modulus_ - 1)] == 0 ? 0 : 1;

  // conductor: smallest f | q with chi(n) = 1 for every unit n = 1 (mod f)
  for (int f = 1; f <= modulus_; ++f) {
    if (modulus_ % f != 0) continue;
    bool trivial = true;
    for (int n = 1 + f; n < modulus_ + 1 && trivial; n += f) {
      const int r = n % modulus_;
      if (std::gcd(r, modulus_) == 1 && phase_[static_cast<std::size_t>(r)] != 0) trivial = false;
    }
    if (trivial) {
      conductor_ = f;
      break;
    }
  }
}

int DirichletCharacter::phase_num(std::int64_t n) const {
  std::int64_t r = n % modulus_;
  if (r < 0) r += modulus_;
  return phase_[static_cast<std::size_t>(r)];
}

bool DirichletCharacter::is_principal() const {
  for (int e : exponents_) {
    if (e != 0) return false;
  }
  return true;
}

bool DirichletCharacter::is_real() const {
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if ((2 * exponents_[i]) % orders_[i] != 0) return false;
  }
  return true;
}

DirichletCharacter DirichletCharacter::conj() const {
  std::vector<int> e(exponents_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = (orders_[i] - exponents_[i]) % orders_[i];
  return DirichletCharacter(group_, std::move(e));
}

std::string DirichletCharacter::label() const {
  std::string out = std::to_string(modulus_) + ".";
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (i) out += "-";
    out += std::to_string(exponents_[i]);
  }
  return out;
}

std::vector<DirichletCharacter> characters(int q) {
  const UnitGroupStructure g = unit_group_structure(q);
  std::vector<DirichletCharacter> out;
  out.reserve(static_cast<std::size_t>(g.order()));
  std::vector<int> e(g.orders.size(), 0);
  const int total = g.order();
  for (int idx = 0; idx < total; ++idx) {
    out.emplace_back(g, e);
    // lexicographic: last coordinate fastest
    for (std::size_t i = e.size(); i-- > 0;) {
      if (++e[i] < g.orders[i]) break;
      e[i] = 0;
    }
  }
  return out;
}

std::vector<DirichletCharacter> primitive_characters(int q) {
  std::vector<DirichletCharacter> out;
  for (auto& chi : characters(q)) {
    if (chi.is_primitive()) out.push_back(std::move(chi));
  }
  return out;
}

int conductor(const DirichletCharacter& chi) { return chi.conductor(); }

std::complex<double> gauss_sum(const DirichletCharacter& chi) {
  if (!chi.is_primitive()) throw DomainError("gauss_sum: character " + chi.label() + " is not primitive");
  const int q = chi.modulus();
  std::complex<double> tau = 0.0;
  for (int r = 1; r <= q; ++r) {
    const int ph = chi.phase_num(r);
    if (ph < 0) continue;
    // combine both phases exactly before taking sin/cos
    const long long num = static_cast<long long>(ph) * q + static_cast<long long>(r % q) * chi.phase_den();
    const long long den = static_cast<long long>(chi.phase_den()) * q;
    tau += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(num % den) / static_cast<double>(den));
  }
  return tau;
}

DirichletCharacter parse_character_label(std::string_view label) {
  auto bad = [&](const std::string& why) {
    return ParseError("character label '" + std::string(label) + "': " + why, 0);
  };
  const auto dot = label.find('.');
  if (dot == std::string_view::npos || dot == 0) throw bad("expected <q>.<e1>-...");
  auto parse_int = [&](std::string_view s) {
    int v = 0;
    if (s.empty()) throw bad("empty integer");
    if (s.front() == '-' || (s.size() > 1 && s.front() == '0')) throw bad("not a canonical integer: '" + std::string(s) + "'");
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw bad("not a decimal integer: '" + std::string(s) + "'");
    return v;
  };
  const int q = parse_int(label.substr(0, dot));
  if (q < 3) throw bad("modulus must be >= 3");
  std::vector<int> e;
  std::string_view rest = label.substr(dot + 1);
  while (true) {
    const auto dash = rest.find('-');
    e.push_back(parse_int(rest.substr(0, dash)));
    if (dash == std::string_view::npos) break;
    rest = rest.substr(dash + 1);
  }
  const UnitGroupStructure g = unit_group_structure(q);
  if (e.size() != g.orders.size()) {
    throw bad("expected " + std::to_string(g.orders.size()) + " exponents");
  }
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0 || e[i] >= g.orders[i]) throw bad("exponent exceeds generator order");
  }
  return DirichletCharacter(g, std::move(e));
}

}  // namespace sarg
