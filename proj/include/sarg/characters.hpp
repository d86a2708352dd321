#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sarg {

/// Canonical generators of (Z/qZ)^*: one cyclic factor per odd prime power
/// (smallest primitive root), <-1> for 4 | q, and <-1> x <3> for 8 | q.
struct UnitGroupStructure {
  int modulus = 0;
  std::vector<int> generators;  // residues mod q, CRT-lifted (1 on the other components)
  std::vector<int> orders;
  std::vector<int> components;  // prime-power modulus each generator lives on

  int order() const;  // phi(q)

  /// Exponent vector of a unit n (gcd(n, q) = 1).
  std::vector<int> exponents_of(int n) const;
};

UnitGroupStructure unit_group_structure(int q);

/// A Dirichlet character mod q, fixed by its exponent vector on the canonical generators.
class DirichletCharacter {
 public:
  DirichletCharacter(const UnitGroupStructure& group, std::vector<int> exponents);

  int modulus() const { return modulus_; }
  const std::vector<int>& exponents() const { return exponents_; }
  const std::vector<int>& orders() const { return orders_; }

  /// chi(n) for any integer n (reduced mod q).
  std::complex<double> operator()(std::int64_t n) const {
    std::int64_t r = n % modulus_;
    if (r < 0) r += modulus_;
    return values_[static_cast<std::size_t>(r)];
  }
  const std::vector<std::complex<double>>& values() const { return values_; }

  /// Exact rational phase: chi(n) = exp(2 pi i phase_num(n) / phase_den()); -1 for non-units.
  int phase_num(std::int64_t n) const;
  int phase_den() const { return phase_den_; }

  int conductor() const { return conductor_; }
  bool is_primitive() const { return conductor_ == modulus_; }
  bool is_principal() const;
  bool is_real() const;
  /// 0 if chi(-1) = 1, 1 if chi(-1) = -1.
  int parity() const { return parity_; }

  DirichletCharacter conj() const;

  /// "<q>.<e1>-<e2>-...".
  std::string label() const;

 private:
  int modulus_;
  std::vector<int> exponents_;
  std::vector<int> orders_;
  std::vector<int> phase_;  // -1 on non-units
  int phase_den_;
  std::vector<std::complex<double>> values_;
  int conductor_;
  int parity_;
  UnitGroupStructure group_;
};

/// All phi(q) characters mod q, lexicographic in the exponent vector.
std::vector<DirichletCharacter> characters(int q);

/// Only the primitive characters mod q (same ordering).
std::vector<DirichletCharacter> primitive_characters(int q);

int conductor(const DirichletCharacter& chi);

/// tau(chi) = sum_r chi(r) e^{2 pi i r / q}; requires chi primitive.
std::complex<double> gauss_sum(const DirichletCharacter& chi);

/// Parses "<q>.<e1>-...-<ek>"; rejects exponents outside [0, order).
DirichletCharacter parse_character_label(std::string_view label);

int euler_phi(int n);
int gcd_int(int a, int b);

}  // namespace sarg
