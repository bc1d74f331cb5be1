#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace metacover {

using Rational = mpq_class;

std::size_t euler_phi(std::size_t n);
std::size_t lcm_size(std::size_t a, std::size_t b);

/// Precomputed reduction data for Q(zeta_N).
struct CyclotomicData {
  std::size_t conductor = 1;
  std::size_t degree = 1;
  std::vector<long> polynomial;  // Phi_N, low degree first, monic
  std::vector<std::vector<long>> powers;  // zeta^k reduced, k in [0, N)
};

/// Cached per conductor; references stay valid for the life of the process.
const CyclotomicData& cyclotomic_data(std::size_t conductor);

/// Element of Q(zeta_N) stored as its remainder modulo Phi_N, so equality is
/// coefficient-wise.
class CycNum {
 public:
  CycNum();
  explicit CycNum(std::size_t conductor);
  CycNum(std::size_t conductor, const Rational& value);
  CycNum(std::size_t conductor, long value) : CycNum(conductor, Rational(value)) {}
  CycNum(std::size_t conductor, std::vector<Rational> coefficients);

  /// zeta_N^exponent.
  static CycNum root_of_unity(std::size_t conductor, long long exponent);

  std::size_t conductor() const { return conductor_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  /// Requires is_rational().
  Rational rational_value() const;
  /// Exponent k in [0, N) with *this == zeta_N^k, if any.
  std::optional<long long> root_exponent() const;

  CycNum inverse() const;
  /// Image under Q(zeta_N) -> Q(zeta_target); N must divide target.
  CycNum embed(std::size_t target) const;
  /// Galois conjugate zeta -> zeta^k, gcd(k, N) = 1.
  CycNum galois(long long k) const;

  CycNum& operator+=(const CycNum& o);
  CycNum& operator-=(const CycNum& o);
  CycNum& operator*=(const CycNum& o);
  CycNum& operator*=(const Rational& r);

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(const CycNum& a, const CycNum& b);
  friend CycNum operator*(CycNum a, const Rational& r) { return a *= r; }
  friend CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inverse(); }
  CycNum operator-() const;

  friend bool operator==(const CycNum& a, const CycNum& b);
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  /// Human readable, e.g. "1/2 - z^2" with z = zeta_N.
  std::string to_string() const;

 private:
  void require_same(const CycNum& o) const;

  std::size_t conductor_;
  std::vector<Rational> coeffs_;
};

/// Multiplication of a by zeta^k without a general product.
CycNum times_root(const CycNum& a, long long k);

}  // namespace metacover
