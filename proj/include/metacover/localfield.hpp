#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace metacover {

/// Exponent of the fixed primitive m-th root of unity.
struct MuElement {
  std::int64_t e = 0;
  std::int64_t m = 1;

  MuElement() = default;
  MuElement(std::int64_t exponent, std::int64_t order);

  MuElement operator*(const MuElement& o) const;
  MuElement inverse() const;
  bool is_one() const { return e == 0; }
  friend bool operator==(const MuElement& a, const MuElement& b) { return a.e == b.e && a.m == b.m; }
  /// +1 / -1 when the element has order at most two.
  int sign() const;
  std::string to_string() const;
};

/// Class of k^x / (1 + p): valuation and discrete log of the residue unit.
struct TameElement {
  std::int64_t v = 0;
  std::int64_t u = 0;  // modulo q - 1
};

/// Tame quotient of a nonarchimedean local field with residue field F_q
/// and m | q - 1.
class LocalModel {
 public:
  LocalModel(std::int64_t q, std::int64_t m);

  std::int64_t q() const { return q_; }
  std::int64_t m() const { return m_; }
  std::int64_t p() const { return p_; }
  /// Smallest primitive root of F_q with respect to the chosen modulus polynomial.
  std::int64_t generator_index() const { return generator_; }
  /// Discrete log of -1, or 0 in characteristic 2.
  std::int64_t minus_one_log() const { return (q_ % 2 == 0) ? 0 : (q_ - 1) / 2; }

  TameElement make(std::int64_t v, std::int64_t u) const;
  TameElement multiply(const TameElement& x, const TameElement& y) const;
  TameElement power(const TameElement& x, std::int64_t k) const;
  TameElement negate(const TameElement& x) const;

  /// Residue field element as an integer code (base-p digits of the polynomial
  /// coefficients) of g^u, for display and oracles.
  std::int64_t residue_code(std::int64_t u) const;
  /// Discrete log of a nonzero residue field element given by its code.
  std::int64_t discrete_log(std::int64_t code) const;

 private:
  std::int64_t q_;
  std::int64_t m_;
  std::int64_t p_;
  std::int64_t f_;
  std::int64_t generator_;
  std::vector<std::int64_t> modulus_;  // monic irreducible of degree f over F_p
  std::vector<std::int64_t> exp_table_;  // g^k codes
  std::vector<std::int64_t> log_table_;  // code -> log, -1 for zero
};

MuElement tame_symbol(const LocalModel& model, const TameElement& x, const TameElement& y);

}  // namespace metacover
