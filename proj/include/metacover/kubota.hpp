#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace metacover {

struct Mat2 {
  mpz_class a = 1;
  mpz_class b = 0;
  mpz_class c = 0;
  mpz_class d = 1;

  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  friend bool operator==(const Mat2& x, const Mat2& y);
  Mat2 inverse() const;  // requires det = 1
  mpz_class det() const { return a * d - b * c; }
  std::string to_string() const;
};

/// Kronecker symbol (c/d), including d <= 0 and even d.
int kronecker_symbol(const mpz_class& c, const mpz_class& d);
/// det = 1, a = d = 1 and b = c = 0 modulo m^2.
bool in_gamma_level(const Mat2& g, std::int64_t m);
/// (c/d) when c != 0, else 1. Only m = 2 is supported.
int kubota_symbol(const Mat2& g, std::int64_t m = 2);
/// Real Hilbert symbol (x(g1) x, x(g2) x) with x(g) = c if c != 0 else d and x = x(g1 g2).
int real_place_cocycle(const Mat2& g1, const Mat2& g2);

struct AuditFailure {
  Mat2 g1;
  Mat2 g2;
  int k1 = 1;
  int k2 = 1;
  int k12 = 1;
  bool explained_by_real_cocycle = false;
};

struct AuditReport {
  std::size_t samples = 0;
  std::vector<AuditFailure> failures;
  std::size_t explained = 0;         // failures matching the real-place cocycle
  std::size_t cocycle_mismatches = 0;  // pairs where k1 k2 sigma != k12
  std::size_t inverse_failures = 0;  // kappa(g^{-1}) != kappa(g)^{-1}
  bool surjective = false;
  std::size_t max_word_length = 0;
  mpz_class max_entry = 0;
};

/// Fixed generators of Gamma(4) used for sampling, each followed by its inverse.
std::vector<Mat2> audit_generators();
AuditReport homomorphism_audit(std::int64_t m, std::size_t samples, const mpz_class& entry_bound, std::uint64_t seed);

}  // namespace metacover
