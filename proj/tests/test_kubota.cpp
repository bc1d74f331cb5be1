#include <doctest.h>

#include "metacover/error.hpp"
#include "metacover/kubota.hpp"
#include "oracles.hpp"

using namespace metacover;

namespace {

Mat2 mat(long a, long b, long c, long d) { return Mat2{a, b, c, d}; }

}  // namespace

TEST_CASE("Kronecker symbol") {
  CHECK(kronecker_symbol(2, 5) == -1);
  CHECK(kronecker_symbol(4, 17) == 1);
  for (long c = -30; c <= 30; ++c) CHECK(kronecker_symbol(c, 1) == 1);
  std::size_t mismatches = 0;
  for (long c = -60; c <= 60; ++c)
    for (long d = -60; d <= 60; ++d)
      if (kronecker_symbol(c, d) != oracle::kronecker(c, d)) ++mismatches;
  CHECK(mismatches == 0);
  for (long a = -12; a <= 12; ++a)
    for (long b = -12; b <= 12; ++b)
      for (long d = -15; d <= 15; ++d) {
        if (a == 0 || b == 0 || d == 0) continue;
        CHECK(kronecker_symbol(a * b, d) == kronecker_symbol(a, d) * kronecker_symbol(b, d));
        CHECK(kronecker_symbol(d, a * b) == kronecker_symbol(d, a) * kronecker_symbol(d, b));
      }
  const mpz_class big("1000000000000000000000000000057");
  CHECK(kronecker_symbol(big * big, mpz_class("1000000007")) == 1);
}

TEST_CASE("membership in Gamma(4)") {
  CHECK(in_gamma_level(mat(1, 0, 0, 1), 2));
  CHECK_FALSE(in_gamma_level(mat(1, 1, 0, 1), 2));
  CHECK(in_gamma_level(mat(13, 8, 8, 5), 2));
  CHECK_FALSE(in_gamma_level(mat(13, 8, 8, 6), 2));
  for (const auto& g : audit_generators()) CHECK(in_gamma_level(g, 2));
}

TEST_CASE("symbol values") {
  CHECK(kubota_symbol(mat(1, 4, 0, 1)) == 1);
  CHECK(kubota_symbol(mat(1, -8, 0, 1)) == 1);
  CHECK(kubota_symbol(mat(13, 8, 8, 5)) == -1);
  CHECK(kubota_symbol(mat(1, 4, 4, 17)) == 1);
  CHECK_THROWS_AS(kubota_symbol(mat(1, 1, 0, 1)), PreconditionError);
  CHECK_THROWS_AS(kubota_symbol(mat(1, 0, 0, 1), 3), PreconditionError);
}

TEST_CASE("products of the example matrices") {
  const Mat2 id;
  CHECK(kubota_symbol(id * id) == kubota_symbol(id) * kubota_symbol(id));
  const auto g1 = mat(13, 8, 8, 5), g2 = mat(1, 4, 4, 17);
  const auto p = g1 * g2;
  CHECK(p == mat(45, 188, 28, 117));
  CHECK(in_gamma_level(p, 2));
  CHECK(kubota_symbol(p) == kubota_symbol(g1) * kubota_symbol(g2));
  CHECK(g1 * g1.inverse() == id);
}

TEST_CASE("elementary matrices lie in the kernel") {
  for (long k = -40; k <= 40; k += 2) {
    CHECK(kubota_symbol(mat(1, 4 * k, 0, 1)) == 1);
    CHECK(kubota_symbol(mat(1, 0, 4 * k, 1)) == 1);
  }
}

TEST_CASE("audit is reproducible") {
  const auto a = homomorphism_audit(2, 200, 1000000, 99);
  const auto b = homomorphism_audit(2, 200, 1000000, 99);
  CHECK(a.samples == 200);
  CHECK(a.failures.size() == b.failures.size());
  CHECK(a.max_entry == b.max_entry);
  CHECK(a.max_entry <= 1000000);
  CHECK(a.max_word_length <= 12);
}

TEST_CASE("audit failures are all accounted for by the real place") {
  const auto r = homomorphism_audit(2, 1000, 1000000, 42);
  CHECK(r.surjective);
  CHECK(r.inverse_failures == 0);
  CHECK(r.explained == r.failures.size());
  CHECK(r.cocycle_mismatches == 0);
  for (const auto& f : r.failures) {
    CHECK(f.k12 == f.k1 * f.k2 * real_place_cocycle(f.g1, f.g2));
  }
}

TEST_CASE("1000-sample audit at entry bound 10^6 has zero homomorphism failures") {
  const auto r = homomorphism_audit(2, 1000, 1000000, 42);
  CHECK(r.samples == 1000);
  CHECK(r.surjective);
  CHECK(r.failures.empty());
}
