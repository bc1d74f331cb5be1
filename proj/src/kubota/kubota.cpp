#include "metacover/kubota.hpp"

#include <algorithm>
#include <random>

#include "metacover/error.hpp"

namespace metacover {

namespace {

constexpr std::size_t kMaxWordLength = 12;

mpz_class max_abs(const Mat2& g) {
  mpz_class m = abs(g.a);
  for (const auto* x : {&g.b, &g.c, &g.d}) {
    if (abs(*x) > m) m = abs(*x);
  }
  return m;
}

// Sign of the real Hilbert symbol (a, b).
int real_hilbert(const mpz_class& a, const mpz_class& b) { return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1; }

mpz_class x_of(const Mat2& g) { return g.c != 0 ? g.c : g.d; }

}  // namespace

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

bool operator==(const Mat2& x, const Mat2& y) { return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d; }

Mat2 Mat2::inverse() const {
  if (det() != 1) throw PreconditionError("matrix does not have determinant 1");
  return {d, -b, -c, a};
}

std::string Mat2::to_string() const {
  return "[[" + a.get_str() + "," + b.get_str() + "],[" + c.get_str() + "," + d.get_str() + "]]";
}

int kronecker_symbol(const mpz_class& c, const mpz_class& d) { return mpz_kronecker(c.get_mpz_t(), d.get_mpz_t()); }

bool in_gamma_level(const Mat2& g, std::int64_t m) {
  const mpz_class n = static_cast<long>(m * m);
  auto divides = [&](const mpz_class& x) { return mpz_divisible_p(x.get_mpz_t(), n.get_mpz_t()) != 0; };
  return g.det() == 1 && divides(g.a - 1) && divides(g.d - 1) && divides(g.b) && divides(g.c);
}

int kubota_symbol(const Mat2& g, std::int64_t m) {
  if (m != 2) throw PreconditionError("only m = 2 over Q is supported");
  if (!in_gamma_level(g, m)) throw PreconditionError("matrix " + g.to_string() + " is not in Gamma(4)");
  if (g.c == 0) return 1;
  return kronecker_symbol(g.c, g.d);
}

int real_place_cocycle(const Mat2& g1, const Mat2& g2) {
  const mpz_class x = x_of(g1 * g2);
  return real_hilbert(x_of(g1) * x, x_of(g2) * x);
}

std::vector<Mat2> audit_generators() {
  const std::vector<Mat2> base{{1, 4, 0, 1}, {1, 0, 4, 1}, {-3, 4, -4, 5}};
  std::vector<Mat2> out;
  for (const auto& g : base) {
    out.push_back(g);
    out.push_back(g.inverse());
  }
  return out;
}

AuditReport homomorphism_audit(std::int64_t m, std::size_t samples, const mpz_class& entry_bound, std::uint64_t seed) {
  if (m != 2) throw PreconditionError("only m = 2 over Q is supported");
  const auto gens = audit_generators();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> length(0, kMaxWordLength);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  AuditReport report;
  auto word = [&]() {
    Mat2 g;
    const std::size_t len = length(rng);
    std::size_t used = 0;
    for (std::size_t i = 0; i < len; ++i) {
      // Steps that would leave the entry bound are skipped, so words may be shorter than drawn.
      const Mat2 next = g * gens[pick(rng)];
      if (max_abs(next) > entry_bound) continue;
      g = next;
      ++used;
    }
    report.max_word_length = std::max(report.max_word_length, used);
    if (max_abs(g) > report.max_entry) report.max_entry = max_abs(g);
    return g;
  };
  for (std::size_t s = 0; s < samples; ++s) {
    const Mat2 g1 = word();
    const Mat2 g2 = word();
    const Mat2 g12 = g1 * g2;
    const int k1 = kubota_symbol(g1, m);
    const int k2 = kubota_symbol(g2, m);
    const int k12 = kubota_symbol(g12, m);
    ++report.samples;
    if (k1 == -1 || k2 == -1 || k12 == -1) report.surjective = true;
    if (kubota_symbol(g1.inverse(), m) != k1) ++report.inverse_failures;
    const int sigma = real_place_cocycle(g1, g2);
    if (k1 * k2 * sigma != k12) ++report.cocycle_mismatches;
    if (k1 * k2 != k12) {
      const bool explained = k1 * k2 * sigma == k12;
      if (explained) ++report.explained;
      report.failures.push_back({g1, g2, k1, k2, k12, explained});
    }
  }
  return report;
}

}  // namespace metacover
