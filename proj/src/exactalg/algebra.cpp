#include "metacover/algebra.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "metacover/error.hpp"

namespace metacover {

AlgebraTable::AlgebraTable(std::size_t dim, std::size_t conductor)
    : dim_(dim), conductor_(conductor), table_(dim * dim) {}

void AlgebraTable::set_product(std::size_t i, std::size_t j, SparseRow value) {
  if (i >= dim_ || j >= dim_) throw DimensionError("algebra: basis index out of range");
  table_[i * dim_ + j] = std::move(value);
}

SparseRow add_rows(const SparseRow& a, const SparseRow& b, const CycNum& scale_b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, scale_b * b[j].second);
      ++j;
    } else {
      CycNum v = a[i].second + scale_b * b[j].second;
      if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseRow AlgebraTable::multiply(const SparseRow& x, const SparseRow& y) const {
  std::map<std::size_t, CycNum> acc;
  for (const auto& [i, xi] : x) {
    for (const auto& [j, yj] : y) {
      const CycNum f = xi * yj;
      for (const auto& [k, c] : product(i, j)) {
        acc.try_emplace(k, conductor_).first->second += f * c;
      }
    }
  }
  SparseRow out;
  for (auto& [k, v] : acc) {
    if (!v.is_zero()) out.emplace_back(k, std::move(v));
  }
  return out;
}

void check_associative(const AlgebraTable& alg, std::size_t budget) {
  const std::size_t n = alg.dim();
  const std::size_t total = n * n * n;
  const std::size_t step = total <= budget ? 1 : total / budget + 1;
  const CycNum one(alg.conductor(), 1);
  for (std::size_t t = 0; t < total; t += step) {
    const std::size_t i = t / (n * n);
    const std::size_t j = (t / n) % n;
    const std::size_t k = t % n;
    SparseRow ei{{i, one}}, ej{{j, one}}, ek{{k, one}};
    SparseRow left = alg.multiply(alg.multiply(ei, ej), ek);
    SparseRow right = alg.multiply(ei, alg.multiply(ej, ek));
    if (!add_rows(left, right, CycNum(alg.conductor(), -1)).empty()) {
      throw PreconditionError("algebra is not associative at basis triple (" + std::to_string(i) + ", " +
                              std::to_string(j) + ", " + std::to_string(k) + ")");
    }
  }
}

std::size_t radical_dimension(const AlgebraTable& alg) {
  check_associative(alg);
  const std::size_t n = alg.dim();
  const std::size_t N = alg.conductor();
  std::vector<CycNum> trace(n, CycNum(N));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      for (const auto& [idx, c] : alg.product(k, l)) {
        if (idx == l) trace[k] += c;
      }
    }
  }
  RowReducer red(n, N);
  for (std::size_t i = 0; i < n; ++i) {
    SparseRow row;
    for (std::size_t j = 0; j < n; ++j) {
      CycNum g(N);
      for (const auto& [k, c] : alg.product(i, j)) {
        if (!trace[k].is_zero()) g += c * trace[k];
      }
      if (!g.is_zero()) row.emplace_back(j, std::move(g));
    }
    red.add(row);
  }
  return n - red.rank();
}

std::size_t center_dimension(const AlgebraTable& alg, const std::vector<std::size_t>& generators) {
  const std::size_t n = alg.dim();
  const std::size_t N = alg.conductor();
  std::vector<std::size_t> gens = generators;
  if (gens.empty()) {
    for (std::size_t i = 0; i < n; ++i) gens.push_back(i);
  }
  RowReducer red(n, N);
  const CycNum minus_one(N, -1);
  for (std::size_t g : gens) {
    // Row k collects the coefficient of e_k in [e_i, e_g] for each unknown x_i.
    std::map<std::size_t, std::map<std::size_t, CycNum>> rows;
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& [k, c] : add_rows(alg.product(i, g), alg.product(g, i), minus_one)) {
        rows[k].emplace(i, c);
      }
    }
    for (auto& [k, entries] : rows) {
      SparseRow row(entries.begin(), entries.end());
      red.add(row);
    }
  }
  return n - red.rank();
}

std::size_t left_ideal_dimension(const AlgebraTable& alg, const SparseRow& x) {
  const std::size_t n = alg.dim();
  RowReducer red(n, alg.conductor());
  const CycNum one(alg.conductor(), 1);
  for (std::size_t j = 0; j < n; ++j) red.add(alg.multiply(SparseRow{{j, one}}, x));
  return red.rank();
}

namespace {

// Strips p from an integer: returns exponent, leaves the cofactor in x.
unsigned long strip(mpz_class& x, unsigned long p) {
  unsigned long e = 0;
  while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
    mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
    ++e;
  }
  return e;
}

// Squarefree-equivalent integer representative of a nonzero rational.
mpz_class integer_class(const mpq_class& a) {
  if (sgn(a) == 0) throw PreconditionError("quaternion parameters must be nonzero");
  return a.get_num() * a.get_den();
}

void prime_factors(mpz_class x, std::vector<unsigned long>& out) {
  x = abs(x);
  for (unsigned long p = 2; x > 1; ++p) {
    if (mpz_class(p) * p > x) {
      if (!x.fits_ulong_p()) throw BoundExceeded("quaternion parameter too large to factor");
      out.push_back(x.get_ui());
      break;
    }
    if (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
      out.push_back(p);
      strip(x, p);
    }
    if (p > 1000000) throw BoundExceeded("quaternion parameter too large to factor");
  }
}

}  // namespace

int hilbert_symbol(const mpq_class& a, const mpq_class& b, unsigned long p) {
  mpz_class x = integer_class(a);
  mpz_class y = integer_class(b);
  if (p == 0) return (sgn(x) < 0 && sgn(y) < 0) ? -1 : 1;
  const unsigned long alpha = strip(x, p);
  const unsigned long beta = strip(y, p);
  if (p == 2) {
    auto eps = [](const mpz_class& u) { return mpz_class(((u % 4) + 4) % 4) == 3 ? 1 : 0; };
    auto omega = [](const mpz_class& u) {
      const long r = mpz_class(((u % 8) + 8) % 8).get_si();
      return (r == 3 || r == 5) ? 1 : 0;
    };
    const unsigned long e = eps(x) * eps(y) + alpha * omega(y) + beta * omega(x);
    return e % 2 == 0 ? 1 : -1;
  }
  const mpz_class pp(p);
  int s = 1;
  if ((alpha * beta) % 2 == 1 && (p % 4) == 3) s = -s;
  if (beta % 2 == 1) s *= mpz_legendre(x.get_mpz_t(), pp.get_mpz_t());
  if (alpha % 2 == 1) s *= mpz_legendre(y.get_mpz_t(), pp.get_mpz_t());
  return s;
}

std::vector<unsigned long> ramified_places(const mpq_class& a, const mpq_class& b) {
  std::vector<unsigned long> primes{2};
  prime_factors(integer_class(a), primes);
  prime_factors(integer_class(b), primes);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<unsigned long> out;
  if (hilbert_symbol(a, b, 0) == -1) out.push_back(0);
  for (unsigned long p : primes) {
    if (hilbert_symbol(a, b, p) == -1) out.push_back(p);
  }
  return out;
}

std::size_t local_degree(std::size_t conductor, unsigned long p) {
  if (p == 0) return conductor > 2 ? 2 : 1;
  std::size_t rest = conductor;
  std::size_t ppow = 1;
  while (rest % p == 0) {
    rest /= p;
    ppow *= p;
  }
  const std::size_t ram = euler_phi(ppow);
  std::size_t order = 1;
  std::size_t acc = p % rest;
  if (rest == 1) return ram;
  while (acc != 1) {
    acc = (acc * p) % rest;
    ++order;
  }
  return ram * order;
}

bool quaternion_splits(const mpq_class& a, const mpq_class& b, std::size_t conductor) {
  // A quaternion algebra over a number field splits iff it splits at every
  // place; at a place over v it splits iff (a, b)_v = 1 or the local degree is even.
  for (unsigned long v : ramified_places(a, b)) {
    if (local_degree(conductor, v) % 2 == 1) return false;
  }
  return true;
}

}  // namespace metacover
