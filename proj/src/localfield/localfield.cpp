#include "metacover/localfield.hpp"

#include <algorithm>

#include "metacover/error.hpp"

namespace metacover {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

std::vector<std::int64_t> digits(std::int64_t code, std::int64_t p, std::int64_t f) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(f));
  for (auto& d : out) {
    d = code % p;
    code /= p;
  }
  return out;
}

std::int64_t undigits(const std::vector<std::int64_t>& d, std::int64_t p) {
  std::int64_t code = 0;
  for (std::size_t i = d.size(); i-- > 0;) code = code * p + d[i];
  return code;
}

// Product in F_p[x]/(modulus); modulus is monic of degree f, low degree first.
std::vector<std::int64_t> mulmod(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                                 const std::vector<std::int64_t>& modulus, std::int64_t p) {
  const std::size_t f = modulus.size() - 1;
  std::vector<std::int64_t> prod(2 * f, 0);
  for (std::size_t i = 0; i < f; ++i) {
    for (std::size_t j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  for (std::size_t k = 2 * f; k-- > f;) {
    const std::int64_t c = prod[k];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= f; ++j) prod[k - f + j] = mod(prod[k - f + j] - c * modulus[j], p);
  }
  prod.resize(f);
  return prod;
}

bool irreducible(const std::vector<std::int64_t>& poly, std::int64_t p) {
  // Degree is tiny; test for roots and, for degree >= 4, all monic factors up to half the degree.
  const std::size_t deg = poly.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::int64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::int64_t code = 0; code < count; ++code) {
      std::vector<std::int64_t> fac = digits(code, p, static_cast<std::int64_t>(d));
      fac.push_back(1);
      std::vector<std::int64_t> rem = poly;
      for (std::size_t k = rem.size(); k-- > d;) {
        const std::int64_t c = rem[k];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= d; ++j) rem[k - d + j] = mod(rem[k - d + j] - c * fac[j], p);
      }
      bool zero = true;
      for (std::size_t j = 0; j < d; ++j) zero = zero && rem[j] == 0;
      if (zero) return false;
    }
  }
  return true;
}

}  // namespace

MuElement::MuElement(std::int64_t exponent, std::int64_t order) : e(mod(exponent, order)), m(order) {}

MuElement MuElement::operator*(const MuElement& o) const {
  if (m != o.m) throw PreconditionError("roots of unity of different orders");
  return MuElement(e + o.e, m);
}

MuElement MuElement::inverse() const { return MuElement(-e, m); }

int MuElement::sign() const {
  if (e == 0) return 1;
  if (2 * e == m) return -1;
  throw PreconditionError("root of unity is not real");
}

std::string MuElement::to_string() const { return "zeta_" + std::to_string(m) + "^" + std::to_string(e); }

LocalModel::LocalModel(std::int64_t q, std::int64_t m) : q_(q), m_(m) {
  if (q < 2) throw PreconditionError("q must be a prime power");
  if (m < 1) throw PreconditionError("m must be positive");
  std::int64_t p = 2;
  while (q % p != 0) ++p;
  std::int64_t rest = q;
  std::int64_t f = 0;
  while (rest % p == 0) {
    rest /= p;
    ++f;
  }
  if (rest != 1) throw PreconditionError("q must be a prime power");
  if (q > (1 << 20)) throw BoundExceeded("residue field too large");
  p_ = p;
  f_ = f;
  if ((q - 1) % m != 0) throw PreconditionError("no primitive m-th root of unity in residue field");
  if (m % p == 0) throw PreconditionError("wild case p | m is not supported");

  // Smallest monic irreducible polynomial of degree f.
  std::int64_t count = 1;
  for (std::int64_t i = 0; i < f; ++i) count *= p;
  for (std::int64_t code = 0; code < count; ++code) {
    std::vector<std::int64_t> poly = digits(code, p, f);
    poly.push_back(1);
    if (f == 1 || irreducible(poly, p)) {
      modulus_ = poly;
      break;
    }
  }

  log_table_.assign(static_cast<std::size_t>(q), -1);
  exp_table_.assign(static_cast<std::size_t>(q - 1), 0);
  for (std::int64_t g = 1; g < q; ++g) {
    const std::vector<std::int64_t> gd = digits(g, p, f);
    std::vector<std::int64_t> cur = digits(1, p, f);
    std::int64_t order = 0;
    std::fill(log_table_.begin(), log_table_.end(), -1);
    bool primitive = true;
    for (std::int64_t k = 0; k < q - 1; ++k) {
      const std::int64_t c = undigits(cur, p);
      if (log_table_[static_cast<std::size_t>(c)] != -1) {
        primitive = false;
        break;
      }
      log_table_[static_cast<std::size_t>(c)] = k;
      exp_table_[static_cast<std::size_t>(k)] = c;
      cur = mulmod(cur, gd, modulus_, p);
      ++order;
    }
    if (primitive && order == q - 1) {
      generator_ = g;
      return;
    }
  }
  throw Error("no primitive root found");
}

TameElement LocalModel::make(std::int64_t v, std::int64_t u) const { return TameElement{v, mod(u, q_ - 1)}; }

TameElement LocalModel::multiply(const TameElement& x, const TameElement& y) const {
  return make(x.v + y.v, x.u + y.u);
}

TameElement LocalModel::power(const TameElement& x, std::int64_t k) const {
  return make(x.v * k, x.u * k);
}

TameElement LocalModel::negate(const TameElement& x) const { return make(x.v, x.u + minus_one_log()); }

std::int64_t LocalModel::residue_code(std::int64_t u) const {
  return exp_table_[static_cast<std::size_t>(mod(u, q_ - 1))];
}

std::int64_t LocalModel::discrete_log(std::int64_t code) const {
  if (code <= 0 || code >= q_) throw PreconditionError("discrete log of zero or out-of-range element");
  return log_table_[static_cast<std::size_t>(code)];
}

MuElement tame_symbol(const LocalModel& model, const TameElement& x, const TameElement& y) {
  // log of (-1)^{v(x)v(y)} x^{v(y)} y^{-v(x)} mod p, then raised to (q-1)/m.
  const std::int64_t n = model.q() - 1;
  const std::int64_t vx = mod(x.v, n);
  const std::int64_t vy = mod(y.v, n);
  std::int64_t l = model.minus_one_log() * ((vx * vy) % n) + x.u * vy - y.u * vx;
  return MuElement(mod(l, n), model.m());
}

}  // namespace metacover
