#include "metacover/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "metacover/error.hpp"

namespace metacover {

std::size_t euler_phi(std::size_t n) {
  std::size_t result = n;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::size_t lcm_size(std::size_t a, std::size_t b) { return std::lcm(a, b); }

namespace {

using Poly = std::vector<long>;

// Exact division of monic integer polynomials.
Poly divide_exact(const Poly& num, const Poly& den) {
  Poly rem = num;
  const std::size_t dn = den.size() - 1;
  Poly quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    long c = rem[i];
    quot[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) rem[i - dn + j] -= c * den[j];
  }
  return quot;
}

std::unique_ptr<CyclotomicData> build_data(std::size_t n) {
  auto data = std::make_unique<CyclotomicData>();
  data->conductor = n;
  Poly poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d == 0) poly = divide_exact(poly, cyclotomic_data(d).polynomial);
  }
  data->polynomial = poly;
  const std::size_t deg = poly.size() - 1;
  data->degree = deg;
  data->powers.assign(n, std::vector<long>(deg, 0));
  std::vector<long> cur(deg, 0);
  cur[0] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    data->powers[k] = cur;
    // multiply by x and reduce with x^deg = -sum poly[j] x^j
    long top = cur[deg - 1];
    for (std::size_t j = deg - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    for (std::size_t j = 0; j < deg; ++j) cur[j] -= top * poly[j];
  }
  return data;
}

}  // namespace

const CyclotomicData& cyclotomic_data(std::size_t conductor) {
  if (conductor == 0) throw ConductorError("conductor must be positive");
  static std::recursive_mutex mutex;
  static std::map<std::size_t, std::unique_ptr<CyclotomicData>> cache;
  std::lock_guard<std::recursive_mutex> lock(mutex);
  auto it = cache.find(conductor);
  if (it != cache.end()) return *it->second;
  auto data = build_data(conductor);
  auto& ref = *data;
  cache.emplace(conductor, std::move(data));
  return ref;
}

CycNum::CycNum() : CycNum(1) {}

CycNum::CycNum(std::size_t conductor)
    : conductor_(conductor), coeffs_(cyclotomic_data(conductor).degree) {}

CycNum::CycNum(std::size_t conductor, const Rational& value) : CycNum(conductor) {
  coeffs_[0] = value;
}

CycNum::CycNum(std::size_t conductor, std::vector<Rational> coefficients)
    : conductor_(conductor), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != cyclotomic_data(conductor).degree) {
    throw DimensionError("coefficient vector length must equal phi(conductor)");
  }
}

CycNum CycNum::root_of_unity(std::size_t conductor, long long exponent) {
  const auto& data = cyclotomic_data(conductor);
  const long long n = static_cast<long long>(conductor);
  const auto& row = data.powers[static_cast<std::size_t>(((exponent % n) + n) % n)];
  CycNum out(conductor);
  for (std::size_t j = 0; j < row.size(); ++j) out.coeffs_[j] = row[j];
  return out;
}

bool CycNum::is_zero() const {
  for (const auto& c : coeffs_) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

bool CycNum::is_one() const { return coeffs_[0] == 1 && is_rational(); }

bool CycNum::is_rational() const {
  for (std::size_t j = 1; j < coeffs_.size(); ++j) {
    if (sgn(coeffs_[j]) != 0) return false;
  }
  return true;
}

Rational CycNum::rational_value() const {
  if (!is_rational()) throw PreconditionError("cyclotomic number is not rational");
  return coeffs_[0];
}

std::optional<long long> CycNum::root_exponent() const {
  const auto& data = cyclotomic_data(conductor_);
  for (std::size_t k = 0; k < conductor_; ++k) {
    const auto& row = data.powers[k];
    bool same = true;
    for (std::size_t j = 0; j < row.size() && same; ++j) same = coeffs_[j] == row[j];
    if (same) return static_cast<long long>(k);
  }
  return std::nullopt;
}

void CycNum::require_same(const CycNum& o) const {
  if (conductor_ != o.conductor_) {
    throw ConductorError("incompatible conductors " + std::to_string(conductor_) + " and " +
                         std::to_string(o.conductor_));
  }
}

CycNum& CycNum::operator+=(const CycNum& o) {
  require_same(o);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) {
  require_same(o);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
  return *this;
}

CycNum& CycNum::operator*=(const CycNum& o) { return *this = *this * o; }

CycNum& CycNum::operator*=(const Rational& r) {
  for (auto& c : coeffs_) c *= r;
  return *this;
}

CycNum operator*(const CycNum& a, const CycNum& b) {
  a.require_same(b);
  const auto& data = cyclotomic_data(a.conductor_);
  const std::size_t deg = data.degree;
  if (deg == 1) return CycNum(a.conductor_, a.coeffs_[0] * b.coeffs_[0]);
  std::vector<Rational> conv(2 * deg - 1);
  for (std::size_t i = 0; i < deg; ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < deg; ++j) {
      if (sgn(b.coeffs_[j]) == 0) continue;
      conv[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  CycNum out(a.conductor_);
  for (std::size_t k = 0; k < deg; ++k) out.coeffs_[k] = conv[k];
  for (std::size_t k = deg; k < conv.size(); ++k) {
    if (sgn(conv[k]) == 0) continue;
    const auto& row = data.powers[k % a.conductor_];
    for (std::size_t j = 0; j < deg; ++j) {
      if (row[j] != 0) out.coeffs_[j] += conv[k] * row[j];
    }
  }
  return out;
}

CycNum CycNum::operator-() const {
  CycNum out(*this);
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.conductor_ != b.conductor_) {
    const std::size_t l = std::lcm(a.conductor_, b.conductor_);
    return a.embed(l) == b.embed(l);
  }
  return a.coeffs_ == b.coeffs_;
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw DivisionByZero();
  const std::size_t deg = coeffs_.size();
  if (deg == 1) return CycNum(conductor_, 1 / coeffs_[0]);
  // Solve (multiplication by *this) x = 1 over Q.
  std::vector<std::vector<Rational>> mat(deg, std::vector<Rational>(deg + 1));
  for (std::size_t j = 0; j < deg; ++j) {
    CycNum col = times_root(*this, static_cast<long long>(j));
    for (std::size_t i = 0; i < deg; ++i) mat[i][j] = col.coeffs_[i];
  }
  mat[0][deg] = 1;
  for (std::size_t c = 0; c < deg; ++c) {
    std::size_t p = c;
    while (sgn(mat[p][c]) == 0) ++p;
    std::swap(mat[p], mat[c]);
    Rational inv = 1 / mat[c][c];
    for (std::size_t k = c; k <= deg; ++k) mat[c][k] *= inv;
    for (std::size_t r = 0; r < deg; ++r) {
      if (r == c || sgn(mat[r][c]) == 0) continue;
      Rational f = mat[r][c];
      for (std::size_t k = c; k <= deg; ++k) mat[r][k] -= f * mat[c][k];
    }
  }
  CycNum out(conductor_);
  for (std::size_t i = 0; i < deg; ++i) out.coeffs_[i] = mat[i][deg];
  return out;
}

CycNum CycNum::embed(std::size_t target) const {
  if (target == conductor_) return *this;
  if (target % conductor_ != 0) {
    throw ConductorError("cannot embed conductor " + std::to_string(conductor_) + " into " +
                         std::to_string(target));
  }
  const auto& data = cyclotomic_data(target);
  const std::size_t step = target / conductor_;
  CycNum out(target);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (sgn(coeffs_[j]) == 0) continue;
    const auto& row = data.powers[(j * step) % target];
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k] != 0) out.coeffs_[k] += coeffs_[j] * row[k];
    }
  }
  return out;
}

CycNum CycNum::galois(long long k) const {
  const long long n = static_cast<long long>(conductor_);
  if (std::gcd(((k % n) + n) % n, n) != 1 && n > 1) {
    throw PreconditionError("galois exponent must be a unit modulo the conductor");
  }
  CycNum out(conductor_);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (sgn(coeffs_[j]) == 0) continue;
    out += times_root(CycNum(conductor_, coeffs_[j]), static_cast<long long>(j) * k);
  }
  return out;
}

CycNum times_root(const CycNum& a, long long k) {
  const std::size_t n = a.conductor();
  const auto& data = cyclotomic_data(n);
  const long long nn = static_cast<long long>(n);
  const std::size_t shift = static_cast<std::size_t>(((k % nn) + nn) % nn);
  const auto& c = a.coefficients();
  std::vector<Rational> out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (sgn(c[j]) == 0) continue;
    const auto& row = data.powers[(j + shift) % n];
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] != 0) out[i] += c[j] * row[i];
    }
  }
  return CycNum(n, std::move(out));
}

std::string CycNum::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const Rational& c = coeffs_[j];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (j == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << "z";
      if (j > 1) os << "^" << j;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace metacover
