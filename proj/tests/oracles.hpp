// Independent reference implementations used only by the tests.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace oracle {

inline std::int64_t md(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

// F_q for q = p or p^2, elements as codes sum d_i p^i.
class Gfq {
 public:
  explicit Gfq(int q) : q_(q) {
    p_ = 2;
    while (q % p_ != 0) ++p_;
    f_ = q == p_ ? 1 : 2;
    if (f_ == 2 && p_ * p_ != q) throw std::invalid_argument("oracle handles q = p or p^2 only");
    if (f_ == 2) {
      // smallest monic x^2 + b x + c (code c + b p) without roots
      for (int code = 0; code < p_ * p_; ++code) {
        const int c = code % p_;
        const int b = code / p_;
        bool root = false;
        for (int x = 0; x < p_; ++x) root = root || (x * x + b * x + c) % p_ == 0;
        if (!root) {
          c0_ = c;
          c1_ = b;
          break;
        }
      }
    }
    for (int g = 1; g < q_; ++g) {
      if (order(g) == q_ - 1) {
        gen_ = g;
        break;
      }
    }
  }

  int q() const { return q_; }
  int generator() const { return gen_; }
  int minus_one() const { return p_ - 1; }

  int mul(int a, int b) const {
    if (f_ == 1) return static_cast<int>((static_cast<long>(a) * b) % p_);
    const int a0 = a % p_, a1 = a / p_, b0 = b % p_, b1 = b / p_;
    // (a0 + a1 x)(b0 + b1 x) with x^2 = -c1 x - c0
    long r0 = static_cast<long>(a0) * b0;
    long r1 = static_cast<long>(a0) * b1 + static_cast<long>(a1) * b0;
    const long r2 = static_cast<long>(a1) * b1;
    r0 -= r2 * c0_;
    r1 -= r2 * c1_;
    return static_cast<int>(md(r0, p_) + p_ * md(r1, p_));
  }

  int pow(int a, std::int64_t e) const {
    int r = 1;
    for (std::int64_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }

  int order(int a) const {
    int x = a;
    int k = 1;
    while (x != 1) {
      x = mul(x, a);
      ++k;
      if (k > q_) return 0;
    }
    return k;
  }

 private:
  int q_, p_, f_ = 1, c0_ = 0, c1_ = 0, gen_ = 0;
};

// Exponent k with ((-1)^{vx vy} x^{vy} y^{-vx})^{(q-1)/m} = g^{k (q-1)/m}, x = pi^vx g^ux.
inline std::int64_t tame_symbol(const Gfq& f, std::int64_t m, std::int64_t vx, std::int64_t ux, std::int64_t vy,
                                std::int64_t uy) {
  const std::int64_t n = f.q() - 1;
  int base = f.pow(f.generator(), md(ux * vy - uy * vx, n));
  if (md(vx * vy, 2) == 1) base = f.mul(base, f.minus_one());
  const int val = f.pow(base, n / m);
  const int zeta = f.pow(f.generator(), n / m);
  int cur = 1;
  for (std::int64_t k = 0; k < m; ++k) {
    if (cur == val) return k;
    cur = f.mul(cur, zeta);
  }
  throw std::logic_error("value is not an m-th root of unity");
}

// Finite groups by multiplication tables.
struct Group {
  std::size_t order = 0;
  std::vector<std::size_t> table;  // table[i * order + j]
};

inline Group from_law(std::size_t n, const std::function<std::size_t(std::size_t, std::size_t)>& law) {
  Group g;
  g.order = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g.table.push_back(law(i, j));
  }
  return g;
}

inline Group cyclic(std::size_t n) {
  return from_law(n, [n](std::size_t a, std::size_t b) { return (a + b) % n; });
}

inline Group product(const Group& a, const Group& b) {
  return from_law(a.order * b.order, [&](std::size_t x, std::size_t y) {
    const std::size_t x1 = x / b.order, x2 = x % b.order, y1 = y / b.order, y2 = y % b.order;
    return a.table[x1 * a.order + y1] * b.order + b.table[x2 * b.order + y2];
  });
}

// Elements a^k x^e encoded as k + n e.
inline Group dihedral(std::size_t n) {
  return from_law(2 * n, [n](std::size_t u, std::size_t v) {
    const std::int64_t k = static_cast<std::int64_t>(u % n), l = static_cast<std::int64_t>(v % n);
    const std::size_t e = u / n, f = v / n;
    const std::int64_t r = md(k + (e ? -l : l), static_cast<std::int64_t>(n));
    return static_cast<std::size_t>(r) + n * ((e + f) % 2);
  });
}

// Dicyclic group of order 4n: a^{2n} = 1, x^2 = a^n, x a x^{-1} = a^{-1}.
inline Group dicyclic(std::size_t n) {
  const auto nn = static_cast<std::int64_t>(2 * n);
  return from_law(4 * n, [n, nn](std::size_t u, std::size_t v) {
    const std::int64_t k = static_cast<std::int64_t>(u % (2 * n)), l = static_cast<std::int64_t>(v % (2 * n));
    const std::size_t e = u / (2 * n), f = v / (2 * n);
    std::int64_t r = k + (e ? -l : l);
    std::size_t s = e + f;
    if (s == 2) {
      r += static_cast<std::int64_t>(n);
      s = 0;
    }
    return static_cast<std::size_t>(md(r, nn)) + 2 * n * s;
  });
}

inline Group alternating4() {
  std::vector<std::vector<int>> perms;
  std::vector<int> p{0, 1, 2, 3};
  do {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inv += p[i] > p[j];
    if (inv % 2 == 0) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return from_law(perms.size(), [&](std::size_t a, std::size_t b) {
    std::vector<int> c(4);
    for (int i = 0; i < 4; ++i) c[i] = perms[a][perms[b][i]];
    return static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
  });
}

inline std::vector<Group> small_groups() {
  std::vector<Group> out;
  for (std::size_t n = 1; n <= 16; ++n) out.push_back(cyclic(n));
  out.push_back(product(cyclic(2), cyclic(2)));
  out.push_back(product(cyclic(2), cyclic(4)));
  out.push_back(product(product(cyclic(2), cyclic(2)), cyclic(2)));
  out.push_back(product(cyclic(4), cyclic(4)));
  out.push_back(product(cyclic(2), cyclic(8)));
  out.push_back(product(product(cyclic(2), cyclic(2)), product(cyclic(2), cyclic(2))));
  out.push_back(product(cyclic(2), cyclic(6)));
  out.push_back(product(cyclic(3), cyclic(3)));
  for (std::size_t n = 3; n <= 8; ++n) out.push_back(dihedral(n));
  for (std::size_t n = 2; n <= 4; ++n) out.push_back(dicyclic(n));
  out.push_back(alternating4());
  out.push_back(product(dihedral(4), cyclic(2)));
  out.push_back(product(dicyclic(2), cyclic(2)));
  return out;
}

// Cone membership by search over c_i = k / den with 0 <= k <= bound * den.
inline bool cone_bruteforce(const std::vector<std::vector<mpq_class>>& gens, const std::vector<mpq_class>& v, int den,
                            int bound) {
  const std::size_t k = gens.size();
  std::vector<int> c(k, 0);
  const int top = bound * den;
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < v.size() && ok; ++i) {
      mpq_class s = 0;
      for (std::size_t j = 0; j < k; ++j) {
        mpq_class cj(c[j], den);
        cj.canonicalize();
        s += cj * gens[j][i];
      }
      ok = s == v[i];
    }
    if (ok) return true;
    std::size_t j = 0;
    while (j < k && c[j] == top) c[j++] = 0;
    if (j == k) return false;
    ++c[j];
  }
}

// Cover group law rebuilt from its cocycle matrix: (t, z)(u, w) = (t + u, z + w + t^T U u).
struct CoverLaw {
  std::vector<std::int64_t> moduli;
  std::vector<std::vector<std::int64_t>> U;
  std::vector<std::vector<std::int64_t>> P;  // pairing matrix
  std::int64_t m = 1;

  std::int64_t form(const std::vector<std::vector<std::int64_t>>& A, const std::vector<std::int64_t>& t,
                    const std::vector<std::int64_t>& u) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = 0; j < u.size(); ++j) s += t[i] * A[i][j] * u[j];
    return md(s, m);
  }

  std::vector<std::vector<std::int64_t>> elements() const {
    std::vector<std::vector<std::int64_t>> out{{}};
    for (auto mod : moduli) {
      std::vector<std::vector<std::int64_t>> next;
      for (const auto& e : out) {
        for (std::int64_t x = 0; x < mod; ++x) {
          auto f = e;
          f.push_back(x);
          next.push_back(f);
        }
      }
      out = next;
    }
    return out;
  }

  // Commutator exponent of lifts (t,0),(u,0): beta(t,u) - beta(u,t).
  std::int64_t commutator(const std::vector<std::int64_t>& t, const std::vector<std::int64_t>& u) const {
    return md(form(U, t, u) - form(U, u, t), m);
  }
};

// Kronecker symbol from the factorization of d and Euler's criterion.
inline int kronecker(std::int64_t c, std::int64_t d) {
  if (d == 0) return (c == 1 || c == -1) ? 1 : 0;
  int s = 1;
  if (d < 0) {
    d = -d;
    if (c < 0) s = -s;
  }
  for (std::int64_t p = 2; d > 1; ++p) {
    while (d % p == 0) {
      d /= p;
      if (p == 2) {
        if (c % 2 == 0) return 0;
        const std::int64_t r = md(c, 8);
        if (r == 3 || r == 5) s = -s;
      } else {
        std::int64_t base = md(c, p), e = (p - 1) / 2, acc = 1;
        if (base == 0) return 0;
        while (e > 0) {
          if (e & 1) acc = acc * base % p;
          base = base * base % p;
          e >>= 1;
        }
        if (acc == p - 1) s = -s;
      }
    }
  }
  return s;
}

}  // namespace oracle
