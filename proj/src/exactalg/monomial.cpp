#include "metacover/monomial.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "metacover/error.hpp"

namespace metacover {

namespace {

std::int64_t mod(std::int64_t a, std::size_t n) {
  const auto m = static_cast<std::int64_t>(n);
  return ((a % m) + m) % m;
}

// Union-find where value(x) = zeta^pot(x) * value(root(x)).
class PotentialForest {
 public:
  PotentialForest(std::size_t n, std::size_t conductor)
      : parent_(n), pot_(n, 0), bad_(n, 0), conductor_(conductor) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }

  std::uint32_t find(std::uint32_t x) {
    std::uint32_t root = x;
    std::int64_t acc = 0;
    while (parent_[root] != root) {
      acc += pot_[root];
      root = parent_[root];
    }
    // Path compression with accumulated potentials.
    std::int64_t remaining = acc;
    while (parent_[x] != x) {
      const std::uint32_t next = parent_[x];
      const std::int64_t here = pot_[x];
      parent_[x] = root;
      pot_[x] = mod(remaining, conductor_);
      remaining -= here;
      x = next;
    }
    return root;
  }

  // Impose value(b) = zeta^w value(a).
  void relate(std::uint32_t a, std::uint32_t b, std::int64_t w) {
    const std::uint32_t ra = find(a);
    const std::uint32_t rb = find(b);
    const std::int64_t pa = ra == a ? 0 : pot_[a];
    const std::int64_t pb = rb == b ? 0 : pot_[b];
    // zeta^pb R_b = zeta^(w + pa) R_a
    const std::int64_t d = mod(w + pa - pb, conductor_);
    if (ra == rb) {
      if (d != 0) bad_[ra] = 1;
      return;
    }
    parent_[rb] = ra;
    pot_[rb] = d;
    bad_[ra] = static_cast<char>(bad_[ra] | bad_[rb]);
  }

  bool bad(std::uint32_t root) const { return bad_[root] != 0; }
  std::int64_t potential(std::uint32_t x) {
    const std::uint32_t r = find(x);
    return r == x ? 0 : pot_[x];
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::int64_t> pot_;
  std::vector<char> bad_;
  std::size_t conductor_;
};

}  // namespace

MonomialMap MonomialMap::identity(std::size_t n) {
  MonomialMap m;
  m.target.resize(n);
  std::iota(m.target.begin(), m.target.end(), 0u);
  m.phase.assign(n, 0);
  return m;
}

void MonomialMap::normalize(std::size_t conductor) {
  for (auto& p : phase) p = mod(p, conductor);
}

CycMatrix MonomialMap::to_dense(std::size_t conductor) const {
  CycMatrix out(size(), size(), conductor);
  for (std::size_t j = 0; j < size(); ++j) {
    out(target[j], j) = CycNum::root_of_unity(conductor, phase[j]);
  }
  return out;
}

bool MonomialMap::is_permutation() const {
  std::vector<char> seen(size(), 0);
  for (auto t : target) {
    if (t >= size() || seen[t]) return false;
    seen[t] = 1;
  }
  return true;
}

MonomialMap compose(const MonomialMap& a, const MonomialMap& b, std::size_t conductor) {
  if (a.size() != b.size()) throw DimensionError("monomial compose: sizes differ");
  MonomialMap out;
  out.target.resize(a.size());
  out.phase.resize(a.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    const auto mid = b.target[j];
    out.target[j] = a.target[mid];
    out.phase[j] = mod(b.phase[j] + a.phase[mid], conductor);
  }
  return out;
}

MonomialMap inverse(const MonomialMap& a, std::size_t conductor) {
  MonomialMap out;
  out.target.resize(a.size());
  out.phase.resize(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    out.target[a.target[j]] = static_cast<std::uint32_t>(j);
    out.phase[a.target[j]] = mod(-a.phase[j], conductor);
  }
  return out;
}

MonomialMap scale(const MonomialMap& a, std::int64_t k, std::size_t conductor) {
  MonomialMap out = a;
  for (auto& p : out.phase) p = mod(p + k, conductor);
  return out;
}

bool equal(const MonomialMap& a, const MonomialMap& b, std::size_t conductor) {
  if (a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a.target[j] != b.target[j] || mod(a.phase[j] - b.phase[j], conductor) != 0) return false;
  }
  return true;
}

MonomialMap direct_sum(const MonomialMap& a, const MonomialMap& b) {
  MonomialMap out = a;
  const auto shift = static_cast<std::uint32_t>(a.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    out.target.push_back(b.target[j] + shift);
    out.phase.push_back(b.phase[j]);
  }
  return out;
}

std::vector<RootVector> monomial_fixed_space(std::size_t n, std::size_t conductor,
                                             const std::vector<MonomialMap>& ops,
                                             const std::vector<std::int64_t>& eigen) {
  if (ops.size() != eigen.size()) throw DimensionError("fixed space: eigenvalue list length differs");
  PotentialForest forest(n, conductor);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& op = ops[i];
    if (op.size() != n) throw DimensionError("fixed space: operator size differs");
    // (X v)_{target[j]} = zeta^phase[j] v_j must equal zeta^eigen v_{target[j]}.
    for (std::size_t j = 0; j < n; ++j) {
      forest.relate(static_cast<std::uint32_t>(j), op.target[j], op.phase[j] - eigen[i]);
    }
  }
  std::map<std::uint32_t, RootVector> comps;
  for (std::uint32_t x = 0; x < n; ++x) {
    const auto r = forest.find(x);
    if (forest.bad(r)) continue;
    comps[r].emplace_back(x, forest.potential(x));
  }
  std::vector<RootVector> out;
  out.reserve(comps.size());
  for (auto& [r, v] : comps) out.push_back(std::move(v));
  std::sort(out.begin(), out.end(),
            [](const RootVector& a, const RootVector& b) { return a.front().first < b.front().first; });
  return out;
}

CycMatrix RootMatrix::to_dense(std::size_t conductor) const {
  CycMatrix out(rows, cols, conductor);
  for (const auto& [idx, e] : entries) out(idx / cols, idx % cols) = CycNum::root_of_unity(conductor, e);
  return out;
}

bool RootMatrix::as_monomial(MonomialMap& out) const {
  if (rows != cols || entries.size() != rows) return false;
  out.target.assign(rows, 0);
  out.phase.assign(rows, 0);
  std::vector<char> col_seen(cols, 0);
  std::vector<char> row_seen(rows, 0);
  for (const auto& [idx, e] : entries) {
    const std::size_t r = idx / cols;
    const std::size_t c = idx % cols;
    if (row_seen[r] || col_seen[c]) return false;
    row_seen[r] = col_seen[c] = 1;
    out.target[c] = static_cast<std::uint32_t>(r);
    out.phase[c] = e;
  }
  return true;
}

std::vector<RootMatrix> monomial_intertwiners(const std::vector<MonomialMap>& lhs,
                                              const std::vector<MonomialMap>& rhs,
                                              std::size_t conductor) {
  if (lhs.size() != rhs.size() || lhs.empty()) {
    throw DimensionError("monomial intertwiners: generator lists differ in length");
  }
  const std::size_t p = lhs.front().size();
  const std::size_t q = rhs.front().size();
  if (p * q > (std::size_t{1} << 31)) throw BoundExceeded("monomial intertwiners: too many unknowns");
  // X = lhs X rhs^{-1} maps E_ab to zeta^(w1(a) - w2(b)) E_{pi1(a), pi2(b)}.
  std::vector<MonomialMap> ops;
  ops.reserve(lhs.size());
  for (std::size_t g = 0; g < lhs.size(); ++g) {
    if (lhs[g].size() != p || rhs[g].size() != q) throw DimensionError("monomial intertwiners: inconsistent dimensions");
    MonomialMap op;
    op.target.resize(p * q);
    op.phase.resize(p * q);
    for (std::size_t a = 0; a < p; ++a) {
      for (std::size_t b = 0; b < q; ++b) {
        op.target[a * q + b] = static_cast<std::uint32_t>(lhs[g].target[a] * q + rhs[g].target[b]);
        op.phase[a * q + b] = lhs[g].phase[a] - rhs[g].phase[b];
      }
    }
    ops.push_back(std::move(op));
  }
  std::vector<std::int64_t> eigen(ops.size(), 0);
  std::vector<RootMatrix> out;
  for (auto& v : monomial_fixed_space(p * q, conductor, ops, eigen)) {
    RootMatrix m;
    m.rows = p;
    m.cols = q;
    m.entries = std::move(v);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace metacover
