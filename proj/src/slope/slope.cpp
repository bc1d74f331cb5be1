#include "metacover/slope.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "metacover/error.hpp"

namespace metacover {

namespace {

RatVector to_rat(const std::vector<std::int64_t>& v) {
  RatVector out;
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void require_length(const RatVector& v, std::size_t n, const char* what) {
  if (v.size() != n) {
    throw DimensionError(std::string(what) + ": expected length " + std::to_string(n) + ", got " + std::to_string(v.size()));
  }
}

// Scales a constraint so that its first nonzero coefficient has absolute value 1.
void normalize(RatVector& row, Rational& rhs) {
  for (const auto& x : row) {
    if (x == 0) continue;
    const Rational s = abs(x);
    for (auto& y : row) y /= s;
    rhs /= s;
    return;
  }
}

}  // namespace

void validate_datum(const RootDatum& d) {
  if (d.res.size() != d.rank_s) throw PreconditionError("res: expected " + std::to_string(d.rank_s) + " rows");
  for (std::size_t i = 0; i < d.res.size(); ++i) {
    if (d.res[i].size() != d.rank_t) throw PreconditionError("res[" + std::to_string(i) + "]: expected " + std::to_string(d.rank_t) + " entries");
  }
  for (std::size_t i = 0; i < d.positive_roots.size(); ++i) {
    const auto& r = d.positive_roots[i];
    if (r.root.size() != d.rank_t || r.coroot.size() != d.rank_t) {
      throw PreconditionError("roots[" + std::to_string(i) + "]: root and coroot need " + std::to_string(d.rank_t) + " entries");
    }
    std::int64_t p = 0;
    for (std::size_t k = 0; k < d.rank_t; ++k) p += r.root[k] * r.coroot[k];
    if (p != 2) throw PreconditionError("roots[" + std::to_string(i) + "]: <alpha, alpha^vee> = " + std::to_string(p) + ", expected 2");
  }
  for (std::size_t i = 0; i < d.simple.size(); ++i) {
    const auto& s = d.simple[i];
    if (s.root_index >= d.positive_roots.size()) throw PreconditionError("simple[" + std::to_string(i) + "]: root index out of range");
    if (s.restricted.size() != d.rank_s) throw PreconditionError("simple[" + std::to_string(i) + "]: restricted root needs " + std::to_string(d.rank_s) + " entries");
    const auto r = restrict_vector(d, to_rat(d.positive_roots[s.root_index].root));
    if (r != to_rat(s.restricted)) throw PreconditionError("simple[" + std::to_string(i) + "]: res(alpha~) differs from the paired restricted root");
  }
  for (std::size_t i = 0; i < d.restricted_roots.size(); ++i) {
    const auto& r = d.restricted_roots[i];
    if (r.root.size() != d.rank_s) throw PreconditionError("restricted[" + std::to_string(i) + "]: expected " + std::to_string(d.rank_s) + " entries");
    if (r.multiplicity < 1) throw PreconditionError("restricted[" + std::to_string(i) + "]: multiplicity must be positive");
  }
}

SlopeVector slope_of_character(const RatVector& ord_values, const RootDatum& datum) {
  require_length(ord_values, datum.rank_s, "ord values");
  return ord_values;
}

RatVector restrict_vector(const RootDatum& datum, const RatVector& x) {
  require_length(x, datum.rank_t, "vector in X");
  RatVector out(datum.rank_s, Rational(0));
  for (std::size_t i = 0; i < datum.rank_s; ++i) out[i] = dot(to_rat(datum.res[i]), x);
  return out;
}

RhoPair compute_rho(const RootDatum& datum) {
  RhoPair out{RatVector(datum.rank_s, Rational(0)), RatVector(datum.rank_t, Rational(0))};
  for (const auto& r : datum.restricted_roots) {
    for (std::size_t i = 0; i < datum.rank_s; ++i) out.rho[i] += Rational(r.multiplicity * r.root[i], 2);
  }
  for (const auto& r : datum.positive_roots) {
    for (std::size_t i = 0; i < datum.rank_t; ++i) out.rho_tilde[i] += Rational(r.root[i], 2);
  }
  for (auto& x : out.rho) x.canonicalize();
  for (auto& x : out.rho_tilde) x.canonicalize();
  if (restrict_vector(datum, out.rho_tilde) != out.rho) throw PreconditionError("datum inconsistency: res(rho~) != rho");
  return out;
}

RatVector reflect(const RootDatum& datum, std::size_t index, const RatVector& x) {
  require_length(x, datum.rank_t, "vector in X");
  const auto& r = datum.positive_roots.at(index);
  const Rational p = dot(x, to_rat(r.coroot));
  RatVector out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= p * r.root[i];
  return out;
}

bool fm_feasible(std::vector<RatVector> a, RatVector b) {
  const std::size_t vars = a.empty() ? 0 : a.front().size();
  for (std::size_t v = 0; v < vars; ++v) {
    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
    std::vector<RatVector> next_a;
    RatVector next_b;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i][v] > 0) {
        pos.push_back(i);
      } else if (a[i][v] < 0) {
        neg.push_back(i);
      } else {
        next_a.push_back(a[i]);
        next_b.push_back(b[i]);
      }
    }
    for (auto p : pos) {
      for (auto n : neg) {
        const Rational sp = -a[n][v];
        const Rational sn = a[p][v];
        RatVector row(vars);
        for (std::size_t k = 0; k < vars; ++k) row[k] = sp * a[p][k] + sn * a[n][k];
        row[v] = 0;
        next_a.push_back(std::move(row));
        next_b.push_back(sp * b[p] + sn * b[n]);
      }
    }
    std::set<std::pair<RatVector, Rational>> seen;
    a.clear();
    b.clear();
    for (std::size_t i = 0; i < next_a.size(); ++i) {
      normalize(next_a[i], next_b[i]);
      if (seen.emplace(next_a[i], next_b[i]).second) {
        a.push_back(next_a[i]);
        b.push_back(next_b[i]);
      }
    }
  }
  for (const auto& x : b) {
    if (x < 0) return false;
  }
  return true;
}

bool cone_member(const SlopeVector& v, const RootDatum& datum) {
  require_length(v, datum.rank_s, "slope vector");
  const std::size_t k = datum.simple.size();
  std::vector<RatVector> a;
  RatVector b;
  for (std::size_t i = 0; i < datum.rank_s; ++i) {
    RatVector row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = datum.simple[j].restricted[i];
    RatVector neg = row;
    for (auto& x : neg) x = -x;
    a.push_back(row);
    b.push_back(v[i]);
    a.push_back(neg);
    b.push_back(-v[i]);
  }
  for (std::size_t j = 0; j < k; ++j) {
    RatVector row(k, Rational(0));
    row[j] = -1;
    a.push_back(row);
    b.push_back(0);
  }
  return fm_feasible(std::move(a), std::move(b));
}

CriticalityReport is_noncritical(const RootDatum& datum, const WeightChar& w) {
  require_length(w.psi, datum.rank_t, "psi");
  require_length(w.theta_slope, datum.rank_s, "theta slope");
  const RhoPair rho = compute_rho(datum);
  RatVector shifted = w.psi;
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += rho.rho_tilde[i];
  CriticalityReport out;
  for (std::size_t j = 0; j < datum.simple.size(); ++j) {
    RatVector e = restrict_vector(datum, reflect(datum, datum.simple[j].root_index, shifted));
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += rho.rho[i] + w.theta_slope[i];
    if (cone_member(e, datum)) out.witnesses.push_back(j);
    out.elements.push_back(std::move(e));
  }
  out.noncritical = out.witnesses.empty();
  return out;
}

SlopeLemmaReport slope_lemma_check(const RootDatum& datum, const SlopeVector& slope,
                                   const std::vector<RatVector>& semigroup_gens) {
  require_length(slope, datum.rank_s, "slope vector");
  SlopeLemmaReport out;
  out.bounded_everywhere = true;
  for (const auto& g : semigroup_gens) {
    require_length(g, datum.rank_s, "semigroup generator");
    if (dot(slope, g) < 0) out.bounded_everywhere = false;
  }
  out.in_cone = cone_member(slope, datum);
  out.agree = out.bounded_everywhere == out.in_cone;
  return out;
}

}  // namespace metacover
