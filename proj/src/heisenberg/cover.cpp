#include "metacover/cover.hpp"

#include <algorithm>
#include <numeric>

#include "metacover/error.hpp"

namespace metacover {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

std::string pair_text(const FiniteTorus& t, FiniteTorus::Element a, FiniteTorus::Element b) {
  return "(" + t.format(a) + ", " + t.format(b) + ")";
}

}  // namespace

Cover::Element Cover::make(FiniteTorus::Element t, std::int64_t z) const {
  return static_cast<Element>(t * static_cast<Element>(m()) + static_cast<Element>(mod(z, m())));
}

std::int64_t Cover::beta(FiniteTorus::Element t, FiniteTorus::Element u) const {
  if (!beta_table_.empty()) return beta_table_[static_cast<std::size_t>(t) * base_.order() + u];
  const auto ct = base_.decode(t);
  const auto cu = base_.decode(u);
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < ct.size(); ++i) {
    if (ct[i] == 0) continue;
    for (std::size_t j = 0; j < cu.size(); ++j) acc += ct[i] * U_[i][j] * cu[j];
  }
  return mod(acc, m());
}

Cover::Element Cover::mul(Element a, Element b) const {
  const auto ta = base_of(a);
  const auto tb = base_of(b);
  return make(base_.add(ta, tb), mu_of(a) + mu_of(b) + beta(ta, tb));
}

Cover::Element Cover::inv(Element a) const {
  const auto t = base_of(a);
  return make(base_.neg(t), -mu_of(a) + beta(t, t));
}

Cover::Element Cover::pow(Element a, std::int64_t k) const {
  if (k < 0) return pow(inv(a), -k);
  Element out = make(0, 0);
  for (std::int64_t i = 0; i < k; ++i) out = mul(out, a);
  return out;
}

std::vector<Cover::Element> Cover::generators() const {
  std::vector<Element> g;
  for (std::size_t k = 0; k < base_.coordinates(); ++k) g.push_back(lift(base_.basis(k)));
  g.push_back(central(1));
  return g;
}

std::vector<std::int64_t> Cover::normal_form(Element g) const {
  const auto coords = base_.decode(base_of(g));
  std::vector<std::int64_t> out(coords.begin(), coords.end());
  Element prod = make(0, 0);
  for (std::size_t k = 0; k < coords.size(); ++k) prod = mul(prod, pow(lift(base_.basis(k)), coords[k]));
  out.push_back(mod(mu_of(g) - mu_of(prod), m()));
  return out;
}

std::string Cover::format(Element g) const {
  return "[" + base_.format(base_of(g)) + ", " + std::to_string(mu_of(g)) + "]";
}

Cover build_cover(const FiniteTorus& torus, const CocycleSpec& cocycle) {
  Cover c;
  c.base_ = torus;
  const std::size_t N = torus.coordinates();
  const std::int64_t m = torus.m();
  const IntMatrix& P = torus.pairing_matrix();
  c.U_.assign(N, std::vector<std::int64_t>(N, 0));
  switch (cocycle.kind) {
    case CocycleSpec::Kind::Split:
      for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t l = k + 1; l < N; ++l) c.U_[k][l] = P[k][l];
      }
      break;
    case CocycleSpec::Kind::Symbol: {
      if (torus.mode() != TorusMode::Local) throw PreconditionError("symbol cocycle requires local mode");
      const std::size_t n = torus.spec().n;
      if (cocycle.C.size() != n) throw PreconditionError("cocycle matrix C must be n x n");
      const std::int64_t h = mod(torus.spec().local->minus_one_log(), m);
      const std::int64_t E[2][2] = {{h, mod(-1, m)}, {1 % m, 0}};
      for (std::size_t i = 0; i < n; ++i) {
        if (cocycle.C[i].size() != n) throw PreconditionError("cocycle matrix C must be n x n");
        for (std::size_t j = 0; j < n; ++j) {
          for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) c.U_[2 * i + a][2 * j + b] = mod(cocycle.C[i][j] * E[a][b], m);
          }
        }
      }
      break;
    }
    case CocycleSpec::Kind::Bilinear:
      if (cocycle.U.size() != N) throw PreconditionError("cocycle matrix U must match the model's coordinates");
      for (std::size_t k = 0; k < N; ++k) {
        if (cocycle.U[k].size() != N) throw PreconditionError("cocycle matrix U must be square");
        for (std::size_t l = 0; l < N; ++l) c.U_[k][l] = mod(cocycle.U[k][l], m);
      }
      break;
  }
  // beta must be well defined on the finite model.
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t l = 0; l < N; ++l) {
      if (mod(torus.modulus() * c.U_[k][l], m) != 0) throw PreconditionError("cocycle does not descend to the finite model");
    }
  }
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t l = 0; l < N; ++l) {
      if (mod(c.U_[k][l] - c.U_[l][k] - P[k][l], m) != 0) {
        throw PreconditionError("cocycle incompatible with the commutator pairing at " +
                                pair_text(torus, torus.basis(k), torus.basis(l)));
      }
    }
  }
  const std::size_t T = torus.order();
  if (T * T <= (std::size_t{1} << 20)) {
    c.beta_table_.resize(T * T);
    for (FiniteTorus::Element t = 0; t < T; ++t) {
      for (FiniteTorus::Element u = 0; u < T; ++u) {
        const auto ct = torus.decode(t);
        const auto cu = torus.decode(u);
        std::int64_t acc = 0;
        for (std::size_t i = 0; i < N; ++i) {
          for (std::size_t j = 0; j < N; ++j) acc += ct[i] * c.U_[i][j] * cu[j];
        }
        c.beta_table_[static_cast<std::size_t>(t) * T + u] = static_cast<std::uint8_t>(mod(acc, m));
      }
    }
  }
  // Commutators of lifts against the base pairing, exhaustively when feasible.
  std::vector<FiniteTorus::Element> probe;
  if (T * T <= (std::size_t{1} << 22)) {
    for (FiniteTorus::Element t = 0; t < T; ++t) probe.push_back(t);
  } else {
    for (std::size_t k = 0; k < N; ++k) probe.push_back(torus.basis(k));
  }
  for (auto t : probe) {
    for (auto u : probe) {
      const auto a = c.lift(t);
      const auto b = c.lift(u);
      const auto comm = c.mul(c.mul(a, b), c.inv(c.mul(b, a)));
      if (c.base_of(comm) != 0 || c.mu_of(comm) != torus.pairing_exponent(t, u)) {
        throw PreconditionError("commutator of lifts disagrees with the pairing at " + pair_text(torus, t, u));
      }
    }
  }
  if (T * T * T <= (std::size_t{1} << 24)) {
    for (FiniteTorus::Element t = 0; t < T; ++t) {
      for (FiniteTorus::Element u = 0; u < T; ++u) {
        const auto tu = torus.add(t, u);
        for (FiniteTorus::Element v = 0; v < T; ++v) {
          if (mod(c.beta(t, u) + c.beta(tu, v) - c.beta(u, v) - c.beta(t, torus.add(u, v)), m) != 0) {
            throw PreconditionError("cocycle is not associative at " + pair_text(torus, t, u));
          }
        }
      }
    }
  }
  return c;
}

CoverCharacter::CoverCharacter(std::size_t conductor, std::int64_t eps, std::vector<FiniteTorus::Element> support,
                               std::vector<std::int64_t> lift_values)
    : conductor_(conductor), eps_(eps), support_(std::move(support)), values_(std::move(lift_values)) {
  if (support_.size() != values_.size()) throw DimensionError("character support and values differ in length");
  std::vector<std::size_t> order(support_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return support_[a] < support_[b]; });
  std::vector<FiniteTorus::Element> s;
  std::vector<std::int64_t> v;
  for (auto i : order) {
    s.push_back(support_[i]);
    v.push_back(mod(values_[i], static_cast<std::int64_t>(conductor_)));
  }
  support_ = std::move(s);
  values_ = std::move(v);
}

bool CoverCharacter::defined_on(FiniteTorus::Element h) const {
  return std::binary_search(support_.begin(), support_.end(), h);
}

std::int64_t CoverCharacter::lift_value(FiniteTorus::Element h) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), h);
  if (it == support_.end() || *it != h) throw PreconditionError("character evaluated outside its domain");
  return values_[static_cast<std::size_t>(it - support_.begin())];
}

std::int64_t CoverCharacter::value(const Cover& cover, Cover::Element g) const {
  const auto K = static_cast<std::int64_t>(conductor_);
  return mod(lift_value(cover.base_of(g)) + eps_ * cover.mu_of(g) * (K / cover.m()), K);
}

std::size_t CoverCharacter::minimal_conductor(std::int64_t m) const {
  for (std::size_t k = 1; k <= conductor_; ++k) {
    if (conductor_ % k != 0 || k % static_cast<std::size_t>(m) != 0) continue;
    const auto step = static_cast<std::int64_t>(conductor_ / k);
    bool ok = true;
    for (auto v : values_) ok = ok && v % step == 0;
    if (ok) return k;
  }
  return conductor_;
}

CoverCharacter CoverCharacter::with_conductor(std::size_t target) const {
  std::vector<std::int64_t> v;
  if (target % conductor_ == 0) {
    for (auto x : values_) v.push_back(x * static_cast<std::int64_t>(target / conductor_));
  } else if (conductor_ % target == 0) {
    const auto step = static_cast<std::int64_t>(conductor_ / target);
    for (auto x : values_) {
      if (x % step != 0) throw ConductorError("character values do not lie in the requested field");
      v.push_back(x / step);
    }
  } else {
    return with_conductor(std::lcm(conductor_, target)).with_conductor(target);
  }
  return CoverCharacter(target, eps_, support_, std::move(v));
}

CoverCharacter CoverCharacter::restrict_to(const SubgroupDesc& sub) const {
  std::vector<std::int64_t> v;
  for (auto h : sub.elements) v.push_back(lift_value(h));
  return CoverCharacter(conductor_, eps_, sub.elements, std::move(v));
}

bool operator==(const CoverCharacter& a, const CoverCharacter& b) {
  if (a.support_ != b.support_ || a.eps_ != b.eps_) return false;
  if (a.conductor_ == b.conductor_) return a.values_ == b.values_;
  const std::size_t l = std::lcm(a.conductor_, b.conductor_);
  return a.with_conductor(l).values_ == b.with_conductor(l).values_;
}

bool operator<(const CoverCharacter& a, const CoverCharacter& b) {
  return std::tie(a.support_, a.conductor_, a.eps_, a.values_) < std::tie(b.support_, b.conductor_, b.eps_, b.values_);
}

std::size_t character_conductor_bound(const Cover& cover) {
  return static_cast<std::size_t>(2 * cover.m() * cover.base().modulus());
}

void verify_character(const Cover& cover, const CoverCharacter& chi) {
  const auto& base = cover.base();
  const auto K = static_cast<std::int64_t>(chi.conductor());
  if (K % cover.m() != 0) throw PreconditionError("character conductor must be a multiple of m");
  const std::int64_t e = chi.eps() * (K / cover.m());
  for (auto x : chi.support()) {
    for (auto y : chi.support()) {
      const auto xy = base.add(x, y);
      if (!chi.defined_on(xy)) throw PreconditionError("character support is not a subgroup");
      if (mod(chi.lift_value(x) + chi.lift_value(y) - e * cover.beta(x, y) - chi.lift_value(xy), K) != 0) {
        throw PreconditionError("not a character: multiplicativity fails at " + base.format(x) + ", " + base.format(y));
      }
    }
  }
  if (!chi.defined_on(0) || chi.lift_value(0) != 0) throw PreconditionError("not a character: value at identity");
}

namespace {

struct Partial {
  std::vector<std::int64_t> value;  // indexed by base element, -1 when undefined
  std::vector<FiniteTorus::Element> elems;
};

// Extends by generator g with lift value v; false if inconsistent.
bool extend_once(const Cover& cover, const Partial& in, FiniteTorus::Element g, std::int64_t v, std::int64_t K,
                 std::int64_t e, Partial& out) {
  const auto& base = cover.base();
  out = in;
  std::vector<FiniteTorus::Element> layer = in.elems;
  while (true) {
    std::vector<FiniteTorus::Element> next;
    next.reserve(layer.size());
    bool closed = false;
    for (auto y : layer) {
      const auto z = base.add(y, g);
      // (y,0)(g,0) = (y+g, beta(y,g)) so psi(y+g) = psi(y) + v - e*beta(y,g).
      const std::int64_t val = mod(out.value[y] + v - e * cover.beta(y, g), K);
      if (out.value[z] >= 0) {
        closed = true;
        if (out.value[z] != val) return false;
      } else {
        if (closed) return false;
        out.value[z] = val;
        out.elems.push_back(z);
        next.push_back(z);
      }
    }
    if (closed) {
      if (!next.empty()) return false;
      return true;
    }
    layer = std::move(next);
  }
}

void extend_rec(const Cover& cover, const Partial& cur, const std::vector<FiniteTorus::Element>& gens, std::size_t i,
                std::int64_t K, std::int64_t e, std::vector<Partial>& out) {
  while (i < gens.size() && cur.value[gens[i]] >= 0) ++i;
  if (i == gens.size()) {
    out.push_back(cur);
    return;
  }
  for (std::int64_t v = 0; v < K; ++v) {
    Partial next;
    if (extend_once(cover, cur, gens[i], v, K, e, next)) extend_rec(cover, next, gens, i + 1, K, e, out);
  }
}

Partial start_from(const Cover& cover, const CoverCharacter& chi) {
  Partial p;
  p.value.assign(cover.base().order(), -1);
  for (std::size_t i = 0; i < chi.support().size(); ++i) {
    p.value[chi.support()[i]] = chi.lift_values()[i];
    p.elems.push_back(chi.support()[i]);
  }
  return p;
}

CoverCharacter finish(const Partial& p, std::size_t K, std::int64_t eps) {
  std::vector<std::int64_t> v;
  for (auto x : p.elems) v.push_back(p.value[x]);
  return CoverCharacter(K, eps, p.elems, std::move(v));
}

}  // namespace

std::vector<CoverCharacter> extend_character(const Cover& cover, const CoverCharacter& chi, const SubgroupDesc& to,
                                             std::size_t conductor) {
  for (auto x : chi.support()) {
    if (!to.contains(x)) throw PreconditionError("character domain is not contained in the target subgroup");
  }
  const CoverCharacter start = chi.with_conductor(std::lcm(chi.conductor(), conductor)).with_conductor(conductor);
  const auto K = static_cast<std::int64_t>(conductor);
  if (K % cover.m() != 0) throw PreconditionError("extension conductor must be a multiple of m");
  const std::int64_t e = start.eps() * (K / cover.m());
  std::vector<Partial> raw;
  extend_rec(cover, start_from(cover, start), to.generators, 0, K, e, raw);
  std::vector<CoverCharacter> out;
  for (const auto& p : raw) {
    CoverCharacter c = finish(p, conductor, start.eps());
    verify_character(cover, c);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

CoverCharacter epsilon_character(const Cover& cover, std::int64_t eps, std::size_t conductor) {
  if (conductor % static_cast<std::size_t>(cover.m()) != 0) throw PreconditionError("conductor must be a multiple of m");
  return CoverCharacter(conductor, mod(eps, cover.m()), {0}, {0});
}

std::vector<CoverCharacter> central_characters(const Cover& cover, std::int64_t eps) {
  const std::size_t K = character_conductor_bound(cover);
  const SubgroupDesc z = compute_center(cover.base());
  std::vector<CoverCharacter> out;
  for (const auto& c : extend_character(cover, epsilon_character(cover, eps, K), z, K)) {
    out.push_back(c.with_conductor(c.minimal_conductor(cover.m())));
  }
  return out;
}

std::vector<std::int64_t> generator_values(const Cover& cover, const SubgroupDesc& sub, const CoverCharacter& chi) {
  std::vector<std::int64_t> out{chi.value(cover, cover.central(1))};
  for (auto g : sub.generators) out.push_back(chi.lift_value(g));
  return out;
}

CoverCharacter character_from_generator_values(const Cover& cover, const SubgroupDesc& sub,
                                               const std::vector<std::int64_t>& values, std::size_t conductor) {
  if (values.size() != sub.generators.size() + 1) {
    throw PreconditionError("expected " + std::to_string(sub.generators.size() + 1) + " generator values");
  }
  const auto K = static_cast<std::int64_t>(conductor);
  if (K % cover.m() != 0) throw PreconditionError("conductor must be a multiple of m");
  const std::int64_t step = K / cover.m();
  if (mod(values[0], step) != 0) throw PreconditionError("value on mu is not an m-th root of unity");
  const std::int64_t eps = mod(values[0] / step, cover.m());
  if (std::gcd(eps, cover.m()) != 1) throw PreconditionError("epsilon is not injective");
  Partial cur = start_from(cover, epsilon_character(cover, eps, conductor));
  const std::int64_t e = eps * step;
  for (std::size_t i = 0; i < sub.generators.size(); ++i) {
    const auto g = sub.generators[i];
    if (cur.value[g] >= 0) {
      if (cur.value[g] != mod(values[i + 1], K)) throw PreconditionError("not a character: generator values are inconsistent");
      continue;
    }
    Partial next;
    if (!extend_once(cover, cur, g, mod(values[i + 1], K), K, e, next)) {
      throw PreconditionError("not a character: generator values violate a relation");
    }
    cur = std::move(next);
  }
  CoverCharacter chi = finish(cur, conductor, eps);
  if (chi.support() != sub.elements) throw PreconditionError("generators do not span the subgroup");
  verify_character(cover, chi);
  return chi;
}

}  // namespace metacover
