#include "metacover/rep.hpp"

#include <deque>

#include "metacover/error.hpp"

namespace metacover {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

CycMatrix mat_pow(const CycMatrix& a, std::int64_t k) {
  CycMatrix out = CycMatrix::identity(a.rows(), a.conductor());
  for (std::int64_t i = 0; i < k; ++i) out = out * a;
  return out;
}

MonomialMap map_pow(const MonomialMap& a, std::int64_t k, std::size_t n) {
  MonomialMap out = MonomialMap::identity(a.size());
  for (std::int64_t i = 0; i < k; ++i) out = compose(out, a, n);
  return out;
}

void require_standard(const Cover& cover, const std::vector<Cover::Element>& gens) {
  if (gens != cover.generators()) throw PreconditionError("representation is not given on the standard generators");
}

}  // namespace

Rep Rep::embed(std::size_t target) const {
  Rep out = *this;
  out.conductor = target;
  for (auto& m : out.matrices) m = m.embed(target);
  return out;
}

Rep MonoRep::to_dense() const {
  Rep out;
  out.dim = dim;
  out.conductor = conductor;
  out.generators = generators;
  for (const auto& m : maps) out.matrices.push_back(m.to_dense(conductor));
  return out;
}

MonoRep MonoRep::embed(std::size_t target) const {
  if (target % conductor != 0) throw ConductorError("cannot embed monomial representation");
  MonoRep out = *this;
  out.conductor = target;
  const auto f = static_cast<std::int64_t>(target / conductor);
  for (auto& m : out.maps) {
    for (auto& p : m.phase) p *= f;
  }
  return out;
}

Rep direct_sum(const Rep& a, const Rep& b) {
  if (a.generators != b.generators) throw PreconditionError("direct sum: generator lists differ");
  if (a.conductor != b.conductor) throw ConductorError("direct sum: conductors differ");
  Rep out;
  out.dim = a.dim + b.dim;
  out.conductor = a.conductor;
  out.generators = a.generators;
  for (std::size_t i = 0; i < a.matrices.size(); ++i) out.matrices.push_back(direct_sum(a.matrices[i], b.matrices[i]));
  return out;
}

MonoRep direct_sum(const MonoRep& a, const MonoRep& b) {
  if (a.generators != b.generators) throw PreconditionError("direct sum: generator lists differ");
  if (a.conductor != b.conductor) throw ConductorError("direct sum: conductors differ");
  MonoRep out;
  out.dim = a.dim + b.dim;
  out.conductor = a.conductor;
  out.generators = a.generators;
  for (std::size_t i = 0; i < a.maps.size(); ++i) out.maps.push_back(direct_sum(a.maps[i], b.maps[i]));
  return out;
}

Rep change_basis(const Rep& r, const CycMatrix& p) {
  auto pinv = inverse(p);
  if (!pinv) throw PreconditionError("change of basis matrix is singular");
  Rep out = r;
  for (auto& m : out.matrices) m = *pinv * m * p;
  return out;
}

Rep zero_rep(const std::vector<Cover::Element>& generators, std::size_t conductor) {
  Rep out;
  out.dim = 0;
  out.conductor = conductor;
  out.generators = generators;
  out.matrices.assign(generators.size(), CycMatrix(0, 0, conductor));
  return out;
}

WordTable::WordTable(const Cover& cover, const std::vector<Cover::Element>& generators)
    : parent_(cover.order(), -1), via_(cover.order(), -1) {
  const Cover::Element one = cover.make(0, 0);
  parent_[one] = static_cast<std::int32_t>(one);
  elements_.push_back(one);
  std::deque<Cover::Element> queue{one};
  while (!queue.empty()) {
    const auto h = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const auto g = cover.mul(h, generators[i]);
      if (parent_[g] >= 0) continue;
      parent_[g] = static_cast<std::int32_t>(h);
      via_[g] = static_cast<std::int32_t>(i);
      elements_.push_back(g);
      queue.push_back(g);
    }
  }
}

bool WordTable::contains(Cover::Element g) const { return g < parent_.size() && parent_[g] >= 0; }

std::vector<std::size_t> WordTable::word(Cover::Element g) const {
  if (!contains(g)) throw PreconditionError("element is not in the generated subgroup");
  std::vector<std::size_t> w;
  while (via_[g] >= 0) {
    w.push_back(static_cast<std::size_t>(via_[g]));
    g = static_cast<Cover::Element>(parent_[g]);
  }
  std::reverse(w.begin(), w.end());
  return w;
}

RepEvaluator::RepEvaluator(const Cover& cover, const Rep& rep) : rep_(rep), words_(cover, rep.generators) {}

const CycMatrix& RepEvaluator::operator()(Cover::Element g) {
  auto it = cache_.find(g);
  if (it != cache_.end()) return it->second;
  CycMatrix acc = CycMatrix::identity(rep_.dim, rep_.conductor);
  for (auto i : words_.word(g)) acc = acc * rep_.matrices[i];
  return cache_.emplace(g, std::move(acc)).first->second;
}

MonomialMap evaluate(const Cover& cover, const MonoRep& rep, const WordTable& words, Cover::Element g) {
  (void)cover;
  MonomialMap acc = MonomialMap::identity(rep.dim);
  for (auto i : words.word(g)) acc = compose(acc, rep.maps[i], rep.conductor);
  return acc;
}

namespace {

// Relations of the standard presentation: zeta central of order m acting by
// epsilon, x_k^modulus = zeta^{c_k}, x_k x_l = zeta^{beta_kl - beta_lk} x_l x_k.
template <class M, class Pow, class Mul, class Scalar, class Eq>
bool check_relations(const Cover& cover, const std::vector<M>& mats, std::int64_t eps, Pow pow, Mul mul, Scalar scalar,
                     Eq eq) {
  const auto& base = cover.base();
  const std::size_t N = base.coordinates();
  const std::int64_t m = cover.m();
  if (mats.size() != N + 1) return false;
  const M& z = mats[N];
  if (!eq(z, scalar(eps))) return false;
  for (std::size_t k = 0; k < N; ++k) {
    if (!eq(mul(z, mats[k]), mul(mats[k], z))) return false;
    const auto xk = cover.lift(base.basis(k));
    const auto power = cover.pow(xk, base.modulus());
    if (!eq(pow(mats[k], base.modulus()), scalar(eps * cover.mu_of(power)))) return false;
    for (std::size_t l = k + 1; l < N; ++l) {
      const std::int64_t c = mod(cover.beta(base.basis(k), base.basis(l)) - cover.beta(base.basis(l), base.basis(k)), m);
      if (!eq(mul(mats[k], mats[l]), mul(scalar(eps * c), mul(mats[l], mats[k])))) return false;
    }
  }
  return true;
}

}  // namespace

bool satisfies_cover_relations(const Cover& cover, const Rep& rep, std::int64_t eps) {
  require_standard(cover, rep.generators);
  const std::size_t K = rep.conductor;
  if (K % static_cast<std::size_t>(cover.m()) != 0) return false;
  const auto step = static_cast<std::int64_t>(K) / cover.m();
  return check_relations<CycMatrix>(
      cover, rep.matrices, eps, [](const CycMatrix& a, std::int64_t k) { return mat_pow(a, k); },
      [](const CycMatrix& a, const CycMatrix& b) { return a * b; },
      [&](std::int64_t e) { return CycNum::root_of_unity(K, e * step) * CycMatrix::identity(rep.dim, K); },
      [](const CycMatrix& a, const CycMatrix& b) { return a == b; });
}

bool satisfies_cover_relations(const Cover& cover, const MonoRep& rep, std::int64_t eps) {
  require_standard(cover, rep.generators);
  const std::size_t K = rep.conductor;
  if (K % static_cast<std::size_t>(cover.m()) != 0) return false;
  const auto step = static_cast<std::int64_t>(K) / cover.m();
  return check_relations<MonomialMap>(
      cover, rep.maps, eps, [&](const MonomialMap& a, std::int64_t k) { return map_pow(a, k, K); },
      [&](const MonomialMap& a, const MonomialMap& b) { return compose(a, b, K); },
      [&](std::int64_t e) { return scale(MonomialMap::identity(rep.dim), e * step, K); },
      [&](const MonomialMap& a, const MonomialMap& b) { return equal(a, b, K); });
}

bool is_homomorphism(const Cover& cover, const Rep& rep) {
  RepEvaluator ev(cover, rep);
  for (auto h : ev.words().elements()) {
    const CycMatrix rh = ev(h);
    for (std::size_t i = 0; i < rep.generators.size(); ++i) {
      if (!(ev(cover.mul(h, rep.generators[i])) == rh * rep.matrices[i])) return false;
    }
  }
  return true;
}

CosetSystem cosets(const FiniteTorus& torus, const SubgroupDesc& a) {
  CosetSystem cs;
  cs.index_of.assign(torus.order(), UINT32_MAX);
  for (FiniteTorus::Element x = 0; x < torus.order(); ++x) {
    if (cs.index_of[x] != UINT32_MAX) continue;
    const auto idx = static_cast<std::uint32_t>(cs.reps.size());
    cs.reps.push_back(x);
    for (auto y : a.elements) cs.index_of[torus.add(x, y)] = idx;
  }
  return cs;
}

MonomialMap induced_action(const Cover& cover, const SubgroupDesc& a, const CosetSystem& cs, const CoverCharacter& psi,
                           Cover::Element h) {
  const auto& base = cover.base();
  const std::size_t d = cs.reps.size();
  MonomialMap out;
  out.target.resize(d);
  out.phase.resize(d);
  const auto hb = cover.base_of(h);
  for (std::size_t i = 0; i < d; ++i) {
    // t_i^{-1} h = a t_j^{-1}: row i has its entry in column j.
    const auto j = cs.index_of[base.add(cs.reps[i], base.neg(hb))];
    const auto ti = cover.lift(cs.reps[i]);
    const auto tj = cover.lift(cs.reps[j]);
    const auto elem = cover.mul(cover.mul(cover.inv(ti), h), tj);
    if (!a.contains(cover.base_of(elem))) throw Error("induction: coset bookkeeping failed");
    out.target[j] = static_cast<std::uint32_t>(i);
    out.phase[j] = psi.value(cover, elem);
  }
  return out;
}

MonoRep induce_vchi(const Cover& cover, const SubgroupDesc& a, const CoverCharacter& psi) {
  if (psi.support() != a.elements) throw PreconditionError("character is not defined on the preimage of A");
  const CosetSystem cs = cosets(cover.base(), a);
  MonoRep out;
  out.dim = cs.reps.size();
  out.conductor = psi.conductor();
  out.generators = cover.generators();
  for (auto g : out.generators) out.maps.push_back(induced_action(cover, a, cs, psi, g));
  return out;
}

bool as_monomial(const CycMatrix& m, MonomialMap& out) {
  if (m.rows() != m.cols()) return false;
  const std::size_t n = m.rows();
  out.target.assign(n, 0);
  out.phase.assign(n, 0);
  std::vector<char> row_used(n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    bool found = false;
    for (std::size_t r = 0; r < n; ++r) {
      const auto& v = m(r, c);
      if (v.is_zero()) continue;
      if (found || row_used[r]) return false;
      const auto e = v.root_exponent();
      if (!e) return false;
      found = true;
      row_used[r] = 1;
      out.target[c] = static_cast<std::uint32_t>(r);
      out.phase[c] = *e;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace metacover
