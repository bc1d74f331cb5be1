#include "metacover/svn.hpp"

#include <algorithm>
#include <numeric>

#include "metacover/error.hpp"

namespace metacover {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

std::size_t isqrt(std::size_t n) {
  std::size_t s = 0;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}

// Q(zeta_N) = Q(zeta_2N) for odd N; characters need m | N.
std::size_t effective_conductor(const Cover& cover, const CoverCharacter& chi, std::size_t requested) {
  const std::size_t m = static_cast<std::size_t>(cover.m());
  const std::size_t need = chi.minimal_conductor(cover.m());
  if (requested == 0) return need;
  std::size_t n = requested;
  if (n % 2 == 1 && (n * 2) % m == 0 && n % m != 0) n *= 2;
  if (n % need != 0) {
    throw PreconditionError("conductor " + std::to_string(requested) + " does not contain the values of the central character");
  }
  return n;
}

MonoRep restrict_monomial(const MonoRep& rep, const std::vector<RootVector>& basis) {
  std::vector<std::int64_t> comp(rep.dim, -1);
  std::vector<std::int64_t> expo(rep.dim, 0);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    for (const auto& [i, e] : basis[k]) {
      comp[i] = static_cast<std::int64_t>(k);
      expo[i] = e;
    }
  }
  const auto K = static_cast<std::int64_t>(rep.conductor);
  MonoRep out;
  out.dim = basis.size();
  out.conductor = rep.conductor;
  out.generators = rep.generators;
  for (const auto& g : rep.maps) {
    MonomialMap m;
    m.target.resize(basis.size());
    m.phase.resize(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const auto [i0, e0] = basis[j].front();
      const auto t0 = g.target[i0];
      if (comp[t0] < 0) throw Error("subspace is not stable under the group");
      const auto k = static_cast<std::size_t>(comp[t0]);
      const std::int64_t c = mod(e0 + g.phase[i0] - expo[t0], K);
      for (const auto& [i, e] : basis[j]) {
        const auto t = g.target[i];
        if (comp[t] != static_cast<std::int64_t>(k) || mod(e + g.phase[i] - expo[t] - c, K) != 0) {
          throw Error("subspace is not stable under the group");
        }
      }
      m.target[j] = static_cast<std::uint32_t>(k);
      m.phase[j] = c;
    }
    out.maps.push_back(std::move(m));
  }
  return out;
}

std::vector<MonomialMap> to_maps(const std::vector<RootMatrix>& mats) {
  std::vector<MonomialMap> out;
  for (const auto& r : mats) {
    MonomialMap m;
    if (!r.as_monomial(m)) throw Error("commutant element is not monomial");
    out.push_back(std::move(m));
  }
  return out;
}

bool is_scalar(const MonomialMap& x, std::int64_t& c) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x.target[j] != j || x.phase[j] != x.phase[0]) return false;
  }
  c = x.size() ? x.phase[0] : 0;
  return true;
}

// Smallest r with x^r scalar, and that scalar; false if none (within the permutation order).
bool scalar_power(const MonomialMap& x, std::size_t K, std::int64_t& r, std::int64_t& c) {
  std::int64_t L = 1;
  std::vector<char> seen(x.size(), 0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (seen[j]) continue;
    std::int64_t len = 0;
    for (auto k = j; !seen[k]; k = x.target[k]) {
      seen[k] = 1;
      ++len;
    }
    L = std::lcm(L, len);
  }
  MonomialMap p = MonomialMap::identity(x.size());
  for (std::int64_t i = 0; i < L; ++i) p = compose(p, x, K);
  if (!is_scalar(p, c)) return false;
  r = L;
  return true;
}

bool commute(const MonomialMap& a, const MonomialMap& b, std::size_t K) {
  return equal(compose(a, b, K), compose(b, a, K), K);
}

}  // namespace

AchiAlgebra build_achi(const Cover& cover, const CoverCharacter& chi_in, std::size_t conductor) {
  const auto& base = cover.base();
  const SubgroupDesc z = compute_center(base);
  const CoverCharacter chi = chi_in.with_conductor(conductor);
  if (chi.support() != z.elements) throw PreconditionError("central character is not defined on Z~");
  const CosetSystem cs = cosets(base, z);
  const std::size_t D = cs.reps.size();
  if (D > kAlgebraDimBound) throw BoundExceeded("A_chi dimension " + std::to_string(D) + " exceeds 256");
  AchiAlgebra out{AlgebraTable(D, conductor), cs.reps, cs.index_of, {}};
  for (std::size_t i = 0; i < D; ++i) {
    for (std::size_t j = 0; j < D; ++j) {
      const auto s = cs.reps[i];
      const auto u = cs.reps[j];
      const auto x = base.add(s, u);
      const auto k = cs.index_of[x];
      const auto r = cs.reps[k];
      const auto zz = base.add(x, base.neg(r));
      // (s,0)(u,0) = (r,0)(zz, beta(s,u) - beta(r,zz))
      const auto central = cover.make(zz, cover.beta(s, u) - cover.beta(r, zz));
      out.table.set_product(i, j, SparseRow{{k, CycNum::root_of_unity(conductor, chi.value(cover, central))}});
    }
  }
  std::vector<std::size_t> gens;
  for (std::size_t k = 0; k < base.coordinates(); ++k) gens.push_back(cs.index_of[base.basis(k)]);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  out.generators = gens;
  return out;
}

AchiReport achi_report(const Cover& cover, const CoverCharacter& chi_in, std::size_t conductor) {
  if (cover.order() > kCoverOrderBound) throw BoundExceeded("cover order exceeds 2^13");
  const std::size_t N = effective_conductor(cover, chi_in, conductor);
  const CoverCharacter chi = chi_in.with_conductor(N);
  const auto alg = build_achi(cover, chi, N);
  AchiReport r;
  r.conductor = N;
  r.dimension = alg.table.dim();
  r.d = isqrt(r.dimension);
  r.radical_dim = radical_dimension(alg.table);
  r.center_dim = center_dimension(alg.table, alg.generators);
  if (r.dimension == 1) {
    r.splits = true;
    r.split_method = "abelian";
    return r;
  }
  const CycNum one(N, 1);
  for (const auto& a : enumerate_maximal_isotropics(cover.base())) {
    const auto psis = extend_character(cover, chi, a, N);
    if (psis.empty()) continue;
    const auto& psi = psis.front();
    SparseRow e;
    const Rational w(1, static_cast<long>(a.order / compute_center(cover.base()).order));
    for (std::size_t i = 0; i < alg.reps.size(); ++i) {
      if (!a.contains(alg.reps[i])) continue;
      e.emplace_back(i, CycNum::root_of_unity(N, -psi.lift_value(alg.reps[i])) * CycNum(N, w));
    }
    const SparseRow e2 = alg.table.multiply(e, e);
    if (!add_rows(e2, e, CycNum(N, -1)).empty()) continue;
    if (left_ideal_dimension(alg.table, e) != r.d) continue;
    r.splits = true;
    r.split_method = "idempotent";
    return r;
  }
  if (r.d != 2) throw Error("splitting test undetermined: no polarization defined over the scalar field");
  // Quaternion case: two anticommuting basis elements with scalar squares.
  const auto& base = cover.base();
  for (std::size_t i = 1; i < alg.reps.size(); ++i) {
    for (std::size_t j = i + 1; j < alg.reps.size(); ++j) {
      if (base.pairing_exponent(alg.reps[i], alg.reps[j]) == 0) continue;
      const auto& si = alg.table.product(i, i);
      const auto& sj = alg.table.product(j, j);
      if (si.size() != 1 || sj.size() != 1 || si[0].first != 0 || sj[0].first != 0) continue;
      const auto ea = si[0].second.root_exponent();
      const auto eb = sj[0].second.root_exponent();
      if (!ea || !eb) continue;
      auto square_in_field = [&](std::int64_t x) { return x % std::gcd<std::int64_t>(2, static_cast<std::int64_t>(N)) == 0; };
      r.split_method = "quaternion";
      if (square_in_field(*ea) || square_in_field(*eb)) {
        r.splits = true;
        return r;
      }
      if (!si[0].second.is_rational() || !sj[0].second.is_rational()) {
        throw Error("splitting test undetermined: quaternion parameters are not rational");
      }
      r.splits = quaternion_splits(si[0].second.rational_value(), sj[0].second.rational_value(), N);
      return r;
    }
  }
  throw Error("splitting test undetermined: no quaternion basis found");
}

MonoRep regular_epsilon_component(const Cover& cover, std::int64_t eps, std::size_t conductor) {
  const SubgroupDesc trivial = span(cover.base(), {});
  const CoverCharacter e = epsilon_character(cover, eps, conductor);
  return induce_vchi(cover, trivial, e);
}

MonoRep isotypic_block(const Cover& cover, const MonoRep& rep, const CoverCharacter& chi_in) {
  const CoverCharacter chi = chi_in.with_conductor(rep.conductor);
  const SubgroupDesc z = compute_center(cover.base());
  WordTable words(cover, rep.generators);
  std::vector<MonomialMap> ops;
  std::vector<std::int64_t> eigen;
  std::vector<Cover::Element> zgens{cover.central(1)};
  for (auto g : z.generators) zgens.push_back(cover.lift(g));
  for (auto g : zgens) {
    ops.push_back(evaluate(cover, rep, words, g));
    eigen.push_back(chi.value(cover, g));
  }
  const auto basis = monomial_fixed_space(rep.dim, rep.conductor, ops, eigen);
  if (basis.empty()) {
    MonoRep out;
    out.conductor = rep.conductor;
    out.generators = rep.generators;
    out.maps.assign(rep.maps.size(), MonomialMap{});
    return out;
  }
  return restrict_monomial(rep, basis);
}

RegularOracle regular_oracle(const Cover& cover, const CoverCharacter& chi_in, std::size_t conductor) {
  if (cover.order() > kCoverOrderBound) throw BoundExceeded("cover order exceeds 2^13");
  const std::size_t N = effective_conductor(cover, chi_in, conductor);
  const CoverCharacter chi = chi_in.with_conductor(N);
  RegularOracle out;
  out.conductor = N;
  const MonoRep reg = regular_epsilon_component(cover, chi.eps(), N);
  const MonoRep block = isotypic_block(cover, reg, chi);
  out.block_dim = block.dim;
  if (block.dim == 0) throw Error("central character does not occur in the regular representation");

  const auto commutant = to_maps(monomial_intertwiners(block.maps, block.maps, N));
  out.commutant_dim = commutant.size();
  std::vector<MonomialMap> all = block.maps;
  all.insert(all.end(), commutant.begin(), commutant.end());
  out.commutant_center_dim = monomial_intertwiners(all, all, N).size();

  // Joint eigenspace of a commuting family of commutant elements with split spectrum.
  std::vector<MonomialMap> family;
  std::vector<std::int64_t> eigen;
  std::size_t current = block.dim;
  std::vector<RootVector> space;
  for (std::size_t j = 0; j < block.dim; ++j) space.push_back(RootVector{{static_cast<std::uint32_t>(j), 0}});
  for (const auto& x : commutant) {
    std::int64_t c = 0;
    if (is_scalar(x, c)) continue;
    bool ok = true;
    for (const auto& f : family) ok = ok && commute(f, x, N);
    if (!ok) continue;
    std::int64_t r = 0;
    if (!scalar_power(x, N, r, c)) continue;
    const auto NN = static_cast<std::int64_t>(N);
    if (NN % r != 0 || c % r != 0) continue;
    family.push_back(x);
    bool split = false;
    for (std::int64_t k = 0; k < r && !split; ++k) {
      eigen.push_back(mod(c / r + k * (NN / r), NN));
      auto trial = monomial_fixed_space(block.dim, N, family, eigen);
      if (!trial.empty() && trial.size() < current) {
        space = std::move(trial);
        current = space.size();
        split = true;
      } else if (!trial.empty()) {
        // x acts by a scalar on the current space
        eigen.pop_back();
        break;
      } else {
        eigen.pop_back();
      }
    }
    if (!split) family.pop_back();
  }
  out.irreducible = restrict_monomial(block, space);
  out.irreducible_dim = out.irreducible.dim;

  const auto end_w = to_maps(monomial_intertwiners(out.irreducible.maps, out.irreducible.maps, N));
  if (end_w.size() == 1) {
    out.division_degree = 1;
  } else if (end_w.size() == 4) {
    // End is a quaternion algebra; the constituent is irreducible iff it is a division algebra.
    bool decided = false;
    for (std::size_t i = 0; i < end_w.size() && !decided; ++i) {
      for (std::size_t j = i + 1; j < end_w.size() && !decided; ++j) {
        std::int64_t a = 0;
        std::int64_t b = 0;
        std::int64_t ra = 0;
        std::int64_t rb = 0;
        if (!scalar_power(end_w[i], N, ra, a) || !scalar_power(end_w[j], N, rb, b) || ra != 2 || rb != 2) continue;
        const auto ij = compose(end_w[i], end_w[j], N);
        const auto ji = compose(end_w[j], end_w[i], N);
        if (!equal(ij, scale(ji, static_cast<std::int64_t>(N) / 2, N), N)) continue;
        const auto NN = static_cast<std::int64_t>(N);
        auto rational = [&](std::int64_t x) -> mpq_class {
          if (x == 0) return 1;
          if (2 * x == NN) return -1;
          throw Error("regular-representation oracle: non-rational quaternion parameters");
        };
        if (quaternion_splits(rational(a), rational(b), N)) {
          throw Error("regular-representation oracle: constituent not isolated over this field");
        }
        out.division_degree = 2;
        decided = true;
      }
    }
    if (!decided) throw Error("regular-representation oracle: commutant has no quaternion basis");
  } else {
    throw Error("regular-representation oracle: constituent not isolated (End of dimension " + std::to_string(end_w.size()) + ")");
  }
  return out;
}

bool SvnReport::ok() const {
  return i_chi_matches && torsor_ok && relations_ok && inductions_isomorphic && induction_irreducible && unique_class &&
         oracle_matches_induction && dimension_matches && achi.structure_ok();
}

SvnReport verify_svn(const Cover& cover, const CoverCharacter& chi_in, std::size_t conductor) {
  if (cover.order() > kCoverOrderBound) throw BoundExceeded("cover order exceeds 2^13");
  const auto& base = cover.base();
  const std::size_t N = effective_conductor(cover, chi_in, conductor);
  verify_character(cover, chi_in);
  SvnReport rep;
  const SubgroupDesc z = compute_center(base);
  rep.index = base.order() / z.order;
  rep.d = isqrt(rep.index);
  const auto isotropics = enumerate_maximal_isotropics(base);
  rep.isotropic_count = isotropics.size();

  const std::size_t bound = std::lcm(character_conductor_bound(cover), chi_in.conductor());
  std::vector<std::vector<CoverCharacter>> ichi;
  std::size_t np = N;
  for (const auto& a : isotropics) {
    ichi.push_back(extend_character(cover, chi_in, a, bound));
    for (const auto& psi : ichi.back()) np = std::lcm(np, psi.minimal_conductor(cover.m()));
  }
  rep.induction_conductor = np;

  std::optional<MonoRep> reference;
  for (std::size_t ai = 0; ai < isotropics.size(); ++ai) {
    const auto& a = isotropics[ai];
    auto& list = ichi[ai];
    for (auto& psi : list) psi = psi.with_conductor(np);
    std::sort(list.begin(), list.end());
    const std::size_t ta = base.order() / a.order;
    if (ai == 0) rep.i_chi_size = list.size();
    if (list.size() != ta) {
      rep.i_chi_matches = false;
      continue;
    }
    // Conjugation action t . psi = psi(t^{-1} a t) over coset representatives.
    const CosetSystem cs = cosets(base, a);
    std::vector<char> hit(list.size(), 0);
    for (auto t : cs.reps) {
      std::vector<std::int64_t> vals;
      const auto lt = cover.lift(t);
      for (auto x : a.elements) vals.push_back(list.front().value(cover, cover.mul(cover.mul(cover.inv(lt), cover.lift(x)), lt)));
      const CoverCharacter moved(np, list.front().eps(), a.elements, vals);
      auto it = std::lower_bound(list.begin(), list.end(), moved);
      if (it == list.end() || !(*it == moved) || hit[static_cast<std::size_t>(it - list.begin())]) {
        rep.torsor_ok = false;
        break;
      }
      hit[static_cast<std::size_t>(it - list.begin())] = 1;
    }
    for (const auto& psi : list) {
      MonoRep v = induce_vchi(cover, a, psi);
      ++rep.inductions_checked;
      if (v.dim != rep.d || !satisfies_cover_relations(cover, v, psi.eps())) rep.relations_ok = false;
      if (!reference) {
        reference = v;
        rep.induction_irreducible = monomial_intertwiners(v.maps, v.maps, np).size() == 1;
        continue;
      }
      if (monomial_intertwiners(reference->maps, v.maps, np).empty()) rep.inductions_isomorphic = false;
    }
  }

  rep.oracle = regular_oracle(cover, chi_in, N);
  rep.unique_class = rep.oracle.commutant_center_dim == 1;
  if (reference) {
    const std::size_t common = std::lcm(np, N);
    const MonoRep w = rep.oracle.irreducible.embed(common);
    const MonoRep v = reference->embed(common);
    rep.oracle_matches_induction = !monomial_intertwiners(w.maps, v.maps, common).empty();
  }
  rep.achi = achi_report(cover, chi_in, N);
  rep.e = rep.achi.splits ? 1 : (rep.d == 2 ? 2 : 0);
  rep.dimension_matches = rep.e != 0 && rep.oracle.irreducible_dim == rep.d * rep.e && rep.oracle.division_degree == rep.e;
  return rep;
}

SupportReport rep_support(const Cover& cover, const Rep& w_in) {
  if (w_in.generators != cover.generators()) throw PreconditionError("representation is not given on the standard generators");
  SupportReport out;
  if (w_in.dim == 0) return out;
  const CycMatrix& zeta = w_in.matrices.back();
  const auto ez = zeta(0, 0).root_exponent();
  const auto step = static_cast<std::int64_t>(w_in.conductor) / cover.m();
  if (!ez || static_cast<std::int64_t>(w_in.conductor) % cover.m() != 0 || *ez % step != 0 ||
      !(zeta == zeta(0, 0) * CycMatrix::identity(w_in.dim, w_in.conductor))) {
    throw PreconditionError("mu does not act through a character");
  }
  const std::int64_t eps = *ez / step;
  out.candidates = central_characters(cover, eps);
  const SubgroupDesc z = compute_center(cover.base());
  const auto isotropics = enumerate_maximal_isotropics(cover.base());
  std::vector<Cover::Element> zgens{cover.central(1)};
  for (auto g : z.generators) zgens.push_back(cover.lift(g));
  for (const auto& chi : out.candidates) {
    const std::size_t bound = std::lcm(character_conductor_bound(cover), chi.conductor());
    const auto psis = extend_character(cover, chi, isotropics.front(), bound);
    std::size_t K = std::lcm(w_in.conductor, chi.conductor());
    K = std::lcm(K, psis.front().minimal_conductor(cover.m()));
    const Rep w = w_in.embed(K);
    const CoverCharacter c = chi.with_conductor(K);
    RepEvaluator ev(cover, w);
    RowReducer red(w.dim, K);
    for (auto g : zgens) {
      const CycMatrix diff = ev(g) - CycNum::root_of_unity(K, c.value(cover, g)) * CycMatrix::identity(w.dim, K);
      for (std::size_t r = 0; r < diff.rows(); ++r) red.add(diff.row(r));
    }
    const std::size_t eig = w.dim - red.rank();
    const MonoRep v = induce_vchi(cover, isotropics.front(), psis.front().with_conductor(K));
    std::vector<MonomialMap> wm;
    bool mono = true;
    for (const auto& mat : w.matrices) {
      MonomialMap mm;
      if (!as_monomial(mat, mm)) {
        mono = false;
        break;
      }
      wm.push_back(std::move(mm));
    }
    std::size_t hom = 0;
    if (mono) {
      hom = monomial_intertwiners(wm, v.maps, K).size();
    } else {
      hom = intertwiner_space(w.matrices, v.to_dense().matrices).size();
    }
    out.eigen_dims.push_back(eig);
    out.hom_dims.push_back(hom);
    if ((eig > 0) != (hom > 0)) out.hom_equivalence = false;
    if (eig > 0) out.support.push_back(chi);
  }
  return out;
}

}  // namespace metacover
