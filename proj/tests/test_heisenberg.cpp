#include <doctest.h>

#include <numeric>

#include "metacover/error.hpp"
#include "metacover/svn.hpp"
#include "oracles.hpp"

using namespace metacover;

namespace {

FiniteTorus local(std::int64_t q, std::int64_t m, IntMatrix M) {
  const std::size_t n = M.size();
  return build_finite_model(TorusSpec::local_mode(LocalModel(q, m), n, std::move(M)));
}

Cover gl1_m2() { return build_cover(local(5, 2, {{1}}), CocycleSpec::split()); }
Cover gl1_m4() { return build_cover(local(5, 4, {{2}}), CocycleSpec::split()); }
Cover abelian() { return build_cover(local(5, 2, {{0}}), CocycleSpec::split()); }
Cover z2(std::int64_t level = 4) {
  return build_cover(build_finite_model(TorusSpec::lattice_mode(2, 2, {{0, 1}, {-1, 0}}, level)), CocycleSpec::split());
}

std::size_t conductor_for(const Cover& cover, const CoverCharacter& chi) {
  return std::lcm(character_conductor_bound(cover), chi.conductor());
}

Rep vchi(const Cover& cover, const CoverCharacter& chi, std::size_t K) {
  const auto a = enumerate_maximal_isotropics(cover.base()).front();
  const auto psi = extend_character(cover, chi, a, std::lcm(K, conductor_for(cover, chi))).front();
  return induce_vchi(cover, a, psi).to_dense();
}

// t . psi (a) = psi(t^{-1} a t), compared on lifts of A.
bool same_on_lifts(const Cover& cover, const SubgroupDesc& a, const CoverCharacter& x, const CoverCharacter& y,
                   Cover::Element t) {
  for (auto h : a.elements) {
    const auto g = cover.mul(cover.mul(cover.inv(t), cover.lift(h)), t);
    if (x.value(cover, g) != y.value(cover, cover.lift(h))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("cover examples") {
  const auto c = gl1_m2();
  CHECK(c.order() == 8);
  const auto& t = c.base();
  for (std::int64_t a = 0; a < 2; ++a)
    for (std::int64_t b = 0; b < 2; ++b)
      for (std::int64_t x = 0; x < 2; ++x)
        for (std::int64_t y = 0; y < 2; ++y) {
          const auto g = c.lift(t.encode({a, b})), h = c.lift(t.encode({x, y}));
          const auto comm = c.mul(c.mul(g, h), c.inv(c.mul(h, g)));
          CHECK(c.base_of(comm) == 0);
          CHECK(c.mu_of(comm) == (a * y + b * x) % 2);
        }

  const auto ab = abelian();
  for (Cover::Element g = 0; g < ab.order(); ++g)
    for (Cover::Element h = 0; h < ab.order(); ++h) {
      CHECK(ab.base_of(ab.mul(g, h)) == ab.base().add(ab.base_of(g), ab.base_of(h)));
      CHECK(ab.mu_of(ab.mul(g, h)) == (ab.mu_of(g) + ab.mu_of(h)) % 2);
    }

  const auto lat = build_cover(build_finite_model(TorusSpec::lattice_mode(2, 2, {{0, 1}, {-1, 0}})),
                               CocycleSpec::bilinear({{0, 1}, {0, 0}}));
  CHECK(lat.order() == 8);
  const auto gens = lat.generators();
  const auto comm = lat.mul(lat.mul(gens[0], gens[1]), lat.inv(lat.mul(gens[1], gens[0])));
  CHECK(comm == lat.central(1));
}

TEST_CASE("symbol cocycles") {
  // beta(x, y) = (x, y) gives commutator (x, y)^2: compatible with M = [2], not with M = [1].
  CHECK_NOTHROW(build_cover(local(5, 4, {{2}}), CocycleSpec::symbol({{1}})));
  CHECK_THROWS_AS(build_cover(local(5, 2, {{1}}), CocycleSpec::symbol({{1}})), PreconditionError);
  try {
    build_cover(local(5, 2, {{1}}), CocycleSpec::symbol({{1}}));
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("incompatible") != std::string::npos);
  }
  CHECK_THROWS_AS(build_cover(local(5, 2, {{1}}), CocycleSpec::bilinear({{0, 0}, {0, 0}})), PreconditionError);
}

TEST_CASE("characters extending a central character form a torsor") {
  struct Case {
    Cover cover;
    std::size_t expected;
  };
  std::vector<Case> cases{{gl1_m2(), 2}, {gl1_m4(), 2}, {z2(2), 2}, {z2(4), 2}, {abelian(), 1}};
  for (const auto& [cover, expected] : cases) {
    const auto& t = cover.base();
    for (const auto& a : enumerate_maximal_isotropics(t)) {
      const auto cs = cosets(t, a);
      for (const auto& chi : central_characters(cover, 1)) {
        const auto psis = extend_character(cover, chi, a, conductor_for(cover, chi));
        CHECK(psis.size() == expected);
        CHECK(psis.size() == t.order() / a.order);
        for (const auto& psi : psis) {
          verify_character(cover, psi);
          std::vector<std::size_t> hits(psis.size(), 0);
          for (auto r : cs.reps) {
            for (std::size_t k = 0; k < psis.size(); ++k)
              if (same_on_lifts(cover, a, psi, psis[k], cover.lift(r))) ++hits[k];
          }
          for (auto h : hits) CHECK(h == 1);
        }
      }
    }
  }
}

TEST_CASE("induced representations") {
  const auto c = gl1_m2();
  const auto a = canonical_tame_subgroup(c.base());
  for (const auto& chi : central_characters(c, 1)) {
    const auto psi = extend_character(c, chi, a, conductor_for(c, chi)).front();
    const auto v = induce_vchi(c, a, psi);
    CHECK(v.dim == 2);
    CHECK(satisfies_cover_relations(c, v, 1));
    CHECK(is_homomorphism(c, v.to_dense()));
  }
  const auto ab = abelian();
  const auto whole = enumerate_maximal_isotropics(ab.base()).front();
  for (const auto& chi : central_characters(ab, 1)) {
    const auto v = induce_vchi(ab, whole, chi.with_conductor(conductor_for(ab, chi)));
    CHECK(v.dim == 1);
    for (std::size_t g = 0; g < v.generators.size(); ++g)
      CHECK(v.maps[g].phase[0] == chi.with_conductor(v.conductor).value(ab, v.generators[g]));
  }
  const auto lat = z2(2);
  const auto chi = central_characters(lat, 1).front();
  const Rep v = vchi(lat, chi, 4);
  CHECK(v.dim == 2);
  CHECK(v.conductor % 4 == 0);
  CHECK(satisfies_cover_relations(lat, v, 1));
  CHECK(intertwiner_space(v.matrices, v.matrices).size() == 1);
}

TEST_CASE("Stone-von Neumann verification") {
  for (const auto& cover : {gl1_m2(), gl1_m4()}) {
    const auto chis = central_characters(cover, 1);
    CHECK(chis.size() == compute_center(cover.base()).order);
    for (const auto& chi : chis) {
      const auto r = verify_svn(cover, chi);
      CHECK(r.ok());
      CHECK(r.d == 2);
      CHECK(r.unique_class);
      CHECK(r.i_chi_size == 2);
      CHECK(r.oracle.block_dim == 4);
    }
  }
  const auto ab = abelian();
  for (const auto& chi : central_characters(ab, 1)) {
    const auto r = verify_svn(ab, chi);
    CHECK(r.ok());
    CHECK(r.d == 1);
    CHECK(r.oracle.irreducible_dim == 1);
  }
  const auto lat = z2(2);
  const auto r = verify_svn(lat, central_characters(lat, 1).front(), 4);
  CHECK(r.ok());
  CHECK(r.unique_class);
  CHECK(r.oracle.irreducible_dim == 2);
}

TEST_CASE("A_chi structure and splitting") {
  const auto lat = z2(4);
  std::size_t nonsplit = 0;
  for (const auto& chi : central_characters(lat, 1)) {
    const auto r1 = achi_report(lat, chi, 1);
    CHECK(r1.structure_ok());
    CHECK(r1.dimension == 4);
    if (!r1.splits) {
      ++nonsplit;
      const auto r4 = achi_report(lat, chi, 4);
      CHECK(r4.structure_ok());
      CHECK(r4.splits);
      CHECK(verify_svn(lat, chi, 1).e == 2);
    }
  }
  CHECK(nonsplit >= 1);
  const auto ab = abelian();
  for (const auto& chi : central_characters(ab, 1)) {
    const auto r = achi_report(ab, chi);
    CHECK(r.dimension == 1);
    CHECK(r.splits);
  }
  CHECK_THROWS_AS(achi_report(gl1_m4(), central_characters(gl1_m4(), 1).front(), 2), PreconditionError);
}

TEST_CASE("support of representations") {
  const auto c = gl1_m4();
  const auto chis = central_characters(c, 1);
  REQUIRE(chis.size() >= 2);
  const std::size_t K = conductor_for(c, chis[0]);
  const Rep v0 = vchi(c, chis[0], K);
  const Rep v1 = vchi(c, chis[1], K).embed(v0.conductor);

  const auto s0 = rep_support(c, v0);
  CHECK(s0.hom_equivalence);
  REQUIRE(s0.support.size() == 1);
  CHECK(s0.support[0] == chis[0]);

  const auto s01 = rep_support(c, direct_sum(v0, v1));
  CHECK(s01.hom_equivalence);
  REQUIRE(s01.support.size() == 2);
  CHECK(s01.support[0] == chis[0]);
  CHECK(s01.support[1] == chis[1]);

  const auto reg = regular_epsilon_component(c, 1, K).to_dense();
  const auto sreg = rep_support(c, reg);
  CHECK(sreg.hom_equivalence);
  CHECK(sreg.support.size() == chis.size());
  CHECK(rep_support(c, zero_rep(c.generators(), 4)).support.empty());
}

TEST_CASE("central character count matches a brute-force center") {
  const std::vector<Cover> covers{gl1_m2(), gl1_m4(), abelian(), z2(4),
                                  build_cover(local(5, 2, {{1, 1}, {1, 0}}), CocycleSpec::split())};
  for (const auto& cover : covers) {
    const auto& t = cover.base();
    oracle::CoverLaw law;
    law.m = cover.m();
    law.U = cover.cocycle_matrix();
    law.P = t.pairing_matrix();
    for (std::size_t k = 0; k < t.coordinates(); ++k) law.moduli.push_back(t.modulus());
    const auto els = law.elements();
    std::size_t central = 0;
    for (const auto& x : els) {
      bool all = true;
      for (const auto& y : els) all = all && law.commutator(x, y) == 0;
      if (all) ++central;
    }
    // Characters of Z~ extending an injective epsilon are counted by |Z~| / m = |Z|.
    for (std::int64_t eps = 1; eps < cover.m(); ++eps) {
      if (std::gcd(eps, cover.m()) != 1) continue;
      CHECK(central_characters(cover, eps).size() == central);
    }
  }
}

TEST_CASE("counting identity and block dimensions") {
  for (const auto& cover : {gl1_m2(), gl1_m4(), z2(4)}) {
    const auto chis = central_characters(cover, 1);
    std::size_t total = 0;
    for (const auto& chi : chis) {
      const auto r = verify_svn(cover, chi);
      CHECK(r.ok());
      CHECK(r.oracle.block_dim == r.d * r.d);
      total += r.oracle.block_dim;
      CHECK(chis.size() * r.d * r.d == cover.base().order());
    }
    CHECK(total == cover.base().order());
  }
}

TEST_CASE("reports do not depend on the splitting of the cocycle") {
  const auto t = local(5, 4, {{2, 1}, {1, 0}});
  const auto split = build_cover(t, CocycleSpec::split());
  IntMatrix u = split.cocycle_matrix();
  // Adding a symmetric matrix keeps U - U^T fixed.
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i][i] += 1;
    if (i + 1 < u.size()) {
      u[i][i + 1] += 3;
      u[i + 1][i] += 3;
    }
  }
  const auto other = build_cover(t, CocycleSpec::bilinear(u));
  const auto c1 = central_characters(split, 1);
  const auto c2 = central_characters(other, 1);
  REQUIRE(c1.size() == c2.size());
  for (std::size_t k = 0; k < c1.size(); ++k) {
    const auto r1 = verify_svn(split, c1[k]);
    const auto r2 = verify_svn(other, c2[k]);
    CHECK(r1.ok());
    CHECK(r2.ok());
    CHECK(r1.d == r2.d);
    CHECK(r1.e == r2.e);
    CHECK(r1.oracle.irreducible_dim == r2.oracle.irreducible_dim);
  }
}
