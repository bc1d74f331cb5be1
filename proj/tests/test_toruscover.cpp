#include <doctest.h>

#include "metacover/error.hpp"
#include "metacover/torus.hpp"

using namespace metacover;

namespace {

FiniteTorus local(std::int64_t q, std::int64_t m, IntMatrix M) {
  const std::size_t n = M.size();
  return build_finite_model(TorusSpec::local_mode(LocalModel(q, m), n, std::move(M)));
}

FiniteTorus z2() { return build_finite_model(TorusSpec::lattice_mode(2, 2, {{0, 1}, {-1, 0}})); }

std::size_t index_of(const FiniteTorus& t, const SubgroupDesc& s) { return t.order() / s.order; }

}  // namespace

TEST_CASE("finite model orders") {
  CHECK(local(5, 2, {{1}}).order() == 4);
  CHECK(local(5, 4, {{2}}).order() == 16);
  CHECK(local(13, 4, {{2, 1}, {1, 0}}).order() == 256);
  const auto t = z2();
  CHECK(t.order() / compute_center(t).order == 4);
}

TEST_CASE("non-alternating pairings are rejected") {
  CHECK_THROWS_AS(build_finite_model(TorusSpec::lattice_mode(2, 4, {{1, 1}, {-1, 0}})), PreconditionError);
  CHECK_THROWS_AS(build_finite_model(TorusSpec::lattice_mode(2, 3, {{0, 1}, {1, 0}})), PreconditionError);
  // For local symbols [t, t] = (-1)^{v^2 M}, which is nontrivial for odd M when m = 4.
  try {
    local(5, 4, {{1}});
    FAIL("expected an error");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("[t,t]") != std::string::npos);
  }
}

TEST_CASE("GL1 pairing table") {
  const auto t = local(5, 2, {{1}});
  for (std::int64_t a = 0; a < 2; ++a)
    for (std::int64_t b = 0; b < 2; ++b)
      for (std::int64_t c = 0; c < 2; ++c)
        for (std::int64_t d = 0; d < 2; ++d) {
          const auto x = t.encode({a, b}), y = t.encode({c, d});
          CHECK(commutator_pairing(t, x, y).e == (a * d + b * c) % 2);
        }
  for (FiniteTorus::Element x = 0; x < t.order(); ++x) CHECK(commutator_pairing(t, x, x).is_one());
  const auto zero = local(5, 2, {{0}});
  for (FiniteTorus::Element x = 0; x < zero.order(); ++x)
    for (FiniteTorus::Element y = 0; y < zero.order(); ++y) CHECK(zero.pairing_exponent(x, y) == 0);
}

TEST_CASE("center and symplectic structure") {
  const auto t4 = local(5, 4, {{2}});
  const auto z = compute_center(t4);
  CHECK(index_of(t4, z) == 4);
  for (auto e : z.elements) {
    const auto c = t4.decode(e);
    CHECK(c[0] % 2 == 0);
    CHECK(c[1] % 2 == 0);
  }
  CHECK(index_of(local(5, 2, {{1}}), compute_center(local(5, 2, {{1}}))) == 4);
  const auto triv = local(5, 2, {{0}});
  CHECK(index_of(triv, compute_center(triv)) == 1);

  const auto r = check_symplectic(local(5, 2, {{1}}));
  CHECK(r.alternating);
  CHECK(r.nondegenerate);
  CHECK(r.index == 4);
  CHECK(r.index_is_square);
  const auto rz = check_symplectic(z2());
  CHECK(rz.alternating);
  CHECK(rz.nondegenerate);
  CHECK(rz.index == 4);
  const auto r0 = check_symplectic(triv);
  CHECK(r0.index == 1);
  CHECK(r0.nondegenerate);
  CHECK(r0.index_is_square);
}

TEST_CASE("maximal isotropic subgroups") {
  CHECK(enumerate_maximal_isotropics(z2()).size() == 3);
  CHECK(enumerate_maximal_isotropics(local(5, 2, {{1}})).size() == 3);
  const auto triv = local(5, 2, {{0}});
  const auto all = enumerate_maximal_isotropics(triv);
  REQUIRE(all.size() == 1);
  CHECK(all[0].order == triv.order());
  for (const auto& a : enumerate_maximal_isotropics(z2())) CHECK_FALSE(is_tame(z2(), a));
}

TEST_CASE("tameness in the GL1 model") {
  const auto t = local(5, 4, {{2}});
  const auto z = compute_center(t);
  const auto a = canonical_tame_subgroup(t);
  CHECK(index_of(t, a) == 2);
  CHECK(is_tame(t, a));
  // Z * pi^Z is Lagrangian but its torsion part is only Z.
  std::vector<FiniteTorus::Element> g2 = z.generators;
  g2.push_back(t.encode({1, 0}));
  const auto a_val = span(t, g2);
  CHECK(is_isotropic(t, a_val));
  CHECK(index_of(t, a_val) == 2);
  CHECK_FALSE(is_tame(t, a_val));

  const auto t2 = local(5, 2, {{1}});
  CHECK(index_of(t2, canonical_tame_subgroup(t2)) == 2);
  CHECK_THROWS_WITH(canonical_tame_subgroup(z2()), "no canonical tame subgroup in lattice mode");
  CHECK_THROWS_AS(is_tame(t, span(t, {t.encode({1, 1})})), PreconditionError);
}

TEST_CASE("structural invariants on the local corpus") {
  std::vector<FiniteTorus> corpus{local(5, 2, {{1}}), local(5, 4, {{2}}), local(13, 4, {{2}}),
                                  local(5, 2, {{1, 1}, {1, 0}}), local(5, 4, {{2, 1}, {1, 0}}),
                                  local(13, 4, {{2, -1}, {-1, 2}}), local(5, 4, {{2, 5}, {1, 0}})};
  for (const auto& t : corpus) {
    const auto z = compute_center(t);
    const auto r = check_symplectic(t);
    CHECK(r.index_is_square);
    const auto isos = enumerate_maximal_isotropics(t);
    const auto canon = canonical_tame_subgroup(t);
    CHECK(is_tame(t, canon));
    bool found = false;
    for (const auto& a : isos) {
      CHECK(a.order / z.order == t.order() / a.order);
      found = found || a.elements == canon.elements;
    }
    CHECK(found);
    for (FiniteTorus::Element x = 0; x < t.order(); ++x) CHECK(z.contains(t.mul_scalar(x, t.m())));
  }
}
