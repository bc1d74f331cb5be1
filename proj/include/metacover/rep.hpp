#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "metacover/cover.hpp"
#include "metacover/linalg.hpp"
#include "metacover/monomial.hpp"

namespace metacover {

/// Matrix representation of the subgroup generated by `generators`.
struct Rep {
  std::size_t dim = 0;
  std::size_t conductor = 1;
  std::vector<Cover::Element> generators;
  std::vector<CycMatrix> matrices;

  Rep embed(std::size_t target) const;
};

/// Representation by generalized permutation matrices with root-of-unity entries.
struct MonoRep {
  std::size_t dim = 0;
  std::size_t conductor = 1;
  std::vector<Cover::Element> generators;
  std::vector<MonomialMap> maps;

  Rep to_dense() const;
  MonoRep embed(std::size_t target) const;
};

Rep direct_sum(const Rep& a, const Rep& b);
MonoRep direct_sum(const MonoRep& a, const MonoRep& b);
/// Conjugate by an invertible matrix: g -> P^{-1} rho(g) P.
Rep change_basis(const Rep& r, const CycMatrix& p);
/// Zero-dimensional representation on the given generators.
Rep zero_rep(const std::vector<Cover::Element>& generators, std::size_t conductor);

/// Shortest words in a generating list, by breadth-first search.
class WordTable {
 public:
  WordTable(const Cover& cover, const std::vector<Cover::Element>& generators);
  bool contains(Cover::Element g) const;
  const std::vector<Cover::Element>& elements() const { return elements_; }
  /// Generator indices whose product, left to right, equals g.
  std::vector<std::size_t> word(Cover::Element g) const;

 private:
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> via_;
  std::vector<Cover::Element> elements_;
};

/// Memoized evaluation of a dense representation.
class RepEvaluator {
 public:
  RepEvaluator(const Cover& cover, const Rep& rep);
  const CycMatrix& operator()(Cover::Element g);
  const WordTable& words() const { return words_; }

 private:
  const Rep& rep_;
  WordTable words_;
  std::map<Cover::Element, CycMatrix> cache_;
};

MonomialMap evaluate(const Cover& cover, const MonoRep& rep, const WordTable& words, Cover::Element g);

/// Whether the matrices on the standard generators satisfy the defining
/// relations of the cover with mu acting by epsilon = zeta_m^eps.
bool satisfies_cover_relations(const Cover& cover, const Rep& rep, std::int64_t eps);
bool satisfies_cover_relations(const Cover& cover, const MonoRep& rep, std::int64_t eps);
/// Checks rho(h g) = rho(h) rho(g) for every element h and generator g.
bool is_homomorphism(const Cover& cover, const Rep& rep);

/// Left cosets t_i A~ with canonical representatives (smallest base encoding).
struct CosetSystem {
  std::vector<FiniteTorus::Element> reps;
  std::vector<std::uint32_t> index_of;  // base element -> coset index
};
CosetSystem cosets(const FiniteTorus& torus, const SubgroupDesc& a);

/// Ind from the preimage of A to the cover of the character psi, on the
/// standard generators. Basis f_i = f(t_i^{-1}).
MonoRep induce_vchi(const Cover& cover, const SubgroupDesc& a, const CoverCharacter& psi);
/// Same construction evaluated at any cover element.
MonomialMap induced_action(const Cover& cover, const SubgroupDesc& a, const CosetSystem& cs, const CoverCharacter& psi,
                           Cover::Element h);

/// Interprets a dense matrix as a monomial map when possible.
bool as_monomial(const CycMatrix& m, MonomialMap& out);

}  // namespace metacover
