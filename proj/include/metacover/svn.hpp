#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "metacover/algebra.hpp"
#include "metacover/rep.hpp"

namespace metacover {

inline constexpr std::size_t kCoverOrderBound = std::size_t{1} << 13;
inline constexpr std::size_t kAlgebraDimBound = 256;

/// A_chi: the group algebra of the cover modulo z - chi(z), on the basis
/// b_r = image of (r, 0) for canonical coset representatives r of T/Z.
struct AchiAlgebra {
  AlgebraTable table;
  std::vector<FiniteTorus::Element> reps;
  std::vector<std::uint32_t> index_of;  // base element -> basis index
  std::vector<std::size_t> generators;  // basis indices generating the algebra
};

AchiAlgebra build_achi(const Cover& cover, const CoverCharacter& chi, std::size_t conductor);

struct AchiReport {
  std::size_t conductor = 1;
  std::size_t d = 0;
  std::size_t dimension = 0;
  std::size_t radical_dim = 0;
  std::size_t center_dim = 0;
  bool splits = false;
  /// "idempotent" (a rank-1 idempotent was constructed and verified),
  /// "quaternion" (decided by local invariants) or "abelian".
  std::string split_method;

  bool structure_ok() const { return dimension == d * d && radical_dim == 0 && center_dim == 1; }
};

/// Conductor 0 selects the smallest conductor containing the values of chi.
AchiReport achi_report(const Cover& cover, const CoverCharacter& chi, std::size_t conductor = 0);

/// Result of decomposing the chi-block of the regular representation.
struct RegularOracle {
  std::size_t conductor = 1;
  std::size_t block_dim = 0;          // dim of the chi-isotypic block
  std::size_t commutant_dim = 0;
  std::size_t commutant_center_dim = 0;
  std::size_t irreducible_dim = 0;
  std::size_t division_degree = 0;    // e with End(V) of dimension e^2
  MonoRep irreducible;
};

/// The epsilon-component of the regular representation, Ind from mu of epsilon.
MonoRep regular_epsilon_component(const Cover& cover, std::int64_t eps, std::size_t conductor);
/// Basis of orbit vectors of the chi-block of a monomial representation and the
/// induced monomial action on it.
MonoRep isotypic_block(const Cover& cover, const MonoRep& rep, const CoverCharacter& chi);
RegularOracle regular_oracle(const Cover& cover, const CoverCharacter& chi, std::size_t conductor);

struct SvnReport {
  std::size_t d = 0;
  std::size_t index = 0;
  std::size_t isotropic_count = 0;
  std::size_t i_chi_size = 0;
  bool i_chi_matches = true;      // |I_chi| = [T:A] for every A
  bool torsor_ok = true;
  bool relations_ok = true;
  bool inductions_isomorphic = true;
  bool induction_irreducible = true;
  std::size_t inductions_checked = 0;
  std::size_t induction_conductor = 1;
  RegularOracle oracle;
  bool unique_class = false;
  bool oracle_matches_induction = false;
  std::size_t e = 0;
  bool dimension_matches = false;
  AchiReport achi;

  bool ok() const;
};

SvnReport verify_svn(const Cover& cover, const CoverCharacter& chi, std::size_t conductor = 0);

struct SupportReport {
  std::vector<CoverCharacter> support;
  std::vector<std::size_t> eigen_dims;  // per enumerated chi
  std::vector<std::size_t> hom_dims;
  std::vector<CoverCharacter> candidates;
  bool hom_equivalence = true;
};

/// Central characters with a nonzero eigenvector in W, cross-checked against Hom(V_chi, W).
SupportReport rep_support(const Cover& cover, const Rep& w);

}  // namespace metacover
