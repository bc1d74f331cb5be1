#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "metacover/torus.hpp"

namespace metacover {

/// How the 2-cocycle beta(t, u) = t^T U u (mod m) is chosen.
struct CocycleSpec {
  enum class Kind { Split, Symbol, Bilinear };
  Kind kind = Kind::Split;
  /// Symbol: local mode, beta = prod (t_i, u_j)^{C(i,j)} in tame symbols.
  IntMatrix C;
  /// Bilinear: coordinate matrix U of the finite model.
  IntMatrix U;

  /// Strictly upper triangular part of the coordinate pairing matrix.
  static CocycleSpec split() { return {}; }
  static CocycleSpec symbol(IntMatrix c) { return {Kind::Symbol, std::move(c), {}}; }
  static CocycleSpec bilinear(IntMatrix u) { return {Kind::Bilinear, {}, std::move(u)}; }
};

/// Central extension 1 -> mu_m -> cover -> T -> 1 with
/// (t, z)(t', z') = (t + t', z + z' + beta(t, t')). Elements are t * m + z.
class Cover {
 public:
  using Element = std::uint32_t;

  const FiniteTorus& base() const { return base_; }
  std::int64_t m() const { return base_.m(); }
  std::size_t order() const { return base_.order() * static_cast<std::size_t>(m()); }
  /// Coordinate matrix U of beta, entries mod m.
  const IntMatrix& cocycle_matrix() const { return U_; }

  Element make(FiniteTorus::Element t, std::int64_t z) const;
  Element lift(FiniteTorus::Element t) const { return make(t, 0); }
  Element central(std::int64_t z) const { return make(0, z); }
  FiniteTorus::Element base_of(Element g) const { return g / static_cast<Element>(m()); }
  std::int64_t mu_of(Element g) const { return g % static_cast<Element>(m()); }

  std::int64_t beta(FiniteTorus::Element t, FiniteTorus::Element u) const;
  Element mul(Element a, Element b) const;
  Element inv(Element a) const;
  Element pow(Element a, std::int64_t k) const;

  /// Lifts of the coordinate basis followed by (0, 1).
  std::vector<Element> generators() const;
  /// Exponents (t_0, ..., t_{N-1}, z') with g = x_0^{t_0} ... x_{N-1}^{t_{N-1}} zeta^{z'}.
  std::vector<std::int64_t> normal_form(Element g) const;
  std::string format(Element g) const;

 private:
  friend Cover build_cover(const FiniteTorus& torus, const CocycleSpec& cocycle);
  FiniteTorus base_;
  IntMatrix U_;
  std::vector<std::uint8_t> beta_table_;  // filled when the base is small
};

/// Verifies associativity and that commutators of lifts reproduce the base
/// pairing; throws PreconditionError citing a failing pair otherwise.
Cover build_cover(const FiniteTorus& torus, const CocycleSpec& cocycle);

/// Character of the preimage H~ of a base subgroup H. Values are exponents
/// of zeta_K; on (h, z) it is lift_values[h] + eps * z * K / m.
class CoverCharacter {
 public:
  CoverCharacter() = default;
  CoverCharacter(std::size_t conductor, std::int64_t eps, std::vector<FiniteTorus::Element> support,
                 std::vector<std::int64_t> lift_values);

  std::size_t conductor() const { return conductor_; }
  /// epsilon(zeta_m) = zeta_m^eps.
  std::int64_t eps() const { return eps_; }
  const std::vector<FiniteTorus::Element>& support() const { return support_; }
  const std::vector<std::int64_t>& lift_values() const { return values_; }

  bool defined_on(FiniteTorus::Element h) const;
  std::int64_t lift_value(FiniteTorus::Element h) const;
  /// Exponent of zeta_K at a cover element whose base lies in the support.
  std::int64_t value(const Cover& cover, Cover::Element g) const;
  /// Smallest conductor containing all values (a multiple of m).
  std::size_t minimal_conductor(std::int64_t m) const;
  CoverCharacter with_conductor(std::size_t target) const;
  /// Restriction to a smaller base subgroup.
  CoverCharacter restrict_to(const SubgroupDesc& sub) const;

  friend bool operator==(const CoverCharacter& a, const CoverCharacter& b);
  friend bool operator<(const CoverCharacter& a, const CoverCharacter& b);

 private:
  std::size_t conductor_ = 1;
  std::int64_t eps_ = 0;
  std::vector<FiniteTorus::Element> support_;
  std::vector<std::int64_t> values_;
};

/// Conductor large enough for every character of every abelian subgroup.
std::size_t character_conductor_bound(const Cover& cover);

/// All characters of the preimage of `to` extending chi (defined on the
/// preimage of a subgroup of `to`), with values in mu_K. Sorted.
std::vector<CoverCharacter> extend_character(const Cover& cover, const CoverCharacter& chi, const SubgroupDesc& to,
                                             std::size_t conductor);

/// Throws unless chi is multiplicative on the preimage of its support.
void verify_character(const Cover& cover, const CoverCharacter& chi);

/// The character of mu given by eps, on the trivial base subgroup.
CoverCharacter epsilon_character(const Cover& cover, std::int64_t eps, std::size_t conductor);

/// All characters of Z~ extending epsilon, each at its minimal conductor.
std::vector<CoverCharacter> central_characters(const Cover& cover, std::int64_t eps);

/// Values at the canonical generators of the preimage: the mu generator first.
std::vector<std::int64_t> generator_values(const Cover& cover, const SubgroupDesc& sub, const CoverCharacter& chi);
/// Inverse of generator_values; throws PreconditionError when the values do not define a character.
CoverCharacter character_from_generator_values(const Cover& cover, const SubgroupDesc& sub,
                                               const std::vector<std::int64_t>& values, std::size_t conductor);

}  // namespace metacover
