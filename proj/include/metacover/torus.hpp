#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "metacover/localfield.hpp"

namespace metacover {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

enum class TorusMode { Local, Lattice };

struct TorusSpec {
  TorusMode mode = TorusMode::Local;
  std::size_t n = 1;
  std::int64_t m = 2;
  std::optional<LocalModel> local;
  IntMatrix M;  // local mode: commutator exponents
  IntMatrix J;  // lattice mode: pairing matrix
  /// Lattice mode: the finite model is (Z/level)^n; 0 means level = m.
  std::int64_t level = 0;

  static TorusSpec local_mode(const LocalModel& model, std::size_t n, IntMatrix M);
  static TorusSpec lattice_mode(std::size_t n, std::int64_t m, IntMatrix J, std::int64_t level = 0);
};

/// T modulo a subgroup on which the pairing is trivial: local mode T/T^m with
/// coordinates (valuation_i, residue_i) interleaved, lattice mode (Z/level)^n.
/// Elements are mixed-radix codes.
class FiniteTorus {
 public:
  using Element = std::uint32_t;

  const TorusSpec& spec() const { return spec_; }
  TorusMode mode() const { return spec_.mode; }
  std::int64_t m() const { return spec_.m; }
  std::size_t coordinates() const { return coords_; }
  std::int64_t modulus() const { return modulus_; }
  std::size_t order() const { return order_; }
  /// Coordinate pairing matrix reduced mod m: [t, u] = zeta^(t^T P u).
  const IntMatrix& pairing_matrix() const { return pairing_; }

  std::vector<std::int64_t> decode(Element x) const;
  Element encode(const std::vector<std::int64_t>& c) const;
  Element basis(std::size_t k) const { return static_cast<Element>(stride_[k]); }
  Element add(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul_scalar(Element a, std::int64_t k) const;
  static constexpr Element zero() { return 0; }

  /// Exponent of [a, b].
  std::int64_t pairing_exponent(Element a, Element b) const;
  /// Local mode: all valuation coordinates vanish. Lattice mode: a = 0.
  bool is_torsion(Element a) const;
  std::string format(Element a) const;

 private:
  friend FiniteTorus build_finite_model(const TorusSpec& spec);
  TorusSpec spec_;
  std::size_t coords_ = 0;
  std::int64_t modulus_ = 1;
  std::size_t order_ = 1;
  std::vector<std::size_t> stride_;
  IntMatrix pairing_;
};

/// Throws PreconditionError naming an element t with [t, t] != 1 when the
/// pairing is not alternating.
FiniteTorus build_finite_model(const TorusSpec& spec);

struct SubgroupDesc {
  std::vector<FiniteTorus::Element> generators;
  bool contains_center = false;
  std::size_t order = 0;
  std::vector<FiniteTorus::Element> elements;  // sorted

  bool contains(FiniteTorus::Element x) const;
};

/// Subgroup generated by gens, with canonical greedy generators.
SubgroupDesc span(const FiniteTorus& torus, const std::vector<FiniteTorus::Element>& gens);

MuElement commutator_pairing(const FiniteTorus& torus, FiniteTorus::Element t, FiniteTorus::Element u);
SubgroupDesc compute_center(const FiniteTorus& torus);

struct SymplecticReport {
  bool alternating = false;
  bool nondegenerate = false;
  std::size_t index = 0;
  bool index_is_square = false;
};

SymplecticReport check_symplectic(const FiniteTorus& torus);

inline constexpr std::size_t kIsotropicIndexBound = std::size_t{1} << 12;

/// All maximal isotropic A containing Z, sorted by generator encodings.
std::vector<SubgroupDesc> enumerate_maximal_isotropics(const FiniteTorus& torus);

bool is_isotropic(const FiniteTorus& torus, const SubgroupDesc& a);
/// Throws PreconditionError unless a contains Z and is maximal isotropic.
void require_maximal_isotropic(const FiniteTorus& torus, const SubgroupDesc& a);
SubgroupDesc torsion_part(const FiniteTorus& torus, const SubgroupDesc& a);
bool is_tame(const FiniteTorus& torus, const SubgroupDesc& a);
SubgroupDesc canonical_tame_subgroup(const FiniteTorus& torus);

}  // namespace metacover
