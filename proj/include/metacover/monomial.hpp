#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "metacover/linalg.hpp"

namespace metacover {

/// Generalized permutation operator e_j -> zeta_K^{phase[j]} e_{target[j]}.
struct MonomialMap {
  std::vector<std::uint32_t> target;
  std::vector<std::int64_t> phase;

  std::size_t size() const { return target.size(); }
  static MonomialMap identity(std::size_t n);
  /// Coordinates reduced modulo the conductor.
  void normalize(std::size_t conductor);
  /// Dense matrix; column j holds the image of e_j.
  CycMatrix to_dense(std::size_t conductor) const;
  bool is_permutation() const;
};

/// (a * b) e_j = a(b(e_j)).
MonomialMap compose(const MonomialMap& a, const MonomialMap& b, std::size_t conductor);
MonomialMap inverse(const MonomialMap& a, std::size_t conductor);
/// a scaled by zeta^k.
MonomialMap scale(const MonomialMap& a, std::int64_t k, std::size_t conductor);
bool equal(const MonomialMap& a, const MonomialMap& b, std::size_t conductor);
MonomialMap direct_sum(const MonomialMap& a, const MonomialMap& b);

/// Sparse vector whose nonzero entries are roots of unity: (index, exponent).
using RootVector = std::vector<std::pair<std::uint32_t, std::int64_t>>;

/// Basis of {v : X_i v = zeta^{eigen[i]} v for all i}. Every solution space
/// of this shape has a basis supported on orbits with root-of-unity entries,
/// which is what is returned, ordered by smallest index.
std::vector<RootVector> monomial_fixed_space(std::size_t n, std::size_t conductor,
                                             const std::vector<MonomialMap>& ops,
                                             const std::vector<std::int64_t>& eigen);

/// Basis of intertwiners X (lhs[i] X = X rhs[i]); an entry (r, c, e) of a
/// returned RootVector index r * cols + c holds zeta^e.
struct RootMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  RootVector entries;  // index = row * cols + col

  CycMatrix to_dense(std::size_t conductor) const;
  /// Interpretation as a monomial map, if it has exactly one entry in each row and column.
  bool as_monomial(MonomialMap& out) const;
};

std::vector<RootMatrix> monomial_intertwiners(const std::vector<MonomialMap>& lhs,
                                              const std::vector<MonomialMap>& rhs,
                                              std::size_t conductor);

}  // namespace metacover
