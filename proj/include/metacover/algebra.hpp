#pragma once

#include <cstddef>
#include <vector>

#include "metacover/linalg.hpp"

namespace metacover {

/// Finite-dimensional algebra over Q(zeta_N) by structure constants
/// e_i e_j = sum_k c_ijk e_k.
class AlgebraTable {
 public:
  AlgebraTable(std::size_t dim, std::size_t conductor);

  std::size_t dim() const { return dim_; }
  std::size_t conductor() const { return conductor_; }

  void set_product(std::size_t i, std::size_t j, SparseRow value);
  const SparseRow& product(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }
  SparseRow multiply(const SparseRow& x, const SparseRow& y) const;

 private:
  std::size_t dim_;
  std::size_t conductor_;
  std::vector<SparseRow> table_;
};

SparseRow add_rows(const SparseRow& a, const SparseRow& b, const CycNum& scale_b);

/// Throws PreconditionError naming a failing triple. Checks every triple when
/// dim^3 <= budget, otherwise a deterministic strided sample of that size.
void check_associative(const AlgebraTable& alg, std::size_t budget = 1u << 16);

/// Jacobson radical dimension via the kernel of the trace form.
std::size_t radical_dimension(const AlgebraTable& alg);

/// Dimension of the center. When generators is nonempty they must generate
/// the algebra; otherwise every basis element is used.
std::size_t center_dimension(const AlgebraTable& alg, const std::vector<std::size_t>& generators = {});

/// Rank of left multiplication by x.
std::size_t left_ideal_dimension(const AlgebraTable& alg, const SparseRow& x);

/// Hilbert symbol (a, b)_p over Q_p; p = 0 denotes the real place.
int hilbert_symbol(const mpq_class& a, const mpq_class& b, unsigned long p);

/// Places of Q where the quaternion algebra (a, b) ramifies, 0 for the real place.
std::vector<unsigned long> ramified_places(const mpq_class& a, const mpq_class& b);

/// [Q_p(zeta_N) : Q_p], with p = 0 for the real place.
std::size_t local_degree(std::size_t conductor, unsigned long p);

/// Whether (a, b) with a, b in Q^x becomes a matrix algebra over Q(zeta_N).
bool quaternion_splits(const mpq_class& a, const mpq_class& b, std::size_t conductor);

}  // namespace metacover
