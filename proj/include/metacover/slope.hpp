#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "metacover/cyclotomic.hpp"

namespace metacover {

using RatVector = std::vector<Rational>;
using SlopeVector = RatVector;

struct PositiveRoot {
  std::vector<std::int64_t> root;    // alpha~ in X
  std::vector<std::int64_t> coroot;  // alpha~^vee in the dual of X
};

struct SimplePair {
  std::size_t root_index = 0;                 // into positive_roots
  std::vector<std::int64_t> restricted;       // alpha in Y^bullet
};

struct RestrictedRoot {
  std::vector<std::int64_t> root;
  std::int64_t multiplicity = 1;
};

struct RootDatum {
  std::size_t rank_t = 0;
  std::size_t rank_s = 0;
  std::vector<std::vector<std::int64_t>> res;  // rank_s x rank_t
  std::vector<PositiveRoot> positive_roots;
  std::vector<SimplePair> simple;
  std::vector<RestrictedRoot> restricted_roots;
};

/// Checks shapes, <alpha~, alpha~^vee> = 2 and res(alpha~) = alpha for simple pairs.
void validate_datum(const RootDatum& datum);

struct WeightChar {
  RatVector psi;          // highest weight in X (rationals allowed for half-integral input)
  SlopeVector theta_slope;
};

/// Coordinates in Y^bullet of t -> ord(chi(t)) given on the dual cocharacter basis.
SlopeVector slope_of_character(const RatVector& ord_values, const RootDatum& datum);

struct RhoPair {
  SlopeVector rho;
  RatVector rho_tilde;
};
/// Throws PreconditionError when res(rho~) != rho.
RhoPair compute_rho(const RootDatum& datum);

RatVector restrict_vector(const RootDatum& datum, const RatVector& x);
/// s_alpha~(x) = x - <x, alpha~^vee> alpha~ for positive root `index`.
RatVector reflect(const RootDatum& datum, std::size_t index, const RatVector& x);

/// Feasibility of A c <= b by Fourier-Motzkin elimination, variables eliminated in index order.
bool fm_feasible(std::vector<RatVector> a, RatVector b);
/// v in the nonnegative rational cone spanned by the restricted simple roots.
bool cone_member(const SlopeVector& v, const RootDatum& datum);

struct CriticalityReport {
  bool noncritical = false;
  std::vector<std::size_t> witnesses;   // simple pair indices whose element lies in the cone
  std::vector<SlopeVector> elements;    // one per simple pair
};
CriticalityReport is_noncritical(const RootDatum& datum, const WeightChar& w);

struct SlopeLemmaReport {
  bool bounded_everywhere = false;
  bool in_cone = false;
  bool agree = false;
};
SlopeLemmaReport slope_lemma_check(const RootDatum& datum, const SlopeVector& slope,
                                   const std::vector<RatVector>& semigroup_gens);

}  // namespace metacover
