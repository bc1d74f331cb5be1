#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "metacover/rep.hpp"

namespace metacover {

/// Generators of Z~: the mu generator followed by lifts of the center generators.
std::vector<Cover::Element> center_generators(const Cover& cover);

/// S: for each character of Z~_tors extending epsilon, an extension to A~_tors.
struct TameSection {
  std::vector<CoverCharacter> torsion_chars;  // characters of Z~_tors, sorted
  std::vector<CoverCharacter> extensions;     // same order
};

struct TameContext {
  Cover cover;
  SubgroupDesc a;
  SubgroupDesc z;
  SubgroupDesc z_tors;
  SubgroupDesc a_tors;
  std::int64_t eps = 1;
  std::size_t conductor = 1;
  TameSection section;
  CosetSystem cosets;
  std::vector<FiniteTorus::Element> split_z;  // a = split_z[a] + (element of A_tors), indexed by base element
};

/// Throws PreconditionError unless A is maximal isotropic and tame. `choices`
/// picks, per torsion character, the index among its sorted extensions; empty
/// means the lexicographically least extension everywhere. The working
/// conductor is the lcm of `conductor` and what the section needs.
TameContext make_tame_context(const Cover& cover, const SubgroupDesc& a, std::int64_t eps,
                              const std::vector<std::size_t>& choices = {}, std::size_t conductor = 1);

/// Number of extensions available for each torsion character.
std::vector<std::size_t> section_choice_counts(const TameContext& ctx);

/// F_A(V) on the generators of A~ (mu, then lifts of the generators of A).
Rep tame_f_a(const TameContext& ctx, const Rep& v);
/// F(V) = Ind of F_A(V), on the standard generators.
Rep tame_f(const TameContext& ctx, const Rep& v);
/// G(W): the S-selected isotypic part of W|A~_tors as a representation of Z~,
/// together with the inclusion matrix (columns span the subspace).
struct GResult {
  Rep rep;
  CycMatrix inclusion;
};
GResult tame_g(const TameContext& ctx, const Rep& w);

struct RoundtripReport {
  std::size_t input_dim = 0;
  std::size_t image_dim = 0;     // dim F(V) or dim G(W)
  bool isomorphic = false;       // explicit intertwiner verified
  std::string detail;
};

/// G(F(V)) = V through the inclusion of V as the identity-coset block.
RoundtripReport check_gf(const TameContext& ctx, const Rep& v);
/// F(G(W)) = W through f -> sum t_i f(t_i^{-1}).
RoundtripReport check_fg(const TameContext& ctx, const Rep& w);

}  // namespace metacover
