#include "metacover/tame.hpp"

#include <algorithm>
#include <numeric>

#include "metacover/error.hpp"

namespace metacover {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }


CycMatrix scaled_sum_projector(const TameContext& ctx, RepEvaluator& ev, std::size_t dim, const CoverCharacter& chi,
                               const SubgroupDesc& sub) {
  const auto& cover = ctx.cover;
  const std::size_t K = ctx.conductor;
  CycMatrix p(dim, dim, K);
  std::size_t count = 0;
  for (auto b : sub.elements) {
    for (std::int64_t c = 0; c < cover.m(); ++c) {
      const auto g = cover.make(b, c);
      p = p + CycNum::root_of_unity(K, -chi.value(cover, g)) * ev(g);
      ++count;
    }
  }
  return CycNum(K, Rational(1, static_cast<long>(count))) * p;
}

CycMatrix block_place(const std::vector<std::vector<CycMatrix>>& blocks, std::size_t r, std::size_t c, std::size_t K) {
  CycMatrix out(r, c, K);
  std::size_t row = 0;
  for (const auto& br : blocks) {
    std::size_t col = 0;
    std::size_t h = 0;
    for (const auto& b : br) {
      for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) out(row + i, col + j) = b(i, j);
      }
      col += b.cols();
      h = b.rows();
    }
    row += h;
  }
  return out;
}

// Coordinates X with B X = Y for B of full column rank; nullopt when Y is not in the span.
std::optional<CycMatrix> coordinates(const CycMatrix& b, const CycMatrix& y) {
  const std::size_t K = b.conductor();
  CycMatrix x(b.cols(), y.cols(), K);
  for (std::size_t c = 0; c < y.cols(); ++c) {
    std::vector<CycNum> col;
    for (std::size_t r = 0; r < y.rows(); ++r) col.push_back(y(r, c));
    auto s = solve(b, col);
    if (!s) return std::nullopt;
    for (std::size_t r = 0; r < b.cols(); ++r) x(r, c) = (*s)[r];
  }
  return x;
}

Rep as_conductor(const Rep& r, std::size_t K) {
  if (r.conductor == K) return r;
  if (K % r.conductor != 0) throw ConductorError("representation field is not contained in the working field");
  return r.embed(K);
}

}  // namespace

std::vector<Cover::Element> center_generators(const Cover& cover) {
  std::vector<Cover::Element> out{cover.central(1)};
  for (auto g : compute_center(cover.base()).generators) out.push_back(cover.lift(g));
  return out;
}

TameContext make_tame_context(const Cover& cover, const SubgroupDesc& a, std::int64_t eps,
                              const std::vector<std::size_t>& choices, std::size_t conductor) {
  const auto& base = cover.base();
  require_maximal_isotropic(base, a);
  if (!is_tame(base, a)) throw PreconditionError("subgroup is not tame");
  if (std::gcd(eps, cover.m()) != 1) throw PreconditionError("epsilon is not injective");
  TameContext ctx{cover, a, compute_center(base), {}, {}, mod(eps, cover.m()), 1, {}, cosets(base, a), {}};
  ctx.z_tors = torsion_part(base, ctx.z);
  ctx.a_tors = torsion_part(base, a);
  const std::size_t bound = character_conductor_bound(cover);
  const auto tchars = extend_character(cover, epsilon_character(cover, ctx.eps, bound), ctx.z_tors, bound);
  std::size_t K = std::lcm(static_cast<std::size_t>(cover.m()), conductor);
  std::vector<CoverCharacter> exts;
  for (std::size_t i = 0; i < tchars.size(); ++i) {
    const auto all = extend_character(cover, tchars[i], ctx.a_tors, bound);
    const std::size_t pick = choices.empty() ? 0 : choices.at(i);
    if (pick >= all.size()) throw PreconditionError("section choice out of range for torsion character " + std::to_string(i));
    exts.push_back(all[pick]);
    K = std::lcm(K, tchars[i].minimal_conductor(cover.m()));
    K = std::lcm(K, all[pick].minimal_conductor(cover.m()));
  }
  if (!choices.empty() && choices.size() != tchars.size()) throw PreconditionError("section needs one choice per torsion character");
  ctx.conductor = K;
  for (std::size_t i = 0; i < tchars.size(); ++i) {
    ctx.section.torsion_chars.push_back(tchars[i].with_conductor(K));
    ctx.section.extensions.push_back(exts[i].with_conductor(K));
  }
  ctx.split_z.assign(base.order(), 0);
  for (auto x : a.elements) {
    bool found = false;
    for (auto s : ctx.a_tors.elements) {
      const auto zb = base.add(x, base.neg(s));
      if (ctx.z.contains(zb)) {
        ctx.split_z[x] = zb;
        found = true;
        break;
      }
    }
    if (!found) throw Error("tame decomposition failed at " + base.format(x));
  }
  return ctx;
}

std::vector<std::size_t> section_choice_counts(const TameContext& ctx) {
  std::vector<std::size_t> out;
  const std::size_t bound = character_conductor_bound(ctx.cover);
  for (const auto& c : ctx.section.torsion_chars) out.push_back(extend_character(ctx.cover, c, ctx.a_tors, bound).size());
  return out;
}

namespace {

struct FaEvaluator {
  const TameContext& ctx;
  Rep v;
  RepEvaluator ev;
  std::vector<CycMatrix> projectors;

  FaEvaluator(const TameContext& c, const Rep& vin) : ctx(c), v(as_conductor(vin, c.conductor)), ev(c.cover, v) {
    for (const auto& chi : ctx.section.torsion_chars) {
      projectors.push_back(scaled_sum_projector(ctx, ev, v.dim, chi, ctx.z_tors));
    }
  }

  // a = z s with z in Z~ and s in A~_tors; F_A(V)(a) = rho(z) sum_chi S(chi)(s) P_chi.
  CycMatrix operator()(Cover::Element a) {
    const auto& cover = ctx.cover;
    const auto& base = cover.base();
    const auto ab = cover.base_of(a);
    const auto zb = ctx.split_z[ab];
    const auto sb = base.add(ab, base.neg(zb));
    const auto z = cover.make(zb, cover.mu_of(a) - cover.beta(zb, sb));
    const auto s = cover.lift(sb);
    const std::size_t K = ctx.conductor;
    CycMatrix sum(v.dim, v.dim, K);
    for (std::size_t i = 0; i < projectors.size(); ++i) {
      sum = sum + CycNum::root_of_unity(K, ctx.section.extensions[i].value(cover, s)) * projectors[i];
    }
    return ev(z) * sum;
  }
};

void require_center_rep(const TameContext& ctx, const Rep& v) {
  if (v.generators != center_generators(ctx.cover)) throw PreconditionError("V must be given on the generators of Z~");
}

void require_full_rep(const TameContext& ctx, const Rep& w) {
  if (w.generators != ctx.cover.generators()) throw PreconditionError("W must be given on the standard generators");
}

}  // namespace

Rep tame_f_a(const TameContext& ctx, const Rep& v) {
  require_center_rep(ctx, v);
  FaEvaluator fa(ctx, v);
  Rep out;
  out.dim = v.dim;
  out.conductor = ctx.conductor;
  out.generators.push_back(ctx.cover.central(1));
  for (auto g : ctx.a.generators) out.generators.push_back(ctx.cover.lift(g));
  for (auto g : out.generators) out.matrices.push_back(fa(g));
  return out;
}

Rep tame_f(const TameContext& ctx, const Rep& v) {
  require_center_rep(ctx, v);
  FaEvaluator fa(ctx, v);
  const auto& cover = ctx.cover;
  const auto& base = cover.base();
  const std::size_t s = ctx.cosets.reps.size();
  const std::size_t K = ctx.conductor;
  Rep out;
  out.dim = s * v.dim;
  out.conductor = K;
  out.generators = cover.generators();
  for (auto h : out.generators) {
    std::vector<std::vector<CycMatrix>> blocks(s, std::vector<CycMatrix>(s, CycMatrix(v.dim, v.dim, K)));
    const auto hb = cover.base_of(h);
    for (std::size_t i = 0; i < s; ++i) {
      const auto j = ctx.cosets.index_of[base.add(ctx.cosets.reps[i], base.neg(hb))];
      const auto ti = cover.lift(ctx.cosets.reps[i]);
      const auto tj = cover.lift(ctx.cosets.reps[j]);
      blocks[i][j] = fa(cover.mul(cover.mul(cover.inv(ti), h), tj));
    }
    out.matrices.push_back(block_place(blocks, out.dim, out.dim, K));
  }
  return out;
}

GResult tame_g(const TameContext& ctx, const Rep& w_in) {
  require_full_rep(ctx, w_in);
  const std::size_t K = std::lcm(ctx.conductor, w_in.conductor);
  if (K != ctx.conductor) throw ConductorError("W is defined over a larger field than the section");
  const Rep w = as_conductor(w_in, K);
  GResult out;
  out.rep.conductor = K;
  out.rep.generators = center_generators(ctx.cover);
  if (w.dim == 0) {
    out.rep.matrices.assign(out.rep.generators.size(), CycMatrix(0, 0, K));
    out.inclusion = CycMatrix(0, 0, K);
    return out;
  }
  RepEvaluator ev(ctx.cover, w);
  CycMatrix q(w.dim, w.dim, K);
  for (const auto& psi : ctx.section.extensions) q = q + scaled_sum_projector(ctx, ev, w.dim, psi, ctx.a_tors);
  out.inclusion = column_basis(q);
  out.rep.dim = out.inclusion.cols();
  for (auto g : out.rep.generators) {
    auto x = coordinates(out.inclusion, ev(g) * out.inclusion);
    if (!x) throw Error("G(W): selected subspace is not stable under Z~");
    out.rep.matrices.push_back(*x);
  }
  return out;
}

RoundtripReport check_gf(const TameContext& ctx, const Rep& v_in) {
  RoundtripReport r;
  const Rep v = as_conductor(v_in, ctx.conductor);
  r.input_dim = v.dim;
  const Rep f = tame_f(ctx, v);
  r.image_dim = f.dim;
  if (f.dim != v.dim * ctx.cosets.reps.size()) {
    r.detail = "dim F(V) != [T:A] dim V";
    return r;
  }
  if (!satisfies_cover_relations(ctx.cover, f, ctx.eps)) {
    r.detail = "F(V) violates the cover relations";
    return r;
  }
  const GResult g = tame_g(ctx, f);
  if (g.rep.dim != v.dim) {
    r.detail = "dim G(F(V)) != dim V";
    return r;
  }
  if (v.dim == 0) {
    r.isomorphic = true;
    return r;
  }
  // iota: V -> F(V), the identity-coset block.
  CycMatrix iota(f.dim, v.dim, ctx.conductor);
  for (std::size_t i = 0; i < v.dim; ++i) iota(i, i) = CycNum(ctx.conductor, 1);
  auto x = coordinates(g.inclusion, iota);
  if (!x || !inverse(*x)) {
    r.detail = "identity-coset block is not G(F(V))";
    return r;
  }
  for (std::size_t k = 0; k < v.matrices.size(); ++k) {
    if (g.rep.matrices[k] * *x != *x * v.matrices[k]) {
      r.detail = "inclusion is not Z~-equivariant";
      return r;
    }
  }
  r.isomorphic = true;
  return r;
}

RoundtripReport check_fg(const TameContext& ctx, const Rep& w_in) {
  RoundtripReport r;
  const Rep w = as_conductor(w_in, ctx.conductor);
  r.input_dim = w.dim;
  const GResult g = tame_g(ctx, w);
  r.image_dim = g.rep.dim;
  const Rep f = tame_f(ctx, g.rep);
  if (f.dim != w.dim) {
    r.detail = "dim F(G(W)) != dim W";
    return r;
  }
  if (w.dim == 0) {
    r.isomorphic = true;
    return r;
  }
  RepEvaluator ev(ctx.cover, w);
  const std::size_t s = ctx.cosets.reps.size();
  std::vector<std::vector<CycMatrix>> row(1);
  for (std::size_t i = 0; i < s; ++i) row[0].push_back(ev(ctx.cover.lift(ctx.cosets.reps[i])) * g.inclusion);
  const CycMatrix phi = block_place(row, w.dim, f.dim, ctx.conductor);
  if (!inverse(phi)) {
    r.detail = "f -> sum t_i f(t_i^{-1}) is not invertible";
    return r;
  }
  for (std::size_t k = 0; k < w.matrices.size(); ++k) {
    if (phi * f.matrices[k] != w.matrices[k] * phi) {
      r.detail = "f -> sum t_i f(t_i^{-1}) is not equivariant";
      return r;
    }
  }
  r.isomorphic = true;
  return r;
}

}  // namespace metacover
