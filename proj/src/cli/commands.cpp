#include <CLI11.hpp>

#include <chrono>
#include <numeric>
#include <sstream>

#include "metacover/cli.hpp"
#include "metacover/config.hpp"
#include "metacover/kubota.hpp"
#include "metacover/localfield.hpp"
#include "metacover/slope.hpp"
#include "metacover/svn.hpp"
#include "metacover/tame.hpp"

namespace metacover {

namespace {

TameElement parse_tame(const LocalModel& model, const std::string& text, const std::string& field) {
  const auto v = parse_int_list(text, field);
  if (v.size() != 2) throw ConfigError(field + ": expected \"v,u\"");
  return model.make(v[0], v[1]);
}

std::string rat_str(const Rational& r) { return r.get_str(); }

Json rat_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rat_str(x));
  return out;
}

std::string format_subgroup(const FiniteTorus& t, const SubgroupDesc& s) {
  std::string out = "<";
  for (std::size_t i = 0; i < s.generators.size(); ++i) {
    if (i) out += " ";
    out += t.format(s.generators[i]);
  }
  return out + ">";
}

struct Inputs {
  std::string digest_source;
  void add(const std::string& k, const std::string& v) {
    digest_source += k;
    digest_source.push_back('\0');
    digest_source += v;
    digest_source.push_back('\0');
  }
};

Report symbol_report(std::int64_t q, std::int64_t m, const std::string& xs, const std::string& ys) {
  const LocalModel model(q, m);
  const TameElement x = parse_tame(model, xs, "--x");
  const TameElement y = parse_tame(model, ys, "--y");
  const MuElement s = tame_symbol(model, x, y);
  Report r;
  r.subcommand = "symbol";
  r.columns = {"q", "m", "x", "y", "exponent", "symbol", "sign"};
  Json rec;
  rec["q"] = q;
  rec["m"] = m;
  rec["x"] = std::to_string(x.v) + "," + std::to_string(x.u);
  rec["y"] = std::to_string(y.v) + "," + std::to_string(y.u);
  rec["exponent"] = s.e;
  rec["symbol"] = s.to_string();
  rec["sign"] = (m <= 2) ? Json(s.sign()) : Json(nullptr);
  r.records.push_back(rec);
  return r;
}

Report torus_report(const TorusConfig& tc, bool center, bool isotropics, bool tame_check) {
  const FiniteTorus t = build_finite_model(tc.spec);
  const SymplecticReport sr = check_symplectic(t);
  const SubgroupDesc z = compute_center(t);
  Report r;
  r.subcommand = "torus";
  Json& s = r.summary;
  s["mode"] = t.mode() == TorusMode::Local ? "local" : "lattice";
  s["n"] = tc.spec.n;
  s["m"] = t.m();
  if (t.mode() == TorusMode::Local) {
    s["q"] = tc.q;
  } else {
    s["level"] = t.modulus();
  }
  s["order"] = t.order();
  s["center_order"] = z.order;
  s["index"] = sr.index;
  s["index_is_square"] = sr.index_is_square;
  s["alternating"] = sr.alternating;
  s["nondegenerate"] = sr.nondegenerate;
  if (center) s["center_generators"] = format_subgroup(t, z);
  r.checks = {{"alternating", sr.alternating}, {"nondegenerate", sr.nondegenerate}, {"index_is_square", sr.index_is_square}};
  std::vector<SubgroupDesc> iso;
  if (isotropics || tame_check) iso = enumerate_maximal_isotropics(t);
  if (isotropics) {
    r.columns = {"index", "generators", "order", "index_in_T", "tame"};
    std::size_t tame = 0;
    bool lagrange = true;
    for (std::size_t i = 0; i < iso.size(); ++i) {
      const bool tm = is_tame(t, iso[i]);
      tame += tm ? 1 : 0;
      const std::size_t ta = t.order() / iso[i].order;
      lagrange = lagrange && iso[i].order / z.order == ta;
      Json rec;
      rec["index"] = i;
      rec["generators"] = format_subgroup(t, iso[i]);
      rec["order"] = iso[i].order;
      rec["index_in_T"] = ta;
      rec["tame"] = tm;
      r.records.push_back(rec);
    }
    s["isotropic_count"] = iso.size();
    s["tame_count"] = tame;
    r.checks.emplace_back("isotropic_index_identity", lagrange);
  }
  if (tame_check) {
    if (t.mode() == TorusMode::Local) {
      const SubgroupDesc a = canonical_tame_subgroup(t);
      bool listed = false;
      for (const auto& x : iso) listed = listed || x.elements == a.elements;
      s["canonical_tame"] = format_subgroup(t, a);
      s["canonical_tame_index"] = t.order() / a.order;
      r.checks.emplace_back("canonical_tame_is_tame", is_tame(t, a));
      r.checks.emplace_back("canonical_tame_is_listed", listed);
    } else {
      s["canonical_tame"] = "none (lattice mode)";
    }
  }
  return r;
}

struct SvnOptions {
  std::string chi;
  std::size_t conductor = 0;
  bool all_chars = false;
  bool tame = false;
};

Report svn_report(const TorusConfig& tc, const SvnOptions& opt) {
  const FiniteTorus t = build_finite_model(tc.spec);
  const Cover cover = build_cover(t, tc.cocycle);
  const SubgroupDesc z = compute_center(t);
  std::vector<CoverCharacter> chars;
  if (!opt.chi.empty()) {
    const std::size_t n = opt.conductor ? opt.conductor : character_conductor_bound(cover);
    chars.push_back(character_from_generator_values(cover, z, parse_int_list(opt.chi, "--chi"), n));
  } else {
    for (std::int64_t eps = 1; eps < cover.m() || eps == 1; ++eps) {
      if (std::gcd(eps, cover.m()) != 1) continue;
      for (auto& c : central_characters(cover, eps)) chars.push_back(c);
      if (cover.m() == 1) break;
    }
  }
  Report r;
  r.subcommand = "svn";
  r.columns = {"eps", "chi_conductor", "chi", "conductor", "d", "index", "isotropic_count", "I_chi_size", "inductions",
               "unique_class", "e", "irreducible_dim", "achi_dim", "achi_radical", "achi_center", "splits",
               "split_method", "ok"};
  if (opt.tame) {
    r.columns.push_back("tame_gf");
    r.columns.push_back("tame_fg");
  }
  r.summary["order"] = cover.order();
  r.summary["center_generators"] = format_subgroup(t, z);
  r.summary["characters"] = chars.size();
  bool i_chi = true, torsor = true, relations = true, iso = true, irreducible = true, unique = true, oracle = true,
       dims = true, achi = true, tame_ok = true;
  std::optional<SubgroupDesc> tame_a;
  if (opt.tame) {
    if (t.mode() != TorusMode::Local) throw PreconditionError("tame roundtrip needs local mode");
    tame_a = canonical_tame_subgroup(t);
  }
  for (const auto& chi_in : chars) {
    std::size_t n = opt.conductor;
    if (opt.chi.empty() && n) {
      n = std::lcm(n, chi_in.minimal_conductor(cover.m()));
    }
    const SvnReport sv = verify_svn(cover, chi_in, n);
    const CoverCharacter chi = chi_in.with_conductor(chi_in.minimal_conductor(cover.m()));
    Json rec;
    rec["eps"] = chi.eps();
    rec["chi_conductor"] = chi.conductor();
    rec["chi"] = generator_values(cover, z, chi);
    rec["conductor"] = sv.achi.conductor;
    rec["d"] = sv.d;
    rec["index"] = sv.index;
    rec["isotropic_count"] = sv.isotropic_count;
    rec["I_chi_size"] = sv.i_chi_size;
    rec["inductions"] = sv.inductions_checked;
    rec["unique_class"] = sv.unique_class;
    rec["e"] = sv.e;
    rec["irreducible_dim"] = sv.oracle.irreducible_dim;
    rec["achi_dim"] = sv.achi.dimension;
    rec["achi_radical"] = sv.achi.radical_dim;
    rec["achi_center"] = sv.achi.center_dim;
    rec["splits"] = sv.achi.splits;
    rec["split_method"] = sv.achi.split_method;
    rec["ok"] = sv.ok();
    i_chi = i_chi && sv.i_chi_matches;
    torsor = torsor && sv.torsor_ok;
    relations = relations && sv.relations_ok;
    iso = iso && sv.inductions_isomorphic;
    irreducible = irreducible && sv.induction_irreducible;
    unique = unique && sv.unique_class;
    oracle = oracle && sv.oracle_matches_induction;
    dims = dims && sv.dimension_matches;
    achi = achi && sv.achi.structure_ok();
    if (opt.tame) {
      const auto isos = enumerate_maximal_isotropics(t);
      const std::size_t bound = std::lcm(character_conductor_bound(cover), chi_in.conductor());
      const auto psi = extend_character(cover, chi_in, isos.front(), bound).front();
      const MonoRep vchi = induce_vchi(cover, isos.front(), psi.with_conductor(psi.minimal_conductor(cover.m())));
      const std::size_t k = std::lcm(vchi.conductor, chi.conductor());
      const TameContext ctx = make_tame_context(cover, *tame_a, chi.eps(), {}, k);
      Rep v;
      v.dim = 1;
      v.conductor = ctx.conductor;
      v.generators = center_generators(cover);
      const CoverCharacter ck = chi.with_conductor(ctx.conductor);
      for (auto g : v.generators) {
        CycMatrix x(1, 1, ctx.conductor);
        x(0, 0) = CycNum::root_of_unity(ctx.conductor, ck.value(cover, g));
        v.matrices.push_back(x);
      }
      const bool gf = check_gf(ctx, v).isomorphic;
      const bool fg = check_fg(ctx, vchi.embed(ctx.conductor).to_dense()).isomorphic;
      rec["tame_gf"] = gf;
      rec["tame_fg"] = fg;
      tame_ok = tame_ok && gf && fg;
    }
    r.records.push_back(rec);
  }
  r.checks = {{"I_chi_size_matches_index", i_chi}, {"torsor", torsor},
              {"relations", relations},            {"inductions_isomorphic", iso},
              {"induction_irreducible", irreducible}, {"unique_class", unique},
              {"oracle_matches_induction", oracle}, {"dimension_d_times_e", dims},
              {"achi_central_simple", achi}};
  if (opt.tame) r.checks.emplace_back("tame_roundtrip", tame_ok);
  return r;
}

Report slope_report(const RootDatum& d, const std::vector<WeightChar>& batch) {
  const RhoPair rho = compute_rho(d);
  Report r;
  r.subcommand = "slope";
  r.summary["rank_t"] = d.rank_t;
  r.summary["rank_s"] = d.rank_s;
  r.summary["rho"] = rat_json(rho.rho);
  r.summary["rho_tilde"] = rat_json(rho.rho_tilde);
  r.columns = {"row", "psi", "theta_slope", "elements", "noncritical", "witnesses"};
  bool involution = true;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto rep = is_noncritical(d, batch[i]);
    for (const auto& s : d.simple) {
      involution = involution && reflect(d, s.root_index, reflect(d, s.root_index, batch[i].psi)) == batch[i].psi;
    }
    Json rec;
    rec["row"] = i;
    rec["psi"] = rat_json(batch[i].psi);
    rec["theta_slope"] = rat_json(batch[i].theta_slope);
    Json el = Json::array();
    for (const auto& e : rep.elements) el.push_back(rat_json(e));
    rec["elements"] = el;
    rec["noncritical"] = rep.noncritical;
    rec["witnesses"] = rep.witnesses;
    r.records.push_back(rec);
  }
  r.checks = {{"datum_valid", true}, {"rho_restricts", true}, {"reflection_involution", involution}};
  return r;
}

struct KubotaOptions {
  std::vector<std::string> matrices;
  std::size_t audit = 0;
  std::optional<std::uint64_t> seed;
  std::string bound = "1000000";
  std::int64_t m = 2;
};

Report kubota_report(const KubotaOptions& opt) {
  Report r;
  r.subcommand = "kubota";
  r.columns = {"matrix", "in_gamma", "kappa"};
  for (std::size_t i = 0; i < opt.matrices.size(); ++i) {
    const auto v = parse_int_list(opt.matrices[i], "--matrix[" + std::to_string(i) + "]");
    if (v.size() != 4) throw ConfigError("--matrix[" + std::to_string(i) + "]: expected \"a,b,c,d\"");
    const Mat2 g{v[0], v[1], v[2], v[3]};
    Json rec;
    rec["matrix"] = g.to_string();
    rec["in_gamma"] = in_gamma_level(g, opt.m);
    rec["kappa"] = kubota_symbol(g, opt.m);
    r.records.push_back(rec);
  }
  if (opt.audit) {
    if (!opt.seed) throw ConfigError("--seed: required with --audit");
    mpz_class bound;
    if (bound.set_str(opt.bound, 10) != 0 || bound < 1) throw ConfigError("--bound: expected a positive integer");
    const AuditReport a = homomorphism_audit(opt.m, opt.audit, bound, *opt.seed);
    Json& s = r.summary;
    s["samples"] = a.samples;
    s["seed"] = *opt.seed;
    s["entry_bound"] = bound.get_str();
    s["failures"] = a.failures.size();
    s["failures_explained_by_real_cocycle"] = a.explained;
    s["real_cocycle_mismatches"] = a.cocycle_mismatches;
    s["inverse_failures"] = a.inverse_failures;
    s["surjective"] = a.surjective;
    s["max_word_length"] = a.max_word_length;
    s["max_entry"] = a.max_entry.get_str();
    Json ex = Json::array();
    for (std::size_t i = 0; i < a.failures.size() && i < 5; ++i) {
      const auto& f = a.failures[i];
      ex.push_back(f.g1.to_string() + "*" + f.g2.to_string() + ": " + std::to_string(f.k1) + "*" + std::to_string(f.k2) +
                   " != " + std::to_string(f.k12));
    }
    s["failure_examples"] = ex;
    r.checks = {{"homomorphism", a.failures.empty()}, {"surjective", a.surjective}, {"inverse_property", a.inverse_failures == 0}};
  }
  return r;
}

std::string one_line(std::string s) {
  for (auto& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"metacover: finite models of metaplectic torus covers"};
  app.require_subcommand(1);
  std::string format = "table";
  bool timing = false;
  app.add_option("--format", format, "table or machine")->check(CLI::IsMember({"table", "machine"}));
  app.add_flag("--timing", timing, "append wall-clock timing to the report");

  auto* sym = app.add_subcommand("symbol", "tame symbol of two classes");
  std::int64_t q = 0, m = 0;
  std::string xs, ys;
  sym->add_option("--q", q)->required();
  sym->add_option("--m", m)->required();
  sym->add_option("--x", xs, "v,u")->required();
  sym->add_option("--y", ys, "v,u")->required();

  auto* tor = app.add_subcommand("torus", "finite model, center and isotropic subgroups");
  std::string tconfig;
  bool center = false, isotropics = false, tame_check = false;
  tor->add_option("--config", tconfig)->required();
  tor->add_flag("--center", center);
  tor->add_flag("--isotropics", isotropics);
  tor->add_flag("--tame-check", tame_check);

  auto* svn = app.add_subcommand("svn", "Stone-von Neumann verification per central character");
  std::string sconfig;
  SvnOptions sopt;
  svn->add_option("--config", sconfig)->required();
  svn->add_option("--chi", sopt.chi, "generator values of chi as zeta_N exponents, mu generator first");
  svn->add_option("--conductor", sopt.conductor, "scalar field Q(zeta_N)");
  svn->add_flag("--all-chars", sopt.all_chars);
  svn->add_flag("--tame-roundtrip", sopt.tame);

  auto* slo = app.add_subcommand("slope", "non-critical slope criterion");
  std::string datum_path, batch_path;
  slo->add_option("--datum", datum_path)->required();
  slo->add_option("--batch", batch_path);

  auto* kub = app.add_subcommand("kubota", "Kubota symbol and homomorphism audit");
  KubotaOptions kopt;
  std::uint64_t seed = 0;
  kub->add_option("--matrix", kopt.matrices, "a,b,c,d");
  kub->add_option("--audit", kopt.audit);
  auto* seed_opt = kub->add_option("--seed", seed);
  kub->add_option("--bound", kopt.bound);
  kub->add_option("--m", kopt.m);

  for (auto* sub : {sym, tor, svn, slo, kub}) sub->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return 2;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    Inputs in;
    Report r;
    if (*sym) {
      in.add("subcommand", "symbol");
      in.add("q", std::to_string(q));
      in.add("m", std::to_string(m));
      in.add("x", xs);
      in.add("y", ys);
      r = symbol_report(q, m, xs, ys);
    } else if (*tor) {
      const std::string text = read_file(tconfig);
      in.add("subcommand", "torus");
      in.add("config", text);
      in.add("flags", std::string(center ? "c" : "") + (isotropics ? "i" : "") + (tame_check ? "t" : ""));
      r = torus_report(parse_torus_config(parse_config(text, tconfig)), center, isotropics, tame_check);
    } else if (*svn) {
      const std::string text = read_file(sconfig);
      if (!sopt.chi.empty() && sopt.all_chars) throw ConfigError("--chi: cannot be combined with --all-chars");
      in.add("subcommand", "svn");
      in.add("config", text);
      in.add("chi", sopt.chi);
      in.add("conductor", std::to_string(sopt.conductor));
      in.add("tame", sopt.tame ? "1" : "0");
      r = svn_report(parse_torus_config(parse_config(text, sconfig)), sopt);
    } else if (*slo) {
      const std::string text = read_file(datum_path);
      const RootDatum d = parse_root_datum(parse_config(text, datum_path));
      const std::string batch = batch_path.empty() ? "" : read_file(batch_path);
      in.add("subcommand", "slope");
      in.add("datum", text);
      in.add("batch", batch);
      r = slope_report(d, parse_weight_batch(batch, batch_path.empty() ? "batch" : batch_path, d));
    } else {
      if (seed_opt->count()) kopt.seed = seed;
      in.add("subcommand", "kubota");
      for (const auto& x : kopt.matrices) in.add("matrix", x);
      in.add("audit", std::to_string(kopt.audit));
      in.add("seed", kopt.seed ? std::to_string(*kopt.seed) : "");
      in.add("bound", kopt.bound);
      in.add("m", std::to_string(kopt.m));
      r = kubota_report(kopt);
    }
    r.input_digest = sha256_hex(in.digest_source);
    if (timing) {
      r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    out << (format == "machine" ? emit_machine(r) : emit_table(r));
    return r.all_checks() ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return 2;
  }
}

}  // namespace metacover
