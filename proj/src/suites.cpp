#include "suites.hpp"

#include <chrono>
#include <cmath>
#include <set>

#include <json.hpp>

namespace tk1 {

namespace {

void note(SuiteResult& res, bool ok, const std::string& what) {
  if (ok) return;
  ++res.fail_count;
  if (res.notes.size() < 12) res.notes.push_back(what);
}

void note_report(SuiteResult& res, const CheckReport& cr, u64 trial,
                 const char* tag = "trial") {
  note(res, cr.pass,
       std::string(tag) + " " + std::to_string(trial) + ": " + cr.first_fail);
}

ConjElt random_conj(Context& ctx, Rng& rng) {
  RingParams rp = ctx.rp();
  ConjElt x(rp, unsigned(ctx.classes().count()));
  for (u64& v : x.v) v = rng.below(rp.pm());
  return x;
}

GroupElt random_group_elt(RingParams rp, Rng& rng, unsigned mask = 0b111111) {
  GroupElt g;
  for (unsigned i = 0; i < 6; ++i)
    if (mask & (1u << i)) g.w[i] = unsigned(rng.below(rp.p));
  g.z = rng.below(rp.pn());
  return g;
}

GSparse random_unit(RingParams rp, Rng& rng, unsigned nterms) {
  GSparse u = GSparse::one(rp);
  for (unsigned k = 0; k < nterms; ++k)
    u.add_term(random_group_elt(rp, rng), rp.p, rng.below(rp.pm()));
  if (gs_aug(u) % rp.p == 0) u.add_term(GroupElt{}, rp.p, 1);
  return u;
}

u32 find_class(const ClassTable& ct, Family fam, const std::vector<unsigned>& params) {
  for (u32 cid = 0; cid < ct.count(); ++cid)
    if (ct.at(cid).fam == fam && ct.at(cid).params == params) return cid;
  fail(Err::invalid_arg, "class lookup failed");
}

/* ---- suite bodies -------------------------------------------------- */

void suite_theta_add_table(Context& ctx, const RunConfig& cfg, unsigned trials,
                           SuiteResult& res) {
  RingParams rp = ctx.rp();
  unsigned nc = unsigned(ctx.classes().count());
  for (u32 cid = 0; cid < nc; ++cid)
    for (u64 z = 0; z < rp.pn(); ++z) {
      ConjElt x(rp, nc);
      x.at(cid, z) = 1;
      std::string cn =
          class_name(ctx.classes().at(cid)) + "|" + std::to_string(z);
      ThetaTuple a = theta_add(ctx, x);
      note(res, a == theta_add_brute(ctx, x), "closed table vs trace at " + cn);
      note(res, a == theta_add_brute(ctx, x, true),
           "alternative transversal at " + cn);
      note(res, theta_add_invert(ctx, a) == x, "inversion at " + cn);
      ++res.trials;
    }
  for (unsigned tr = 0; tr < trials; ++tr) {
    Rng rng(cfg.seed, "theta-add-table", tr);
    ConjElt x = random_conj(ctx, rng);
    ThetaTuple a = theta_add(ctx, x);
    note(res, a == theta_add_brute(ctx, x),
         "random combination " + std::to_string(tr) + ": table vs trace");
    note(res, theta_add_invert(ctx, a) == x,
         "random combination " + std::to_string(tr) + ": inversion");
    ++res.trials;
  }
}

void suite_omega_roundtrip(Context& ctx, const RunConfig& cfg, unsigned trials,
                           SuiteResult& res) {
  RingParams rp = ctx.rp();
  for (unsigned tr = 0; tr < trials; ++tr) {
    Rng rng(cfg.seed, "omega-roundtrip", tr);
    ConjElt x = random_conj(ctx, rng);
    ThetaTuple t = theta_add(ctx, x);
    note_report(res, omega_check(ctx, t), tr);
    ConjElt back = theta_add_invert(ctx, t);
    note(res, back == x, "trial " + std::to_string(tr) + ": inversion");
    note(res, theta_add(ctx, back) == t,
         "trial " + std::to_string(tr) + ": section property");
    ++res.trials;
  }
  /* perturbed tuples must be rejected */
  {
    Rng rng(cfg.seed, "omega-roundtrip", trials);
    ConjElt x = random_conj(ctx, rng);
    ThetaTuple t = theta_add(ctx, x);

    ThetaTuple bad1 = t;
    DenseElt& y1 = bad1.of(Comp::c1);
    u64 mod1 = ipow(rp.p, ctx.mcap());
    u64& s1 = y1.at(y1.sch.gindex(g_make(1, 0, 0, 0, 0, 0, rp.p)), 0);
    s1 = addmod(s1, 1, mod1);
    note(res, !omega_check(ctx, bad1).pass, "perturbed component accepted");

    ThetaTuple bad2 = t;
    DenseElt& y0 = bad2.of(Comp::c0);
    u64& s0 = y0.at(y0.sch.gindex(g_make(0, 0, 1, 0, 0, 0, rp.p)), 0);
    s0 = addmod(s0, 1, mod1);
    note(res, !omega_check(ctx, bad2).pass, "perturbed base accepted");
    res.trials += 2;
  }
}

void suite_psi_image(Context& ctx, const RunConfig& cfg, unsigned trials,
                     SuiteResult& res) {
  for (unsigned tr = 0; tr < trials; ++tr) {
    Rng rng(cfg.seed, "psi-image", tr);
    GSparse u = random_unit(ctx.rp(), rng, 6);
    ThetaTuple t = theta_mult_all(ctx, u, cfg.staging);
    note_report(res, psi_check(ctx, t), tr);
    if (tr == 0) {
      note(res, theta_mult(ctx, u, Comp::c1, cfg.staging, true) == t.of(Comp::c1),
           "transversal dependence in the norm");
    }
    ++res.trials;
  }
}

void suite_j_congruence(Context& ctx, const RunConfig& cfg, unsigned trials,
                        SuiteResult& res) {
  for (unsigned tr = 0; tr < trials; ++tr) {
    /* same sample stream as the norm-image suite */
    Rng rng(cfg.seed, "psi-image", tr);
    GSparse u = random_unit(ctx.rp(), rng, 6);
    ThetaTuple t = theta_mult_all(ctx, u, cfg.staging);
    note_report(res, j_congruence_check(ctx, t), tr);
    ++res.trials;
  }
}

void suite_sp_stability(Context& ctx, const RunConfig&, unsigned, SuiteResult& res) {
  note_report(res, sp_stability_check(ctx), 0);
  res.trials = 1;
}

void suite_final_implication(Context& ctx, const RunConfig& cfg, unsigned trials,
                             SuiteResult& res) {
  for (unsigned tr = 0; tr < trials; ++tr) {
    Rng rng(cfg.seed, "final-implication", tr);
    note_report(res, final_implication_check(ctx, rng), tr);
    ++res.trials;
  }
}

void suite_log_bijection(Context& ctx, const RunConfig& cfg, unsigned trials,
                         SuiteResult& res) {
  RingParams rp = ctx.rp();
  unsigned p = rp.p;
  {
    DenseElt hd = h_line(ctx.scheme(Comp::c1), g_make(0, 0, 0, 1, 0, 0, p));
    note(res, gr_mul(hd, hd) == gr_scalar_mul(hd, p), "square of the delta line");
    DenseElt hz = h_line(ctx.scheme(Comp::c2), g_make(0, 0, 0, 0, 0, 1, p));
    note(res, gr_mul(hz, hz) == gr_scalar_mul(hz, p), "square of the zeta line");
    res.trials += 2;
  }
  for (IdealId id : kIdeals) {
    Scheme sch = ctx.scheme(ideal_comp(id));
    const auto& gens = ctx.gens(id);
    std::vector<DenseElt> reals;
    reals.reserve(gens.size());
    for (const IdealGen& g : gens) reals.push_back(ideal_gen_realize(g, sch));
    for (unsigned tr = 0; tr < trials; ++tr) {
      Rng rng(cfg.seed, std::string("log-bijection-") + ideal_name(id), tr);
      DenseElt x(sch);
      unsigned picks = 3 + unsigned(rng.below(8));
      for (unsigned k = 0; k < picks; ++k) {
        const DenseElt& g = reals[size_t(rng.below(reals.size()))];
        x = gr_add(x, gr_mul(g, basis_elt(sch, GroupElt{}, rng.below(rp.pn()),
                                          rng.below(rp.pm()))));
      }
      std::string tag = std::string(ideal_name(id)) + " trial " + std::to_string(tr);
      DenseElt u = gr_pexp_ideal(ctx, x, id);
      note(res, gr_plog_ideal(ctx, u, id) == x, tag + ": log of exp");
      DenseElt up = gr_add(DenseElt::one(sch), x);
      DenseElt l = gr_plog_ideal(ctx, up, id);
      note(res, ctx.ideal_member(l, id), tag + ": log left the ideal");
      note(res, gr_pexp_ideal(ctx, l, id) == up, tag + ": exp of log");
      ++res.trials;
    }
  }
}

void suite_integral_log(Context& ctx, const RunConfig& cfg, unsigned trials,
                        SuiteResult& res) {
  RingParams rp1 = ctx.rp().with_m(ctx.rp().m + 1);
  for (unsigned tr = 0; tr < trials; ++tr) {
    Rng rng(cfg.seed, "integral-log", tr);
    GSparse u = random_unit(rp1, rng, 6);
    std::string tag = "trial " + std::to_string(tr);
    ConjElt gu;
    try {
      gu = integral_log(ctx, u);
    } catch (const Error& e) {
      note(res, false, tag + ": integrality violation: " + e.what());
      ++res.trials;
      continue;
    }
    GSparse tor = GSparse::monomial(rp1, random_group_elt(rp1, rng));
    note(res, integral_log(ctx, gs_mul(tor, u)) == gu,
         tag + ": translation by a monomial moved the value");
    GSparse v = random_unit(rp1, rng, 6);
    ConjElt gv = integral_log(ctx, v);
    note(res, integral_log(ctx, gs_mul(u, v)) == conj_add(gu, gv),
         tag + ": additivity");
    ++res.trials;
  }
}

void suite_omega_exact(Context& ctx, const RunConfig& cfg, unsigned trials,
                       SuiteResult& res) {
  RingParams rp = ctx.rp();
  unsigned p = rp.p;
  u64 pn = rp.pn();
  const ClassTable& ct = ctx.classes();
  unsigned nc = unsigned(ct.count());
  /* surjectivity: every abelianized coordinate tuple is hit exactly */
  for (unsigned a = 0; a < p; ++a)
    for (unsigned b = 0; b < p; ++b)
      for (unsigned c = 0; c < p; ++c)
        for (u64 z = 0; z < pn; ++z) {
          ConjElt x(rp, nc);
          if (a) x.at(find_class(ct, Family::III, {a, 0}), 0) = 1;
          if (b) x.at(find_class(ct, Family::V, {b, 0}), 0) = 1;
          if (c) x.at(find_class(ct, Family::VII, {c}), 0) = 1;
          if (z) {
            u64& s = x.at(find_class(ct, Family::X, {0}), z);
            s = addmod(s, 1, rp.pm());
          }
          GroupElt got = omega_ab(ctx, x);
          GroupElt want = g_make(a, b, c, 0, 0, 0, p, z, pn);
          if (got != want) {
            note(res, false, "coordinate sum missed (" + std::to_string(a) + "," +
                                 std::to_string(b) + "," + std::to_string(c) +
                                 "; " + std::to_string(z) + ")");
          }
        }
  res.trials += unsigned(u64(p) * p * p * pn);
  /* the composite with the integral log dies */
  RingParams rp1 = rp.with_m(rp.m + 1);
  for (unsigned tr = 0; tr < trials; ++tr) {
    Rng rng(cfg.seed, "omega-exact", tr);
    GSparse u = random_unit(rp1, rng, 6);
    ConjElt x = integral_log(ctx, u);
    note(res, omega_ab(ctx, x).is_identity(),
         "trial " + std::to_string(tr) + ": nonzero coordinate sum on the image");
    ++res.trials;
  }
}

void suite_log_norm_compat(Context& ctx, const RunConfig& cfg, unsigned trials,
                           SuiteResult& res) {
  for (unsigned tr = 0; tr < trials; ++tr) {
    Rng rng(cfg.seed, "log-norm-compat", tr);
    GSparse u = random_unit(ctx.rp(), rng, 5);
    note_report(res, log_norm_compat(ctx, u), tr);
    ++res.trials;
  }
}

void suite_gamma_theta(Context& ctx, const RunConfig& cfg, unsigned trials,
                       SuiteResult& res) {
  for (unsigned tr = 0; tr < trials; ++tr) {
    Rng rng(cfg.seed, "gamma-theta", tr);
    GSparse u = random_unit(ctx.rp(), rng, 5);
    note_report(res, gamma_theta_identity(ctx, u), tr);
    ++res.trials;
  }
}

void suite_oracle_integrity(Context& ctx, const RunConfig&, unsigned,
                            SuiteResult& res) {
  note_report(res, character_integrity(ctx), 0);
  res.trials = 1;
}

void suite_ev_compat(Context& ctx, const RunConfig& cfg, unsigned trials,
                     SuiteResult& res) {
  static const CharSpec picks[] = {
      {Comp::c0, {0, 0, 1, 0, 0, 0}},  {Comp::c0, {1, 2, 0, 0, 0, 0}},
      {Comp::c0, {2, 1, 3, 0, 0, 0}},  {Comp::c1, {0, 0, 1, 1, 0, 0}},
      {Comp::c1, {1, 0, 0, 0, 1, 0}},  {Comp::c1, {2, 0, 0, 1, 3, 0}},
      {Comp::c2t, {0, 1, 0, 1, 0, 0}}, {Comp::c2t, {0, 0, 1, 2, 0, 0}},
      {Comp::c2t, {0, 2, 1, 1, 0, 0}}, {Comp::c2, {0, 1, 0, 0, 0, 1}},
      {Comp::c2, {0, 0, 0, 0, 0, 1}},  {Comp::c2, {0, 2, 1, 0, 0, 3}},
      {Comp::c3, {0, 0, 1, 0, 1, 1}},  {Comp::c3, {0, 0, 0, 0, 2, 0}},
      {Comp::c3, {0, 0, 2, 0, 0, 1}},
  };
  for (unsigned tr = 0; tr < trials; ++tr) {
    Rng rng(cfg.seed, "ev-compat", tr);
    GSparse u = random_unit(ctx.rp(), rng, 5);
    ThetaTuple t = theta_mult_all(ctx, u, cfg.staging);
    for (const CharSpec& spec : picks)
      note_report(res, ev_compat(ctx, u, spec, &t), tr);
    ++res.trials;
  }
}

void suite_ver_frobenius(Context& ctx, const RunConfig& cfg, unsigned trials,
                         SuiteResult& res) {
  RingParams rp = ctx.rp();
  unsigned p = rp.p;
  u64 pn = rp.pn();
  static const Sub named[] = {Sub::U0, Sub::U1, Sub::U2t, Sub::U2,  Sub::U3,
                              Sub::V0, Sub::V1, Sub::V2t, Sub::V2,  Sub::V3,
                              Sub::H,  Sub::N,  Sub::H0,  Sub::H1,  Sub::H2,
                              Sub::U1capU2t};
  std::vector<std::pair<Sub, Sub>> pairs;
  std::set<std::pair<unsigned, unsigned>> seen;
  for (Sub a : named)
    for (Sub b : named) {
      if (sub_mask(a) == sub_mask(b) || !sub_leq(b, a)) continue;
      if (!seen.insert({sub_mask(a), sub_mask(b)}).second) continue;
      pairs.push_back({a, b});
    }

  auto index_exp = [&](Sub a, Sub b) {
    u64 q = sub_order_finite(a, p) / sub_order_finite(b, p);
    unsigned k = 0;
    while (q > 1) { q /= p; ++k; }
    return k;
  };
  auto expect = [&](const GroupElt& g, unsigned k) {
    GroupElt r;
    r.z = mulmod(g.z, ipow(p, k) % pn, pn);
    return r;
  };

  for (auto [a, b] : pairs) {
    unsigned k = index_exp(a, b);
    std::string tag = std::string(sub_name(a)) + "/" + sub_name(b);
    for (unsigned i = 0; i < 6; ++i) {
      if (!(sub_mask(a) & (1u << i))) continue;
      GroupElt g;
      g.w[i] = 1;
      note(res, verlagerung(a, b, g, p, pn) == expect(g, k),
           tag + ": generator " + std::to_string(i));
    }
    GroupElt t;
    t.z = 1 % pn;
    note(res, verlagerung(a, b, t, p, pn) == expect(t, k), tag + ": generator t");
    ++res.trials;
  }
  for (unsigned tr = 0; tr < trials; ++tr) {
    Rng rng(cfg.seed, "ver-frobenius", tr);
    auto [a, b] = pairs[size_t(rng.below(pairs.size()))];
    GroupElt g = random_group_elt(rp, rng, sub_mask(a));
    note(res, verlagerung(a, b, g, p, pn) == expect(g, index_exp(a, b)),
         "trial " + std::to_string(tr) + " on " + sub_name(a) + "/" + sub_name(b));
    ++res.trials;
  }
  /* transfer is transitive down the main chain */
  for (unsigned tr = 0; tr < 10; ++tr) {
    Rng rng(cfg.seed, "ver-transitivity", tr);
    GroupElt g = random_group_elt(rp, rng);
    GroupElt step = verlagerung(Sub::U1, Sub::U3,
                                verlagerung(Sub::U0, Sub::U1, g, p, pn), p, pn);
    note(res, step == verlagerung(Sub::U0, Sub::U3, g, p, pn),
         "transitivity trial " + std::to_string(tr));
    ++res.trials;
  }
}

void suite_central_units(Context& ctx, const RunConfig& cfg, unsigned trials,
                         SuiteResult& res) {
  RingParams rp = ctx.rp();
  for (unsigned tr = 0; tr < trials; ++tr) {
    Rng rng(cfg.seed, "central-units", tr);
    CoeffElt r(rp);
    u64 aug = 0;
    for (u64 z = 0; z < rp.pn(); ++z) {
      r.c[z] = rng.below(rp.pm());
      aug = addmod(aug, r.c[z], rp.pm());
    }
    if (aug % rp.p == 0) r.c[0] = addmod(r.c[0], 1, rp.pm());
    GSparse u(rp);
    for (u64 z = 0; z < rp.pn(); ++z) {
      if (!r.c[z]) continue;
      GroupElt g;
      g.z = z;
      u.add_term(g, rp.p, r.c[z]);
    }
    ThetaTuple t = theta_mult_all(ctx, u, cfg.staging);
    for (Comp c : kComps) {
      DenseElt want = gr_pow(embed_t_profile(ctx.scheme(c), r),
                             ipow(rp.p, comp_index_exp(c)));
      note(res, t.of(c) == want, "trial " + std::to_string(tr) +
                                     ": scalar norm at component " + comp_name(c));
    }
    ++res.trials;
  }
}

/* ---- registry ------------------------------------------------------ */

struct SuiteDef {
  const char* name;
  unsigned default_trials;
  bool scalable;
  void (*fn)(Context&, const RunConfig&, unsigned, SuiteResult&);
  const char* (*skip)(const RunConfig&);
};

const char* skip_wide_window(const RunConfig& cfg) {
  double bits = (2.0 * cfg.rp.m + 4) * std::log2(double(cfg.rp.p));
  return bits > 62 ? "series work precision exceeds the coefficient window"
                   : nullptr;
}

const char* skip_needs_m_ge_n(const RunConfig& cfg) {
  return cfg.rp.m < cfg.rp.n ? "coordinate sum needs m >= n" : nullptr;
}

const SuiteDef kSuites[] = {
    {"theta-add-table", 3, true, suite_theta_add_table, nullptr},
    {"omega-roundtrip", 200, true, suite_omega_roundtrip, nullptr},
    {"psi-image", 6, true, suite_psi_image, nullptr},
    {"j-congruence", 6, true, suite_j_congruence, nullptr},
    {"sp-stability", 1, false, suite_sp_stability, nullptr},
    {"final-implication", 50, true, suite_final_implication, skip_wide_window},
    {"log-bijection", 25, true, suite_log_bijection, skip_wide_window},
    {"integral-log", 50, true, suite_integral_log, nullptr},
    {"omega-exact", 50, true, suite_omega_exact, skip_needs_m_ge_n},
    {"log-norm-compat", 3, true, suite_log_norm_compat, nullptr},
    {"gamma-theta", 3, true, suite_gamma_theta, nullptr},
    {"oracle-integrity", 1, false, suite_oracle_integrity, nullptr},
    {"ev-compat", 2, true, suite_ev_compat, nullptr},
    {"ver-frobenius", 100, true, suite_ver_frobenius, nullptr},
    {"central-units", 5, true, suite_central_units, nullptr},
};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const SuiteDef& d : kSuites) v.push_back(d.name);
    return v;
  }();
  return names;
}

RunReport run_suites(const RunConfig& cfg) {
  cfg.rp.validate();
  std::vector<const SuiteDef*> chosen;
  if (cfg.suites.empty()) {
    for (const SuiteDef& d : kSuites) chosen.push_back(&d);
  } else {
    for (const std::string& want : cfg.suites) {
      bool known = false;
      for (const SuiteDef& d : kSuites) known = known || want == d.name;
      if (!known) fail(Err::invalid_arg, "unknown suite " + want);
    }
    for (const SuiteDef& d : kSuites)
      for (const std::string& want : cfg.suites)
        if (want == d.name) {
          chosen.push_back(&d);
          break;
        }
  }

  RunReport rep;
  rep.cfg = cfg;
  Context ctx(cfg.rp);
  for (const SuiteDef* d : chosen) {
    SuiteResult r;
    r.name = d->name;
    if (const char* why = d->skip ? d->skip(cfg) : nullptr) {
      r.status = "skip";
      r.notes.push_back(why);
      rep.suites.push_back(std::move(r));
      continue;
    }
    unsigned trials =
        (cfg.trials && d->scalable) ? cfg.trials : d->default_trials;
    auto t0 = std::chrono::steady_clock::now();
    try {
      d->fn(ctx, cfg, trials, r);
    } catch (const std::exception& e) {
      note(r, false, std::string("aborted: ") + e.what());
    }
    auto t1 = std::chrono::steady_clock::now();
    r.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    r.status = r.fail_count ? "fail" : "pass";
    if (r.fail_count) rep.all_pass = false;
    rep.suites.push_back(std::move(r));
  }
  return rep;
}

std::string report_to_json(const RunReport& rep) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json cfg;
  cfg["p"] = rep.cfg.rp.p;
  cfg["gamma_level"] = rep.cfg.rp.n;
  cfg["precision"] = rep.cfg.rp.m;
  cfg["seed"] = rep.cfg.seed;
  cfg["trials"] = rep.cfg.trials;
  cfg["staging"] = rep.cfg.staging;
  cfg["suites"] = rep.cfg.suites;
  j["config"] = std::move(cfg);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const SuiteResult& s : rep.suites) {
    nlohmann::ordered_json e;
    e["name"] = s.name;
    e["status"] = s.status;
    e["trials"] = s.trials;
    e["failures"] = s.fail_count;
    e["notes"] = s.notes;
    e["ms"] = s.ms;
    arr.push_back(std::move(e));
  }
  j["suites"] = std::move(arr);
  j["passed"] = rep.all_pass;
  return j.dump(2);
}

}  // namespace tk1
