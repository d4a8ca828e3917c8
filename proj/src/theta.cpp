#include "theta.hpp"

#include "logk1.hpp"

namespace tk1 {

namespace {

constexpr unsigned kMaskAC = 0b000101;
constexpr unsigned kMaskBC = 0b000110;
constexpr unsigned kMaskACD = 0b001101;
constexpr unsigned kMaskCD = 0b001100;
constexpr unsigned kMaskCE = 0b010100;
constexpr unsigned kMaskCF = 0b100100;

GroupElt finite_part(const GroupElt& g) {
  GroupElt h = g;
  h.z = 0;
  return h;
}

u32 class_id(const ClassTable& ct, const GroupElt& rep) {
  return ct.class_of[g_index(rep, ct.p)];
}

GroupElt family_rep(Family fam, const std::vector<unsigned>& pr, unsigned p) {
  switch (fam) {
    case Family::I: return g_make(pr[0], pr[1], pr[2], 0, 0, 0, p);
    case Family::II: return g_make(pr[0], 0, pr[1], 0, pr[2], 0, p);
    case Family::III: return g_make(pr[0], 0, 0, 0, pr[1], 0, p);
    case Family::IV: return g_make(0, pr[0], pr[1], 0, 0, 0, p);
    case Family::V: return g_make(0, pr[0], 0, 0, 0, pr[1], p);
    case Family::VI: return g_make(0, 0, pr[0], pr[1], 0, 0, p);
    case Family::VII: return g_make(0, 0, pr[0], 0, 0, 0, p);
    case Family::VIII: return g_make(0, 0, 0, pr[0], pr[1], 0, p);
    case Family::IX: return g_make(0, 0, 0, 0, pr[0], 0, p);
    case Family::X: return g_make(0, 0, 0, 0, 0, pr[0], p);
  }
  fail(Err::invalid_arg, "bad family");
}

CoeffElt coeff_pow(const CoeffElt& a, u64 k) {
  CoeffElt acc = CoeffElt::scalar(a.rp, 1);
  CoeffElt base = a;
  while (k) {
    if (k & 1) acc = coeff_mul(acc, base);
    base = coeff_mul(base, base);
    k >>= 1;
  }
  return acc;
}

}  // namespace

DenseElt embed_t_profile(const Scheme& s, const CoeffElt& c) {
  DenseElt x(s);
  for (u64 z = 0; z < s.rp.pn(); ++z) x.v[z] = c.c[z] % s.rp.pm();
  return x;
}

CoeffElt t_profile(const DenseElt& x) {
  CoeffElt c(x.sch.rp);
  for (u64 i = 0; i < x.sch.gsize(); ++i)
    for (u64 z = 0; z < x.sch.rp.pn(); ++z) {
      u64 v = x.v[i * x.sch.rp.pn() + z];
      if (i == 0)
        c.c[z] = v;
      else if (v)
        fail(Err::math, "element not supported on the identity component");
    }
  return c;
}

DenseElt theta_apply(Context& ctx, const ConjElt& x, Comp i, unsigned mexp) {
  if (x.nclasses != ctx.classes().count())
    fail(Err::invalid_arg, "conjugacy element does not match the context");
  u64 mod = ipow(ctx.rp().p, mexp);
  DenseElt y(ctx.scheme(i, mexp));
  const auto& table = ctx.theta_table();
  u64 pn = ctx.rp().pn();
  for (u32 cid = 0; cid < x.nclasses; ++cid) {
    const auto& row = table[cid].terms[size_t(i)];
    if (row.empty()) continue;
    for (u64 z = 0; z < pn; ++z) {
      u64 cv = x.at(cid, z);
      if (!cv) continue;
      for (auto [gidx, ppow] : row) {
        u64& slot = y.v[u64(gidx) * pn + z];
        slot = addmod(slot, mulmod(cv, ipow(ctx.rp().p, ppow) % mod, mod), mod);
      }
    }
  }
  return y;
}

ThetaTuple theta_add(Context& ctx, const ConjElt& x) {
  if (x.rp.m != ctx.rp().m)
    fail(Err::invalid_arg, "conjugacy element does not match the context");
  ThetaTuple t;
  for (Comp c : kComps) t.of(c) = theta_apply(ctx, x, c, ctx.mcap());
  return t;
}

DenseElt trace_project(Context& ctx, const ConjElt& x, Comp i, unsigned mexp,
                       bool alt) {
  unsigned p = ctx.rp().p;
  u64 pn = ctx.rp().pn();
  u64 mod = ipow(p, mexp);
  Scheme sch = ctx.scheme(i, mexp);
  DenseElt out(sch);
  Sub ui = comp_u(i);
  const CosetTable& T = ctx.cosets(Sub::U0, ui, alt);
  std::vector<GroupElt> inv;
  inv.reserve(T.reps.size());
  for (const GroupElt& r : T.reps) inv.push_back(g_inv(r, p, 1));
  for (u32 cid = 0; cid < x.nclasses; ++cid) {
    bool used = false;
    for (u64 z = 0; z < pn; ++z)
      if (x.at(cid, z)) used = true;
    if (!used) continue;
    const GroupElt rep = ctx.classes().at(cid).rep;
    for (size_t j = 0; j < T.reps.size(); ++j) {
      GroupElt h = g_mul(g_mul(inv[j], rep, p, 1), T.reps[j], p, 1);
      if (!sub_contains(ui, h)) continue;
      u32 gi = sch.gindex(h);
      for (u64 z = 0; z < pn; ++z) {
        u64 cv = x.at(cid, z);
        if (!cv) continue;
        u64& slot = out.v[u64(gi) * pn + z];
        slot = addmod(slot, cv % mod, mod);
      }
    }
  }
  return out;
}

ThetaTuple theta_add_brute(Context& ctx, const ConjElt& x, bool alt) {
  ThetaTuple t;
  for (Comp c : kComps) t.of(c) = trace_project(ctx, x, c, ctx.mcap(), alt);
  return t;
}

ConjElt theta_add_invert(Context& ctx, const ThetaTuple& t) {
  unsigned p = ctx.rp().p;
  unsigned M = ctx.mcap();
  for (Comp c : kComps)
    if (t.of(c).sch != ctx.scheme(c, M))
      fail(Err::invalid_arg, "tuple components must carry full working precision");

  auto la = ctx.ideal_coords(t.of(Comp::c1), IdealId::I1);
  auto mu = ctx.ideal_coords(t.of(Comp::c2t), IdealId::I2t);
  auto nu = ctx.ideal_coords(t.of(Comp::c2), IdealId::I2);
  auto sg = ctx.ideal_coords(t.of(Comp::c3), IdealId::I3);
  if (!la || !mu || !nu || !sg)
    fail(Err::math, "tuple lies outside the additive image");

  const ClassTable& ct = ctx.classes();
  RingParams rp = ctx.rp();
  u64 pn = rp.pn(), pm = rp.pm();
  ConjElt x(rp, unsigned(ct.count()));
  auto assign = [&](Family fam, std::vector<unsigned> pr, const CoeffElt& c) {
    u32 cid = class_id(ct, family_rep(fam, pr, p));
    for (u64 z = 0; z < pn; ++z) x.at(cid, z) = c.c[z] % pm;
  };

  const Scheme w0 = t.of(Comp::c0).sch;
  for (unsigned a = 1; a < p; ++a)
    for (unsigned b = 1; b < p; ++b)
      for (unsigned c = 0; c < p; ++c) {
        CoeffElt cf(rp);
        u32 gi = w0.gindex(g_make(a, b, c, 0, 0, 0, p));
        for (u64 z = 0; z < pn; ++z) cf.c[z] = t.of(Comp::c0).v[u64(gi) * pn + z];
        assign(Family::I, {a, b, c}, cf);
      }
  for (unsigned a = 1; a < p; ++a)
    for (unsigned c = 1; c < p; ++c)
      for (unsigned mm = 0; mm < p; ++mm)
        assign(Family::II, {a, c, mm},
               (*la)[65 + ((a - 1) * (p - 1) + (c - 1)) * p + mm]);
  for (unsigned a = 1; a < p; ++a)
    for (unsigned e = 0; e < p; ++e)
      assign(Family::III, {a, e}, (*la)[25 + (a - 1) * p + e]);
  for (unsigned b = 1; b < p; ++b)
    for (unsigned c = 1; c < p; ++c)
      assign(Family::IV, {b, c}, (*mu)[(b - 1) * p + c]);
  for (unsigned b = 1; b < p; ++b)
    for (unsigned f = 0; f < p; ++f)
      assign(Family::V, {b, f}, (*nu)[26 + (b - 1) * p + f]);
  for (unsigned c = 1; c < p; ++c)
    for (unsigned d = 1; d < p; ++d)
      assign(Family::VI, {c, d}, (*mu)[20 + c * p + d]);
  for (unsigned c = 1; c < p; ++c) assign(Family::VII, {c}, (*nu)[5 + c]);
  for (unsigned d = 1; d < p; ++d)
    for (unsigned e = 0; e < p; ++e)
      assign(Family::VIII, {d, e}, (*la)[d * p + e]);
  for (unsigned e = 1; e < p; ++e) assign(Family::IX, {e}, (*sg)[5 + (e - 1)]);
  for (unsigned f = 0; f < p; ++f) assign(Family::X, {f}, (*sg)[f]);
  return x;
}

namespace {

enum class PushMap { trace, norm };

DenseElt push_to(const DenseElt& x, const Scheme& q, PushMap mp) {
  return mp == PushMap::trace ? comm_trace(x, q) : comm_norm(x, q);
}

void six_relations(Context& ctx, const ThetaTuple& t, PushMap mp,
                   CheckReport& rep, const std::string& label) {
  RingParams rm = ctx.rp();
  auto q = [&](unsigned mask) { return scheme_coords(rm, mask); };
  std::array<DenseElt, 5> y;
  for (Comp c : kComps) y[size_t(c)] = gr_reduce(t.of(c), rm.m);
  const DenseElt &y0 = y[0], &y1 = y[1], &y2t = y[2], &y2 = y[3], &y3 = y[4];

  rep.note(push_to(y0, q(kMaskAC), mp) == gr_project(y1, q(kMaskAC)),
           label + "-rel-1");
  rep.note(push_to(y0, q(kMaskBC), mp) == gr_project(y2t, q(kMaskBC)),
           label + "-rel-2");
  rep.note(push_to(y2t, q(kMaskBC), mp) == gr_project(y2, q(kMaskBC)),
           label + "-rel-3");
  rep.note(push_to(gr_project(y1, q(kMaskACD)), q(kMaskCD), mp) ==
               push_to(y2t, q(kMaskCD), mp),
           label + "-rel-4");
  rep.note(push_to(y1, q(kMaskCE), mp) == gr_project(y3, q(kMaskCE)),
           label + "-rel-5");
  rep.note(push_to(y2, q(kMaskCF), mp) == gr_project(y3, q(kMaskCF)),
           label + "-rel-6");
}

void frobenius_congruences(Context& ctx, const ThetaTuple& t,
                           const std::array<IdealId, 4>& ids, CheckReport& rep,
                           const std::string& label) {
  RingParams rm = ctx.rp();
  unsigned p = rm.p;
  CoeffElt prof = t_profile(gr_frobenius(gr_reduce(t.of(Comp::c0), rm.m)));
  const std::array<std::pair<Comp, u64>, 4> targets = {
      {{Comp::c1, 1}, {Comp::c2t, 1}, {Comp::c2, p}, {Comp::c3, u64(p) * p}}};
  for (size_t i = 0; i < 4; ++i) {
    auto [comp, k] = targets[i];
    DenseElt lhs = gr_reduce(t.of(comp), rm.m);
    DenseElt rhs = embed_t_profile(ctx.scheme(comp), coeff_pow(prof, k));
    rep.note(ctx.ideal_member(gr_sub(lhs, rhs), ids[i]),
             label + "-congruence-" + comp_name(comp));
  }
}

}  // namespace

CheckReport omega_check(Context& ctx, const ThetaTuple& t) {
  CheckReport rep;
  six_relations(ctx, t, PushMap::trace, rep, "trace");
  const std::array<std::pair<Comp, IdealId>, 4> mem = {
      {{Comp::c1, IdealId::I1},
       {Comp::c2t, IdealId::I2t},
       {Comp::c2, IdealId::I2},
       {Comp::c3, IdealId::I3}}};
  for (auto [comp, id] : mem)
    rep.note(ctx.ideal_member(gr_reduce(t.of(comp), ctx.rp().m), id),
             std::string("membership-") + ideal_name(id));
  return rep;
}

std::vector<std::vector<DenseElt>> norm_matrix(Context& ctx, const GSparse& u,
                                               Sub amb, Sub sub,
                                               const Scheme& target, bool alt) {
  unsigned p = ctx.rp().p;
  u64 pn = ctx.rp().pn();
  u64 mod = ipow(p, target.rp.m);
  const CosetTable& T = ctx.cosets(amb, sub, alt);
  size_t r = T.reps.size();
  std::vector<std::vector<DenseElt>> mat(
      r, std::vector<DenseElt>(r, DenseElt(target)));
  for (const auto& [key, cv] : u.terms) {
    GroupElt g = gs_decode(u, key);
    GroupElt gf = finite_part(g);
    if (!sub_contains(amb, gf))
      fail(Err::invalid_arg, "element not supported on the coset space's group");
    for (size_t j = 0; j < r; ++j) {
      GroupElt h = g_mul(T.reps[j], gf, p, 1);
      u32 hi = g_index(h, p);
      u32 k = T.rep_of[hi];
      GroupElt s = g_from_index(T.sub_of[hi], p);
      u64& slot = mat[k][j].v[u64(target.gindex(s)) * pn + g.z];
      slot = addmod(slot, cv % mod, mod);
    }
  }
  return mat;
}

namespace {

DenseElt theta_mult_staged3(Context& ctx, const GSparse& u, bool alt) {
  RingParams rp = u.rp;
  unsigned p = rp.p;
  u64 pn = rp.pn();
  u64 pm = rp.pm();
  SubRing r1 = sub_ring(rp, Sub::U1);
  const CosetTable& T = ctx.cosets(Sub::U0, Sub::U1, alt);
  size_t r = T.reps.size();
  std::vector<std::vector<SubDense>> mat(
      r, std::vector<SubDense>(r, SubDense(r1)));
  for (const auto& [key, cv] : u.terms) {
    GroupElt g = gs_decode(u, key);
    GroupElt gf = finite_part(g);
    for (size_t j = 0; j < r; ++j) {
      GroupElt h = g_mul(T.reps[j], gf, p, 1);
      u32 hi = g_index(h, p);
      u32 k = T.rep_of[hi];
      GroupElt s = g_from_index(T.sub_of[hi], p);
      u64& slot = mat[k][j].v[u64(sub_elt_index(Sub::U1, s, p)) * pn + g.z];
      slot = addmod(slot, cv % pm, pm);
    }
  }

  /* row reduction over the (noncommutative) local subgroup ring; the
     transvections have trivial reduced norm, a swap contributes a sign */
  bool flip = false;
  for (size_t col = 0; col < r; ++col) {
    size_t piv = col;
    while (piv < r && sd_aug(mat[piv][col]) % p == 0) ++piv;
    if (piv == r) fail(Err::math, "multiplication matrix not invertible");
    if (piv != col) {
      std::swap(mat[piv], mat[col]);
      flip = !flip;
    }
    SubDense inv = sd_inv(mat[col][col]);
    for (size_t row = 0; row < r; ++row) {
      if (row == col || mat[row][col].is_zero()) continue;
      SubDense q = sd_mul(mat[row][col], inv);
      for (size_t j = 0; j < r; ++j)
        mat[row][j] = sd_sub(mat[row][j], sd_mul(q, mat[col][j]));
    }
  }

  Scheme w3 = ctx.scheme(Comp::c3, rp.m);
  DenseElt acc = DenseElt::one(w3);
  for (size_t k = 0; k < r; ++k) {
    GSparse dk = sd_to_sparse(mat[k][k]);
    acc = gr_mul(acc, gr_det(norm_matrix(ctx, dk, Sub::U1, Sub::U3, w3, alt)));
  }
  if (flip) acc = gr_neg(acc);
  return acc;
}

}  // namespace

DenseElt theta_mult(Context& ctx, const GSparse& u, Comp i, bool staged,
                    bool alt) {
  if (u.rp.p != ctx.rp().p || u.rp.n != ctx.rp().n)
    fail(Err::invalid_arg, "unit does not match the context");
  if (!gs_is_unit(u)) fail(Err::invalid_arg, "theta_mult needs a unit");
  Scheme target = ctx.scheme(i, u.rp.m);
  if (i == Comp::c0) return gs_project(u, target);
  if (i == Comp::c3 && staged) return theta_mult_staged3(ctx, u, alt);
  return gr_det(norm_matrix(ctx, u, Sub::U0, comp_u(i), target, alt));
}

ThetaTuple theta_mult_all(Context& ctx, const GSparse& u, bool staged, bool alt) {
  ThetaTuple t;
  for (Comp c : kComps) t.of(c) = theta_mult(ctx, u, c, staged, alt);
  return t;
}

CheckReport psi_check(Context& ctx, const ThetaTuple& t) {
  CheckReport rep;
  six_relations(ctx, t, PushMap::norm, rep, "norm");
  frobenius_congruences(
      ctx, t, {IdealId::I1, IdealId::I2t, IdealId::I2, IdealId::I3}, rep, "I");
  return rep;
}

CheckReport j_congruence_check(Context& ctx, const ThetaTuple& t) {
  CheckReport rep;
  frobenius_congruences(
      ctx, t, {IdealId::J1, IdealId::J2t, IdealId::J2, IdealId::J3}, rep, "J");
  return rep;
}

CheckReport sp_stability_check(Context& ctx) {
  CheckReport rep;
  RingParams rm = ctx.rp();
  const std::array<std::pair<IdealId, unsigned>, 5> jobs = {
      {{IdealId::I1, 0b001001},
       {IdealId::I2t, 0b001010},
       {IdealId::I2, 0b000010},
       {IdealId::I3, 0b000000},
       {IdealId::I2pp, 0b000010}}};
  for (auto [id, keep] : jobs) {
    Scheme sch = ctx.scheme(ideal_comp(id));
    Scheme sub = scheme_coords(rm, keep);
    const auto& gens = ctx.gens(id);
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      DenseElt x = ideal_gen_realize(gens[gi], sch);
      DenseElt y = gr_include(gr_project(x, sub), sch);
      rep.note(ctx.ideal_member(y, id), std::string("section-") + ideal_name(id) +
                                            "-gen-" + std::to_string(gi));
    }
  }
  return rep;
}

CheckReport final_implication_check(Context& ctx, Rng& rng) {
  CheckReport rep;
  RingParams rp = ctx.rp();
  unsigned p = rp.p;
  u64 pm = rp.pm();
  auto rand_coeff = [&] {
    CoeffElt c(rp);
    for (u64 z = 0; z < rp.pn(); ++z) c.c[z] = rng.below(pm);
    return c;
  };

  std::vector<CoeffElt> s1(p, CoeffElt(rp)), s2(p, CoeffElt(rp)),
      s3(p, CoeffElt(rp));
  for (unsigned f = 0; f < p; ++f) s1[f] = rand_coeff();
  for (unsigned e = 1; e < p; ++e) s2[e] = rand_coeff();
  for (unsigned c = 1; c < p; ++c) s3[c] = rand_coeff();

  Scheme w3 = ctx.scheme(Comp::c3);
  const auto& g3 = ctx.gens(IdealId::I3);
  DenseElt x3(w3);
  for (unsigned f = 0; f < p; ++f)
    x3 = gr_add(x3, gr_coeff_mul(ideal_gen_realize(g3[f], w3), s1[f]));
  for (unsigned e = 1; e < p; ++e)
    x3 = gr_add(x3, gr_coeff_mul(ideal_gen_realize(g3[5 + (e - 1)], w3), s2[e]));
  for (unsigned c = 1; c < p; ++c)
    x3 = gr_add(x3, gr_coeff_mul(ideal_gen_realize(g3[9 + (c - 1)], w3), s3[c]));

  /* the coarser module: coordinates at b = 0 are forced by the compatibility
     edge with x3, the rest is free */
  CoeffElt s2sum(rp);
  for (unsigned e = 1; e < p; ++e) s2sum = coeff_add(s2sum, s2[e]);
  Scheme w2 = ctx.scheme(Comp::c2);
  const auto& g2 = ctx.gens(IdealId::I2pp);
  DenseElt x2(w2);
  for (unsigned b = 0; b < p; ++b)
    for (unsigned c = 1; c < p; ++c) {
      CoeffElt cf = b == 0 ? coeff_scalar_mul(s3[c], p) : rand_coeff();
      x2 = gr_add(x2, gr_coeff_mul(
                          ideal_gen_realize(g2[b * (p - 1) + (c - 1)], w2), cf));
    }
  for (unsigned b = 0; b < p; ++b)
    for (unsigned f = 0; f < p; ++f) {
      CoeffElt cf = b == 0 ? coeff_add(coeff_scalar_mul(s1[f], p), s2sum)
                           : rand_coeff();
      x2 = gr_add(x2, gr_coeff_mul(
                          ideal_gen_realize(g2[p * (p - 1) + b * p + f], w2), cf));
    }

  DenseElt u2 = gr_pexp_ideal(ctx, x2, IdealId::I2pp);
  DenseElt u3 = gr_pexp_ideal(ctx, x3, IdealId::I3);
  DenseElt l2 = gr_plog_ideal(ctx, u2, IdealId::I2pp);
  DenseElt l3 = gr_plog_ideal(ctx, u3, IdealId::I3);
  rep.note(l2 == x2, "premise-log-roundtrip-2");
  rep.note(l3 == x3, "premise-log-roundtrip-3");
  Scheme qcf = scheme_coords(rp, kMaskCF);
  rep.note(comm_trace(l2, qcf) == gr_project(l3, qcf), "premise-compatibility");
  rep.note(ctx.ideal_member(l2, IdealId::I2), "conclusion-membership");
  return rep;
}

}  // namespace tk1
