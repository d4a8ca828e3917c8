#include "logk1.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tk1 {

namespace {

u64 safe_ppow(unsigned p, unsigned e) {
  u64 r = 1;
  while (e--) {
    if (r > std::numeric_limits<u64>::max() / p)
      fail(Err::invalid_arg, "requested precision does not fit");
    r *= p;
  }
  return r;
}

unsigned ilog(unsigned p, u64 k) {
  unsigned e = 0;
  u64 q = 1;
  while (q <= k / p) {
    q *= p;
    ++e;
  }
  return e;
}

unsigned split_p(unsigned p, u64& k) {
  unsigned v = 0;
  while (k % p == 0) {
    k /= p;
    ++v;
  }
  return v;
}

u64 teichmuller(u64 s, unsigned p, u64 mod) {
  u64 x = s % mod;
  for (int i = 0; i < 128; ++i) {
    u64 y = powmod(x, p, mod);
    if (y == x) return x;
    x = y;
  }
  fail(Err::math, "torsion projection did not settle");
}

}  // namespace

unsigned rad_bound_group(const RingParams& rp) {
  /* socle weights of the finite group: three coordinates of degree 1, two of
     degree 2, one of degree 3, so sum i*d_i = 10 */
  return 1 + 10 * (rp.p - 1) + unsigned(rp.pn() - 1);
}

unsigned rad_bound_scheme(const Scheme& s) {
  return 1 + s.rank() * (s.rp.p - 1) + unsigned(s.rp.pn() - 1);
}

LogPlan log_plan(unsigned p, unsigned nilp, unsigned prec) {
  LogPlan pl;
  pl.nilp = nilp;
  /* past the cutoff, v_p(x^k / k) >= k/nilp - 1 - log_p(k) >= prec; the
     minorant is increasing from nilp on, so the first admissible k works */
  double lp = std::log(double(p));
  unsigned k = nilp;
  while (double(k) / nilp - std::log(double(k)) / lp < double(prec) + 1.25) ++k;
  pl.cutoff = k;
  pl.den = ilog(p, k);
  return pl;
}

DenseElt gr_pexp_ideal(Context& ctx, const DenseElt& x, IdealId id) {
  unsigned m = ctx.rp().m, p = ctx.rp().p;
  if (!(x.sch == ctx.scheme(ideal_comp(id))))
    fail(Err::invalid_arg, "element not on the ideal's scheme");
  if (!ctx.ideal_member(x, id))
    fail(Err::invalid_arg, "element outside the ideal");
  /* headroom covers the partial factorial denominators of every surviving
     term; the tail dies at k about 2 * work precision */
  unsigned work = 2 * m + 4;
  (void)safe_ppow(p, work);
  DenseElt xe = gr_reduce(x, work);
  u64 pmw = xe.sch.rp.pm();
  DenseElt acc = DenseElt::one(xe.sch);
  DenseElt term = xe;
  for (u64 k = 1; !term.is_zero(); ++k) {
    if (k > 400) fail(Err::math, "exponential series did not terminate");
    acc = gr_add(acc, term);
    u64 kq = k + 1;
    unsigned v = split_p(p, kq);
    term = gr_mul(term, xe);
    if (v) term = gr_div_exact(term, v);
    term = gr_scalar_mul(term, unit_inv_mod(kq, p, pmw));
  }
  return gr_reduce(acc, m);
}

DenseElt gr_plog_ideal(Context& ctx, const DenseElt& u, IdealId id) {
  unsigned m = ctx.rp().m, p = ctx.rp().p;
  Scheme sch = ctx.scheme(ideal_comp(id));
  if (!(u.sch == sch)) fail(Err::invalid_arg, "element not on the ideal's scheme");
  DenseElt x0 = gr_sub(u, DenseElt::one(sch));
  if (!ctx.ideal_member(x0, id))
    fail(Err::invalid_arg, "unit is not principal for the ideal");
  unsigned work = m + ilog(p, 400) + 2;
  (void)safe_ppow(p, work);
  DenseElt x = gr_reduce(x0, work);
  u64 pmw = x.sch.rp.pm();
  DenseElt acc(x.sch);
  DenseElt pw = x;
  for (u64 k = 1; !pw.is_zero(); ++k) {
    if (k > 400) fail(Err::math, "log series did not terminate");
    u64 kq = k;
    unsigned v = split_p(p, kq);
    DenseElt term = v ? gr_div_exact(pw, v) : pw;
    term = gr_scalar_mul(term, unit_inv_mod(kq, p, pmw));
    acc = (k & 1) ? gr_add(acc, term) : gr_sub(acc, term);
    pw = gr_mul(pw, x);
  }
  return gr_reduce(acc, m);
}

ScaledLogW gr_plog_scaled(const DenseElt& u, unsigned prec, unsigned den) {
  const Scheme& sch = u.sch;
  unsigned p = sch.rp.p;
  LogPlan pl = log_plan(p, rad_bound_scheme(sch), prec);
  if (den == 0) den = pl.den;
  if (den < pl.den) fail(Err::invalid_arg, "forced denominator too small");
  if (sch.rp.m != prec + den)
    fail(Err::invalid_arg, "input precision must equal prec + den");
  u64 mod = sch.rp.pm();
  u64 s = gr_aug(u);
  if (s % p == 0) fail(Err::invalid_arg, "not a unit");
  u64 w = teichmuller(s, p, mod);
  DenseElt x = gr_scalar_mul(u, unit_inv_mod(w, p, mod));
  x.v[0] = submod(x.v[0], 1 % mod, mod);
  ScaledLogW out{den, DenseElt(sch)};
  DenseElt pw = x;
  for (u64 k = 1; k < pl.cutoff && !pw.is_zero(); ++k) {
    u64 kq = k;
    unsigned v = split_p(p, kq);
    u64 coef = mulmod(ipow(p, den - v) % mod, unit_inv_mod(kq, p, mod), mod);
    DenseElt term = gr_scalar_mul(pw, coef);
    out.val = (k & 1) ? gr_add(out.val, term) : gr_sub(out.val, term);
    if (k + 1 < pl.cutoff) pw = gr_mul(pw, x);
  }
  return out;
}

ScaledLogG gd_plog_scaled(Context& ctx, const GSparse& u, unsigned prec,
                          unsigned den) {
  (void)ctx;
  unsigned p = u.rp.p;
  LogPlan pl = log_plan(p, rad_bound_group(u.rp), prec);
  if (den == 0) den = pl.den;
  if (den < pl.den) fail(Err::invalid_arg, "forced denominator too small");
  u64 mod = safe_ppow(p, prec + den);
  RingParams wrp = u.rp.with_m(prec + den);
  u64 s = 0;
  for (const auto& [key, c] : u.terms) s = addmod(s, c % mod, mod);
  if (s % p == 0) fail(Err::invalid_arg, "not a unit");
  u64 w = teichmuller(s, p, mod);
  u64 winv = unit_inv_mod(w, p, mod);
  GSparse x(wrp);
  bool seen_one = false;
  for (const auto& [key, c] : u.terms) {
    u64 cv = mulmod(c % mod, winv, mod);
    if (key == 0) {
      seen_one = true;
      cv = submod(cv, 1 % mod, mod);
    }
    if (cv) x.terms.push_back({key, cv});
  }
  if (!seen_one) {
    x.terms.insert(x.terms.begin(), {0, mod - 1});
  }
  ScaledLogG out{den, GDense(wrp)};
  GDense pw = gd_from_sparse(x);
  for (u64 k = 1; k < pl.cutoff && !pw.is_zero(); ++k) {
    u64 kq = k;
    unsigned v = split_p(p, kq);
    u64 coef = mulmod(ipow(p, den - v) % mod, unit_inv_mod(kq, p, mod), mod);
    for (size_t i = 0; i < out.val.v.size(); ++i) {
      u64 t = mulmod(pw.v[i], coef, mod);
      out.val.v[i] =
          (k & 1) ? addmod(out.val.v[i], t, mod) : submod(out.val.v[i], t, mod);
    }
    if (k + 1 < pl.cutoff) pw = gd_mul_sparse(pw, x);
  }
  return out;
}

ConjElt conj_project(const ClassTable& ct, const GDense& x) {
  ConjElt r(x.rp, unsigned(ct.count()));
  u64 pn = x.rp.pn(), pm = x.rp.pm();
  u64 gcount = x.v.size() / pn;
  for (u64 gi = 0; gi < gcount; ++gi) {
    u32 cid = ct.class_of[gi];
    for (u64 z = 0; z < pn; ++z)
      r.at(cid, z) = addmod(r.at(cid, z), x.v[gi * pn + z], pm);
  }
  return r;
}

ConjElt conj_frobenius(const ClassTable& ct, const ConjElt& x) {
  ConjElt r(x.rp, x.nclasses);
  u64 pn = x.rp.pn(), pm = x.rp.pm();
  u32 triv = ct.class_of[0];
  for (u32 cid = 0; cid < x.nclasses; ++cid)
    for (u64 z = 0; z < pn; ++z) {
      u64 zz = (z * x.rp.p) % pn;
      r.at(triv, zz) = addmod(r.at(triv, zz), x.at(cid, z), pm);
    }
  return r;
}

ConjElt conj_div_exact(const ConjElt& x, unsigned k) {
  if (k > x.rp.m) fail(Err::invalid_arg, "dividing away the whole precision");
  u64 d = ipow(x.rp.p, k);
  ConjElt r(x.rp.with_m(x.rp.m - k), x.nclasses);
  for (size_t i = 0; i < x.v.size(); ++i) {
    if (x.v[i] % d) fail(Err::math, "inexact division by p^k");
    r.v[i] = x.v[i] / d;
  }
  return r;
}

ConjElt integral_log(Context& ctx, const GSparse& u, unsigned m_out) {
  RingParams rp0 = ctx.rp();
  if (u.rp.p != rp0.p || u.rp.n != rp0.n)
    fail(Err::invalid_arg, "unit does not match the context");
  if (m_out == 0) m_out = rp0.m;
  unsigned prec = m_out + 1;
  ScaledLogG s = gd_plog_scaled(ctx, u, prec);
  ConjElt c = conj_project(ctx.classes(), s.val);
  ConjElt num =
      conj_sub(conj_scalar_mul(c, rp0.p), conj_frobenius(ctx.classes(), c));
  return conj_reduce(conj_div_exact(num, s.den + 1), m_out);
}

GroupElt omega_ab(Context& ctx, const ConjElt& x) {
  if (x.rp.m < x.rp.n)
    fail(Err::invalid_arg, "coordinate sum needs m >= n");
  if (x.nclasses != ctx.classes().count())
    fail(Err::invalid_arg, "conjugacy element does not match the context");
  unsigned p = x.rp.p;
  u64 pn = x.rp.pn();
  GroupElt r;
  for (u32 cid = 0; cid < x.nclasses; ++cid) {
    const GroupElt& rep = ctx.classes().at(cid).rep;
    for (u64 z = 0; z < pn; ++z) {
      u64 a = x.at(cid, z);
      if (!a) continue;
      for (size_t j = 0; j < 3; ++j)
        r.w[j] = unsigned((r.w[j] + (a % p) * rep.w[j]) % p);
      r.z = (r.z + (a % pn) * z) % pn;
    }
  }
  return r;
}

CheckReport log_norm_compat(Context& ctx, const GSparse& u) {
  CheckReport rep;
  RingParams rp0 = ctx.rp();
  unsigned p = rp0.p, m = rp0.m;
  unsigned den = log_plan(p, rad_bound_group(rp0), m).den;
  for (Comp i : kComps)
    den = std::max(den, log_plan(p, rad_bound_scheme(ctx.scheme(i)), m).den);
  ScaledLogG s = gd_plog_scaled(ctx, u, m, den);
  ConjElt c = conj_project(ctx.classes(), s.val);
  ThetaTuple tw = theta_mult_all(ctx, gs_reduce(u, m + den));
  for (Comp i : kComps) {
    DenseElt lhs = theta_apply(ctx, c, i, m + den);
    ScaledLogW rhs = gr_plog_scaled(tw.of(i), m, den);
    rep.note(lhs == rhs.val, std::string("log-compat-") + comp_name(i));
  }
  return rep;
}

CheckReport gamma_theta_identity(Context& ctx, const GSparse& u) {
  CheckReport rep;
  RingParams rp0 = ctx.rp();
  unsigned p = rp0.p, m = rp0.m;
  unsigned d0 = log_plan(p, rad_bound_scheme(ctx.scheme(Comp::c0)), m + 1).den;
  unsigned den = d0 + 1;
  for (Comp i : {Comp::c1, Comp::c2t, Comp::c2, Comp::c3})
    den = std::max(den, log_plan(p, rad_bound_scheme(ctx.scheme(i)), m).den);

  ConjElt gamma = integral_log(ctx, u, m + den);
  ThetaTuple tw = theta_mult_all(ctx, gs_reduce(u, m + den));
  CoeffElt prof = t_profile(gr_frobenius(tw.of(Comp::c0)));

  const std::array<std::pair<Comp, u64>, 4> targets = {
      {{Comp::c1, 1}, {Comp::c2t, 1}, {Comp::c2, p}, {Comp::c3, u64(p) * p}}};
  for (auto [comp, k] : targets) {
    Scheme sch = ctx.scheme(comp, m + den);
    DenseElt tw_ratio =
        gr_mul(tw.of(comp), gr_inv(gr_pow(embed_t_profile(sch, prof), k)));
    ScaledLogW rhs = gr_plog_scaled(tw_ratio, m, den);
    DenseElt lhs = gr_scalar_mul(theta_apply(ctx, gamma, comp, m + den),
                                 ipow(p, den) % sch.rp.pm());
    rep.note(lhs == rhs.val, std::string("gamma-theta-") + comp_name(comp));
  }

  /* the base component satisfies the untwisted form: theta_0 of the integral
     log is (1 - phi/p) applied to the log of theta_0 */
  {
    unsigned mm = m + 1 + d0;
    GSparse u0 = gs_reduce(u, mm);
    DenseElt y0 = theta_mult(ctx, u0, Comp::c0);
    ScaledLogW s0 = gr_plog_scaled(y0, m + 1, d0);
    DenseElt rhs = gr_sub(gr_scalar_mul(s0.val, p), gr_frobenius(s0.val));
    u64 modm = y0.sch.rp.pm();
    DenseElt lhs = gr_scalar_mul(theta_apply(ctx, gamma, Comp::c0, mm),
                                 ipow(p, d0 + 1) % modm);
    rep.note(lhs == rhs, "gamma-theta-0");
  }
  return rep;
}

}  // namespace tk1
