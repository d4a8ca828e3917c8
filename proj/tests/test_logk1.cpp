#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "logk1.hpp"

using namespace tk1;

namespace {

const RingParams kRp{5, 0, 2};

DenseElt w0_unit(const Scheme& s, Rng& rng) {
  DenseElt x(s);
  for (u64& v : x.v) v = rng.below(s.rp.pm());
  while (gr_aug(x) % s.rp.p == 0) x.v[0] = addmod(x.v[0], 1, s.rp.pm());
  return x;
}

}  // namespace

TEST_CASE("radical bounds") {
  CHECK(rad_bound_group(kRp) == 41);
  CHECK(rad_bound_group(RingParams{5, 1, 2}) == 45);
  CHECK(rad_bound_scheme(scheme_from_tag(kRp, "W1").value()) == 17);
  CHECK(rad_bound_scheme(scheme_from_tag(RingParams{5, 1, 2}, "W0").value()) == 17);
}

TEST_CASE("series truncation plans") {
  LogPlan small = log_plan(5, 1, 2);
  CHECK(small.nilp == 1);
  CHECK(small.cutoff == 5);
  CHECK(small.den == 1);

  LogPlan big = log_plan(5, 41, 3);
  CHECK(big.den == 3);
  CHECK(big.cutoff >= 300);
  CHECK(big.cutoff <= 350);
  /* rescaled by p^den, every truncated term is dead mod p^(prec+den) */
  for (unsigned k = big.cutoff; k < big.cutoff + 200; ++k)
    CHECK(k / big.nilp - p_valuation(k, 5, 30) >= 3);
}

TEST_CASE("ideal exp and log") {
  Context ctx3({5, 0, 3});
  Scheme w1 = ctx3.scheme(Comp::c1);
  DenseElt x = basis_elt(w1, g_make(0, 0, 0, 1, 0, 0, 5), 0, 5);
  DenseElt u = gr_pexp_ideal(ctx3, x, IdealId::I1);

  GroupElt d2 = g_make(0, 0, 0, 2, 0, 0, 5);
  DenseElt expect = gr_add(gr_add(DenseElt::one(w1), x), basis_elt(w1, d2, 0, 75));
  CHECK(u == expect);
  CHECK(gr_plog_ideal(ctx3, u, IdealId::I1) == x);
  DenseElt lg = gr_plog_ideal(ctx3, gr_add(DenseElt::one(w1), x), IdealId::I1);
  CHECK(lg == gr_add(x, basis_elt(w1, d2, 0, 50)));
}

TEST_CASE("exp-log round trip on every ideal") {
  Context ctx(kRp);
  for (IdealId id : kIdeals) {
    Scheme s = ctx.scheme(ideal_comp(id));
    const auto& gens = ctx.gens(id);
    Rng rng(17, "ideal-rt", unsigned(id));
    DenseElt x(s);
    for (int pick = 0; pick < 3; ++pick) {
      const IdealGen& g = gens[rng.below(gens.size())];
      x = gr_add(x, gr_scalar_mul(ideal_gen_realize(g, s), 1 + rng.below(24)));
    }
    DenseElt u = gr_pexp_ideal(ctx, x, id);
    CHECK(ctx.ideal_member(gr_sub(u, DenseElt::one(s)), id));
    CHECK(gr_plog_ideal(ctx, u, id) == x);
  }
}

TEST_CASE("scaled log on a scheme ring") {
  RingParams rp4{5, 0, 4};
  Scheme w0 = scheme_from_tag(rp4, "W0").value();
  Rng rng(17, "slog", 0);

  DenseElt u = w0_unit(w0, rng);
  DenseElt v = w0_unit(w0, rng);
  ScaledLogW lu = gr_plog_scaled(u, 2);
  CHECK(lu.den == 2);
  CHECK(gr_plog_scaled(gr_mul(u, v), 2).val == gr_add(lu.val, gr_plog_scaled(v, 2).val));
  CHECK(gr_plog_scaled(gr_pow(u, 5), 2).val == gr_scalar_mul(lu.val, 5));

  /* torsion inputs have log zero: the fixed multiplicative lift of 2, a
     group element, and their product */
  CHECK(gr_plog_scaled(DenseElt::scalar(w0, 182), 2).val.is_zero());
  DenseElt g = basis_elt(w0, g_make(0, 1, 0, 0, 0, 0, 5));
  CHECK(gr_plog_scaled(g, 2).val.is_zero());
  CHECK(gr_plog_scaled(gr_scalar_mul(g, 182), 2).val.is_zero());

  /* forcing a larger denominator rescales the value */
  RingParams rp5{5, 0, 5};
  Scheme w05 = scheme_from_tag(rp5, "W0").value();
  DenseElt u5(w05);
  for (size_t i = 0; i < u5.v.size(); ++i) u5.v[i] = u.v[i];
  ScaledLogW l3 = gr_plog_scaled(u5, 2, 3);
  CHECK(l3.den == 3);
  CHECK(l3.val == gr_scalar_mul(gr_reduce(lu.val, 5), 5));
}

TEST_CASE("scaled log on the group ring") {
  Context ctx(kRp);
  GSparse u = GSparse::one(kRp.with_m(5));
  u.add_term(g_make(0, 0, 0, 1, 0, 0, 5), 5, 5);
  ScaledLogG l = gd_plog_scaled(ctx, u, 2);
  CHECK(l.den == 3);
  GDense expect(kRp.with_m(5));
  expect.v[g_index(g_make(0, 0, 0, 1, 0, 0, 5), 5)] = 625;
  CHECK(l.val.v == expect.v);
}

TEST_CASE("class projection and its Frobenius") {
  RingParams rpt{5, 1, 2};
  Context ctx(rpt);
  const ClassTable& ct = ctx.classes();
  u32 cd = ct.class_of[g_index(g_make(0, 0, 0, 1, 0, 0, 5), 5)];
  u32 c1 = ct.class_of[0];

  GDense x(rpt);
  x.v[g_index(g_make(0, 0, 0, 1, 0, 0, 5), 5) * 5 + 1] = 3;
  x.v[g_index(g_make(0, 0, 0, 1, 0, 2, 5), 5) * 5 + 1] = 4;
  ConjElt pr = conj_project(ct, x);
  ConjElt want(rpt, unsigned(ct.classes.size()));
  want.at(cd, 1) = 7;
  CHECK(pr == want);

  ConjElt fr = conj_frobenius(ct, pr);
  ConjElt wantf(rpt, unsigned(ct.classes.size()));
  wantf.at(c1, 0) = 7;  /* delta^5 = 1 and t^5 wraps at level 1 */
  CHECK(fr == wantf);

  ConjElt ten = conj_scalar_mul(pr, 10);
  CHECK(conj_div_exact(ten, 1).at(cd, 1) == 4);
  CHECK_THROWS_AS(conj_div_exact(pr, 1), Error);
}

TEST_CASE("integral log pins") {
  Context ctx(kRp);
  const ClassTable& ct = ctx.classes();
  u32 cd = ct.class_of[g_index(g_make(0, 0, 0, 1, 0, 0, 5), 5)];
  u32 c1 = ct.class_of[0];
  unsigned nc = unsigned(ct.classes.size());
  RingParams rp3 = kRp.with_m(3);

  GSparse u = GSparse::one(rp3);
  u.add_term(g_make(0, 0, 0, 1, 0, 0, 5), 5, 5);
  ConjElt got = integral_log(ctx, u);
  ConjElt want(kRp, nc);
  want.at(cd, 0) = 5;
  want.at(c1, 0) = 14;
  CHECK(got == want);

  auto scalar_unit = [&](u64 v) {
    GSparse s(rp3);
    s.add_term(GroupElt{}, 5, v);
    return s;
  };
  ConjElt g6 = integral_log(ctx, scalar_unit(6));
  CHECK(g6.at(c1, 0) == 19);
  CHECK(integral_log(ctx, scalar_unit(2)).at(c1, 0) == 18);
  CHECK(integral_log(ctx, scalar_unit(57)).is_zero());

  /* group-monomial translation invariance */
  GSparse shifted = gs_mul(GSparse::monomial(rp3, g_make(0, 0, 1, 1, 0, 0, 5)), u);
  CHECK(integral_log(ctx, shifted) == got);

  /* additivity */
  GSparse v = GSparse::one(rp3);
  v.add_term(g_make(0, 1, 0, 0, 0, 0, 5), 5, 10);
  v.add_term(g_make(0, 0, 0, 0, 1, 0, 5), 5, 35);
  CHECK(integral_log(ctx, gs_mul(u, v)) ==
        conj_add(got, integral_log(ctx, v)));
}

TEST_CASE("integral log with a twist coordinate") {
  RingParams rpt{5, 1, 2};
  Context ctx(rpt);
  RingParams rp3 = rpt.with_m(3);
  GSparse u = GSparse::one(rp3);
  u.add_term(g_make(0, 0, 0, 1, 0, 0, 5, 0, 5), 5, 5);
  u.add_term(g_make(0, 1, 0, 0, 0, 0, 5, 2, 5), 5, 25);
  ConjElt got = integral_log(ctx, u);
  GSparse tu = gs_mul(GSparse::monomial(rp3, g_make(0, 0, 0, 0, 0, 0, 5, 3, 5)), u);
  CHECK(integral_log(ctx, tu) == got);
}

TEST_CASE("abelianized image of a class vector") {
  RingParams rpt{5, 1, 2};
  Context ctx(rpt);
  const ClassTable& ct = ctx.classes();
  ConjElt x(rpt, unsigned(ct.classes.size()));
  x.at(ct.class_of[g_index(g_make(2, 0, 0, 0, 0, 0, 5), 5)], 0) = 3;
  GroupElt ab = omega_ab(ctx, x);
  CHECK(ab.w == std::array<unsigned, 6>{1, 0, 0, 0, 0, 0});
  CHECK(ab.z == 0);

  x.at(ct.class_of[0], 3) = 2;
  ab = omega_ab(ctx, x);
  CHECK(ab.w == std::array<unsigned, 6>{1, 0, 0, 0, 0, 0});
  CHECK(ab.z == 1);
}

TEST_CASE("log meets the norm family") {
  Context ctx(kRp);
  Rng rng(17, "lognorm", 0);
  GSparse u = GSparse::one(kRp);
  for (int i = 0; i < 4; ++i) {
    GroupElt g;
    for (auto& w : g.w) w = unsigned(rng.below(5));
    u.add_term(g, 5, rng.below(25));
  }
  if (gs_aug(u) % 5 == 0) u.add_term(GroupElt{}, 5, 1);
  CHECK(log_norm_compat(ctx, u).pass);
  CHECK(gamma_theta_identity(ctx, u).pass);
}
