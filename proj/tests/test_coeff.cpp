#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coeff.hpp"

using namespace tk1;

TEST_CASE("modular helpers") {
  CHECK(mulmod(7, 8, 25) == 6);
  CHECK(powmod(3, 4, 100) == 81);
  CHECK(powmod(2, 0, 7) == 1);
  CHECK(ipow(5, 6) == 15625);
  CHECK(unit_inv_mod(2, 5, 25) == 13);
  CHECK(mulmod(13, 2, 25) == 1);
  for (u64 a = 1; a < 25; ++a) {
    if (a % 5 == 0) continue;
    CHECK(mulmod(a, unit_inv_mod(a, 5, 25), 25) == 1);
  }
  CHECK(p_valuation(50, 5, 10) == 2);
  CHECK(p_valuation(12, 5, 10) == 0);
  CHECK(p_valuation(0, 5, 7) == 7);
}

TEST_CASE("ring parameter validation") {
  CHECK_THROWS_AS((RingParams{3, 0, 2}).validate(), Error);
  CHECK_THROWS_AS((RingParams{9, 0, 2}).validate(), Error);
  CHECK_THROWS_AS((RingParams{5, 0, 0}).validate(), Error);
  CHECK_NOTHROW((RingParams{5, 2, 3}).validate());
  RingParams rp{7, 1, 2};
  CHECK(rp.pn() == 7);
  CHECK(rp.pm() == 49);
  CHECK(rp.with_m(4).m == 4);
}

TEST_CASE("coefficient ring over the Gamma factor") {
  RingParams rp{5, 1, 2};
  CoeffElt t3 = CoeffElt::t_power(rp, 3);
  CoeffElt t4 = CoeffElt::t_power(rp, 4);
  CHECK(coeff_mul(t3, t4) == CoeffElt::t_power(rp, 2));

  CoeffElt u = coeff_add(CoeffElt::scalar(rp, 2), CoeffElt::t_power(rp, 1, 5));
  CHECK(coeff_is_unit(u));
  CHECK(coeff_mul(u, coeff_invert(u)) == CoeffElt::scalar(rp, 1));
  CHECK_FALSE(coeff_is_unit(coeff_scalar_mul(u, 5)));

  CHECK(coeff_frobenius(CoeffElt::t_power(rp, 2)) == CoeffElt::t_power(rp, 10 % 5));
  CHECK(coeff_aug(u) == 7);

  CoeffElt d = coeff_scalar_mul(u, 5);
  CHECK(coeff_reduce(coeff_div_exact(d, 1), 1) == coeff_reduce(u, 1));
  CHECK_THROWS_AS(coeff_div_exact(u, 1), Error);
}

TEST_CASE("precision change is canonical lift and truncation") {
  RingParams rp{5, 0, 2};
  CoeffElt x = CoeffElt::scalar(rp, 23);
  CoeffElt up = coeff_reduce(x, 3);
  CHECK(up.rp.m == 3);
  CHECK(up.c[0] == 23);
  CHECK(coeff_reduce(up, 2) == x);
}

TEST_CASE("cyclotomic integers reduce through the minimal polynomial") {
  /* (1 + z)(1 + z^4) = 1 - z^2 - z^3 in the power basis */
  CycloElt a = cyclo_add(CycloElt::integer(5, 1), CycloElt::root(5, 1));
  CycloElt b = cyclo_add(CycloElt::integer(5, 1), CycloElt::root(5, 4));
  CycloElt prod = cyclo_mul(a, b);
  CHECK(cyclo_mod(prod, 25) == std::vector<u64>{1, 0, 24, 24});

  CHECK(CycloElt::root(5, 5) == CycloElt::integer(5, 1));
  CHECK(CycloElt::root(5, -1) == CycloElt::root(5, 4));

  CycloElt all = CycloElt::integer(5, 1);
  for (long k = 1; k < 5; ++k) all = cyclo_add(all, CycloElt::root(5, k));
  CHECK(all.is_zero());

  CHECK(cyclo_galois(CycloElt::root(5, 1), 2) == CycloElt::root(5, 2));
  CHECK(cyclo_conj(CycloElt::root(5, 2)) == CycloElt::root(5, 3));
  CHECK(cyclo_mul(CycloElt::root(5, 2), CycloElt::root(5, 3)) ==
        CycloElt::integer(5, 1));
}

TEST_CASE("deterministic split streams") {
  Rng a(1, "stream", 0);
  Rng b(1, "stream", 0);
  Rng c(1, "stream", 1);
  Rng d(2, "stream", 0);
  u64 va = a.next();
  CHECK(va == b.next());
  CHECK(va != c.next());
  CHECK(va != d.next());
  for (int i = 0; i < 1000; ++i) CHECK(a.below(17) < 17);
}
