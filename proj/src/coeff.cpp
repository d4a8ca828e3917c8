#include "coeff.hpp"

namespace tk1 {

static void check_same(const CoeffElt& a, const CoeffElt& b) {
  if (!(a.rp == b.rp)) fail(Err::invalid_arg, "coefficient ring mismatch");
}

CoeffElt coeff_add(const CoeffElt& a, const CoeffElt& b) {
  check_same(a, b);
  CoeffElt r(a.rp);
  u64 pm = a.rp.pm();
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = addmod(a.c[i], b.c[i], pm);
  return r;
}

CoeffElt coeff_sub(const CoeffElt& a, const CoeffElt& b) {
  check_same(a, b);
  CoeffElt r(a.rp);
  u64 pm = a.rp.pm();
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = submod(a.c[i], b.c[i], pm);
  return r;
}

CoeffElt coeff_neg(const CoeffElt& a) {
  CoeffElt r(a.rp);
  u64 pm = a.rp.pm();
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] ? pm - a.c[i] : 0;
  return r;
}

CoeffElt coeff_mul(const CoeffElt& a, const CoeffElt& b) {
  check_same(a, b);
  CoeffElt r(a.rp);
  u64 pm = a.rp.pm();
  size_t pn = a.c.size();
  for (size_t i = 0; i < pn; ++i) {
    if (!a.c[i]) continue;
    for (size_t j = 0; j < pn; ++j) {
      if (!b.c[j]) continue;
      size_t k = i + j;
      if (k >= pn) k -= pn;
      r.c[k] = addmod(r.c[k], mulmod(a.c[i], b.c[j], pm), pm);
    }
  }
  return r;
}

CoeffElt coeff_scalar_mul(const CoeffElt& a, u64 s) {
  CoeffElt r(a.rp);
  u64 pm = a.rp.pm();
  s %= pm;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = mulmod(a.c[i], s, pm);
  return r;
}

CoeffElt coeff_frobenius(const CoeffElt& a) {
  CoeffElt r(a.rp);
  size_t pn = a.c.size();
  u64 pm = a.rp.pm();
  for (size_t i = 0; i < pn; ++i) {
    if (!a.c[i]) continue;
    size_t k = (i * a.rp.p) % pn;
    r.c[k] = addmod(r.c[k], a.c[i], pm);
  }
  return r;
}

u64 coeff_aug(const CoeffElt& a) {
  u64 pm = a.rp.pm();
  u64 s = 0;
  for (u64 v : a.c) s = addmod(s, v, pm);
  return s;
}

bool coeff_is_unit(const CoeffElt& a) { return coeff_aug(a) % a.rp.p != 0; }

CoeffElt coeff_invert(const CoeffElt& a) {
  if (!coeff_is_unit(a)) fail(Err::math, "not a unit (augmentation divisible by p)");
  u64 pm = a.rp.pm();
  u64 s = unit_inv_mod(coeff_aug(a), a.rp.p, pm);
  CoeffElt y = CoeffElt::scalar(a.rp, s);
  CoeffElt two = CoeffElt::scalar(a.rp, 2 % pm);
  /* 1 - a*y is nilpotent; Newton doubles correct digits */
  for (unsigned it = 0; it < 64; ++it) {
    CoeffElt ay = coeff_mul(a, y);
    if (ay == CoeffElt::scalar(a.rp, 1)) return y;
    y = coeff_mul(y, coeff_sub(two, ay));
  }
  fail(Err::math, "inversion did not converge");
}

CoeffElt coeff_reduce(const CoeffElt& a, unsigned new_m) {
  CoeffElt r(a.rp.with_m(new_m));
  u64 pm = r.rp.pm();
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] % pm;
  return r;
}

CoeffElt coeff_div_exact(const CoeffElt& a, unsigned k) {
  u64 d = ipow(a.rp.p, k);
  CoeffElt r(a.rp);
  for (size_t i = 0; i < r.c.size(); ++i) {
    if (a.c[i] % d) fail(Err::math, "inexact division by p^k");
    r.c[i] = a.c[i] / d;
  }
  return r;
}

/* ---- CycloElt ---- */

CycloElt CycloElt::root(unsigned pp, long k) {
  long r = k % long(pp);
  if (r < 0) r += pp;
  CycloElt x(pp);
  if (r < long(pp) - 1) {
    x.a[size_t(r)] = 1;
  } else {
    for (auto& v : x.a) v = -1;  /* zeta^(p-1) = -(1+zeta+...+zeta^(p-2)) */
  }
  return x;
}

static void check_same(const CycloElt& x, const CycloElt& y) {
  if (x.p != y.p) fail(Err::invalid_arg, "cyclotomic degree mismatch");
}

CycloElt cyclo_add(const CycloElt& x, const CycloElt& y) {
  check_same(x, y);
  CycloElt r(x.p);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

CycloElt cyclo_sub(const CycloElt& x, const CycloElt& y) {
  check_same(x, y);
  CycloElt r(x.p);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

CycloElt cyclo_neg(const CycloElt& x) {
  CycloElt r(x.p);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = -x.a[i];
  return r;
}

CycloElt cyclo_mul(const CycloElt& x, const CycloElt& y) {
  check_same(x, y);
  unsigned p = x.p;
  std::vector<i64> full(p, 0);  /* coefficients of zeta^0..zeta^(p-1) before reduction */
  for (size_t i = 0; i < x.a.size(); ++i) {
    if (!x.a[i]) continue;
    for (size_t j = 0; j < y.a.size(); ++j) {
      if (!y.a[j]) continue;
      full[(i + j) % p] += x.a[i] * y.a[j];
    }
  }
  CycloElt r(p);
  i64 top = full[p - 1];
  for (size_t i = 0; i + 1 < p; ++i) r.a[i] = full[i] - top;
  return r;
}

CycloElt cyclo_scalar_mul(const CycloElt& x, i64 s) {
  CycloElt r(x.p);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] * s;
  return r;
}

CycloElt cyclo_galois(const CycloElt& x, long s) {
  CycloElt r(x.p);
  for (size_t i = 0; i < x.a.size(); ++i) {
    if (!x.a[i]) continue;
    CycloElt t = CycloElt::root(x.p, long(i) * s);
    for (size_t j = 0; j < r.a.size(); ++j) r.a[j] += x.a[i] * t.a[j];
  }
  return r;
}

CycloElt cyclo_conj(const CycloElt& x) { return cyclo_galois(x, -1); }

std::vector<u64> cyclo_mod(const CycloElt& x, u64 mod) {
  std::vector<u64> r(x.a.size());
  for (size_t i = 0; i < r.size(); ++i) {
    i64 v = x.a[i] % i64(mod);
    if (v < 0) v += i64(mod);
    r[i] = u64(v);
  }
  return r;
}

}  // namespace tk1
