#pragma once

#include "common.hpp"

namespace tk1 {

/* Element of (Z/p^m)[t]/(t^(p^n) - 1): one residue per power of t. */
struct CoeffElt {
  RingParams rp;
  std::vector<u64> c;  /* size p^n, entries mod p^m */

  CoeffElt() = default;
  explicit CoeffElt(RingParams r) : rp(r), c(r.pn(), 0) {}
  static CoeffElt scalar(RingParams r, u64 v) {
    CoeffElt x(r);
    x.c[0] = v % r.pm();
    return x;
  }
  static CoeffElt t_power(RingParams r, u64 z, u64 v = 1) {
    CoeffElt x(r);
    x.c[z % r.pn()] = v % r.pm();
    return x;
  }

  bool is_zero() const {
    for (u64 v : c) if (v) return false;
    return true;
  }
  bool operator==(const CoeffElt&) const = default;
};

CoeffElt coeff_add(const CoeffElt& a, const CoeffElt& b);
CoeffElt coeff_sub(const CoeffElt& a, const CoeffElt& b);
CoeffElt coeff_neg(const CoeffElt& a);
CoeffElt coeff_mul(const CoeffElt& a, const CoeffElt& b);
CoeffElt coeff_scalar_mul(const CoeffElt& a, u64 s);

/* t -> t^p on the group-like part (semilinear Frobenius of the coefficient ring). */
CoeffElt coeff_frobenius(const CoeffElt& a);

/* Augmentation t -> 1. */
u64 coeff_aug(const CoeffElt& a);

bool coeff_is_unit(const CoeffElt& a);

/* Inverse of a unit (augmentation prime to p), via Newton iteration. */
CoeffElt coeff_invert(const CoeffElt& a);

/* Change precision: lift keeps residues, reduce truncates. */
CoeffElt coeff_reduce(const CoeffElt& a, unsigned new_m);

/* Exact division by p^k; fails if any entry is not divisible. */
CoeffElt coeff_div_exact(const CoeffElt& a, unsigned k);

/* ---- Z[zeta_p] with eager reduction: basis 1, zeta, ..., zeta^(p-2). ----
   Coordinates are exact signed integers (character-table work) and the same
   layout reduced mod p^m is used where truncation is wanted. */
struct CycloElt {
  unsigned p = 5;
  std::vector<i64> a;  /* size p-1 */

  CycloElt() = default;
  explicit CycloElt(unsigned pp) : p(pp), a(pp - 1, 0) {}
  static CycloElt integer(unsigned pp, i64 v) {
    CycloElt x(pp);
    x.a[0] = v;
    return x;
  }
  /* zeta^k for any integer k, with zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2)) */
  static CycloElt root(unsigned pp, long k);

  bool is_zero() const {
    for (i64 v : a) if (v) return false;
    return true;
  }
  bool operator==(const CycloElt&) const = default;
};

CycloElt cyclo_add(const CycloElt& x, const CycloElt& y);
CycloElt cyclo_sub(const CycloElt& x, const CycloElt& y);
CycloElt cyclo_neg(const CycloElt& x);
CycloElt cyclo_mul(const CycloElt& x, const CycloElt& y);
CycloElt cyclo_scalar_mul(const CycloElt& x, i64 s);
/* complex conjugation: zeta -> zeta^(-1) */
CycloElt cyclo_conj(const CycloElt& x);
/* galois twist zeta -> zeta^s, s prime to p */
CycloElt cyclo_galois(const CycloElt& x, long s);
std::vector<u64> cyclo_mod(const CycloElt& x, u64 mod);

}  // namespace tk1
