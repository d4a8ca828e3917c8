#pragma once

#include <map>
#include <string>

#include "coeff.hpp"
#include "group.hpp"

namespace tk1 {

/* Commutative coefficient scheme: an elementary-abelian coordinate group
   (subset of the word coordinates a..f) tensored with Gamma/Gamma^(p^n).
   All the quotients U_i/V_i and the coarser comparison quotients are of this
   shape, with quotient maps given by coordinate killing. */
struct Scheme {
  RingParams rp;
  unsigned mask = 0;  /* bit i set iff word coordinate i survives */

  unsigned rank() const { return unsigned(__builtin_popcount(mask)); }
  u64 gsize() const { return ipow(rp.p, rank()); }
  u64 size() const { return gsize() * rp.pn(); }

  /* packed group index of a coordinate tuple (only masked coords used) */
  u32 gindex(const GroupElt& g) const {
    u32 idx = 0;
    for (unsigned i = 0; i < 6; ++i)
      if (mask & (1u << i)) idx = idx * rp.p + g.w[i];
    return idx;
  }
  GroupElt gdecode(u32 idx) const {
    GroupElt g;
    for (int i = 5; i >= 0; --i)
      if (mask & (1u << unsigned(i))) { g.w[size_t(i)] = idx % rp.p; idx /= rp.p; }
    return g;
  }
  bool operator==(const Scheme&) const = default;
};

Scheme scheme_for_quotient(RingParams rp, Sub u, Sub v);
Scheme scheme_coords(RingParams rp, unsigned mask);
std::string scheme_tag(const Scheme& s);                       /* "W2", "Q_cd", ... */
std::optional<Scheme> scheme_from_tag(RingParams rp, const std::string& tag);

/* Dense element of the commutative scheme ring, layout group-major:
   v[gidx * p^n + z]. */
struct DenseElt {
  Scheme sch;
  std::vector<u64> v;

  DenseElt() = default;
  explicit DenseElt(Scheme s) : sch(s), v(s.size(), 0) {}
  static DenseElt one(Scheme s) {
    DenseElt x(s);
    x.v[0] = 1 % s.rp.pm();
    return x;
  }
  static DenseElt scalar(Scheme s, u64 c) {
    DenseElt x(s);
    x.v[0] = c % s.rp.pm();
    return x;
  }
  u64& at(u32 gidx, u64 z) { return v[gidx * sch.rp.pn() + z]; }
  u64 at(u32 gidx, u64 z) const { return v[gidx * sch.rp.pn() + z]; }
  bool is_zero() const {
    for (u64 x : v) if (x) return false;
    return true;
  }
  bool operator==(const DenseElt&) const = default;
};

DenseElt gr_add(const DenseElt& a, const DenseElt& b);
DenseElt gr_sub(const DenseElt& a, const DenseElt& b);
DenseElt gr_neg(const DenseElt& a);
DenseElt gr_scalar_mul(const DenseElt& a, u64 s);
DenseElt gr_coeff_mul(const DenseElt& a, const CoeffElt& c);  /* by an element of R */
DenseElt gr_mul(const DenseElt& a, const DenseElt& b);
DenseElt gr_pow(const DenseElt& a, u64 k);
u64 gr_aug(const DenseElt& a);           /* all coords and t -> 1 */
bool gr_is_unit(const DenseElt& a);
DenseElt gr_inv(const DenseElt& a);      /* Newton over the local ring */
/* ring endomorphism w t^z -> w^p t^(pz) = t^(pz) (exponent-p group) */
DenseElt gr_frobenius(const DenseElt& a);
DenseElt gr_reduce(const DenseElt& a, unsigned new_m);
DenseElt gr_div_exact(const DenseElt& a, unsigned k);

/* coordinate-killing ring map onto a scheme whose mask is a subset */
DenseElt gr_project(const DenseElt& a, const Scheme& target);
/* inclusion of a subscheme ring (mask superset target->source) */
DenseElt gr_include(const DenseElt& a, const Scheme& target);
/* restriction of scalars trace along the coordinate subgroup B <= A:
   Tr(x) = [A:B] * (part of x supported on B). */
DenseElt comm_trace(const DenseElt& a, const Scheme& target);
/* same map computed from the full multiplication matrix (cross-check path) */
DenseElt comm_trace_matrix(const DenseElt& a, const Scheme& target);
/* norm: determinant of the multiplication matrix of x on A over B */
DenseElt comm_norm(const DenseElt& a, const Scheme& target);

/* h_g = 1 + g + ... + g^(p-1) for a coordinate direction inside a scheme */
DenseElt h_line(const Scheme& s, const GroupElt& dir);
DenseElt basis_elt(const Scheme& s, const GroupElt& w, u64 z = 0, u64 coeff = 1);

/* determinant over the scheme ring by elimination with unit-augmentation
   pivots (lowest-row tie break); Leibniz fallback for tiny singular blocks */
DenseElt gr_det(std::vector<std::vector<DenseElt>> mat, unsigned leibniz_cap = 6);

/* ---- sparse elements of the full (noncommutative) group algebra ---- */
struct GSparse {
  RingParams rp;
  /* (finite-index * p^n + z) -> coefficient; kept sorted and nonzero */
  std::vector<std::pair<u64, u64>> terms;

  GSparse() = default;
  explicit GSparse(RingParams r) : rp(r) {}
  static GSparse one(RingParams r) {
    GSparse x(r);
    if (1 % r.pm()) x.terms = {{0, 1 % r.pm()}};
    return x;
  }
  static GSparse monomial(RingParams r, const GroupElt& g, u64 coeff = 1);
  void add_term(const GroupElt& g, unsigned p, u64 coeff);
  bool operator==(const GSparse&) const = default;
};

GSparse gs_add(const GSparse& a, const GSparse& b);
GSparse gs_sub(const GSparse& a, const GSparse& b);
GSparse gs_scalar_mul(const GSparse& a, u64 s);
GSparse gs_mul(const GSparse& a, const GSparse& b);
u64 gs_aug(const GSparse& a);
bool gs_is_unit(const GSparse& a);
GSparse gs_reduce(const GSparse& a, unsigned new_m);
/* image under the coordinate quotient onto a scheme (element must be
   supported on the subgroup the scheme came from, enforced by caller) */
DenseElt gs_project(const GSparse& a, const Scheme& target);
GroupElt gs_decode(const GSparse& a, u64 key);

/* dense vector over the full finite group x Gamma; used for log series */
struct GDense {
  RingParams rp;
  std::vector<u64> v;  /* idx = finite-index * p^n + z */

  GDense() = default;
  explicit GDense(RingParams r) : rp(r), v(ipow(r.p, 6) * r.pn(), 0) {}
  bool is_zero() const {
    for (u64 x : v) if (x) return false;
    return true;
  }
};

GDense gd_from_sparse(const GSparse& a);
GSparse gd_to_sparse(const GDense& a);
GDense gd_add(const GDense& a, const GDense& b);
GDense gd_sub(const GDense& a, const GDense& b);
GDense gd_scalar_mul(const GDense& a, u64 s);
/* right multiplication by a sparse element (cheap: |dense| * |sparse|) */
GDense gd_mul_sparse(const GDense& a, const GSparse& b);
u64 gd_aug(const GDense& a);
GDense gd_reduce(const GDense& a, unsigned new_m);
GDense gd_div_exact(const GDense& a, unsigned k);

/* ---- dense elements supported on a named subgroup (staging arithmetic) ---- */
struct SubRing {
  RingParams rp;
  Sub s;
  std::vector<u16>* mul_table;  /* |S| x |S| product indices, cached */
  u64 gsize;

  u64 size() const { return gsize * rp.pn(); }
};

SubRing sub_ring(RingParams rp, Sub s);

struct SubDense {
  const SubRing* ring = nullptr;
  std::vector<u64> v;

  SubDense() = default;
  explicit SubDense(const SubRing& r) : ring(&r), v(r.size(), 0) {}
  static SubDense one(const SubRing& r) {
    SubDense x(r);
    x.v[0] = 1 % r.rp.pm();
    return x;
  }
  bool is_zero() const {
    for (u64 x : v) if (x) return false;
    return true;
  }
};

SubDense sd_from_sparse(const SubRing& r, const GSparse& a);
GSparse sd_to_sparse(const SubDense& a);
SubDense sd_add(const SubDense& a, const SubDense& b);
SubDense sd_sub(const SubDense& a, const SubDense& b);
SubDense sd_mul(const SubDense& a, const SubDense& b);
u64 sd_aug(const SubDense& a);
SubDense sd_inv(const SubDense& a);  /* unit in the local ring R[S] */

/* ---- conjugacy module ---- */
struct ConjElt {
  RingParams rp;
  unsigned nclasses = 0;
  std::vector<u64> v;  /* idx = class-id * p^n + z */

  ConjElt() = default;
  ConjElt(RingParams r, unsigned nc) : rp(r), nclasses(nc), v(nc * r.pn(), 0) {}
  u64& at(u32 cid, u64 z) { return v[cid * rp.pn() + z]; }
  u64 at(u32 cid, u64 z) const { return v[cid * rp.pn() + z]; }
  bool is_zero() const {
    for (u64 x : v) if (x) return false;
    return true;
  }
  bool operator==(const ConjElt&) const = default;
};

ConjElt conj_add(const ConjElt& a, const ConjElt& b);
ConjElt conj_sub(const ConjElt& a, const ConjElt& b);
ConjElt conj_scalar_mul(const ConjElt& a, u64 s);
ConjElt conj_reduce(const ConjElt& a, unsigned new_m);

}  // namespace tk1
