#pragma once

#include "context.hpp"
#include "theta.hpp"

namespace tk1 {

/* Smallest t with rad^t contained in p * (whole ring), from the socle
   filtration of the finite group and the order of the Gamma factor. */
unsigned rad_bound_group(const RingParams& rp);
unsigned rad_bound_scheme(const Scheme& s);

/* Truncation data for a radical log series carried to p-adic precision
   `prec` on a ring with rad bound `nilp`: terms of index >= cutoff are
   0 mod p^(prec+den) once the series is rescaled by p^den. */
struct LogPlan {
  unsigned nilp = 0;
  unsigned cutoff = 0;
  unsigned den = 0;
};
LogPlan log_plan(unsigned p, unsigned nilp, unsigned prec);

/* exp and log between an ideal of the generated family and its 1-units;
   termwise division is exact here because a^N <= p a keeps every partial
   quotient inside the ideal */
DenseElt gr_pexp_ideal(Context& ctx, const DenseElt& x, IdealId id);
DenseElt gr_plog_ideal(Context& ctx, const DenseElt& u, IdealId id);

/* p^den * log of the principal-unit part of a unit, exact mod p^(prec+den).
   A forced denominator must dominate the plan's own. Input precision must
   equal prec + den. */
struct ScaledLogW {
  unsigned den = 0;
  DenseElt val;
};
ScaledLogW gr_plog_scaled(const DenseElt& u, unsigned prec, unsigned den = 0);

struct ScaledLogG {
  unsigned den = 0;
  GDense val;
};
ScaledLogG gd_plog_scaled(Context& ctx, const GSparse& u, unsigned prec,
                          unsigned den = 0);

/* class-sum projection and the induced Frobenius (finite parts are p-torsion,
   so every class collapses onto the identity class with z -> pz) */
ConjElt conj_project(const ClassTable& ct, const GDense& x);
ConjElt conj_frobenius(const ClassTable& ct, const ConjElt& x);
ConjElt conj_div_exact(const ConjElt& x, unsigned k);

/* The integral logarithm: (1 - phi/p) of the class projection of log u.
   Coefficients of u are read as canonical integer lifts; the division by p
   is exact by construction or the call fails. Output precision m_out
   (defaults to the context's m). */
ConjElt integral_log(Context& ctx, const GSparse& u, unsigned m_out = 0);

/* abelianized coordinate sum of a conjugacy element; needs m >= n */
GroupElt omega_ab(Context& ctx, const ConjElt& x);

/* log of every norm component of u against the pushed-forward log of u */
CheckReport log_norm_compat(Context& ctx, const GSparse& u);

/* integral log against the norm family: theta_i(Gamma u) must match the
   log of theta_i(u) corrected by the matching power of the Frobenius twist */
CheckReport gamma_theta_identity(Context& ctx, const GSparse& u);

}  // namespace tk1
