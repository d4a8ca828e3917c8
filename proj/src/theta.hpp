#pragma once

#include "context.hpp"

namespace tk1 {

/* Value of the additive or multiplicative theta family: one element per
   component, all W-rings at a shared precision. */
struct ThetaTuple {
  std::array<DenseElt, 5> y;

  const DenseElt& of(Comp c) const { return y[size_t(c)]; }
  DenseElt& of(Comp c) { return y[size_t(c)]; }
  bool operator==(const ThetaTuple&) const = default;
};

struct CheckReport {
  bool pass = true;
  std::string first_fail;

  void note(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      first_fail = what;
    }
  }
};

/* scalar with a t-profile, as an element of a scheme ring */
DenseElt embed_t_profile(const Scheme& s, const CoeffElt& c);
/* inverse direction; errors unless the group support is the identity */
CoeffElt t_profile(const DenseElt& x);

/* closed-form additive theta map; input at precision m, output at mcap */
ThetaTuple theta_add(Context& ctx, const ConjElt& x);

/* one component of the additive map at an arbitrary precision (linear in x,
   coefficients read as canonical lifts) */
DenseElt theta_apply(Context& ctx, const ConjElt& x, Comp i, unsigned mexp);

/* the defining coset-sum route (projection of the conjugacy trace) */
DenseElt trace_project(Context& ctx, const ConjElt& x, Comp i, unsigned mexp,
                       bool alt = false);
ThetaTuple theta_add_brute(Context& ctx, const ConjElt& x, bool alt = false);

/* inverse on the image: solves the component memberships at mcap and reads
   the class coefficients back off; errors if a membership fails */
ConjElt theta_add_invert(Context& ctx, const ThetaTuple& t);

/* the six trace relations plus the four submodule memberships, at precision m */
CheckReport omega_check(Context& ctx, const ThetaTuple& t);

/* multiplication matrix of u on the coset space amb/sub, entries pushed to
   the target scheme; u must be supported on amb */
std::vector<std::vector<DenseElt>> norm_matrix(Context& ctx, const GSparse& u,
                                               Sub amb, Sub sub,
                                               const Scheme& target,
                                               bool alt = false);

/* norm-map components: determinant of the multiplication matrix (component 3
   staged through the intermediate subgroup unless staged = false) */
DenseElt theta_mult(Context& ctx, const GSparse& u, Comp i, bool staged = true,
                    bool alt = false);
ThetaTuple theta_mult_all(Context& ctx, const GSparse& u, bool staged = true,
                          bool alt = false);

/* norm relations plus the Frobenius congruences modulo the I-family */
CheckReport psi_check(Context& ctx, const ThetaTuple& t);
/* the coarser congruences modulo the J-family */
CheckReport j_congruence_check(Context& ctx, const ThetaTuple& t);

/* coordinate-section stability of every ideal generator */
CheckReport sp_stability_check(Context& ctx);

/* one trial of the closing implication: build admissible (u2, u3) from random
   sigma data, verify the premises, then test the sharper membership */
CheckReport final_implication_check(Context& ctx, Rng& rng);

}  // namespace tk1
