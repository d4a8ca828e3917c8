#pragma once

#include <map>
#include <memory>

#include "groupring.hpp"
#include "solver.hpp"

namespace tk1 {

/* The five components of the subquotient family.  Component i is the pair
   (U_i, V_i) with abelian quotient W_i = U_i/V_i. */
enum class Comp : unsigned { c0 = 0, c1, c2t, c2, c3 };

inline constexpr std::array<Comp, 5> kComps = {Comp::c0, Comp::c1, Comp::c2t,
                                               Comp::c2, Comp::c3};

Sub comp_u(Comp c);
Sub comp_v(Comp c);
const char* comp_name(Comp c);                       /* "0", "1", "2t", "2", "3" */
std::optional<Comp> comp_from_name(const std::string& s);
/* log_p of the index [G : U_i]: 0, 1, 1, 2, 3 */
unsigned comp_index_exp(Comp c);

/* Named generating sets of the congruence submodules and ideals. */
enum class IdealId { I1, I2t, I2, I3, I2pp, J1, J2t, J2, J3 };

inline constexpr std::array<IdealId, 9> kIdeals = {
    IdealId::I1, IdealId::I2t, IdealId::I2, IdealId::I3, IdealId::I2pp,
    IdealId::J1, IdealId::J2t, IdealId::J2, IdealId::J3};

const char* ideal_name(IdealId id);
std::optional<IdealId> ideal_from_name(const std::string& s);
Comp ideal_comp(IdealId id);
/* smallest N with (ideal)^N contained in p * (ideal); drives series cutoffs */
unsigned ideal_nilpotency(IdealId id);

/* One generator: p^ppow * base * prod_i h_{line_i}, t-free. */
struct IdealGen {
  unsigned ppow = 0;
  GroupElt base;
  std::vector<GroupElt> lines;
};

std::vector<IdealGen> ideal_gens(IdealId id, unsigned p);
DenseElt ideal_gen_realize(const IdealGen& g, const Scheme& s);

/* Right-coset decomposition data for sub <= amb: reps is a transversal and
   every finite h in amb factors as h = s * reps[k] with s in sub. */
struct CosetTable {
  Sub amb, sub;
  std::vector<GroupElt> reps;
  std::vector<u32> rep_of;  /* g_index(h) -> k   (only valid for h in amb) */
  std::vector<u32> sub_of;  /* g_index(h) -> g_index(s) */
};

/* Closed-form image of one conjugacy class under the additive theta map;
   terms are (scheme group index, exponent k) meaning a contribution p^k. */
struct ThetaRow {
  std::array<std::vector<std::pair<u32, unsigned>>, 5> terms;
};

/* Shared tables for one parameter triple (p, n, m): class data, coset
   decompositions, the closed theta table, ideal generators and membership
   solvers.  Everything heavy is built once and cached. */
class Context {
 public:
  explicit Context(RingParams rp);
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  const RingParams& rp() const { return rp_; }
  const ClassTable& classes() const { return ct_; }
  /* tuple headroom: the X-row carries p^3, so invert solves at m + 3 */
  unsigned mcap() const { return rp_.m + 3; }

  Scheme scheme(Comp c) const { return scheme(c, rp_.m); }
  Scheme scheme(Comp c, unsigned mexp) const;

  const CosetTable& cosets(Sub amb, Sub sub, bool alt = false);
  const std::vector<ThetaRow>& theta_table();

  const std::vector<IdealGen>& gens(IdealId id);
  const SpanSolver& solver(IdealId id, unsigned mexp);

  /* t-sliced membership; coefficients are reported per generator in the
     ideal_gens order.  For I2 the one generator dependency is normalized so
     that the p*h_zeta coefficient at c = 0 is reduced below p. */
  std::optional<std::vector<CoeffElt>> ideal_coords(const DenseElt& x, IdealId id);
  bool ideal_member(const DenseElt& x, IdealId id);

 private:
  RingParams rp_;
  ClassTable ct_;
  std::map<std::tuple<Sub, Sub, bool>, std::unique_ptr<CosetTable>> cosets_;
  std::vector<ThetaRow> theta_;
  std::map<IdealId, std::vector<IdealGen>> gens_;
  std::map<std::pair<IdealId, unsigned>, std::unique_ptr<SpanSolver>> solvers_;
};

}  // namespace tk1
