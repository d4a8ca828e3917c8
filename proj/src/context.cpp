#include "context.hpp"

#include <algorithm>

namespace tk1 {

Sub comp_u(Comp c) {
  switch (c) {
    case Comp::c0: return Sub::U0;
    case Comp::c1: return Sub::U1;
    case Comp::c2t: return Sub::U2t;
    case Comp::c2: return Sub::U2;
    case Comp::c3: return Sub::U3;
  }
  fail(Err::invalid_arg, "bad component");
}

Sub comp_v(Comp c) {
  switch (c) {
    case Comp::c0: return Sub::V0;
    case Comp::c1: return Sub::V1;
    case Comp::c2t: return Sub::V2t;
    case Comp::c2: return Sub::V2;
    case Comp::c3: return Sub::V3;
  }
  fail(Err::invalid_arg, "bad component");
}

const char* comp_name(Comp c) {
  switch (c) {
    case Comp::c0: return "0";
    case Comp::c1: return "1";
    case Comp::c2t: return "2t";
    case Comp::c2: return "2";
    case Comp::c3: return "3";
  }
  return "?";
}

std::optional<Comp> comp_from_name(const std::string& s) {
  for (Comp c : kComps)
    if (s == comp_name(c)) return c;
  return std::nullopt;
}

unsigned comp_index_exp(Comp c) {
  switch (c) {
    case Comp::c0: return 0;
    case Comp::c1: return 1;
    case Comp::c2t: return 1;
    case Comp::c2: return 2;
    case Comp::c3: return 3;
  }
  return 0;
}

const char* ideal_name(IdealId id) {
  switch (id) {
    case IdealId::I1: return "I1";
    case IdealId::I2t: return "I2t";
    case IdealId::I2: return "I2";
    case IdealId::I3: return "I3";
    case IdealId::I2pp: return "I2pp";
    case IdealId::J1: return "J1";
    case IdealId::J2t: return "J2t";
    case IdealId::J2: return "J2";
    case IdealId::J3: return "J3";
  }
  return "?";
}

std::optional<IdealId> ideal_from_name(const std::string& s) {
  for (IdealId id : kIdeals)
    if (s == ideal_name(id)) return id;
  return std::nullopt;
}

Comp ideal_comp(IdealId id) {
  switch (id) {
    case IdealId::I1:
    case IdealId::J1: return Comp::c1;
    case IdealId::I2t:
    case IdealId::J2t: return Comp::c2t;
    case IdealId::I2:
    case IdealId::I2pp:
    case IdealId::J2: return Comp::c2;
    case IdealId::I3:
    case IdealId::J3: return Comp::c3;
  }
  fail(Err::invalid_arg, "bad ideal");
}

unsigned ideal_nilpotency(IdealId id) {
  switch (id) {
    case IdealId::I1:
    case IdealId::J1: return 3;
    default: return 2;
  }
}

namespace {

GroupElt word(unsigned p, unsigned a, unsigned b, unsigned c, unsigned d,
              unsigned e, unsigned f) {
  return g_make(a, b, c, d, e, f, p);
}

}  // namespace

std::vector<IdealGen> ideal_gens(IdealId id, unsigned p) {
  std::vector<IdealGen> out;
  const GroupElt delta = word(p, 0, 0, 0, 1, 0, 0);
  const GroupElt eps = word(p, 0, 0, 0, 0, 1, 0);
  const GroupElt zeta = word(p, 0, 0, 0, 0, 0, 1);
  switch (id) {
    case IdealId::I1:
      for (unsigned d = 0; d < p; ++d)
        for (unsigned e = 0; e < p; ++e)
          out.push_back({1, word(p, 0, 0, 0, d, e, 0), {}});
      for (unsigned a = 1; a < p; ++a)
        for (unsigned e = 0; e < p; ++e)
          out.push_back({0, word(p, a, 0, 0, 0, e, 0), {delta}});
      for (unsigned c = 1; c < p; ++c)
        for (unsigned d = 0; d < p; ++d)
          out.push_back({0, word(p, 0, 0, c, d, 0, 0), {eps}});
      for (unsigned a = 1; a < p; ++a)
        for (unsigned c = 1; c < p; ++c)
          for (unsigned mm = 0; mm < p; ++mm)
            out.push_back(
                {0, word(p, a, 0, c, 0, mm, 0), {word(p, 0, 0, 0, p - a, c, 0)}});
      break;
    case IdealId::I2t:
      for (unsigned b = 1; b < p; ++b)
        for (unsigned c = 0; c < p; ++c)
          out.push_back({0, word(p, 0, b, c, 0, 0, 0), {delta}});
      for (unsigned c = 0; c < p; ++c)
        for (unsigned d = 0; d < p; ++d)
          out.push_back({1, word(p, 0, 0, c, d, 0, 0), {}});
      break;
    case IdealId::I2:
      for (unsigned f = 0; f < p; ++f)
        out.push_back({2, word(p, 0, 0, 0, 0, 0, f), {}});
      for (unsigned c = 0; c < p; ++c)
        out.push_back({1, word(p, 0, 0, c, 0, 0, 0), {zeta}});
      for (unsigned b = 1; b < p; ++b)
        for (unsigned c = 1; c < p; ++c)
          out.push_back({0, word(p, 0, b, c, 0, 0, 0), {zeta}});
      for (unsigned b = 1; b < p; ++b)
        for (unsigned f = 0; f < p; ++f)
          out.push_back({1, word(p, 0, b, 0, 0, 0, f), {}});
      break;
    case IdealId::I3:
      for (unsigned f = 0; f < p; ++f)
        out.push_back({3, word(p, 0, 0, 0, 0, 0, f), {}});
      for (unsigned e = 1; e < p; ++e)
        out.push_back({2, word(p, 0, 0, 0, 0, e, 0), {zeta}});
      for (unsigned c = 1; c < p; ++c)
        out.push_back({1, word(p, 0, 0, c, 0, 0, 0), {eps, zeta}});
      break;
    case IdealId::I2pp:
      for (unsigned b = 0; b < p; ++b)
        for (unsigned c = 1; c < p; ++c)
          out.push_back({0, word(p, 0, b, c, 0, 0, 0), {zeta}});
      for (unsigned b = 0; b < p; ++b)
        for (unsigned f = 0; f < p; ++f)
          out.push_back({1, word(p, 0, b, 0, 0, 0, f), {}});
      break;
    case IdealId::J1: {
      /* the p+1 cyclic directions inside the (d, e) coordinate plane */
      std::vector<GroupElt> dirs;
      dirs.push_back(delta);
      for (unsigned k = 0; k < p; ++k) dirs.push_back(word(p, 0, 0, 0, k, 1, 0));
      for (const GroupElt& dir : dirs)
        for (unsigned a = 0; a < p; ++a)
          for (unsigned c = 0; c < p; ++c)
            for (unsigned s = 0; s < p; ++s) {
              /* coset transversal of <dir>: free coordinate opposite the line */
              GroupElt w = dir.w[3] == 1 && dir.w[4] == 0
                               ? word(p, a, 0, c, 0, s, 0)
                               : word(p, a, 0, c, s, 0, 0);
              out.push_back({0, w, {dir}});
            }
      for (unsigned a = 0; a < p; ++a)
        for (unsigned c = 0; c < p; ++c)
          for (unsigned d = 0; d < p; ++d)
            for (unsigned e = 0; e < p; ++e)
              out.push_back({1, word(p, a, 0, c, d, e, 0), {}});
      break;
    }
    case IdealId::J2t:
      for (unsigned b = 0; b < p; ++b)
        for (unsigned c = 0; c < p; ++c)
          out.push_back({0, word(p, 0, b, c, 0, 0, 0), {delta}});
      for (unsigned b = 0; b < p; ++b)
        for (unsigned c = 0; c < p; ++c)
          for (unsigned d = 0; d < p; ++d)
            out.push_back({1, word(p, 0, b, c, d, 0, 0), {}});
      break;
    case IdealId::J2:
      for (unsigned b = 0; b < p; ++b)
        for (unsigned c = 0; c < p; ++c)
          out.push_back({0, word(p, 0, b, c, 0, 0, 0), {zeta}});
      for (unsigned b = 0; b < p; ++b)
        for (unsigned c = 0; c < p; ++c)
          for (unsigned f = 0; f < p; ++f)
            out.push_back({1, word(p, 0, b, c, 0, 0, f), {}});
      break;
    case IdealId::J3:
      for (unsigned c = 0; c < p; ++c)
        for (unsigned e = 0; e < p; ++e)
          out.push_back({0, word(p, 0, 0, c, 0, e, 0), {zeta}});
      for (unsigned c = 0; c < p; ++c)
        for (unsigned e = 0; e < p; ++e)
          for (unsigned f = 0; f < p; ++f)
            out.push_back({1, word(p, 0, 0, c, 0, e, f), {}});
      break;
  }
  return out;
}

DenseElt ideal_gen_realize(const IdealGen& g, const Scheme& s) {
  DenseElt x = basis_elt(s, g.base, 0, ipow(s.rp.p, g.ppow) % s.rp.pm());
  for (const GroupElt& dir : g.lines) x = gr_mul(x, h_line(s, dir));
  return x;
}

Context::Context(RingParams rp) : rp_(rp) {
  rp_.validate();
  ct_ = build_class_table(rp_.p);
}

Scheme Context::scheme(Comp c, unsigned mexp) const {
  return scheme_for_quotient(rp_.with_m(mexp), comp_u(c), comp_v(c));
}

const CosetTable& Context::cosets(Sub amb, Sub sub, bool alt) {
  auto key = std::make_tuple(amb, sub, alt);
  auto it = cosets_.find(key);
  if (it != cosets_.end()) return *it->second;

  auto tab = std::make_unique<CosetTable>();
  tab->amb = amb;
  tab->sub = sub;
  tab->reps = alt ? coset_reps_alt(amb, sub, rp_.p) : coset_reps(amb, sub, rp_.p);
  tab->rep_of.assign(ipow(rp_.p, 6), 0);
  tab->sub_of.assign(ipow(rp_.p, 6), 0);
  std::vector<GroupElt> inv;
  inv.reserve(tab->reps.size());
  for (const GroupElt& r : tab->reps) inv.push_back(g_inv(r, rp_.p, 1));
  for (const GroupElt& h : sub_elements(amb, rp_.p)) {
    u32 hi = g_index(h, rp_.p);
    bool found = false;
    for (size_t k = 0; k < tab->reps.size(); ++k) {
      GroupElt s = g_mul(h, inv[k], rp_.p, 1);
      if (sub_contains(sub, s)) {
        tab->rep_of[hi] = u32(k);
        tab->sub_of[hi] = g_index(s, rp_.p);
        found = true;
        break;
      }
    }
    if (!found) fail(Err::math, "transversal does not cover subgroup pair");
  }
  auto& slot = cosets_[key];
  slot = std::move(tab);
  return *slot;
}

const std::vector<ThetaRow>& Context::theta_table() {
  if (!theta_.empty()) return theta_;
  unsigned p = rp_.p;
  std::array<Scheme, 5> sch;
  for (Comp c : kComps) sch[size_t(c)] = scheme(c);
  theta_.resize(ct_.count());
  for (size_t ci = 0; ci < ct_.count(); ++ci) {
    const ConjClass& cl = ct_.at(ci);
    const auto& pr = cl.params;
    ThetaRow& row = theta_[ci];
    auto put = [&](Comp comp, const GroupElt& g, unsigned ppow) {
      row.terms[size_t(comp)].push_back({sch[size_t(comp)].gindex(g), ppow});
    };
    switch (cl.fam) {
      case Family::I:
        put(Comp::c0, word(p, pr[0], pr[1], pr[2], 0, 0, 0), 0);
        break;
      case Family::II: {
        unsigned a = pr[0], c = pr[1], mm = pr[2];
        put(Comp::c0, word(p, a, 0, c, 0, 0, 0), 0);
        for (unsigned s = 0; s < p; ++s)
          put(Comp::c1, word(p, a, 0, c, (s * (p - a)) % p, (mm + s * c) % p, 0), 0);
        break;
      }
      case Family::III: {
        unsigned a = pr[0], e = pr[1];
        put(Comp::c0, word(p, a, 0, 0, 0, 0, 0), 0);
        for (unsigned s = 0; s < p; ++s)
          put(Comp::c1, word(p, a, 0, 0, s, e, 0), 0);
        break;
      }
      case Family::IV: {
        unsigned b = pr[0], c = pr[1];
        put(Comp::c0, word(p, 0, b, c, 0, 0, 0), 0);
        for (unsigned s = 0; s < p; ++s) put(Comp::c2t, word(p, 0, b, c, s, 0, 0), 0);
        for (unsigned s = 0; s < p; ++s) put(Comp::c2, word(p, 0, b, c, 0, 0, s), 0);
        break;
      }
      case Family::V: {
        unsigned b = pr[0], f = pr[1];
        put(Comp::c0, word(p, 0, b, 0, 0, 0, 0), 0);
        for (unsigned s = 0; s < p; ++s) put(Comp::c2t, word(p, 0, b, 0, s, 0, 0), 0);
        put(Comp::c2, word(p, 0, b, 0, 0, 0, f), 1);
        break;
      }
      case Family::VI: {
        unsigned c = pr[0], d = pr[1];
        put(Comp::c0, word(p, 0, 0, c, 0, 0, 0), 0);
        for (unsigned s = 0; s < p; ++s) put(Comp::c1, word(p, 0, 0, c, d, s, 0), 0);
        put(Comp::c2t, word(p, 0, 0, c, d, 0, 0), 1);
        break;
      }
      case Family::VII: {
        unsigned c = pr[0];
        put(Comp::c0, word(p, 0, 0, c, 0, 0, 0), 0);
        for (unsigned s = 0; s < p; ++s) put(Comp::c1, word(p, 0, 0, c, 0, s, 0), 0);
        put(Comp::c2t, word(p, 0, 0, c, 0, 0, 0), 1);
        for (unsigned s = 0; s < p; ++s) put(Comp::c2, word(p, 0, 0, c, 0, 0, s), 1);
        for (unsigned s = 0; s < p; ++s)
          for (unsigned u = 0; u < p; ++u)
            put(Comp::c3, word(p, 0, 0, c, 0, s, u), 1);
        break;
      }
      case Family::VIII: {
        unsigned d = pr[0], e = pr[1];
        put(Comp::c0, word(p, 0, 0, 0, 0, 0, 0), 0);
        put(Comp::c1, word(p, 0, 0, 0, d, e, 0), 1);
        put(Comp::c2t, word(p, 0, 0, 0, d, 0, 0), 1);
        break;
      }
      case Family::IX: {
        unsigned e = pr[0];
        put(Comp::c0, word(p, 0, 0, 0, 0, 0, 0), 0);
        put(Comp::c1, word(p, 0, 0, 0, 0, e, 0), 1);
        put(Comp::c2t, word(p, 0, 0, 0, 0, 0, 0), 1);
        for (unsigned s = 0; s < p; ++s) put(Comp::c2, word(p, 0, 0, 0, 0, 0, s), 1);
        for (unsigned s = 0; s < p; ++s) put(Comp::c3, word(p, 0, 0, 0, 0, e, s), 2);
        break;
      }
      case Family::X: {
        unsigned f = pr[0];
        put(Comp::c0, word(p, 0, 0, 0, 0, 0, 0), 0);
        put(Comp::c1, word(p, 0, 0, 0, 0, 0, 0), 1);
        put(Comp::c2t, word(p, 0, 0, 0, 0, 0, 0), 1);
        put(Comp::c2, word(p, 0, 0, 0, 0, 0, f), 2);
        put(Comp::c3, word(p, 0, 0, 0, 0, 0, f), 3);
        break;
      }
    }
  }
  return theta_;
}

const std::vector<IdealGen>& Context::gens(IdealId id) {
  auto it = gens_.find(id);
  if (it != gens_.end()) return it->second;
  return gens_[id] = ideal_gens(id, rp_.p);
}

const SpanSolver& Context::solver(IdealId id, unsigned mexp) {
  auto key = std::make_pair(id, mexp);
  auto it = solvers_.find(key);
  if (it != solvers_.end()) return *it->second;

  Scheme sch = scheme(ideal_comp(id), mexp);
  auto sv = std::make_unique<SpanSolver>(rp_.p, mexp, sch.gsize());
  for (const IdealGen& g : gens(id)) {
    DenseElt x = ideal_gen_realize(g, sch);
    std::vector<u64> col(sch.gsize());
    for (u64 i = 0; i < sch.gsize(); ++i) col[i] = x.v[i * sch.rp.pn()];
    sv->add_generator(col);
  }
  sv->finish();
  auto& slot = solvers_[key];
  slot = std::move(sv);
  return *slot;
}

std::optional<std::vector<CoeffElt>> Context::ideal_coords(const DenseElt& x,
                                                           IdealId id) {
  Scheme sch = x.sch;
  if (sch != scheme(ideal_comp(id), sch.rp.m))
    fail(Err::invalid_arg, "element not in the ideal's ambient ring");
  const SpanSolver& sv = solver(id, sch.rp.m);
  size_t ng = sv.generators();
  std::vector<CoeffElt> coords(ng, CoeffElt(sch.rp));
  std::vector<u64> slice(sch.gsize());
  for (u64 z = 0; z < sch.rp.pn(); ++z) {
    for (u64 i = 0; i < sch.gsize(); ++i) slice[i] = x.v[i * sch.rp.pn() + z];
    auto sol = sv.solve(slice);
    if (!sol) return std::nullopt;
    if (id == IdealId::I2) {
      /* one relation: sum_f (p^2 zeta^f) = p * (p h_zeta at c = 0); shift
         multiples of it so the h_zeta coefficient at c = 0 drops below p */
      unsigned p = sch.rp.p;
      u64 c0 = (*sol)[p];
      u64 j = c0 / p;
      (*sol)[p] = c0 % p;
      for (unsigned f = 0; f < p; ++f)
        (*sol)[f] = addmod((*sol)[f], j % sch.rp.pm(), sch.rp.pm());
    }
    for (size_t i = 0; i < ng; ++i) coords[i].c[z] = (*sol)[i];
  }
  return coords;
}

bool Context::ideal_member(const DenseElt& x, IdealId id) {
  Scheme sch = x.sch;
  if (sch != scheme(ideal_comp(id), sch.rp.m))
    fail(Err::invalid_arg, "element not in the ideal's ambient ring");
  const SpanSolver& sv = solver(id, sch.rp.m);
  std::vector<u64> slice(sch.gsize());
  for (u64 z = 0; z < sch.rp.pn(); ++z) {
    for (u64 i = 0; i < sch.gsize(); ++i) slice[i] = x.v[i * sch.rp.pn() + z];
    if (!sv.contains(slice)) return false;
  }
  return true;
}

}  // namespace tk1
