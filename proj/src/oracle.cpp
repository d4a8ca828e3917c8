#include "oracle.hpp"

#include <sstream>

namespace tk1 {

namespace {

constexpr size_t cA = 0, cB = 1, cC = 2, cD = 3, cE = 4, cF = 5;

unsigned lam_at(const CharSpec& spec, const GroupElt& g, unsigned p) {
  unsigned e = 0;
  for (size_t i = 0; i < 6; ++i) e = (e + spec.lam[i] * g.w[i]) % p;
  return e;
}

}  // namespace

std::vector<CharSpec> character_specs(unsigned p) {
  std::vector<CharSpec> out;
  out.reserve(2 * p * p * p / 2 + 3 * p * (p - 1));
  for (unsigned k = 0; k < p; ++k)
    for (unsigned u = 0; u < p; ++u)
      for (unsigned v = 0; v < p; ++v) {
        CharSpec s;
        s.i = Comp::c0;
        s.lam[cA] = u;
        s.lam[cB] = v;
        s.lam[cC] = k;
        out.push_back(s);
      }
  for (unsigned k = 0; k < p; ++k)
    for (unsigned sd = 1; sd < p; ++sd) {
      CharSpec s;
      s.i = Comp::c1;
      s.lam[cC] = k;
      s.lam[cD] = sd;
      out.push_back(s);
    }
  for (unsigned j = 1; j < p; ++j)
    for (unsigned u = 0; u < p; ++u)
      for (unsigned v = 0; v < p; ++v) {
        CharSpec s;
        s.i = Comp::c1;
        s.lam[cA] = u;
        s.lam[cD] = v;
        s.lam[cE] = j;
        out.push_back(s);
      }
  for (unsigned i = 1; i < p; ++i)
    for (unsigned w = 0; w < p; ++w) {
      CharSpec s;
      s.i = Comp::c2;
      s.lam[cB] = w;
      s.lam[cF] = i;
      out.push_back(s);
    }
  return out;
}

unsigned char_degree(const CharSpec& spec, unsigned p) {
  return unsigned(ipow(p, comp_index_exp(spec.i)));
}

std::string char_label(const CharSpec& spec) {
  std::ostringstream os;
  os << "ind" << comp_name(spec.i);
  for (size_t i = 0; i < 6; ++i) os << (i ? "." : ":") << spec.lam[i];
  return os.str();
}

CycloElt char_value(Context& ctx, const CharSpec& spec, const GroupElt& g) {
  unsigned p = ctx.rp().p;
  Sub ui = comp_u(spec.i);
  const CosetTable& t = ctx.cosets(Sub::U0, ui);
  CycloElt acc(p);
  for (const GroupElt& r : t.reps) {
    GroupElt h = g_mul(g_mul(g_inv(r, p, 1), g, p, 1), r, p, 1);
    if (!sub_contains(ui, h)) continue;
    acc = cyclo_add(acc, CycloElt::root(p, long(lam_at(spec, h, p))));
  }
  return acc;
}

std::vector<std::vector<CycloElt>> character_table(Context& ctx) {
  auto specs = character_specs(ctx.rp().p);
  const ClassTable& ct = ctx.classes();
  std::vector<std::vector<CycloElt>> table(specs.size());
  for (size_t si = 0; si < specs.size(); ++si) {
    table[si].reserve(ct.count());
    for (size_t ci = 0; ci < ct.count(); ++ci)
      table[si].push_back(char_value(ctx, specs[si], ct.at(ci).rep));
  }
  return table;
}

CheckReport character_integrity(Context& ctx) {
  CheckReport rep;
  unsigned p = ctx.rp().p;
  const ClassTable& ct = ctx.classes();
  auto specs = character_specs(p);
  rep.note(specs.size() == ct.count(), "character-count");

  u64 gorder = ipow(p, 6);
  u64 sumsq = 0;
  GroupElt id;
  bool degrees = true;
  for (const CharSpec& s : specs) {
    u64 d = char_degree(s, p);
    if (!(char_value(ctx, s, id) == CycloElt::integer(p, i64(d))))
      degrees = false;
    sumsq += d * d;
  }
  rep.note(degrees, "degrees");
  rep.note(sumsq == gorder, "degree-square-sum");

  auto table = character_table(ctx);

  bool rows = true;
  for (size_t x = 0; x < table.size() && rows; ++x)
    for (size_t y = x; y < table.size() && rows; ++y) {
      CycloElt acc(p);
      for (size_t ci = 0; ci < ct.count(); ++ci)
        acc = cyclo_add(
            acc, cyclo_scalar_mul(
                     cyclo_mul(table[x][ci], cyclo_conj(table[y][ci])),
                     i64(ct.at(ci).size)));
      if (!(acc == CycloElt::integer(p, x == y ? i64(gorder) : 0))) rows = false;
    }
  rep.note(rows, "row-orthogonality");

  bool cols = true;
  for (size_t ci = 0; ci < ct.count() && cols; ++ci)
    for (size_t cj = ci; cj < ct.count() && cols; ++cj) {
      CycloElt acc(p);
      for (size_t x = 0; x < table.size(); ++x)
        acc = cyclo_add(acc,
                        cyclo_mul(table[x][ci], cyclo_conj(table[x][cj])));
      i64 want = ci == cj ? i64(gorder / ct.at(ci).size) : 0;
      if (!(acc == CycloElt::integer(p, want))) cols = false;
    }
  rep.note(cols, "column-orthogonality");

  /* each character evaluated through the closed additive table must return
     its own table row */
  const auto& th = ctx.theta_table();
  bool bridge = true;
  for (size_t si = 0; si < specs.size() && bridge; ++si) {
    Scheme sch = ctx.scheme(specs[si].i, 1);
    for (size_t ci = 0; ci < ct.count() && bridge; ++ci) {
      CycloElt acc(p);
      for (auto [gidx, ppow] : th[ci].terms[size_t(specs[si].i)])
        acc = cyclo_add(
            acc, cyclo_scalar_mul(
                     CycloElt::root(
                         p, long(lam_at(specs[si], sch.gdecode(gidx), p))),
                     i64(ipow(p, ppow))));
      if (!(acc == table[si][ci])) bridge = false;
    }
  }
  rep.note(bridge, "theta-bridge");
  return rep;
}

namespace {

/* (Z/p^m)[zeta_p] tensor Gamma/Gamma^(p^n), layout v[i * p^n + z] over the
   power basis 1..zeta^(p-2) */
struct CtRing {
  RingParams rp;
  u64 pm, pn;
  size_t width;

  explicit CtRing(RingParams r)
      : rp(r), pm(r.pm()), pn(r.pn()), width(size_t(r.p - 1) * r.pn()) {}
};

struct CtElem {
  std::vector<u64> v;
  bool operator==(const CtElem&) const = default;
};

CtElem ct_zero(const CtRing& r) { return {std::vector<u64>(r.width, 0)}; }

CtElem ct_one(const CtRing& r) {
  CtElem x = ct_zero(r);
  x.v[0] = 1 % r.pm;
  return x;
}

CtElem ct_sub(const CtRing& r, const CtElem& a, const CtElem& b) {
  CtElem x = a;
  for (size_t i = 0; i < r.width; ++i) x.v[i] = submod(x.v[i], b.v[i], r.pm);
  return x;
}

CtElem ct_neg(const CtRing& r, const CtElem& a) {
  CtElem x = a;
  for (size_t i = 0; i < r.width; ++i) x.v[i] = submod(0, x.v[i], r.pm);
  return x;
}

CtElem ct_mul(const CtRing& r, const CtElem& a, const CtElem& b) {
  unsigned p = r.rp.p;
  CtElem x = ct_zero(r);
  for (unsigned i = 0; i + 1 < p; ++i)
    for (u64 z1 = 0; z1 < r.pn; ++z1) {
      u64 av = a.v[i * r.pn + z1];
      if (!av) continue;
      for (unsigned j = 0; j + 1 < p; ++j)
        for (u64 z2 = 0; z2 < r.pn; ++z2) {
          u64 bv = b.v[j * r.pn + z2];
          if (!bv) continue;
          u64 c = mulmod(av, bv, r.pm);
          u64 zz = (z1 + z2) % r.pn;
          unsigned e = i + j;
          if (e >= p) e -= p;
          if (e == p - 1) {
            for (unsigned t = 0; t + 1 < p; ++t)
              x.v[t * r.pn + zz] = submod(x.v[t * r.pn + zz], c, r.pm);
          } else {
            x.v[e * r.pn + zz] = addmod(x.v[e * r.pn + zz], c, r.pm);
          }
        }
    }
  return x;
}

u64 ct_aug(const CtRing& r, const CtElem& a) {
  u64 s = 0;
  for (u64 x : a.v) s = addmod(s, x, r.pm);
  return s;
}

CtElem ct_inv(const CtRing& r, const CtElem& a) {
  u64 s = ct_aug(r, a);
  if (s % r.rp.p == 0) fail(Err::math, "not a unit in the cyclotomic ring");
  CtElem x = ct_zero(r);
  x.v[0] = unit_inv_mod(s, r.rp.p, r.pm);
  CtElem one = ct_one(r);
  for (int it = 0; it < 64; ++it) {
    CtElem ax = ct_mul(r, a, x);
    if (ax == one) return x;
    CtElem corr = ct_sub(r, one, ct_sub(r, ax, one));
    x = ct_mul(r, x, corr);
  }
  fail(Err::math, "cyclotomic inversion did not settle");
}

CtElem ct_det(const CtRing& r, std::vector<std::vector<CtElem>>& mat) {
  size_t d = mat.size();
  bool flip = false;
  CtElem det = ct_one(r);
  for (size_t col = 0; col < d; ++col) {
    size_t piv = col;
    while (piv < d && ct_aug(r, mat[piv][col]) % r.rp.p == 0) ++piv;
    if (piv == d) fail(Err::math, "induced matrix is singular");
    if (piv != col) {
      std::swap(mat[piv], mat[col]);
      flip = !flip;
    }
    CtElem inv = ct_inv(r, mat[col][col]);
    for (size_t row = col + 1; row < d; ++row) {
      bool empty = true;
      for (u64 x : mat[row][col].v)
        if (x) { empty = false; break; }
      if (empty) continue;
      CtElem q = ct_mul(r, mat[row][col], inv);
      for (size_t j = col; j < d; ++j)
        mat[row][j] = ct_sub(r, mat[row][j], ct_mul(r, q, mat[col][j]));
    }
    det = ct_mul(r, det, mat[col][col]);
  }
  return flip ? ct_neg(r, det) : det;
}

}  // namespace

CheckReport ev_compat(Context& ctx, const GSparse& u, const CharSpec& spec,
                      const ThetaTuple* tup) {
  CheckReport rep;
  unsigned p = u.rp.p;
  CtRing r(u.rp);
  std::vector<std::vector<u64>> zr(p);
  for (unsigned e = 0; e < p; ++e)
    zr[e] = cyclo_mod(CycloElt::root(p, long(e)), r.pm);

  Sub ui = comp_u(spec.i);
  const CosetTable& t = ctx.cosets(Sub::U0, ui);
  size_t d = t.reps.size();
  std::vector<std::vector<CtElem>> mat(d, std::vector<CtElem>(d, ct_zero(r)));
  for (const auto& [key, cv] : u.terms) {
    GroupElt g = gs_decode(u, key);
    GroupElt gf = g;
    gf.z = 0;
    for (size_t j = 0; j < d; ++j) {
      GroupElt h = g_mul(t.reps[j], gf, p, 1);
      u32 hi = g_index(h, p);
      size_t k = t.rep_of[hi];
      GroupElt s = g_from_index(t.sub_of[hi], p);
      unsigned e = lam_at(spec, s, p);
      CtElem& slot = mat[k][j];
      for (unsigned i = 0; i + 1 < p; ++i)
        slot.v[i * r.pn + g.z] =
            addmod(slot.v[i * r.pn + g.z], mulmod(cv, zr[e][i], r.pm), r.pm);
    }
  }
  CtElem rhs = ct_det(r, mat);

  DenseElt y = tup ? tup->of(spec.i) : theta_mult(ctx, u, spec.i);
  CtElem lhs = ct_zero(r);
  for (u32 gi = 0; gi < y.sch.gsize(); ++gi) {
    GroupElt w = y.sch.gdecode(gi);
    unsigned e = lam_at(spec, w, p);
    for (u64 z = 0; z < r.pn; ++z) {
      u64 cv = y.at(gi, z);
      if (!cv) continue;
      for (unsigned i = 0; i + 1 < p; ++i)
        lhs.v[i * r.pn + z] =
            addmod(lhs.v[i * r.pn + z], mulmod(cv, zr[e][i], r.pm), r.pm);
    }
  }
  rep.note(lhs == rhs, std::string("ev-det-") + char_label(spec));
  return rep;
}

std::string character_table_csv(Context& ctx) {
  const ClassTable& ct = ctx.classes();
  auto specs = character_specs(ctx.rp().p);
  auto table = character_table(ctx);
  std::ostringstream os;
  os << "character";
  for (size_t ci = 0; ci < ct.count(); ++ci) os << "," << class_name(ct.at(ci));
  os << "\n";
  for (size_t si = 0; si < specs.size(); ++si) {
    os << char_label(specs[si]);
    for (size_t ci = 0; ci < ct.count(); ++ci) {
      os << ",";
      const CycloElt& v = table[si][ci];
      for (size_t i = 0; i < v.a.size(); ++i) os << (i ? "|" : "") << v.a[i];
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace tk1
