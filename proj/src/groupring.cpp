#include "groupring.hpp"

#include <algorithm>
#include <map>

namespace tk1 {

namespace {

/* per-(mask,p) packed addition table for scheme group parts up to rank 5 */
const std::vector<u16>& scheme_add_table(unsigned mask, unsigned p) {
  static std::map<u64, std::vector<u16>> cache;
  u64 key = (u64(mask) << 8) | p;
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  unsigned rank = unsigned(__builtin_popcount(mask));
  u64 gs = ipow(p, rank);
  if (gs * gs > (u64(1) << 26)) fail(Err::capacity, "scheme too large for add table");
  std::vector<u16> tbl(gs * gs);
  for (u64 i = 0; i < gs; ++i)
    for (u64 j = 0; j < gs; ++j) {
      u64 x = i, y = j, out = 0, place = 1;
      for (unsigned d = 0; d < rank; ++d) {
        out += ((x % p + y % p) % p) * place;
        place *= p;
        x /= p;
        y /= p;
      }
      tbl[i * gs + j] = u16(out);
    }
  return cache.emplace(key, std::move(tbl)).first->second;
}

void check_same(const Scheme& a, const Scheme& b) {
  if (!(a == b)) fail(Err::invalid_arg, "scheme mismatch");
}

const char* kCoordNames = "abcdef";

}  // namespace

Scheme scheme_for_quotient(RingParams rp, Sub u, Sub v) {
  return Scheme{rp, sub_mask(u) & ~sub_mask(v)};
}

Scheme scheme_coords(RingParams rp, unsigned mask) { return Scheme{rp, mask & 0x3f}; }

std::string scheme_tag(const Scheme& s) {
  struct Named { unsigned mask; const char* tag; };
  static const Named named[] = {
      {0b000111, "W0"}, {0b011101, "W1"}, {0b001110, "W2t"},
      {0b100110, "W2"}, {0b110100, "W3"},
  };
  for (const auto& nm : named)
    if (nm.mask == s.mask) return nm.tag;
  std::string tag = "Q_";
  for (unsigned i = 0; i < 6; ++i)
    if (s.mask & (1u << i)) tag += kCoordNames[i];
  return tag;
}

std::optional<Scheme> scheme_from_tag(RingParams rp, const std::string& tag) {
  static const std::pair<const char*, unsigned> named[] = {
      {"W0", 0b000111}, {"W1", 0b011101}, {"W2t", 0b001110},
      {"W2", 0b100110}, {"W3", 0b110100},
  };
  for (const auto& [t, mask] : named)
    if (tag == t) return Scheme{rp, mask};
  if (tag.size() > 2 && tag[0] == 'Q' && tag[1] == '_') {
    unsigned mask = 0;
    for (size_t i = 2; i < tag.size(); ++i) {
      const char* pos = std::find(kCoordNames, kCoordNames + 6, tag[i]);
      if (pos == kCoordNames + 6) return std::nullopt;
      mask |= 1u << (pos - kCoordNames);
    }
    return Scheme{rp, mask};
  }
  return std::nullopt;
}

DenseElt gr_add(const DenseElt& a, const DenseElt& b) {
  check_same(a.sch, b.sch);
  DenseElt r(a.sch);
  u64 pm = a.sch.rp.pm();
  for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = addmod(a.v[i], b.v[i], pm);
  return r;
}

DenseElt gr_sub(const DenseElt& a, const DenseElt& b) {
  check_same(a.sch, b.sch);
  DenseElt r(a.sch);
  u64 pm = a.sch.rp.pm();
  for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = submod(a.v[i], b.v[i], pm);
  return r;
}

DenseElt gr_neg(const DenseElt& a) {
  DenseElt r(a.sch);
  u64 pm = a.sch.rp.pm();
  for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = submod(0, a.v[i], pm);
  return r;
}

DenseElt gr_scalar_mul(const DenseElt& a, u64 s) {
  DenseElt r(a.sch);
  u64 pm = a.sch.rp.pm();
  s %= pm;
  for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = mulmod(a.v[i], s, pm);
  return r;
}

DenseElt gr_coeff_mul(const DenseElt& a, const CoeffElt& c) {
  if (c.rp.p != a.sch.rp.p || c.rp.n != a.sch.rp.n)
    fail(Err::invalid_arg, "coefficient ring mismatch");
  DenseElt r(a.sch);
  u64 pm = a.sch.rp.pm(), pn = a.sch.rp.pn(), gs = a.sch.gsize();
  for (u64 g = 0; g < gs; ++g)
    for (u64 z1 = 0; z1 < pn; ++z1) {
      u64 av = a.v[g * pn + z1];
      if (!av) continue;
      for (u64 z2 = 0; z2 < pn; ++z2) {
        u64 cv = c.c[z2] % pm;
        if (!cv) continue;
        u64& slot = r.v[g * pn + (z1 + z2) % pn];
        slot = addmod(slot, mulmod(av, cv, pm), pm);
      }
    }
  return r;
}

DenseElt gr_mul(const DenseElt& a, const DenseElt& b) {
  check_same(a.sch, b.sch);
  DenseElt r(a.sch);
  u64 pm = a.sch.rp.pm(), pn = a.sch.rp.pn(), gs = a.sch.gsize();
  const auto& tbl = scheme_add_table(a.sch.mask, a.sch.rp.p);
  for (u64 ga = 0; ga < gs; ++ga) {
    const u64* arow = a.v.data() + ga * pn;
    bool any = false;
    for (u64 z = 0; z < pn; ++z)
      if (arow[z]) { any = true; break; }
    if (!any) continue;
    for (u64 gb = 0; gb < gs; ++gb) {
      const u64* brow = b.v.data() + gb * pn;
      u64* out = r.v.data() + u64(tbl[ga * gs + gb]) * pn;
      for (u64 za = 0; za < pn; ++za) {
        u64 av = arow[za];
        if (!av) continue;
        for (u64 zb = 0; zb < pn; ++zb) {
          u64 bv = brow[zb];
          if (!bv) continue;
          u64& slot = out[(za + zb) % pn];
          slot = addmod(slot, mulmod(av, bv, pm), pm);
        }
      }
    }
  }
  return r;
}

DenseElt gr_pow(const DenseElt& a, u64 k) {
  DenseElt r = DenseElt::one(a.sch);
  DenseElt base = a;
  while (k) {
    if (k & 1) r = gr_mul(r, base);
    k >>= 1;
    if (k) base = gr_mul(base, base);
  }
  return r;
}

u64 gr_aug(const DenseElt& a) {
  u64 s = 0, pm = a.sch.rp.pm();
  for (u64 x : a.v) s = addmod(s, x, pm);
  return s;
}

bool gr_is_unit(const DenseElt& a) { return gr_aug(a) % a.sch.rp.p != 0; }

DenseElt gr_inv(const DenseElt& a) {
  if (!gr_is_unit(a)) fail(Err::math, "not a unit");
  DenseElt y = DenseElt::scalar(a.sch, unit_inv_mod(gr_aug(a), a.sch.rp.p, a.sch.rp.pm()));
  DenseElt two = DenseElt::scalar(a.sch, 2 % a.sch.rp.pm());
  for (unsigned it = 0; it < 64; ++it) {
    DenseElt ay = gr_mul(a, y);
    if (ay == DenseElt::one(a.sch)) return y;
    y = gr_mul(y, gr_sub(two, ay));
  }
  fail(Err::math, "inversion did not converge");
}

DenseElt gr_frobenius(const DenseElt& a) {
  DenseElt r(a.sch);
  u64 pm = a.sch.rp.pm(), pn = a.sch.rp.pn(), gs = a.sch.gsize();
  for (u64 g = 0; g < gs; ++g)
    for (u64 z = 0; z < pn; ++z) {
      u64 av = a.v[g * pn + z];
      if (!av) continue;
      u64& slot = r.v[(z * a.sch.rp.p) % pn];  /* group part has exponent p */
      slot = addmod(slot, av, pm);
    }
  return r;
}

DenseElt gr_reduce(const DenseElt& a, unsigned new_m) {
  DenseElt r(Scheme{a.sch.rp.with_m(new_m), a.sch.mask});
  u64 pm = r.sch.rp.pm();
  for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = a.v[i] % pm;
  return r;
}

DenseElt gr_div_exact(const DenseElt& a, unsigned k) {
  u64 d = ipow(a.sch.rp.p, k);
  DenseElt r(a.sch);
  for (size_t i = 0; i < r.v.size(); ++i) {
    if (a.v[i] % d) fail(Err::math, "inexact division by p^k");
    r.v[i] = a.v[i] / d;
  }
  return r;
}

DenseElt gr_project(const DenseElt& a, const Scheme& target) {
  if (target.rp.pm() != a.sch.rp.pm() || target.rp.pn() != a.sch.rp.pn())
    fail(Err::invalid_arg, "scheme parameter mismatch");
  if (target.mask & ~a.sch.mask) fail(Err::invalid_arg, "not a coordinate quotient");
  DenseElt r(target);
  u64 pm = target.rp.pm(), pn = target.rp.pn(), gs = a.sch.gsize();
  for (u64 g = 0; g < gs; ++g) {
    GroupElt w = a.sch.gdecode(u32(g));
    u64 tg = target.gindex(w);
    for (u64 z = 0; z < pn; ++z) {
      u64 av = a.v[g * pn + z];
      if (!av) continue;
      u64& slot = r.v[tg * pn + z];
      slot = addmod(slot, av, pm);
    }
  }
  return r;
}

DenseElt gr_include(const DenseElt& a, const Scheme& target) {
  if (target.rp.pm() != a.sch.rp.pm() || target.rp.pn() != a.sch.rp.pn())
    fail(Err::invalid_arg, "scheme parameter mismatch");
  if (a.sch.mask & ~target.mask) fail(Err::invalid_arg, "not a coordinate subring");
  DenseElt r(target);
  u64 pn = target.rp.pn(), gs = a.sch.gsize();
  for (u64 g = 0; g < gs; ++g) {
    GroupElt w = a.sch.gdecode(u32(g));
    u64 tg = target.gindex(w);
    for (u64 z = 0; z < pn; ++z) r.v[tg * pn + z] = a.v[g * pn + z];
  }
  return r;
}

DenseElt comm_trace(const DenseElt& a, const Scheme& target) {
  if (target.mask & ~a.sch.mask) fail(Err::invalid_arg, "not a coordinate subring");
  unsigned drop = a.sch.mask & ~target.mask;
  u64 index = ipow(a.sch.rp.p, unsigned(__builtin_popcount(drop)));
  DenseElt r(target);
  u64 pm = target.rp.pm(), pn = target.rp.pn(), gs = a.sch.gsize();
  u64 idx_m = index % pm;
  for (u64 g = 0; g < gs; ++g) {
    GroupElt w = a.sch.gdecode(u32(g));
    bool inside = true;
    for (unsigned i = 0; i < 6; ++i)
      if ((drop & (1u << i)) && w.w[i]) { inside = false; break; }
    if (!inside) continue;
    u64 tg = target.gindex(w);
    for (u64 z = 0; z < pn; ++z)
      r.v[tg * pn + z] = mulmod(a.v[g * pn + z], idx_m, pm);
  }
  return r;
}

namespace {

/* transversal of the coordinate subgroup: all tuples of the dropped coords */
std::vector<GroupElt> coord_transversal(const Scheme& src, const Scheme& target) {
  unsigned drop = src.mask & ~target.mask;
  std::vector<unsigned> coords;
  for (unsigned i = 0; i < 6; ++i)
    if (drop & (1u << i)) coords.push_back(i);
  u64 count = ipow(src.rp.p, unsigned(coords.size()));
  std::vector<GroupElt> out(count);
  for (u64 k = 0; k < count; ++k) {
    u64 x = k;
    for (unsigned c : coords) { out[k].w[c] = unsigned(x % src.rp.p); x /= src.rp.p; }
  }
  return out;
}

/* multiplication matrix of x acting on R[A] as a free R[B]-module */
std::vector<std::vector<DenseElt>> mult_matrix(const DenseElt& a, const Scheme& target) {
  if (target.mask & ~a.sch.mask) fail(Err::invalid_arg, "not a coordinate subring");
  auto reps = coord_transversal(a.sch, target);
  size_t nrep = reps.size();
  unsigned drop = a.sch.mask & ~target.mask;
  unsigned p = a.sch.rp.p;
  /* index of a dropped-coordinate tuple within the transversal */
  auto rep_index = [&](const GroupElt& w) {
    u64 idx = 0, place = 1;
    for (unsigned i = 0; i < 6; ++i)
      if (drop & (1u << i)) { idx += w.w[i] * place; place *= p; }
    return size_t(idx);
  };
  std::vector<std::vector<DenseElt>> mat(nrep, std::vector<DenseElt>(nrep, DenseElt(target)));
  u64 pn = a.sch.rp.pn(), gs = a.sch.gsize(), pm = a.sch.rp.pm();
  for (size_t j = 0; j < nrep; ++j) {
    /* x * rep_j, expanded over the transversal with coefficients in R[B] */
    for (u64 g = 0; g < gs; ++g) {
      GroupElt w = a.sch.gdecode(u32(g));
      GroupElt shifted = w;
      for (unsigned i = 0; i < 6; ++i)
        if (drop & (1u << i)) shifted.w[i] = (w.w[i] + reps[j].w[i]) % p;
      size_t i = rep_index(shifted);
      GroupElt bpart = shifted;
      for (unsigned k = 0; k < 6; ++k)
        if (drop & (1u << k)) bpart.w[k] = 0;
      u64 tg = target.gindex(bpart);
      for (u64 z = 0; z < pn; ++z) {
        u64 av = a.v[g * pn + z];
        if (!av) continue;
        u64& slot = mat[i][j].v[tg * pn + z];
        slot = addmod(slot, av, pm);
      }
    }
  }
  return mat;
}

}  // namespace

DenseElt comm_trace_matrix(const DenseElt& a, const Scheme& target) {
  auto mat = mult_matrix(a, target);
  DenseElt tr(target);
  for (size_t i = 0; i < mat.size(); ++i) tr = gr_add(tr, mat[i][i]);
  return tr;
}

DenseElt comm_norm(const DenseElt& a, const Scheme& target) {
  return gr_det(mult_matrix(a, target));
}

DenseElt h_line(const Scheme& s, const GroupElt& dir) {
  DenseElt r(s);
  u64 pm = s.rp.pm();
  unsigned p = s.rp.p;
  for (unsigned k = 0; k < p; ++k) {
    GroupElt g;
    for (unsigned i = 0; i < 6; ++i) g.w[i] = (dir.w[i] * k) % p;
    u64& slot = r.v[u64(s.gindex(g)) * s.rp.pn()];
    slot = addmod(slot, 1, pm);
  }
  return r;
}

DenseElt basis_elt(const Scheme& s, const GroupElt& w, u64 z, u64 coeff) {
  DenseElt r(s);
  r.v[u64(s.gindex(w)) * s.rp.pn() + z % s.rp.pn()] = coeff % s.rp.pm();
  return r;
}

namespace {

DenseElt leibniz_det(const std::vector<std::vector<DenseElt>>& mat, const Scheme& s) {
  size_t nd = mat.size();
  std::vector<size_t> perm(nd);
  for (size_t i = 0; i < nd; ++i) perm[i] = i;
  DenseElt det(s);
  do {
    /* permutation sign by counting inversions */
    unsigned inv = 0;
    for (size_t i = 0; i < nd; ++i)
      for (size_t j = i + 1; j < nd; ++j)
        if (perm[i] > perm[j]) ++inv;
    DenseElt term = DenseElt::one(s);
    for (size_t i = 0; i < nd; ++i) term = gr_mul(term, mat[i][perm[i]]);
    det = (inv & 1) ? gr_sub(det, term) : gr_add(det, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

}  // namespace

DenseElt gr_det(std::vector<std::vector<DenseElt>> mat, unsigned leibniz_cap) {
  size_t nd = mat.size();
  if (nd == 0) fail(Err::invalid_arg, "empty matrix");
  Scheme s = mat[0][0].sch;
  bool neg = false;
  DenseElt diag = DenseElt::one(s);
  for (size_t k = 0; k < nd; ++k) {
    size_t piv = nd;
    for (size_t r = k; r < nd; ++r)
      if (gr_is_unit(mat[r][k])) { piv = r; break; }
    if (piv == nd) {
      /* no unit pivot in this column: finish the remaining block directly */
      size_t rem = nd - k;
      if (rem > leibniz_cap) fail(Err::capacity, "determinant needs a unit pivot");
      std::vector<std::vector<DenseElt>> block(rem, std::vector<DenseElt>(rem, DenseElt(s)));
      for (size_t i = 0; i < rem; ++i)
        for (size_t j = 0; j < rem; ++j) block[i][j] = mat[k + i][k + j];
      DenseElt rest = leibniz_det(block, s);
      DenseElt out = gr_mul(diag, rest);
      return neg ? gr_neg(out) : out;
    }
    if (piv != k) { std::swap(mat[piv], mat[k]); neg = !neg; }
    DenseElt inv = gr_inv(mat[k][k]);
    for (size_t r = k + 1; r < nd; ++r) {
      if (mat[r][k].is_zero()) continue;
      DenseElt factor = gr_mul(mat[r][k], inv);
      for (size_t c = k; c < nd; ++c)
        mat[r][c] = gr_sub(mat[r][c], gr_mul(factor, mat[k][c]));
    }
    diag = gr_mul(diag, mat[k][k]);
  }
  return neg ? gr_neg(diag) : diag;
}

/* ---- GSparse ---- */

GSparse GSparse::monomial(RingParams r, const GroupElt& g, u64 coeff) {
  GSparse x(r);
  coeff %= r.pm();
  if (coeff) x.terms = {{u64(g_index(g, r.p)) * r.pn() + g.z % r.pn(), coeff}};
  return x;
}

void GSparse::add_term(const GroupElt& g, unsigned p, u64 coeff) {
  (void)p;
  u64 key = u64(g_index(g, rp.p)) * rp.pn() + g.z % rp.pn();
  coeff %= rp.pm();
  auto it = std::lower_bound(terms.begin(), terms.end(), key,
                             [](const auto& t, u64 k) { return t.first < k; });
  if (it != terms.end() && it->first == key) {
    it->second = addmod(it->second, coeff, rp.pm());
    if (!it->second) terms.erase(it);
  } else if (coeff) {
    terms.insert(it, {key, coeff});
  }
}

GSparse gs_add(const GSparse& a, const GSparse& b) {
  GSparse r(a.rp);
  u64 pm = a.rp.pm();
  auto ia = a.terms.begin(), ib = b.terms.begin();
  while (ia != a.terms.end() || ib != b.terms.end()) {
    if (ib == b.terms.end() || (ia != a.terms.end() && ia->first < ib->first)) {
      r.terms.push_back(*ia++);
    } else if (ia == a.terms.end() || ib->first < ia->first) {
      r.terms.push_back(*ib++);
    } else {
      u64 c = addmod(ia->second, ib->second, pm);
      if (c) r.terms.push_back({ia->first, c});
      ++ia;
      ++ib;
    }
  }
  return r;
}

GSparse gs_sub(const GSparse& a, const GSparse& b) {
  return gs_add(a, gs_scalar_mul(b, b.rp.pm() - 1));
}

GSparse gs_scalar_mul(const GSparse& a, u64 s) {
  GSparse r(a.rp);
  u64 pm = a.rp.pm();
  s %= pm;
  for (const auto& [k, c] : a.terms) {
    u64 v = mulmod(c, s, pm);
    if (v) r.terms.push_back({k, v});
  }
  return r;
}

GroupElt gs_decode(const GSparse& a, u64 key) {
  GroupElt g = g_from_index(u32(key / a.rp.pn()), a.rp.p);
  g.z = key % a.rp.pn();
  return g;
}

GSparse gs_mul(const GSparse& a, const GSparse& b) {
  u64 pm = a.rp.pm(), pn = a.rp.pn();
  std::map<u64, u64> acc;
  for (const auto& [ka, ca] : a.terms) {
    GroupElt ga = gs_decode(a, ka);
    for (const auto& [kb, cb] : b.terms) {
      GroupElt gb = gs_decode(b, kb);
      GroupElt gp = g_mul(ga, gb, a.rp.p, pn);
      u64 key = u64(g_index(gp, a.rp.p)) * pn + gp.z;
      u64& slot = acc[key];
      slot = addmod(slot, mulmod(ca, cb, pm), pm);
    }
  }
  GSparse r(a.rp);
  for (const auto& [k, c] : acc)
    if (c) r.terms.push_back({k, c});
  return r;
}

u64 gs_aug(const GSparse& a) {
  u64 s = 0, pm = a.rp.pm();
  for (const auto& [k, c] : a.terms) s = addmod(s, c, pm);
  return s;
}

bool gs_is_unit(const GSparse& a) { return gs_aug(a) % a.rp.p != 0; }

GSparse gs_reduce(const GSparse& a, unsigned new_m) {
  GSparse r(a.rp.with_m(new_m));
  u64 pm = r.rp.pm();
  for (const auto& [k, c] : a.terms)
    if (c % pm) r.terms.push_back({k, c % pm});
  return r;
}

DenseElt gs_project(const GSparse& a, const Scheme& target) {
  DenseElt r(target);
  u64 pm = target.rp.pm(), pn = target.rp.pn();
  for (const auto& [k, c] : a.terms) {
    GroupElt g = gs_decode(a, k);
    u64& slot = r.v[u64(target.gindex(g)) * pn + g.z];
    slot = addmod(slot, c % pm, pm);
  }
  return r;
}

/* ---- GDense ---- */

namespace {

const std::vector<GroupElt>& full_group_table(unsigned p) {
  static std::map<unsigned, std::vector<GroupElt>> cache;
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  u64 gs = ipow(p, 6);
  std::vector<GroupElt> tbl(gs);
  for (u64 i = 0; i < gs; ++i) tbl[i] = g_from_index(u32(i), p);
  return cache.emplace(p, std::move(tbl)).first->second;
}

}  // namespace

GDense gd_from_sparse(const GSparse& a) {
  GDense r(a.rp);
  for (const auto& [k, c] : a.terms) r.v[k] = c;
  return r;
}

GSparse gd_to_sparse(const GDense& a) {
  GSparse r(a.rp);
  for (u64 k = 0; k < a.v.size(); ++k)
    if (a.v[k]) r.terms.push_back({k, a.v[k]});
  return r;
}

GDense gd_add(const GDense& a, const GDense& b) {
  GDense r(a.rp);
  u64 pm = a.rp.pm();
  for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = addmod(a.v[i], b.v[i], pm);
  return r;
}

GDense gd_sub(const GDense& a, const GDense& b) {
  GDense r(a.rp);
  u64 pm = a.rp.pm();
  for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = submod(a.v[i], b.v[i], pm);
  return r;
}

GDense gd_scalar_mul(const GDense& a, u64 s) {
  GDense r(a.rp);
  u64 pm = a.rp.pm();
  s %= pm;
  for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = mulmod(a.v[i], s, pm);
  return r;
}

GDense gd_mul_sparse(const GDense& a, const GSparse& b) {
  GDense r(a.rp);
  u64 pm = a.rp.pm(), pn = a.rp.pn();
  const auto& tbl = full_group_table(a.rp.p);
  struct Mono { GroupElt g; u64 c; };
  std::vector<Mono> bs;
  bs.reserve(b.terms.size());
  for (const auto& [k, c] : b.terms) bs.push_back({gs_decode(b, k), c});
  for (u64 k = 0; k < a.v.size(); ++k) {
    u64 av = a.v[k];
    if (!av) continue;
    GroupElt ga = tbl[k / pn];
    ga.z = k % pn;
    for (const auto& mono : bs) {
      GroupElt gp = g_mul(ga, mono.g, a.rp.p, pn);
      u64 key = u64(g_index(gp, a.rp.p)) * pn + gp.z;
      r.v[key] = addmod(r.v[key], mulmod(av, mono.c, pm), pm);
    }
  }
  return r;
}

u64 gd_aug(const GDense& a) {
  u64 s = 0, pm = a.rp.pm();
  for (u64 x : a.v) s = addmod(s, x, pm);
  return s;
}

GDense gd_reduce(const GDense& a, unsigned new_m) {
  GDense r(a.rp.with_m(new_m));
  u64 pm = r.rp.pm();
  for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = a.v[i] % pm;
  return r;
}

GDense gd_div_exact(const GDense& a, unsigned k) {
  u64 d = ipow(a.rp.p, k);
  GDense r(a.rp);
  for (size_t i = 0; i < r.v.size(); ++i) {
    if (a.v[i] % d) fail(Err::math, "inexact division by p^k");
    r.v[i] = a.v[i] / d;
  }
  return r;
}

/* ---- SubRing / SubDense ---- */

namespace {

struct SubRingData {
  std::vector<u16> mul_table;
  u64 gsize;
};

SubRingData& sub_ring_data(unsigned p, Sub s) {
  static std::map<u64, SubRingData> cache;
  u64 key = (u64(p) << 8) | u64(s);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  auto elems = sub_elements(s, p);
  u64 gs = elems.size();
  if (gs * gs > (u64(1) << 26)) fail(Err::capacity, "subgroup too large for mul table");
  SubRingData data;
  data.gsize = gs;
  data.mul_table.resize(gs * gs);
  for (u64 i = 0; i < gs; ++i)
    for (u64 j = 0; j < gs; ++j) {
      GroupElt prod = g_mul(elems[i], elems[j], p, 1);
      data.mul_table[i * gs + j] = u16(sub_elt_index(s, prod, p));
    }
  return cache.emplace(key, std::move(data)).first->second;
}

void check_ring(const SubDense& a, const SubDense& b) {
  if (a.ring != b.ring) fail(Err::invalid_arg, "subring mismatch");
}

}  // namespace

SubRing sub_ring(RingParams rp, Sub s) {
  SubRingData& data = sub_ring_data(rp.p, s);
  return SubRing{rp, s, &data.mul_table, data.gsize};
}

SubDense sd_from_sparse(const SubRing& r, const GSparse& a) {
  SubDense x(r);
  for (const auto& [k, c] : a.terms) {
    GroupElt g = gs_decode(a, k);
    if (!sub_contains(r.s, g)) fail(Err::invalid_arg, "term outside subgroup");
    x.v[u64(sub_elt_index(r.s, g, r.rp.p)) * r.rp.pn() + g.z] = c;
  }
  return x;
}

GSparse sd_to_sparse(const SubDense& a) {
  const SubRing& r = *a.ring;
  GSparse out(r.rp);
  auto elems = sub_elements(r.s, r.rp.p);
  for (u64 i = 0; i < r.gsize; ++i)
    for (u64 z = 0; z < r.rp.pn(); ++z) {
      u64 c = a.v[i * r.rp.pn() + z];
      if (!c) continue;
      GroupElt g = elems[i];
      g.z = z;
      out.add_term(g, r.rp.p, c);
    }
  return out;
}

SubDense sd_add(const SubDense& a, const SubDense& b) {
  check_ring(a, b);
  SubDense r(*a.ring);
  u64 pm = a.ring->rp.pm();
  for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = addmod(a.v[i], b.v[i], pm);
  return r;
}

SubDense sd_sub(const SubDense& a, const SubDense& b) {
  check_ring(a, b);
  SubDense r(*a.ring);
  u64 pm = a.ring->rp.pm();
  for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = submod(a.v[i], b.v[i], pm);
  return r;
}

SubDense sd_mul(const SubDense& a, const SubDense& b) {
  check_ring(a, b);
  const SubRing& ring = *a.ring;
  SubDense r(ring);
  u64 pm = ring.rp.pm(), pn = ring.rp.pn(), gs = ring.gsize;
  const std::vector<u16>& tbl = *ring.mul_table;
  for (u64 ia = 0; ia < gs; ++ia) {
    const u64* arow = a.v.data() + ia * pn;
    bool any = false;
    for (u64 z = 0; z < pn; ++z)
      if (arow[z]) { any = true; break; }
    if (!any) continue;
    const u16* trow = tbl.data() + ia * gs;
    for (u64 ib = 0; ib < gs; ++ib) {
      const u64* brow = b.v.data() + ib * pn;
      bool anyb = false;
      for (u64 z = 0; z < pn; ++z)
        if (brow[z]) { anyb = true; break; }
      if (!anyb) continue;
      u64* out = r.v.data() + u64(trow[ib]) * pn;
      for (u64 za = 0; za < pn; ++za) {
        u64 av = arow[za];
        if (!av) continue;
        for (u64 zb = 0; zb < pn; ++zb) {
          u64 bv = brow[zb];
          if (!bv) continue;
          u64& slot = out[(za + zb) % pn];
          slot = addmod(slot, mulmod(av, bv, pm), pm);
        }
      }
    }
  }
  return r;
}

u64 sd_aug(const SubDense& a) {
  u64 s = 0, pm = a.ring->rp.pm();
  for (u64 x : a.v) s = addmod(s, x, pm);
  return s;
}

SubDense sd_inv(const SubDense& a) {
  const SubRing& ring = *a.ring;
  u64 aug = sd_aug(a);
  if (aug % ring.rp.p == 0) fail(Err::math, "not a unit");
  SubDense y(ring);
  y.v[0] = unit_inv_mod(aug, ring.rp.p, ring.rp.pm());
  SubDense one = SubDense::one(ring);
  SubDense two(ring);
  two.v[0] = 2 % ring.rp.pm();
  for (unsigned it = 0; it < 64; ++it) {
    SubDense ay = sd_mul(a, y);
    if (ay.v == one.v) return y;
    y = sd_mul(y, sd_sub(two, ay));
  }
  fail(Err::math, "inversion did not converge");
}

/* ---- ConjElt ---- */

ConjElt conj_add(const ConjElt& a, const ConjElt& b) {
  ConjElt r(a.rp, a.nclasses);
  u64 pm = a.rp.pm();
  for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = addmod(a.v[i], b.v[i], pm);
  return r;
}

ConjElt conj_sub(const ConjElt& a, const ConjElt& b) {
  ConjElt r(a.rp, a.nclasses);
  u64 pm = a.rp.pm();
  for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = submod(a.v[i], b.v[i], pm);
  return r;
}

ConjElt conj_scalar_mul(const ConjElt& a, u64 s) {
  ConjElt r(a.rp, a.nclasses);
  u64 pm = a.rp.pm();
  s %= pm;
  for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = mulmod(a.v[i], s, pm);
  return r;
}

ConjElt conj_reduce(const ConjElt& a, unsigned new_m) {
  ConjElt r(a.rp.with_m(new_m), a.nclasses);
  u64 pm = r.rp.pm();
  for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = a.v[i] % pm;
  return r;
}

}  // namespace tk1
