#include "group.hpp"

#include <algorithm>
#include <map>

namespace tk1 {

static unsigned um(long v, unsigned p) {
  long r = v % long(p);
  if (r < 0) r += p;
  return unsigned(r);
}

std::array<unsigned, 6> g_matrix_entries(const GroupElt& g, unsigned p) {
  unsigned a = g.w[0], b = g.w[1], c = g.w[2], d = g.w[3], e = g.w[4], f = g.w[5];
  return {a, b, c,
          um(long(d) + long(a) * b, p),
          um(long(e) + long(b) * c, p),
          um(long(f) + long(a) * b * c + long(a) * e, p)};
}

GroupElt g_from_matrix_entries(const std::array<unsigned, 6>& mt, unsigned p, u64 z, u64 pn) {
  GroupElt g;
  unsigned a = mt[0], b = mt[1], c = mt[2], D = mt[3], E = mt[4], F = mt[5];
  g.w = {a, b, c,
         um(long(D) - long(a) * b, p),
         um(long(E) - long(b) * c, p),
         um(long(F) - long(a) * E, p)};
  g.z = pn ? z % pn : 0;
  return g;
}

GroupElt g_mul(const GroupElt& x, const GroupElt& y, unsigned p, u64 pn) {
  auto X = g_matrix_entries(x, p);
  auto Y = g_matrix_entries(y, p);
  std::array<unsigned, 6> M{};
  M[0] = um(long(X[0]) + Y[0], p);
  M[1] = um(long(X[1]) + Y[1], p);
  M[2] = um(long(X[2]) + Y[2], p);
  M[3] = um(long(X[3]) + Y[3] + long(X[0]) * Y[1], p);
  M[4] = um(long(X[4]) + Y[4] + long(X[1]) * Y[2], p);
  M[5] = um(long(X[5]) + Y[5] + long(X[0]) * Y[4] + long(X[3]) * Y[2], p);
  return g_from_matrix_entries(M, p, x.z + y.z, pn);
}

GroupElt g_inv(const GroupElt& x, unsigned p, u64 pn) {
  auto X = g_matrix_entries(x, p);
  unsigned a = X[0], b = X[1], c = X[2], D = X[3], E = X[4], F = X[5];
  std::array<unsigned, 6> M{};
  M[0] = um(-long(a), p);
  M[1] = um(-long(b), p);
  M[2] = um(-long(c), p);
  M[3] = um(long(a) * b - D, p);
  M[4] = um(long(b) * c - E, p);
  M[5] = um(-long(F) + long(a) * E + long(D) * c - long(a) * b * c, p);
  u64 z = pn ? (pn - x.z % pn) % pn : 0;
  return g_from_matrix_entries(M, p, z, pn);
}

GroupElt g_pow(GroupElt x, long k, unsigned p, u64 pn) {
  GroupElt r;
  if (k < 0) { x = g_inv(x, p, pn); k = -k; }
  while (k) {
    if (k & 1) r = g_mul(r, x, p, pn);
    x = g_mul(x, x, p, pn);
    k >>= 1;
  }
  return r;
}

GroupElt g_conj(const GroupElt& h, const GroupElt& g, unsigned p, u64 pn) {
  return g_mul(g_mul(h, g, p, pn), g_inv(h, p, pn), p, pn);
}

u32 g_index(const GroupElt& g, unsigned p) {
  u32 idx = 0;
  for (unsigned i = 0; i < 6; ++i) idx = idx * p + g.w[i];
  return idx;
}

GroupElt g_from_index(u32 idx, unsigned p) {
  GroupElt g;
  for (int i = 5; i >= 0; --i) { g.w[size_t(i)] = idx % p; idx /= p; }
  return g;
}

GroupElt g_make(unsigned a, unsigned b, unsigned c, unsigned d, unsigned e, unsigned f,
                unsigned p, u64 z, u64 pn) {
  GroupElt g;
  g.w = {a % p, b % p, c % p, d % p, e % p, f % p};
  g.z = pn ? z % pn : 0;
  return g;
}

std::array<GroupElt, 6> g_generators(unsigned p) {
  std::array<GroupElt, 6> gs;
  for (unsigned i = 0; i < 6; ++i) gs[i].w[i] = 1 % p;
  return gs;
}

/* masks: bit order a=1, b=2, c=4, d=8, e=16, f=32 */
struct SubInfo { const char* name; unsigned mask; };
static const std::map<Sub, SubInfo>& sub_infos() {
  static const std::map<Sub, SubInfo> infos = {
      {Sub::U0, {"U0", 0b111111}},
      {Sub::U1, {"U1", 0b111101}},   /* b = 0 */
      {Sub::U2t, {"U2t", 0b111110}}, /* a = 0 */
      {Sub::U2, {"U2", 0b110110}},   /* a = d = 0 */
      {Sub::U3, {"U3", 0b110100}},   /* a = b = d = 0 */
      {Sub::V0, {"V0", 0b111000}},
      {Sub::V1, {"V1", 0b100000}},
      {Sub::V2t, {"V2t", 0b110000}},
      {Sub::V2, {"V2", 0b010000}},
      {Sub::V3, {"V3", 0b000000}},
      {Sub::H, {"H", 0b001011}},
      {Sub::N, {"N", 0b110100}},
      {Sub::H0, {"H0", 0b001011}},
      {Sub::H1, {"H1", 0b001001}},
      {Sub::H2, {"H2", 0b000010}},
      {Sub::U1capU2t, {"U1capU2t", 0b111100}},
  };
  return infos;
}

const char* sub_name(Sub s) { return sub_infos().at(s).name; }

std::optional<Sub> sub_from_name(const std::string& s) {
  for (const auto& [k, v] : sub_infos())
    if (s == v.name) return k;
  return std::nullopt;
}

unsigned sub_mask(Sub s) { return sub_infos().at(s).mask; }

bool sub_contains(Sub s, const GroupElt& g) {
  unsigned mask = sub_mask(s);
  for (unsigned i = 0; i < 6; ++i)
    if (!(mask & (1u << i)) && g.w[i] != 0) return false;
  return true;
}

bool sub_leq(Sub a, Sub b) { return (sub_mask(a) & ~sub_mask(b)) == 0; }

u64 sub_order_finite(Sub s, unsigned p) {
  return ipow(p, unsigned(__builtin_popcount(sub_mask(s))));
}

std::vector<GroupElt> sub_elements(Sub s, unsigned p) {
  unsigned mask = sub_mask(s);
  std::vector<unsigned> free_pos;
  for (unsigned i = 0; i < 6; ++i)
    if (mask & (1u << i)) free_pos.push_back(i);
  std::vector<GroupElt> out;
  out.reserve(ipow(p, unsigned(free_pos.size())));
  u64 total = ipow(p, unsigned(free_pos.size()));
  for (u64 idx = 0; idx < total; ++idx) {
    GroupElt g;
    u64 t = idx;
    for (auto it = free_pos.rbegin(); it != free_pos.rend(); ++it) {
      g.w[*it] = unsigned(t % p);
      t /= p;
    }
    out.push_back(g);
  }
  return out;
}

u32 sub_elt_index(Sub s, const GroupElt& g, unsigned p) {
  unsigned mask = sub_mask(s);
  u32 idx = 0;
  for (unsigned i = 0; i < 6; ++i) {
    if (mask & (1u << i)) idx = idx * p + g.w[i];
    else if (g.w[i]) fail(Err::invalid_arg, "element not in subgroup");
  }
  return idx;
}

/* ---- conjugacy classes ---- */

static unsigned inv_mod_p(unsigned x, unsigned p) {
  return unsigned(powmod(x % p, p - 2, p));
}

std::pair<Family, std::vector<unsigned>> classify(const GroupElt& g, unsigned p) {
  unsigned a = g.w[0], b = g.w[1], c = g.w[2], d = g.w[3], e = g.w[4], f = g.w[5];
  if (a && b) return {Family::I, {a, b, c}};
  if (a && c) {
    /* (d,e) moves along (-a, c); invariant e + (c/a) d */
    unsigned mm = um(long(e) + long(c) * inv_mod_p(a, p) % p * d, p);
    return {Family::II, {a, c, mm}};
  }
  if (a) return {Family::III, {a, e}};
  if (b && c) return {Family::IV, {b, c}};
  if (b) {
    unsigned ff = um(long(f) - long(d) * inv_mod_p(b, p) % p * e, p);
    return {Family::V, {b, ff}};
  }
  if (c && d) return {Family::VI, {c, d}};
  if (c) return {Family::VII, {c}};
  if (d) return {Family::VIII, {d, e}};
  if (e) return {Family::IX, {e}};
  return {Family::X, {f}};
}

static GroupElt family_rep(Family fam, const std::vector<unsigned>& pr, unsigned p) {
  switch (fam) {
    case Family::I: return g_make(pr[0], pr[1], pr[2], 0, 0, 0, p);
    case Family::II: return g_make(pr[0], 0, pr[1], 0, pr[2], 0, p);
    case Family::III: return g_make(pr[0], 0, 0, 0, pr[1], 0, p);
    case Family::IV: return g_make(0, pr[0], pr[1], 0, 0, 0, p);
    case Family::V: return g_make(0, pr[0], 0, 0, 0, pr[1], p);
    case Family::VI: return g_make(0, 0, pr[0], pr[1], 0, 0, p);
    case Family::VII: return g_make(0, 0, pr[0], 0, 0, 0, p);
    case Family::VIII: return g_make(0, 0, 0, pr[0], pr[1], 0, p);
    case Family::IX: return g_make(0, 0, 0, 0, pr[0], 0, p);
    case Family::X: return g_make(0, 0, 0, 0, 0, pr[0], p);
  }
  fail(Err::invalid_arg, "bad family");
}

ClassTable build_class_table(unsigned p) {
  ClassTable ct;
  ct.p = p;
  auto push = [&](Family fam, std::vector<unsigned> pr) {
    ConjClass c;
    c.fam = fam;
    c.params = pr;
    c.rep = family_rep(fam, pr, p);
    ct.classes.push_back(std::move(c));
  };
  for (unsigned a = 1; a < p; ++a)
    for (unsigned b = 1; b < p; ++b)
      for (unsigned c = 0; c < p; ++c) push(Family::I, {a, b, c});
  for (unsigned a = 1; a < p; ++a)
    for (unsigned c = 1; c < p; ++c)
      for (unsigned mm = 0; mm < p; ++mm) push(Family::II, {a, c, mm});
  for (unsigned a = 1; a < p; ++a)
    for (unsigned e = 0; e < p; ++e) push(Family::III, {a, e});
  for (unsigned b = 1; b < p; ++b)
    for (unsigned c = 1; c < p; ++c) push(Family::IV, {b, c});
  for (unsigned b = 1; b < p; ++b)
    for (unsigned f = 0; f < p; ++f) push(Family::V, {b, f});
  for (unsigned c = 1; c < p; ++c)
    for (unsigned d = 1; d < p; ++d) push(Family::VI, {c, d});
  for (unsigned c = 1; c < p; ++c) push(Family::VII, {c});
  for (unsigned d = 1; d < p; ++d)
    for (unsigned e = 0; e < p; ++e) push(Family::VIII, {d, e});
  for (unsigned e = 1; e < p; ++e) push(Family::IX, {e});
  for (unsigned f = 0; f < p; ++f) push(Family::X, {f});

  std::map<std::pair<Family, std::vector<unsigned>>, u32> lookup;
  for (u32 i = 0; i < ct.classes.size(); ++i)
    lookup[{ct.classes[i].fam, ct.classes[i].params}] = i;

  u64 order = ipow(p, 6);
  ct.class_of.assign(order, 0);
  for (u64 idx = 0; idx < order; ++idx) {
    auto key = classify(g_from_index(u32(idx), p), p);
    auto it = lookup.find(key);
    if (it == lookup.end()) fail(Err::math, "classifier missed a class");
    ct.class_of[idx] = it->second;
    ct.classes[it->second].size++;
  }
  return ct;
}

static const char* family_name(Family f) {
  switch (f) {
    case Family::I: return "I";
    case Family::II: return "II";
    case Family::III: return "III";
    case Family::IV: return "IV";
    case Family::V: return "V";
    case Family::VI: return "VI";
    case Family::VII: return "VII";
    case Family::VIII: return "VIII";
    case Family::IX: return "IX";
    case Family::X: return "X";
  }
  return "?";
}

std::string class_name(const ConjClass& c) {
  std::string s = "C_";
  s += family_name(c.fam);
  s += '(';
  /* family II is labeled with four slots, the third pinned at 0 */
  std::vector<unsigned> pr = c.params;
  if (c.fam == Family::II) pr = {c.params[0], c.params[1], 0, c.params[2]};
  for (size_t i = 0; i < pr.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(pr[i]);
  }
  s += ')';
  return s;
}

std::optional<std::pair<Family, std::vector<unsigned>>> class_from_name(const std::string& s) {
  if (s.rfind("C_", 0) != 0) return std::nullopt;
  auto lp = s.find('(');
  auto rp = s.find(')');
  if (lp == std::string::npos || rp == std::string::npos || rp < lp) return std::nullopt;
  std::string fam = s.substr(2, lp - 2);
  static const std::map<std::string, Family> fams = {
      {"I", Family::I}, {"II", Family::II}, {"III", Family::III}, {"IV", Family::IV},
      {"V", Family::V}, {"VI", Family::VI}, {"VII", Family::VII}, {"VIII", Family::VIII},
      {"IX", Family::IX}, {"X", Family::X}};
  auto it = fams.find(fam);
  if (it == fams.end()) return std::nullopt;
  std::vector<unsigned> pr;
  std::string cur;
  for (size_t i = lp + 1; i <= rp; ++i) {
    if (i == rp || s[i] == ',') {
      if (cur.empty()) return std::nullopt;
      pr.push_back(unsigned(std::stoul(cur)));
      cur.clear();
    } else {
      if (!isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
      cur += s[i];
    }
  }
  /* fold family II's four-slot label back onto its three parameters */
  if (it->second == Family::II) {
    if (pr.size() != 4 || pr[2] != 0) return std::nullopt;
    pr.erase(pr.begin() + 2);
  }
  return std::make_pair(it->second, pr);
}

/* ---- transversals ---- */

std::vector<GroupElt> coset_reps(Sub amb, Sub sub, unsigned p) {
  if (!sub_leq(sub, amb)) fail(Err::invalid_arg, "not a subgroup pair");
  /* the standard transversals for the pairs the norm maps use */
  auto word = [&](unsigned a, unsigned b, unsigned d) {
    GroupElt g;
    auto gs = g_generators(p);
    g = g_pow(gs[0], a, p, 1);
    g = g_mul(g, g_pow(gs[1], b, p, 1), p, 1);
    g = g_mul(g, g_pow(gs[3], d, p, 1), p, 1);
    return g;
  };
  if (amb == Sub::U0 && sub == Sub::U1) {
    std::vector<GroupElt> t;
    for (unsigned j = 0; j < p; ++j) t.push_back(word(0, j, 0));
    return t;
  }
  if (amb == Sub::U0 && sub == Sub::U2t) {
    std::vector<GroupElt> t;
    for (unsigned j = 0; j < p; ++j) t.push_back(word(j, 0, 0));
    return t;
  }
  if (amb == Sub::U0 && sub == Sub::U2) {
    std::vector<GroupElt> t;
    for (unsigned j = 0; j < p; ++j)
      for (unsigned k = 0; k < p; ++k) t.push_back(word(j, 0, k));
    return t;
  }
  if (amb == Sub::U0 && (sub == Sub::U3 || sub == Sub::N)) {
    std::vector<GroupElt> t;
    for (unsigned j = 0; j < p; ++j)
      for (unsigned k = 0; k < p; ++k)
        for (unsigned l = 0; l < p; ++l) t.push_back(word(j, k, l));
    return t;
  }
  if (amb == Sub::U1 && (sub == Sub::U3 || sub == Sub::N)) {
    std::vector<GroupElt> t;
    for (unsigned j = 0; j < p; ++j)
      for (unsigned k = 0; k < p; ++k) t.push_back(word(j, 0, k));
    return t;
  }
  if (amb == Sub::U2 && (sub == Sub::U3 || sub == Sub::N)) {
    std::vector<GroupElt> t;
    for (unsigned j = 0; j < p; ++j) t.push_back(word(0, j, 0));
    return t;
  }
  /* greedy lex transversal */
  std::vector<GroupElt> t;
  u64 order = ipow(p, 6);
  std::vector<char> seen(order, 0);
  auto members = sub_elements(sub, p);
  for (u64 idx = 0; idx < order; ++idx) {
    GroupElt g = g_from_index(u32(idx), p);
    if (!sub_contains(amb, g) || seen[idx]) continue;
    t.push_back(g);
    for (const auto& h : members) seen[g_index(g_mul(g, h, p, 1), p)] = 1;
  }
  return t;
}

std::vector<GroupElt> coset_reps_alt(Sub amb, Sub sub, unsigned p) {
  auto t = coset_reps(amb, sub, p);
  /* shift each rep inside its own coset by a nontrivial subgroup element */
  auto members = sub_elements(sub, p);
  if (members.size() > 1) {
    for (size_t i = 0; i < t.size(); ++i)
      t[i] = g_mul(t[i], members[(i % (members.size() - 1)) + 1], p, 1);
  }
  return t;
}

unsigned sub_commutator_mask(Sub s, unsigned p) {
  static std::map<std::pair<unsigned, unsigned>, unsigned> cache;
  auto key = std::make_pair(sub_mask(s), p);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  /* normal closure of generator commutators inside s, tracked as a set */
  std::vector<GroupElt> gens;
  for (unsigned i = 0; i < 6; ++i)
    if (sub_mask(s) & (1u << i)) {
      GroupElt g;
      g.w[i] = 1 % p;
      gens.push_back(g);
    }
  std::vector<char> in_set(ipow(p, 6), 0);
  std::vector<GroupElt> frontier;
  auto add = [&](const GroupElt& g) {
    u32 idx = g_index(g, p);
    if (!in_set[idx]) { in_set[idx] = 1; frontier.push_back(g); }
  };
  GroupElt id;
  add(id);
  for (const auto& x : gens)
    for (const auto& y : gens)
      add(g_mul(g_mul(x, y, p, 1), g_inv(g_mul(y, x, p, 1), p, 1), p, 1));
  std::vector<GroupElt> members{id};
  while (!frontier.empty()) {
    GroupElt x = frontier.back();
    frontier.pop_back();
    members.push_back(x);
    for (const auto& s2 : gens) {
      add(g_conj(s2, x, p, 1));
      add(g_conj(g_inv(s2, p, 1), x, p, 1));
    }
    for (size_t i = 0; i < members.size(); ++i) add(g_mul(members[i], x, p, 1));
  }
  unsigned mask = 0;
  for (u32 idx = 0; idx < in_set.size(); ++idx)
    if (in_set[idx]) {
      GroupElt g = g_from_index(idx, p);
      for (unsigned i = 0; i < 6; ++i)
        if (g.w[i]) mask |= 1u << i;
    }
  cache[key] = mask;
  return mask;
}

GroupElt verlagerung(Sub amb, Sub sub, const GroupElt& g, unsigned p, u64 pn) {
  if (!sub_contains(amb, g)) fail(Err::invalid_arg, "element outside ambient subgroup");
  auto reps = coset_reps(amb, sub, p);
  /* coset lookup by brute scan: g * rep_j in rep_k * sub */
  auto coset_of = [&](const GroupElt& x) -> size_t {
    for (size_t k = 0; k < reps.size(); ++k) {
      GroupElt h = g_mul(g_inv(reps[k], p, 1), x, p, 1);
      if (sub_contains(sub, h)) return k;
    }
    fail(Err::math, "transversal does not cover");
  };
  GroupElt acc;  /* product of the h-parts; order irrelevant mod [sub,sub] */
  GroupElt gf = g;  /* conjugation ignores z; track z separately */
  u64 zsum = 0;
  gf.z = 0;
  for (size_t j = 0; j < reps.size(); ++j) {
    GroupElt x = g_mul(gf, reps[j], p, 1);
    size_t k = coset_of(x);
    GroupElt h = g_mul(g_inv(reps[k], p, 1), x, p, 1);
    acc = g_mul(acc, h, p, 1);
    zsum += g.z;
  }
  unsigned cm = sub_commutator_mask(sub, p);
  for (unsigned i = 0; i < 6; ++i)
    if (cm & (1u << i)) acc.w[i] = 0;
  acc.z = pn ? zsum % pn : 0;
  return acc;
}

GroupElt frobenius_elt(const GroupElt& g, unsigned p, u64 pn) {
  return g_pow(g, long(p), p, pn);
}

}  // namespace tk1
