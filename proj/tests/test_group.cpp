#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "group.hpp"

using namespace tk1;

namespace {

constexpr unsigned P = 5;

GroupElt rnd(Rng& rng, u64 pn = 1) {
  GroupElt g;
  for (auto& w : g.w) w = unsigned(rng.below(P));
  g.z = rng.below(pn);
  return g;
}

/* reference multiplication through the 4x4 matrix picture */
GroupElt mat_mul(const GroupElt& x, const GroupElt& y, u64 pn) {
  auto a = g_matrix_entries(x, P);
  auto b = g_matrix_entries(y, P);
  /* entries (1,2),(2,3),(3,4),(1,3),(2,4),(1,4) */
  std::array<unsigned, 6> c;
  c[0] = (a[0] + b[0]) % P;
  c[1] = (a[1] + b[1]) % P;
  c[2] = (a[2] + b[2]) % P;
  c[3] = (a[3] + b[3] + a[0] * b[1]) % P;
  c[4] = (a[4] + b[4] + a[1] * b[2]) % P;
  c[5] = (a[5] + b[5] + a[0] * b[4] + a[3] * b[2]) % P;
  return g_from_matrix_entries(c, P, (x.z + y.z) % pn, pn);
}

}  // namespace

TEST_CASE("group law matches the matrix picture") {
  Rng rng(7, "glaw", 0);
  for (int i = 0; i < 300; ++i) {
    GroupElt x = rnd(rng, 25), y = rnd(rng, 25);
    CHECK(g_mul(x, y, P, 25) == mat_mul(x, y, 25));
  }
  for (int i = 0; i < 100; ++i) {
    GroupElt x = rnd(rng), y = rnd(rng), z = rnd(rng);
    CHECK(g_mul(g_mul(x, y, P, 1), z, P, 1) == g_mul(x, g_mul(y, z, P, 1), P, 1));
    CHECK(g_mul(x, g_inv(x, P, 1), P, 1).is_identity());
  }
}

TEST_CASE("generator commutators") {
  auto gen = g_generators(P);
  auto comm = [&](int i, int j) {
    GroupElt c = g_mul(g_mul(gen[i], gen[j], P, 1),
                       g_mul(g_inv(gen[i], P, 1), g_inv(gen[j], P, 1), P, 1),
                       P, 1);
    return c;
  };
  /* alpha,beta -> delta; beta,gamma -> eps; alpha,eps -> zeta; delta,gamma -> zeta */
  CHECK(comm(0, 1) == g_make(0, 0, 0, 1, 0, 0, P));
  CHECK(comm(1, 2) == g_make(0, 0, 0, 0, 1, 0, P));
  CHECK(comm(0, 4) == g_make(0, 0, 0, 0, 0, 1, P));
  CHECK(comm(3, 2) == g_make(0, 0, 0, 0, 0, 1, P));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      bool nontrivial = (i == 0 && j == 1) || (i == 1 && j == 0) ||
                        (i == 1 && j == 2) || (i == 2 && j == 1) ||
                        (i == 0 && j == 4) || (i == 4 && j == 0) ||
                        (i == 3 && j == 2) || (i == 2 && j == 3);
      CHECK(comm(i, j).is_identity() == !nontrivial);
    }
}

TEST_CASE("exponent p") {
  Rng rng(7, "expp", 0);
  for (int i = 0; i < 50; ++i) {
    GroupElt x = rnd(rng);
    CHECK(g_pow(x, 5, P, 1).finite_identity());
  }
  GroupElt t;
  t.z = 3;
  CHECK(g_pow(t, 5, P, 25).z == 15);
}

TEST_CASE("index encoding") {
  Rng rng(7, "gidx", 0);
  for (int i = 0; i < 200; ++i) {
    GroupElt x = rnd(rng);
    CHECK(g_from_index(g_index(x, P), P).w == x.w);
  }
}

TEST_CASE("conjugacy table") {
  ClassTable ct = build_class_table(P);
  CHECK(ct.count() == 265);
  std::map<unsigned, unsigned> hist;
  u64 total = 0;
  for (const ConjClass& c : ct.classes) {
    ++hist[c.size];
    total += c.size;
    auto [fam, params] = classify(c.rep, P);
    CHECK(fam == c.fam);
    CHECK(params == c.params);
  }
  CHECK(total == 15625);
  CHECK(hist[1] == 5);
  CHECK(hist[5] == 24);
  CHECK(hist[25] == 140);
  CHECK(hist[125] == 96);

  /* class_of agrees with the arithmetic classifier everywhere */
  for (u32 idx = 0; idx < 15625; ++idx) {
    GroupElt g = g_from_index(idx, P);
    const ConjClass& c = ct.at(ct.class_of[idx]);
    auto [fam, params] = classify(g, P);
    CHECK(fam == c.fam);
    CHECK(params == c.params);
  }

  for (const ConjClass& c : ct.classes) {
    auto parsed = class_from_name(class_name(c));
    REQUIRE(parsed.has_value());
    CHECK(parsed->first == c.fam);
    CHECK(parsed->second == c.params);
  }
}

TEST_CASE("conjugation is a class invariant") {
  ClassTable ct = build_class_table(P);
  Rng rng(7, "conj", 0);
  for (int i = 0; i < 500; ++i) {
    GroupElt g = rnd(rng), h = rnd(rng);
    CHECK(ct.class_of[g_index(g, P)] ==
          ct.class_of[g_index(g_conj(h, g, P, 1), P)]);
  }
}

TEST_CASE("named subgroups") {
  CHECK(sub_order_finite(Sub::U0, P) == 15625);
  CHECK(sub_order_finite(Sub::U1, P) == 3125);
  CHECK(sub_order_finite(Sub::U2, P) == 625);
  CHECK(sub_order_finite(Sub::U3, P) == 125);
  CHECK(sub_order_finite(Sub::V3, P) == 1);
  CHECK(sub_leq(Sub::U3, Sub::U2t));
  CHECK(sub_leq(Sub::U3, Sub::U1));
  CHECK_FALSE(sub_leq(Sub::U2, Sub::U1));
  CHECK(sub_leq(Sub::V2, Sub::V2t));
  CHECK(sub_mask(Sub::N) == sub_mask(Sub::U3));
  for (Sub s : {Sub::U1, Sub::U2t, Sub::U2, Sub::U3, Sub::H}) {
    auto elems = sub_elements(s, P);
    CHECK(elems.size() == sub_order_finite(s, P));
    /* closed under multiplication */
    Rng rng(7, "subclose", unsigned(s));
    for (int i = 0; i < 50; ++i) {
      const GroupElt& x = elems[rng.below(elems.size())];
      const GroupElt& y = elems[rng.below(elems.size())];
      CHECK(sub_contains(s, g_mul(x, y, P, 1)));
    }
    for (size_t i = 0; i < elems.size(); ++i)
      CHECK(sub_elt_index(s, elems[i], P) == i);
  }
  CHECK(sub_from_name("U2t") == Sub::U2t);
  CHECK(sub_from_name("nope") == std::nullopt);
}

TEST_CASE("coset transversals") {
  auto reps = coset_reps(Sub::U0, Sub::U2t, P);
  CHECK(reps.size() == 5);
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      CHECK_FALSE(sub_contains(
          Sub::U2t, g_mul(g_inv(reps[i], P, 1), reps[j], P, 1)));
  auto alt = coset_reps_alt(Sub::U0, Sub::U2t, P);
  CHECK(alt.size() == reps.size());
  bool same = true;
  for (size_t i = 0; i < reps.size(); ++i) same = same && alt[i] == reps[i];
  CHECK_FALSE(same);
}

TEST_CASE("transfer lands on the Frobenius") {
  u64 pn = 25;
  /* index 5: finite generators die, t multiplies by 5 */
  auto gen = g_generators(P);
  for (const GroupElt& g : gen) {
    GroupElt v = verlagerung(Sub::U0, Sub::U1, g, P, pn);
    CHECK(v.finite_identity());
    CHECK(v.z == 0);
  }
  GroupElt t;
  t.z = 3;
  CHECK(verlagerung(Sub::U0, Sub::U1, t, P, pn).z == 15);
  CHECK(verlagerung(Sub::U0, Sub::U3, t, P, pn).z == (3 * 125) % 25);
  CHECK(frobenius_elt(g_make(1, 2, 3, 4, 0, 1, P, 7, pn), P, pn) ==
        GroupElt{{0, 0, 0, 0, 0, 0}, 35 % 25});

  Rng rng(7, "ver", 0);
  for (int i = 0; i < 50; ++i) {
    GroupElt g = rnd(rng, pn);
    GroupElt direct = verlagerung(Sub::U0, Sub::U3, g, P, pn);
    GroupElt step = verlagerung(
        Sub::U1, Sub::U3, verlagerung(Sub::U0, Sub::U1, g, P, pn), P, pn);
    CHECK(direct == step);
    CHECK(direct.finite_identity());
    CHECK(direct.z == (g.z * 125) % pn);
  }
}
