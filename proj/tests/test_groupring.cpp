#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "groupring.hpp"

using namespace tk1;

namespace {

const RingParams kRp{5, 0, 2};
const RingParams kRpT{5, 1, 2};

DenseElt random_dense(const Scheme& s, Rng& rng) {
  DenseElt x(s);
  for (u64& v : x.v) v = rng.below(s.rp.pm());
  return x;
}

DenseElt random_unit(const Scheme& s, Rng& rng) {
  DenseElt x = random_dense(s, rng);
  while (gr_aug(x) % s.rp.p == 0) x.v[0] = addmod(x.v[0], 1, s.rp.pm());
  return x;
}

GSparse random_sparse(RingParams rp, Rng& rng, unsigned nterms) {
  GSparse x(rp);
  for (unsigned i = 0; i < nterms; ++i) {
    GroupElt g;
    for (auto& w : g.w) w = unsigned(rng.below(rp.p));
    g.z = rng.below(rp.pn());
    x.add_term(g, rp.p, rng.below(rp.pm()));
  }
  return x;
}

/* Leibniz determinant, the slow reference */
DenseElt det_brute(const std::vector<std::vector<DenseElt>>& m) {
  size_t n = m.size();
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  DenseElt acc(m[0][0].sch);
  int sign = 1;
  auto emit = [&] {
    DenseElt term = DenseElt::one(m[0][0].sch);
    for (size_t i = 0; i < n; ++i) term = gr_mul(term, m[i][perm[i]]);
    acc = (sign > 0) ? gr_add(acc, term) : gr_sub(acc, term);
  };
  /* Heap's algorithm */
  std::vector<size_t> c(n, 0);
  emit();
  size_t i = 0;
  while (i < n) {
    if (c[i] < i) {
      std::swap(perm[i % 2 ? c[i] : 0], perm[i]);
      sign = -sign;
      emit();
      c[i]++;
      i = 0;
    } else {
      c[i] = 0;
      ++i;
    }
  }
  return acc;
}

}  // namespace

TEST_CASE("schemes and tags") {
  Scheme w1 = scheme_from_tag(kRp, "W1").value();
  CHECK(w1.rank() == 4);
  CHECK(w1.gsize() == 625);
  CHECK(scheme_tag(w1) == "W1");
  Scheme q = scheme_coords(kRp, 0b000101);
  CHECK(scheme_tag(q) == "Q_ac");
  CHECK(scheme_from_tag(kRp, "Q_ac").value() == q);
  CHECK_FALSE(scheme_from_tag(kRp, "Q_x").has_value());

  GroupElt g = g_make(2, 0, 3, 0, 0, 0, 5);
  CHECK(q.gdecode(q.gindex(g)).w == g.w);
}

TEST_CASE("sparse noncommutative product") {
  GSparse d = GSparse::monomial(kRp, g_make(0, 0, 0, 1, 0, 0, 5));
  GSparse c = GSparse::monomial(kRp, g_make(0, 0, 1, 0, 0, 0, 5));
  /* delta gamma = gamma delta zeta */
  CHECK(gs_mul(d, c) == GSparse::monomial(kRp, g_make(0, 0, 1, 1, 0, 1, 5)));
  CHECK(gs_mul(c, d) == GSparse::monomial(kRp, g_make(0, 0, 1, 1, 0, 0, 5)));

  Rng rng(3, "gsmul", 0);
  for (int i = 0; i < 30; ++i) {
    GSparse x = random_sparse(kRpT, rng, 4);
    GSparse y = random_sparse(kRpT, rng, 4);
    GSparse z = random_sparse(kRpT, rng, 4);
    CHECK(gs_mul(gs_mul(x, y), z) == gs_mul(x, gs_mul(y, z)));
    CHECK(gs_aug(gs_mul(x, y)) == mulmod(gs_aug(x), gs_aug(y), kRpT.pm()));
    CHECK(gs_add(x, y) == gs_add(y, x));
  }
}

TEST_CASE("dense full-group vector agrees with the sparse product") {
  Rng rng(3, "gdmul", 0);
  for (int i = 0; i < 10; ++i) {
    GSparse x = random_sparse(kRpT, rng, 6);
    GSparse y = random_sparse(kRpT, rng, 4);
    GDense xd = gd_from_sparse(x);
    CHECK(gd_to_sparse(gd_mul_sparse(xd, y)) == gs_mul(x, y));
  }
}

TEST_CASE("commutative scheme ring") {
  Scheme w0 = scheme_from_tag(kRp, "W0").value();
  Rng rng(3, "wring", 0);
  for (int i = 0; i < 25; ++i) {
    DenseElt x = random_dense(w0, rng);
    DenseElt y = random_dense(w0, rng);
    CHECK(gr_mul(x, y) == gr_mul(y, x));
    CHECK(gr_aug(gr_mul(x, y)) == mulmod(gr_aug(x), gr_aug(y), kRp.pm()));
    CHECK(gr_sub(gr_add(x, y), y) == x);
  }
  for (int i = 0; i < 25; ++i) {
    DenseElt u = random_unit(w0, rng);
    CHECK(gr_mul(u, gr_inv(u)) == DenseElt::one(w0));
  }
  DenseElt z = random_dense(w0, rng);
  CHECK_FALSE(gr_is_unit(gr_scalar_mul(z, 5)));
}

TEST_CASE("frobenius endomorphism") {
  Scheme w0 = scheme_from_tag(kRpT, "W0").value();
  Rng rng(3, "frob", 0);
  for (int i = 0; i < 20; ++i) {
    DenseElt x = random_dense(w0, rng);
    DenseElt y = random_dense(w0, rng);
    CHECK(gr_frobenius(gr_mul(x, y)) ==
          gr_mul(gr_frobenius(x), gr_frobenius(y)));
    CHECK(gr_frobenius(gr_add(x, y)) ==
          gr_add(gr_frobenius(x), gr_frobenius(y)));
  }
  DenseElt b = basis_elt(w0, g_make(1, 2, 0, 0, 0, 0, 5), 3);
  DenseElt fb = gr_frobenius(b);
  CHECK(fb == basis_elt(w0, GroupElt{}, 15 % 5, 1));
}

TEST_CASE("norm lines square to p times themselves") {
  Scheme w1 = scheme_from_tag(kRp, "W1").value();
  DenseElt hd = h_line(w1, g_make(0, 0, 0, 1, 0, 0, 5));
  CHECK(gr_mul(hd, hd) == gr_scalar_mul(hd, 5));
  Scheme w2 = scheme_from_tag(kRp, "W2").value();
  DenseElt hz = h_line(w2, g_make(0, 0, 0, 0, 0, 1, 5));
  CHECK(gr_mul(hz, hz) == gr_scalar_mul(hz, 5));
  CHECK(gr_aug(hd) == 5);
}

TEST_CASE("projection and inclusion") {
  Scheme w0 = scheme_from_tag(kRp, "W0").value();
  Scheme qc = scheme_coords(kRp, 0b000100);
  Rng rng(3, "proj", 0);
  for (int i = 0; i < 20; ++i) {
    DenseElt x = random_dense(w0, rng);
    DenseElt y = random_dense(w0, rng);
    CHECK(gr_project(gr_mul(x, y), qc) ==
          gr_mul(gr_project(x, qc), gr_project(y, qc)));
    DenseElt s = random_dense(qc, rng);
    CHECK(gr_project(gr_include(s, w0), qc) == s);
  }
}

TEST_CASE("restriction trace both ways") {
  Scheme w0 = scheme_from_tag(kRpT, "W0").value();
  Scheme qc = scheme_coords(kRpT, 0b000100);
  Rng rng(3, "trace", 0);
  for (int i = 0; i < 10; ++i) {
    DenseElt x = random_dense(w0, rng);
    CHECK(comm_trace(x, qc) == comm_trace_matrix(x, qc));
  }
  /* norm is multiplicative on units */
  for (int i = 0; i < 5; ++i) {
    DenseElt u = random_unit(w0, rng);
    DenseElt v = random_unit(w0, rng);
    CHECK(comm_norm(gr_mul(u, v), qc) ==
          gr_mul(comm_norm(u, qc), comm_norm(v, qc)));
  }
}

TEST_CASE("division by p is exact or refused") {
  Scheme w0 = scheme_from_tag(kRp, "W0").value();
  Rng rng(3, "divp", 0);
  DenseElt x = random_dense(w0, rng);
  CHECK(gr_reduce(gr_div_exact(gr_scalar_mul(x, 5), 1), 1) == gr_reduce(x, 1));
  DenseElt y = DenseElt::one(w0);
  CHECK_THROWS_AS(gr_div_exact(y, 1), Error);
  /* precision change round-trips through the canonical lift */
  DenseElt up = gr_reduce(x, 4);
  CHECK(up.sch.rp.m == 4);
  CHECK(gr_reduce(up, 2) == x);
}

TEST_CASE("determinant by elimination matches the Leibniz expansion") {
  Scheme q = scheme_coords(kRp, 0b000100);
  Rng rng(3, "det", 0);
  for (int rep = 0; rep < 12; ++rep) {
    size_t n = 2 + rep % 3;
    std::vector<std::vector<DenseElt>> m(n, std::vector<DenseElt>(n));
    for (auto& row : m)
      for (auto& e : row) {
        e = random_dense(q, rng);
        /* sprinkle non-unit entries so pivoting has to search */
        if (rng.below(3) == 0) e = gr_scalar_mul(e, 5);
      }
    CHECK(gr_det(m) == det_brute(m));
  }
  /* row swap flips the sign */
  std::vector<std::vector<DenseElt>> m(2, std::vector<DenseElt>(2));
  for (auto& row : m)
    for (auto& e : row) e = random_unit(q, rng);
  auto sw = m;
  std::swap(sw[0], sw[1]);
  CHECK(gr_det(sw) == gr_neg(gr_det(m)));
}

TEST_CASE("subgroup staging ring") {
  SubRing r1 = sub_ring(kRp, Sub::U1);
  CHECK(r1.gsize == 3125);
  Rng rng(3, "subring", 0);
  auto rnd_sub = [&] {
    GSparse x(kRp);
    for (int i = 0; i < 4; ++i) {
      GroupElt g;
      for (unsigned j = 0; j < 6; ++j)
        if (sub_mask(Sub::U1) & (1u << j)) g.w[j] = unsigned(rng.below(5));
      x.add_term(g, 5, rng.below(25));
    }
    return x;
  };
  for (int i = 0; i < 5; ++i) {
    GSparse x = rnd_sub(), y = rnd_sub();
    SubDense xd = sd_from_sparse(r1, x), yd = sd_from_sparse(r1, y);
    CHECK(sd_to_sparse(sd_mul(xd, yd)) == gs_mul(x, y));
    CHECK(sd_to_sparse(xd) == x);
    CHECK(sd_aug(xd) == gs_aug(x));
  }
  GSparse u = gs_add(GSparse::one(kRp),
                     GSparse::monomial(kRp, g_make(0, 0, 1, 1, 0, 0, 5), 5));
  SubDense ud = sd_from_sparse(r1, u);
  CHECK(sd_to_sparse(sd_mul(ud, sd_inv(ud))) == GSparse::one(kRp));
}

TEST_CASE("conjugacy module arithmetic") {
  ConjElt a(kRpT, 4);
  a.at(1, 2) = 7;
  ConjElt b(kRpT, 4);
  b.at(1, 2) = 21;
  CHECK(conj_add(a, b).at(1, 2) == 3);
  CHECK(conj_sub(b, a).at(1, 2) == 14);
  CHECK(conj_scalar_mul(a, 4).at(1, 2) == 3);
  CHECK(conj_reduce(a, 1).at(1, 2) == 2);
}
