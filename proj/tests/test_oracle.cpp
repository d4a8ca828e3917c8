#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <sstream>

#include "oracle.hpp"

using namespace tk1;

namespace {

const RingParams kRp{5, 0, 2};

CharSpec spec_of(Comp i, std::array<unsigned, 6> lam) { return CharSpec{i, lam}; }

}  // namespace

TEST_CASE("character inventory") {
  auto specs = character_specs(5);
  CHECK(specs.size() == 265);

  std::map<unsigned, unsigned> by_degree;
  std::map<Comp, unsigned> by_comp;
  u64 sq = 0;
  for (const CharSpec& s : specs) {
    unsigned d = char_degree(s, 5);
    by_degree[d]++;
    by_comp[s.i]++;
    sq += u64(d) * d;
  }
  CHECK(by_degree[1] == 125);
  CHECK(by_degree[5] == 120);
  CHECK(by_degree[25] == 20);
  CHECK(sq == 15625);
  CHECK(by_comp[Comp::c0] == 125);
  CHECK(by_comp[Comp::c1] == 120);
  CHECK(by_comp[Comp::c2t] == 0);
  CHECK(by_comp[Comp::c2] == 20);
  CHECK(by_comp[Comp::c3] == 0);

  CHECK(char_label(spec_of(Comp::c0, {1, 0, 2, 0, 0, 0})) == "ind0:1.0.2.0.0.0");
}

TEST_CASE("induced values by hand") {
  Context ctx(kRp);
  GroupElt beta = g_make(0, 1, 0, 0, 0, 0, 5);
  GroupElt delta = g_make(0, 0, 0, 1, 0, 0, 5);
  GroupElt eps = g_make(0, 0, 0, 0, 1, 0, 5);
  GroupElt zeta = g_make(0, 0, 0, 0, 0, 1, 5);

  /* degree 1: evaluation through the coordinate quotient */
  CharSpec a = spec_of(Comp::c0, {0, 0, 3, 0, 0, 0});
  CHECK(char_value(ctx, a, g_make(0, 0, 2, 0, 0, 0, 5)) == CycloElt::root(5, 6));

  /* index 5: conjugates of delta stay put, a stray generator escapes */
  CharSpec b = spec_of(Comp::c1, {0, 0, 0, 0, 1, 0});
  CHECK(char_value(ctx, b, delta) == CycloElt::integer(5, 5));
  CHECK(char_value(ctx, b, g_make(1, 1, 0, 0, 0, 0, 5)) == CycloElt(5));
  CHECK(char_value(ctx, b, eps) == cyclo_scalar_mul(CycloElt::root(5, 1), 5));

  /* index 25: only the five central-column conjugates survive at beta */
  CharSpec c = spec_of(Comp::c2, {0, 0, 1, 0, 0, 0});
  CHECK(char_value(ctx, c, beta) == CycloElt::integer(5, 5));
  CharSpec cz = spec_of(Comp::c2, {0, 0, 0, 0, 0, 2});
  CHECK(char_value(ctx, cz, zeta) == cyclo_scalar_mul(CycloElt::root(5, 2), 25));
  CHECK(char_value(ctx, cz, g_make(1, 0, 0, 0, 0, 0, 5)) == CycloElt(5));
}

TEST_CASE("table passes the integrity battery") {
  Context ctx(kRp);
  CHECK(character_integrity(ctx).pass);
}

TEST_CASE("csv export shape") {
  Context ctx(kRp);
  std::string csv = character_table_csv(ctx);
  CHECK(csv.rfind("character,", 0) == 0);
  CHECK(csv.find("ind0:0.0.0.0.0.0") != std::string::npos);
  size_t lines = 0;
  std::istringstream is(csv);
  for (std::string line; std::getline(is, line);) ++lines;
  CHECK(lines == 266);
}

TEST_CASE("determinant evaluation against the norm components") {
  Context ctx(kRp);
  Rng rng(23, "ev", 0);
  GSparse u = GSparse::one(kRp);
  for (int i = 0; i < 4; ++i) {
    GroupElt g;
    for (auto& w : g.w) w = unsigned(rng.below(5));
    u.add_term(g, 5, rng.below(25));
  }
  if (gs_aug(u) % 5 == 0) u.add_term(GroupElt{}, 5, 1);

  CHECK(ev_compat(ctx, u, spec_of(Comp::c0, {2, 1, 0, 0, 0, 0})).pass);
  CHECK(ev_compat(ctx, u, spec_of(Comp::c1, {1, 0, 2, 0, 0, 0})).pass);
  CHECK(ev_compat(ctx, u, spec_of(Comp::c2t, {0, 1, 1, 2, 0, 0})).pass);
  CHECK(ev_compat(ctx, u, spec_of(Comp::c2, {0, 2, 0, 0, 0, 1})).pass);
}
