#pragma once

#include "theta.hpp"

namespace tk1 {

/* Every irreducible of the finite group is induced from a degree-1 character
   factoring through one of the five coordinate quotients; lam holds the zeta
   exponent attached to each word coordinate of W_i. */
struct CharSpec {
  Comp i = Comp::c0;
  std::array<unsigned, 6> lam{};
};

std::vector<CharSpec> character_specs(unsigned p);
unsigned char_degree(const CharSpec& spec, unsigned p);
std::string char_label(const CharSpec& spec);

/* value at g of the induced character, by the transversal sum */
CycloElt char_value(Context& ctx, const CharSpec& spec, const GroupElt& g);

/* full exact table, chars x classes */
std::vector<std::vector<CycloElt>> character_table(Context& ctx);

/* count and degree bookkeeping, both orthogonality relations, and agreement
   of every character with its evaluation through the closed additive table */
CheckReport character_integrity(Context& ctx);

/* determinant of the induced monomial matrix of u against the degree-1
   evaluation of the matching norm component, over (Z/p^m)[zeta] x Gamma;
   a precomputed norm tuple for u may be passed to avoid recomputation */
CheckReport ev_compat(Context& ctx, const GSparse& u, const CharSpec& spec,
                      const ThetaTuple* tup = nullptr);

std::string character_table_csv(Context& ctx);

}  // namespace tk1
