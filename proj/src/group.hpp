#pragma once

#include <array>
#include <optional>

#include "common.hpp"

namespace tk1 {

/* Finite part: unitriangular 4x4 over F_p, written in normal-form word
   exponents g = alpha^a beta^b gamma^c delta^d eps^e zeta^f.  The Gamma part
   is carried as an exponent z of t mod p^n. */
struct GroupElt {
  std::array<unsigned, 6> w{};  /* a,b,c,d,e,f mod p */
  u64 z = 0;                    /* t-exponent mod p^n */

  bool operator==(const GroupElt&) const = default;
  bool finite_identity() const { return w == std::array<unsigned, 6>{}; }
  bool is_identity() const { return finite_identity() && z == 0; }
};

/* Matrix entries (1,2),(2,3),(3,4),(1,3),(2,4),(1,4) of the corresponding
   unitriangular matrix. */
std::array<unsigned, 6> g_matrix_entries(const GroupElt& g, unsigned p);
GroupElt g_from_matrix_entries(const std::array<unsigned, 6>& mt, unsigned p, u64 z, u64 pn);

GroupElt g_mul(const GroupElt& x, const GroupElt& y, unsigned p, u64 pn);
GroupElt g_inv(const GroupElt& x, unsigned p, u64 pn);
GroupElt g_pow(GroupElt x, long k, unsigned p, u64 pn);
GroupElt g_conj(const GroupElt& h, const GroupElt& g, unsigned p, u64 pn);  /* h g h^-1 */

/* Finite-part index in [0, p^6): base-p digits a..f, a most significant. */
u32 g_index(const GroupElt& g, unsigned p);
GroupElt g_from_index(u32 idx, unsigned p);

GroupElt g_make(unsigned a, unsigned b, unsigned c, unsigned d, unsigned e, unsigned f,
                unsigned p, u64 z = 0, u64 pn = 1);

/* The six generators in order alpha..zeta. */
std::array<GroupElt, 6> g_generators(unsigned p);

/* Named subgroups.  All of them are coordinate subsets in word exponents. */
enum class Sub {
  U0, U1, U2t, U2, U3, V0, V1, V2t, V2, V3,
  H, N, H0, H1, H2, U1capU2t,
};

const char* sub_name(Sub s);
std::optional<Sub> sub_from_name(const std::string& s);
/* free-coordinate mask, bit i set iff word coordinate i may be nonzero */
unsigned sub_mask(Sub s);
bool sub_contains(Sub s, const GroupElt& g);
bool sub_leq(Sub a, Sub b);  /* a <= b as subgroups */
u64 sub_order_finite(Sub s, unsigned p);

/* Elements of the finite part of a subgroup, in mixed-radix order of its free
   coordinates. */
std::vector<GroupElt> sub_elements(Sub s, unsigned p);
u32 sub_elt_index(Sub s, const GroupElt& g, unsigned p);

/* Conjugacy families of the finite group, in table order. */
enum class Family { I, II, III, IV, V, VI, VII, VIII, IX, X };

struct ConjClass {
  Family fam;
  std::vector<unsigned> params;
  GroupElt rep;       /* canonical representative, z = 0 */
  unsigned size = 0;  /* class size in the finite group */
};

struct ClassTable {
  unsigned p;
  std::vector<ConjClass> classes;      /* size p^3+... = 265 at p=5 */
  std::vector<u32> class_of;           /* finite index -> class id */

  const ConjClass& at(size_t i) const { return classes[i]; }
  size_t count() const { return classes.size(); }
};

ClassTable build_class_table(unsigned p);

/* Arithmetic class detector (no orbit search); returns (family, params). */
std::pair<Family, std::vector<unsigned>> classify(const GroupElt& g, unsigned p);

std::string class_name(const ConjClass& c);
std::optional<std::pair<Family, std::vector<unsigned>>> class_from_name(const std::string& s);

/* Left-coset representatives of amb/sub; the named pairs from the subgroup
   lattice use the standard transversals, everything else is greedy lex. */
std::vector<GroupElt> coset_reps(Sub amb, Sub sub, unsigned p);
/* An alternative transversal (each rep multiplied into its coset differently),
   for transversal-independence checks. */
std::vector<GroupElt> coset_reps_alt(Sub amb, Sub sub, unsigned p);

/* Transfer homomorphism amb^ab -> sub^ab evaluated at g, returned as an
   element of sub modulo [sub,sub] (normal form with commutator part zeroed).
   Implemented by the permutation-product definition. */
GroupElt verlagerung(Sub amb, Sub sub, const GroupElt& g, unsigned p, u64 pn);

/* g -> g^p; finite part dies (exponent p), Gamma exponent multiplies by p. */
GroupElt frobenius_elt(const GroupElt& g, unsigned p, u64 pn);

/* commutator subgroup of a named subgroup, as a mask of free coordinates */
unsigned sub_commutator_mask(Sub s, unsigned p);

}  // namespace tk1
