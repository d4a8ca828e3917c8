#pragma once

#include "theta.hpp"

namespace tk1 {

/* JSON forms of the element types, all tagged with a schema version and the
   ring parameters so a dump is self-describing.  Dumps are canonical: terms
   sorted by index, zero coefficients dropped, compact layout. */

std::string dense_to_json(const DenseElt& x);
std::string gsparse_to_json(const GSparse& x);
std::string conj_to_json(const ClassTable& ct, const ConjElt& x);
std::string tuple_to_json(const ThetaTuple& t);
std::string coeff_to_json(const CoeffElt& c);

DenseElt dense_from_json(const std::string& text);
GSparse gsparse_from_json(const std::string& text);
ConjElt conj_from_json(const ClassTable& ct, const std::string& text);
ThetaTuple tuple_from_json(const std::string& text);
CoeffElt coeff_from_json(const std::string& text);

/* any of the five kinds; used by the load/dump round-trip entry points */
struct AnyElem {
  enum class Kind { scheme, group, conj, tuple, coeff } kind = Kind::scheme;
  DenseElt d;
  GSparse g;
  ConjElt c;
  ThetaTuple t;
  CoeffElt r;
};

AnyElem elem_from_json(const ClassTable& ct, const std::string& text);
std::string elem_to_json(const ClassTable& ct, const AnyElem& e);
/* parse, validate and re-emit canonically; the class table must match the
   prime recorded in the payload when a conjugacy element shows up */
std::string elem_roundtrip(const ClassTable& ct, const std::string& text);

std::string class_table_csv(const ClassTable& ct);
std::string theta_table_csv(Context& ctx);

}  // namespace tk1
