#include "serial.hpp"

#include <json.hpp>
#include <sstream>

namespace tk1 {

namespace {

using json = nlohmann::ordered_json;

void need(bool ok, const std::string& what) {
  if (!ok) fail(Err::parse, what);
}

u64 get_u64(const json& j, const char* key) {
  need(j.contains(key), std::string("missing field ") + key);
  const json& v = j.at(key);
  need(v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0),
       std::string("field ") + key + " must be a nonnegative integer");
  return v.get<u64>();
}

std::string get_str(const json& j, const char* key) {
  need(j.contains(key), std::string("missing field ") + key);
  need(j.at(key).is_string(), std::string("field ") + key + " must be a string");
  return j.at(key).get<std::string>();
}

RingParams get_rp(const json& j) {
  RingParams rp;
  rp.p = unsigned(get_u64(j, "p"));
  rp.n = unsigned(get_u64(j, "n"));
  rp.m = unsigned(get_u64(j, "m"));
  rp.validate();
  return rp;
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  need(!j.is_discarded(), "malformed JSON");
  need(j.is_object(), "payload must be an object");
  need(j.contains("v") && j.at("v").is_number() && j.at("v").get<int>() == 1,
       "unsupported schema version");
  return j;
}

json header(const char* kind, RingParams rp) {
  json j;
  j["v"] = 1;
  j["kind"] = kind;
  j["p"] = rp.p;
  j["n"] = rp.n;
  j["m"] = rp.m;
  return j;
}

json coords_of(const Scheme& s, u32 gidx) {
  GroupElt g = s.gdecode(gidx);
  json a = json::array();
  for (unsigned i = 0; i < 6; ++i)
    if (s.mask & (1u << i)) a.push_back(g.w[i]);
  return a;
}

json dense_json(const DenseElt& x) {
  json j = header("scheme", x.sch.rp);
  j["ring"] = scheme_tag(x.sch);
  json terms = json::array();
  u64 pn = x.sch.rp.pn();
  for (u64 gidx = 0; gidx < x.sch.gsize(); ++gidx)
    for (u64 z = 0; z < pn; ++z) {
      u64 c = x.at(u32(gidx), z);
      if (!c) continue;
      json t;
      t["g"] = coords_of(x.sch, u32(gidx));
      t["z"] = z;
      t["c"] = c;
      terms.push_back(std::move(t));
    }
  j["terms"] = std::move(terms);
  return j;
}

DenseElt dense_parse(const json& j) {
  RingParams rp = get_rp(j);
  std::string tag = get_str(j, "ring");
  auto sch = scheme_from_tag(rp, tag);
  need(sch.has_value(), "unknown ring tag " + tag);
  DenseElt x(*sch);
  need(j.contains("terms") && j.at("terms").is_array(), "missing terms array");
  for (const json& t : j.at("terms")) {
    need(t.is_object() && t.contains("g") && t.at("g").is_array(),
         "bad scheme term");
    const json& gs = t.at("g");
    need(gs.size() == sch->rank(), "coordinate count does not match the ring");
    GroupElt g;
    size_t pos = 0;
    for (unsigned i = 0; i < 6; ++i)
      if (sch->mask & (1u << i)) {
        u64 w = gs.at(pos++).get<u64>();
        need(w < rp.p, "coordinate out of range");
        g.w[i] = unsigned(w);
      }
    u64 z = get_u64(t, "z");
    need(z < rp.pn(), "t-exponent out of range");
    u64& slot = x.at(sch->gindex(g), z);
    slot = addmod(slot, get_u64(t, "c") % rp.pm(), rp.pm());
  }
  return x;
}

json gsparse_json(const GSparse& x) {
  json j = header("group", x.rp);
  json terms = json::array();
  for (const auto& [key, c] : x.terms) {
    GroupElt g = gs_decode(x, key);
    json t;
    t["g"] = std::vector<unsigned>(g.w.begin(), g.w.end());
    t["z"] = g.z;
    t["c"] = c;
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

GSparse gsparse_parse(const json& j) {
  RingParams rp = get_rp(j);
  GSparse x(rp);
  need(j.contains("terms") && j.at("terms").is_array(), "missing terms array");
  for (const json& t : j.at("terms")) {
    need(t.is_object() && t.contains("g") && t.at("g").is_array() &&
             t.at("g").size() == 6,
         "bad group term");
    GroupElt g;
    for (unsigned i = 0; i < 6; ++i) {
      u64 w = t.at("g").at(i).get<u64>();
      need(w < rp.p, "coordinate out of range");
      g.w[i] = unsigned(w);
    }
    g.z = get_u64(t, "z");
    need(g.z < rp.pn(), "t-exponent out of range");
    x.add_term(g, rp.p, get_u64(t, "c") % rp.pm());
  }
  return x;
}

json conj_json(const ClassTable& ct, const ConjElt& x) {
  need(x.nclasses == ct.count(), "class count does not match the table");
  json j = header("conj", x.rp);
  json terms = json::array();
  u64 pn = x.rp.pn();
  for (u32 cid = 0; cid < x.nclasses; ++cid)
    for (u64 z = 0; z < pn; ++z) {
      u64 c = x.at(cid, z);
      if (!c) continue;
      json t;
      t["cls"] = class_name(ct.at(cid));
      t["z"] = z;
      t["c"] = c;
      terms.push_back(std::move(t));
    }
  j["terms"] = std::move(terms);
  return j;
}

u32 class_id_by_name(const ClassTable& ct, const std::string& name) {
  auto parsed = class_from_name(name);
  need(parsed.has_value(), "bad class name " + name);
  for (u32 cid = 0; cid < ct.count(); ++cid) {
    const ConjClass& c = ct.at(cid);
    if (c.fam == parsed->first && c.params == parsed->second) return cid;
  }
  fail(Err::parse, "class " + name + " not present at this prime");
}

ConjElt conj_parse(const ClassTable& ct, const json& j) {
  RingParams rp = get_rp(j);
  need(rp.p == ct.p, "class table prime does not match the payload");
  ConjElt x(rp, unsigned(ct.count()));
  need(j.contains("terms") && j.at("terms").is_array(), "missing terms array");
  for (const json& t : j.at("terms")) {
    need(t.is_object(), "bad conjugacy term");
    u32 cid = class_id_by_name(ct, get_str(t, "cls"));
    u64 z = get_u64(t, "z");
    need(z < rp.pn(), "t-exponent out of range");
    u64& slot = x.at(cid, z);
    slot = addmod(slot, get_u64(t, "c") % rp.pm(), rp.pm());
  }
  return x;
}

const char* kTupleKeys[5] = {"y0", "y1", "y2t", "y2", "y3"};

json tuple_json(const ThetaTuple& t) {
  json j = header("theta-tuple", t.y[0].sch.rp);
  for (size_t i = 0; i < 5; ++i) j[kTupleKeys[i]] = dense_json(t.y[i]);
  return j;
}

ThetaTuple tuple_parse(const json& j) {
  RingParams rp = get_rp(j);
  ThetaTuple t;
  for (size_t i = 0; i < 5; ++i) {
    need(j.contains(kTupleKeys[i]), std::string("missing component ") + kTupleKeys[i]);
    t.y[i] = dense_parse(j.at(kTupleKeys[i]));
    need(t.y[i].sch.rp.p == rp.p && t.y[i].sch.rp.n == rp.n &&
             t.y[i].sch.rp.m == rp.m,
         "component parameters disagree with the header");
    const char* want = kTupleKeys[i] + 1;  /* "0", "1", "2t", "2", "3" */
    Comp c = *comp_from_name(want);
    need(t.y[i].sch.mask == scheme_for_quotient(rp, comp_u(c), comp_v(c)).mask,
         std::string("component ") + kTupleKeys[i] + " is on the wrong ring");
  }
  return t;
}

json coeff_json(const CoeffElt& c) {
  json j = header("coeff", c.rp);
  j["c"] = c.c;
  return j;
}

CoeffElt coeff_parse(const json& j) {
  RingParams rp = get_rp(j);
  CoeffElt c(rp);
  need(j.contains("c") && j.at("c").is_array() && j.at("c").size() == rp.pn(),
       "coefficient vector must have length p^n");
  for (u64 z = 0; z < rp.pn(); ++z) c.c[z] = j.at("c").at(z).get<u64>() % rp.pm();
  return c;
}

}  // namespace

std::string dense_to_json(const DenseElt& x) { return dense_json(x).dump(); }
std::string gsparse_to_json(const GSparse& x) { return gsparse_json(x).dump(); }
std::string conj_to_json(const ClassTable& ct, const ConjElt& x) {
  return conj_json(ct, x).dump();
}
std::string tuple_to_json(const ThetaTuple& t) { return tuple_json(t).dump(); }
std::string coeff_to_json(const CoeffElt& c) { return coeff_json(c).dump(); }

DenseElt dense_from_json(const std::string& text) { return dense_parse(parse(text)); }
GSparse gsparse_from_json(const std::string& text) { return gsparse_parse(parse(text)); }
ConjElt conj_from_json(const ClassTable& ct, const std::string& text) {
  return conj_parse(ct, parse(text));
}
ThetaTuple tuple_from_json(const std::string& text) { return tuple_parse(parse(text)); }
CoeffElt coeff_from_json(const std::string& text) { return coeff_parse(parse(text)); }

AnyElem elem_from_json(const ClassTable& ct, const std::string& text) {
  json j = parse(text);
  std::string kind = get_str(j, "kind");
  AnyElem e;
  if (kind == "scheme") {
    e.kind = AnyElem::Kind::scheme;
    e.d = dense_parse(j);
  } else if (kind == "group") {
    e.kind = AnyElem::Kind::group;
    e.g = gsparse_parse(j);
  } else if (kind == "conj") {
    e.kind = AnyElem::Kind::conj;
    e.c = conj_parse(ct, j);
  } else if (kind == "theta-tuple") {
    e.kind = AnyElem::Kind::tuple;
    e.t = tuple_parse(j);
  } else if (kind == "coeff") {
    e.kind = AnyElem::Kind::coeff;
    e.r = coeff_parse(j);
  } else {
    fail(Err::parse, "unknown element kind " + kind);
  }
  return e;
}

std::string elem_to_json(const ClassTable& ct, const AnyElem& e) {
  switch (e.kind) {
    case AnyElem::Kind::scheme: return dense_to_json(e.d);
    case AnyElem::Kind::group:  return gsparse_to_json(e.g);
    case AnyElem::Kind::conj:   return conj_to_json(ct, e.c);
    case AnyElem::Kind::tuple:  return tuple_to_json(e.t);
    case AnyElem::Kind::coeff:  return coeff_to_json(e.r);
  }
  fail(Err::invalid_arg, "corrupt element");
}

std::string elem_roundtrip(const ClassTable& ct, const std::string& text) {
  return elem_to_json(ct, elem_from_json(ct, text));
}

std::string class_table_csv(const ClassTable& ct) {
  std::ostringstream out;
  out << "class,a,b,c,d,e,f,size\n";
  for (u32 cid = 0; cid < ct.count(); ++cid) {
    const ConjClass& c = ct.at(cid);
    out << class_name(c);
    for (unsigned i = 0; i < 6; ++i) out << ',' << c.rep.w[i];
    out << ',' << c.size << '\n';
  }
  return out.str();
}

std::string theta_table_csv(Context& ctx) {
  std::ostringstream out;
  out << "class,y0,y1,y2t,y2,y3\n";
  const auto& table = ctx.theta_table();
  std::array<Scheme, 5> schemes;
  for (Comp c : kComps) schemes[size_t(c)] = ctx.scheme(c);
  for (u32 cid = 0; cid < ctx.classes().count(); ++cid) {
    out << class_name(ctx.classes().at(cid));
    for (size_t i = 0; i < 5; ++i) {
      out << ',';
      const auto& terms = table[cid].terms[i];
      if (terms.empty()) {
        out << '0';
        continue;
      }
      bool first = true;
      for (const auto& [gidx, k] : terms) {
        if (!first) out << '+';
        first = false;
        if (k == 1) out << "p*";
        else if (k > 1) out << "p^" << k << "*";
        GroupElt g = schemes[i].gdecode(gidx);
        out << '[';
        bool fc = true;
        for (unsigned j = 0; j < 6; ++j)
          if (schemes[i].mask & (1u << j)) {
            if (!fc) out << '.';
            fc = false;
            out << g.w[j];
          }
        out << ']';
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace tk1
