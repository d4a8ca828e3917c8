#include "thetak1.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>

#include <json.hpp>

#include "serial.hpp"
#include "suites.hpp"

using namespace tk1;

struct tk1_engine {
  RunConfig cfg;
  bool configured = false;
  std::string last_error;
  std::unique_ptr<ClassTable> ct;
  std::unique_ptr<Context> ctx;

  const ClassTable& classes() {
    if (!ct) ct = std::make_unique<ClassTable>(build_class_table(cfg.rp.p));
    return *ct;
  }
  Context& context() {
    if (!ctx) ctx = std::make_unique<Context>(cfg.rp);
    return *ctx;
  }
};

struct tk1_elem {
  std::string canon;
};

namespace {

char* dup_cstr(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

tk1_status status_of(Err kind) {
  switch (kind) {
    case Err::invalid_arg: return TK1_ERR_INVALID;
    case Err::parse: return TK1_ERR_PARSE;
    case Err::math: return TK1_ERR_MATH;
    case Err::capacity: return TK1_ERR_CAPACITY;
    case Err::io: return TK1_ERR_IO;
  }
  return TK1_ERR_INTERNAL;
}

template <class F>
tk1_status guarded(tk1_engine* e, F&& body) {
  try {
    return body();
  } catch (const Error& err) {
    if (e) e->last_error = err.what();
    return status_of(err.kind);
  } catch (const std::exception& ex) {
    if (e) e->last_error = ex.what();
    return TK1_ERR_INTERNAL;
  }
}

RunConfig parse_config(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Err::parse, "malformed configuration JSON");
  if (!j.is_object()) fail(Err::parse, "configuration must be an object");
  RunConfig cfg;
  cfg.rp.p = j.value("p", 5u);
  cfg.rp.n = j.value("gamma_level", 0u);
  cfg.rp.m = j.value("precision", 2u);
  cfg.seed = j.value("seed", u64(1));
  cfg.trials = j.value("trials", 0u);
  cfg.staging = j.value("staging", true);
  if (j.contains("suites")) {
    if (!j.at("suites").is_array())
      fail(Err::parse, "suites must be an array of names");
    for (const auto& s : j.at("suites")) {
      if (!s.is_string()) fail(Err::parse, "suites must be an array of names");
      cfg.suites.push_back(s.get<std::string>());
    }
  }
  cfg.rp.validate();
  const auto& known = suite_names();
  for (const std::string& want : cfg.suites)
    if (std::find(known.begin(), known.end(), want) == known.end())
      fail(Err::invalid_arg, "unknown suite " + want);
  return cfg;
}

}  // namespace

extern "C" {

tk1_status tk1_engine_new(const char* config_json, tk1_engine** out) {
  if (!out) return TK1_ERR_INVALID;
  *out = nullptr;
  auto e = std::make_unique<tk1_engine>();
  tk1_status st = guarded(e.get(), [&] {
    e->cfg = parse_config(config_json ? config_json : "{}");
    e->configured = true;
    return TK1_OK;
  });
  *out = e.release();
  return st;
}

void tk1_engine_free(tk1_engine* e) { delete e; }

const char* tk1_engine_last_error(const tk1_engine* e) {
  return e ? e->last_error.c_str() : "";
}

tk1_status tk1_run(tk1_engine* e, char** report_json, int* all_passed) {
  if (!e || !report_json) return TK1_ERR_INVALID;
  *report_json = nullptr;
  if (all_passed) *all_passed = 0;
  if (!e->configured) {
    e->last_error = "engine carries a failed configuration";
    return TK1_ERR_INVALID;
  }
  return guarded(e, [&] {
    RunReport rep = run_suites(e->cfg);
    *report_json = dup_cstr(report_to_json(rep));
    if (!*report_json) return TK1_ERR_INTERNAL;
    if (all_passed) *all_passed = rep.all_pass ? 1 : 0;
    return TK1_OK;
  });
}

tk1_status tk1_dump_tables(tk1_engine* e, const char* which, char** csv) {
  if (!e || !which || !csv) return TK1_ERR_INVALID;
  *csv = nullptr;
  if (!e->configured) {
    e->last_error = "engine carries a failed configuration";
    return TK1_ERR_INVALID;
  }
  return guarded(e, [&] {
    std::string text;
    std::string w = which;
    if (w == "classes") text = class_table_csv(e->context().classes());
    else if (w == "characters") text = character_table_csv(e->context());
    else if (w == "theta") text = theta_table_csv(e->context());
    else fail(Err::invalid_arg, "unknown table " + w);
    *csv = dup_cstr(text);
    return *csv ? TK1_OK : TK1_ERR_INTERNAL;
  });
}

tk1_status tk1_elem_load(tk1_engine* e, const char* json, tk1_elem** out) {
  if (!e || !json || !out) return TK1_ERR_INVALID;
  *out = nullptr;
  if (!e->configured) {
    e->last_error = "engine carries a failed configuration";
    return TK1_ERR_INVALID;
  }
  return guarded(e, [&] {
    auto elem = std::make_unique<tk1_elem>();
    elem->canon = elem_roundtrip(e->classes(), json);
    *out = elem.release();
    return TK1_OK;
  });
}

tk1_status tk1_elem_dump(tk1_engine* e, const tk1_elem* x, char** json) {
  if (!e || !x || !json) return TK1_ERR_INVALID;
  *json = dup_cstr(x->canon);
  return *json ? TK1_OK : TK1_ERR_INTERNAL;
}

tk1_status tk1_elem_equal(tk1_engine* e, const tk1_elem* x, const tk1_elem* y,
                          int* eq) {
  if (!e || !x || !y || !eq) return TK1_ERR_INVALID;
  *eq = (x->canon == y->canon) ? 1 : 0;
  return TK1_OK;
}

void tk1_elem_free(tk1_elem* x) { delete x; }

void tk1_string_free(char* s) { std::free(s); }

const char* tk1_version(void) { return "0.1.0"; }

}  // extern "C"
