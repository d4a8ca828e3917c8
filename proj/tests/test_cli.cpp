#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <sstream>

#include "serial.hpp"
#include "thetak1.h"

using namespace tk1;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct EngineGuard {
  tk1_engine* e = nullptr;
  ~EngineGuard() { tk1_engine_free(e); }
};

struct StrGuard {
  char* s = nullptr;
  ~StrGuard() { tk1_string_free(s); }
};

struct ElemGuard {
  tk1_elem* x = nullptr;
  ~ElemGuard() { tk1_elem_free(x); }
};

tk1_engine* make_default() {
  tk1_engine* e = nullptr;
  REQUIRE(tk1_engine_new("{}", &e) == TK1_OK);
  REQUIRE(e != nullptr);
  return e;
}

json run_report(const char* cfg) {
  EngineGuard e{nullptr};
  REQUIRE(tk1_engine_new(cfg, &e.e) == TK1_OK);
  StrGuard rep;
  int ok = -1;
  REQUIRE(tk1_run(e.e, &rep.s, &ok) == TK1_OK);
  CHECK(ok == 1);
  return json::parse(rep.s);
}

void strip_ms(json& j) {
  for (json& s : j["suites"]) s.erase("ms");
}

size_t line_count(const std::string& s) {
  size_t n = 0;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);) ++n;
  return n;
}

/* runs a shell command, folds stderr into the captured output */
int run_cmd(const std::string& cmd, std::string& out) {
  out.clear();
  FILE* f = popen((cmd + " 2>&1").c_str(), "r");
  REQUIRE(f != nullptr);
  char buf[4096];
  size_t k;
  while ((k = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, k);
  int rc = pclose(f);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

const char* cli_path() { return std::getenv("TK1_CLI"); }

}  // namespace

TEST_CASE("engine lifecycle and version") {
  CHECK(tk1_version() != nullptr);
  EngineGuard e{make_default()};
  CHECK(std::string(tk1_engine_last_error(e.e)).empty());
}

TEST_CASE("single-suite run and report shape") {
  json j = run_report(R"({"suites":["sp-stability"],"seed":3})");
  CHECK(j["passed"] == true);
  CHECK(j["config"]["p"] == 5);
  CHECK(j["config"]["seed"] == 3);
  REQUIRE(j["suites"].size() == 1);
  CHECK(j["suites"][0]["name"] == "sp-stability");
  CHECK(j["suites"][0]["status"] == "pass");
  CHECK(j["suites"][0]["failures"] == 0);
}

TEST_CASE("reports are deterministic apart from timing") {
  const char* cfg = R"({"suites":["sp-stability","central-units"],"trials":2,"seed":7})";
  json a = run_report(cfg);
  json b = run_report(cfg);
  strip_ms(a);
  strip_ms(b);
  CHECK(a.dump() == b.dump());
}

TEST_CASE("configuration errors") {
  tk1_engine* e = nullptr;
  CHECK(tk1_engine_new("not json", &e) == TK1_ERR_PARSE);
  tk1_engine_free(e);

  e = nullptr;
  CHECK(tk1_engine_new(R"({"p":3})", &e) == TK1_ERR_INVALID);
  REQUIRE(e != nullptr);
  CHECK(std::string(tk1_engine_last_error(e)).find("p must be") != std::string::npos);
  tk1_engine_free(e);

  e = nullptr;
  CHECK(tk1_engine_new(R"({"suites":["nope"]})", &e) == TK1_ERR_INVALID);
  tk1_engine_free(e);
}

TEST_CASE("table dumps over the c api") {
  EngineGuard e{make_default()};

  StrGuard classes;
  REQUIRE(tk1_dump_tables(e.e, "classes", &classes.s) == TK1_OK);
  std::string cs(classes.s);
  CHECK(cs.rfind("class,a,b,c,d,e,f,size", 0) == 0);
  CHECK(line_count(cs) == 266);

  StrGuard theta;
  REQUIRE(tk1_dump_tables(e.e, "theta", &theta.s) == TK1_OK);
  CHECK(std::string(theta.s).rfind("class,y0,y1,y2t,y2,y3", 0) == 0);

  StrGuard bad;
  CHECK(tk1_dump_tables(e.e, "nope", &bad.s) == TK1_ERR_INVALID);
}

TEST_CASE("element round trips through the handle api") {
  EngineGuard e{make_default()};
  RingParams rp{5, 0, 2};

  auto canon = [&](const std::string& text) {
    ElemGuard x;
    REQUIRE(tk1_elem_load(e.e, text.c_str(), &x.x) == TK1_OK);
    StrGuard dump;
    REQUIRE(tk1_elem_dump(e.e, x.x, &dump.s) == TK1_OK);
    return std::string(dump.s);
  };

  SUBCASE("scheme element") {
    DenseElt d(scheme_from_tag(rp, "W1").value());
    d.at(d.sch.gindex(g_make(1, 0, 2, 0, 0, 0, 5)), 0) = 3;
    d.at(0, 0) = 7;
    std::string text = dense_to_json(d);
    CHECK(canon(text) == text);
  }

  SUBCASE("group element merges duplicate terms") {
    std::string dup =
        R"({"v":1,"kind":"group","p":5,"n":0,"m":2,"terms":[)"
        R"({"g":[0,1,0,0,0,0],"z":0,"c":3},{"g":[0,1,0,0,0,0],"z":0,"c":4}]})";
    GSparse want(rp);
    want.add_term(g_make(0, 1, 0, 0, 0, 0, 5), 5, 7);
    CHECK(canon(dup) == gsparse_to_json(want));
  }

  SUBCASE("conjugacy element") {
    std::string text =
        R"({"v":1,"kind":"conj","p":5,"n":0,"m":2,"terms":[)"
        R"js({"cls":"C_X(1)","z":0,"c":2}]})js";
    std::string out = canon(text);
    CHECK(out.find("C_X(1)") != std::string::npos);
    CHECK(canon(out) == out);
  }

  SUBCASE("tuple element") {
    Context ctx(rp);
    ConjElt x(rp, unsigned(ctx.classes().classes.size()));
    x.at(ctx.classes().class_of[g_index(g_make(0, 0, 1, 0, 0, 0, 5), 5)], 0) = 2;
    std::string text = tuple_to_json(theta_add(ctx, x));
    CHECK(canon(text) == text);
  }

  SUBCASE("coefficient element") {
    std::string text = R"({"v":1,"kind":"coeff","p":5,"n":1,"m":2,"c":[1,2,3,0,24]})";
    CHECK(canon(text) == text);
  }

  SUBCASE("equality") {
    ElemGuard a, b, c;
    REQUIRE(tk1_elem_load(e.e, R"({"v":1,"kind":"coeff","p":5,"n":0,"m":2,"c":[4]})",
                          &a.x) == TK1_OK);
    REQUIRE(tk1_elem_load(e.e, R"({"v":1,"kind":"coeff","p":5,"n":0,"m":2,"c":[29]})",
                          &b.x) == TK1_OK);
    REQUIRE(tk1_elem_load(e.e, R"({"v":1,"kind":"coeff","p":5,"n":0,"m":2,"c":[5]})",
                          &c.x) == TK1_OK);
    int eq = -1;
    REQUIRE(tk1_elem_equal(e.e, a.x, b.x, &eq) == TK1_OK);
    CHECK(eq == 1);
    REQUIRE(tk1_elem_equal(e.e, a.x, c.x, &eq) == TK1_OK);
    CHECK(eq == 0);
  }

  SUBCASE("rejected payloads") {
    tk1_elem* x = nullptr;
    CHECK(tk1_elem_load(e.e, "{}", &x) == TK1_ERR_PARSE);
    CHECK(tk1_elem_load(e.e, "[1,2", &x) == TK1_ERR_PARSE);
    CHECK(tk1_elem_load(
              e.e,
              R"({"v":1,"kind":"scheme","p":5,"n":0,"m":2,"ring":"Wx","terms":[]})",
              &x) == TK1_ERR_PARSE);
    CHECK(tk1_elem_load(e.e,
                        R"js({"v":1,"kind":"conj","p":5,"n":0,"m":2,"terms":[)js"
                        R"js({"cls":"C_Z(9)","z":0,"c":1}]})js",
                        &x) == TK1_ERR_PARSE);
    CHECK(tk1_elem_load(e.e,
                        R"({"v":1,"kind":"group","p":5,"n":0,"m":2,"terms":[)"
                        R"({"g":[9,0,0,0,0,0],"z":0,"c":1}]})",
                        &x) == TK1_ERR_PARSE);
  }
}

TEST_CASE("command line binary") {
  const char* cli = cli_path();
  if (!cli) {
    MESSAGE("TK1_CLI not set, skipping the binary checks");
    return;
  }
  fs::path tmp = fs::temp_directory_path() / ("tk1cli." + std::to_string(getpid()));
  fs::create_directories(tmp);
  std::string out;

  SUBCASE("version and argument errors") {
    CHECK(run_cmd(std::string(cli) + " --version", out) == 0);
    CHECK(run_cmd(std::string(cli) + " frobnicate", out) == 2);
    CHECK(run_cmd(std::string(cli) + " run --p 3 --suite sp-stability", out) == 2);
    CHECK(out.find("p must be") != std::string::npos);
    CHECK(run_cmd(std::string(cli) + " run --suite nope", out) == 2);
  }

  SUBCASE("run writes a report") {
    fs::path rp = tmp / "report.json";
    CHECK(run_cmd(std::string(cli) + " run --suite sp-stability --seed 2 --out " +
                      rp.string(),
                  out) == 0);
    std::ifstream in(rp);
    REQUIRE(in.good());
    json j = json::parse(in);
    CHECK(j["passed"] == true);
    CHECK(j["suites"][0]["name"] == "sp-stability");
  }

  SUBCASE("table dump files") {
    fs::path dir = tmp / "tables";
    CHECK(run_cmd(std::string(cli) + " dump-tables --out " + dir.string(), out) == 0);
    std::ifstream cls(dir / "classes.csv");
    REQUIRE(cls.good());
    std::string head;
    std::getline(cls, head);
    CHECK(head == "class,a,b,c,d,e,f,size");
    CHECK(fs::exists(dir / "characters.csv"));
    CHECK(fs::exists(dir / "theta.csv"));
  }

  SUBCASE("element filter") {
    std::string payload =
        R"({"v":1,"kind":"coeff","p":5,"n":1,"m":2,"c":[1,2,3,0,24]})";
    CHECK(run_cmd("printf '%s' '" + payload + "' | " + cli + " element", out) == 0);
    EngineGuard e{make_default()};
    ElemGuard a, b;
    REQUIRE(tk1_elem_load(e.e, payload.c_str(), &a.x) == TK1_OK);
    REQUIRE(tk1_elem_load(e.e, out.c_str(), &b.x) == TK1_OK);
    int eq = -1;
    REQUIRE(tk1_elem_equal(e.e, a.x, b.x, &eq) == TK1_OK);
    CHECK(eq == 1);
  }

  fs::remove_all(tmp);
}
