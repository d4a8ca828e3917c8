#include <cstdio>
#include <string>
#include <vector>

#include "suites.hpp"

using namespace tk1;

namespace {

struct Piece {
  unsigned n, m;
  std::vector<std::string> suites;
  unsigned trials;  /* 0 keeps the per-suite defaults */
};

struct Outcome {
  bool pass = true;
  double ms = 0.0;
  std::string detail;
};

Outcome run_pieces(const std::vector<Piece>& pieces) {
  Outcome out;
  for (const Piece& pc : pieces) {
    RunConfig cfg;
    cfg.rp = RingParams{5, pc.n, pc.m};
    cfg.seed = 1;
    cfg.trials = pc.trials;
    cfg.suites = pc.suites;
    RunReport rep = run_suites(cfg);
    for (const SuiteResult& s : rep.suites) {
      out.ms += s.ms;
      if (s.status == "pass") continue;
      out.pass = false;
      std::string what = s.name + "@(" + std::to_string(pc.n) + "," +
                         std::to_string(pc.m) + ")=" + s.status;
      if (!s.notes.empty()) what += " [" + s.notes.front() + "]";
      if (!out.detail.empty()) out.detail += "; ";
      out.detail += what;
    }
  }
  return out;
}

bool all_ok = true;

void criterion(const char* id, const std::vector<Piece>& pieces,
               double budget_ms = 0.0) {
  Outcome out = run_pieces(pieces);
  bool pass = out.pass;
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.1fs", out.ms / 1000.0);
  std::string detail = timing;
  if (budget_ms > 0.0) {
    if (out.ms >= budget_ms) pass = false;
    std::snprintf(timing, sizeof timing, "%.1fs (budget %.0fs)", out.ms / 1000.0,
                  budget_ms / 1000.0);
    detail = timing;
  }
  if (!out.detail.empty()) detail += "  " + out.detail;
  std::printf("%s  %-22s %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  all_ok = all_ok && pass;
}

}  // namespace

int main() {
  criterion("theta-table",
            {{0, 2, {"theta-add-table"}, 0}, {1, 2, {"theta-add-table"}, 0}},
            60000.0);
  criterion("bijectivity",
            {{0, 2, {"omega-roundtrip"}, 200},
             {1, 2, {"omega-roundtrip"}, 50},
             {0, 2, {"oracle-integrity"}, 0}});
  criterion("norm-image", {{0, 2, {"psi-image"}, 50}, {0, 3, {"psi-image"}, 10}},
            600000.0);
  criterion("j-congruences",
            {{0, 2, {"j-congruence"}, 50}, {0, 3, {"j-congruence"}, 10}});
  criterion("log-bijections", {{0, 2, {"log-bijection"}, 100}});
  criterion("integral-log",
            {{0, 2, {"integral-log"}, 200}, {0, 2, {"omega-exact"}, 200}});
  criterion("gamma-theta-compat",
            {{0, 2, {"gamma-theta"}, 25}, {0, 2, {"log-norm-compat"}, 25}});
  criterion("oracle-integrity", {{0, 2, {"oracle-integrity"}, 0}});
  criterion("ev-compat", {{0, 2, {"ev-compat"}, 10}});
  criterion("structural-maps",
            {{0, 2, {"ver-frobenius"}, 0},
             {0, 2, {"sp-stability"}, 0},
             {0, 2, {"central-units"}, 20}});
  criterion("closing-implication", {{0, 2, {"final-implication"}, 50}});

  std::printf("%s\n", all_ok ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL");
  return all_ok ? 0 : 1;
}
