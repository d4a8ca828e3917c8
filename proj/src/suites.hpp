#pragma once

#include "logk1.hpp"
#include "oracle.hpp"

namespace tk1 {

struct RunConfig {
  RingParams rp;
  u64 seed = 1;
  unsigned trials = 0;  /* 0 keeps each suite's default count */
  bool staging = true;
  std::vector<std::string> suites;  /* empty = every suite, registry order */
};

struct SuiteResult {
  std::string name;
  std::string status;  /* "pass", "fail", "skip" */
  unsigned trials = 0;
  unsigned fail_count = 0;
  std::vector<std::string> notes;  /* first few failure details, or skip reason */
  double ms = 0.0;
};

struct RunReport {
  RunConfig cfg;
  std::vector<SuiteResult> suites;
  bool all_pass = true;
};

const std::vector<std::string>& suite_names();
RunReport run_suites(const RunConfig& cfg);
std::string report_to_json(const RunReport& rep);

}  // namespace tk1
