#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "thetak1.h"

namespace {

struct EngineDeleter {
  void operator()(tk1_engine* e) const { tk1_engine_free(e); }
};
using EnginePtr = std::unique_ptr<tk1_engine, EngineDeleter>;

struct Params {
  unsigned p = 5;
  unsigned gamma_level = 0;
  unsigned precision = 2;
  unsigned long long seed = 1;
  unsigned trials = 0;
  bool staging = true;
  std::vector<std::string> suites;
};

void add_param_options(CLI::App* cmd, Params& par) {
  cmd->add_option("--p", par.p, "prime (>= 5)");
  cmd->add_option("--gamma-level", par.gamma_level, "Gamma truncation level n");
  cmd->add_option("--precision", par.precision, "coefficient precision m");
  cmd->add_option("--seed", par.seed, "base seed for the sample streams");
  cmd->add_option("--trials", par.trials,
                  "override the per-suite trial counts (0 keeps defaults)");
  cmd->add_option("--staging", par.staging,
                  "route the large norm component through the intermediate "
                  "subgroup (default on)");
  cmd->add_option("--suite", par.suites, "run only the named suite (repeatable)")
      ->take_all();
}

std::string config_json(const Params& par) {
  nlohmann::ordered_json j;
  j["p"] = par.p;
  j["gamma_level"] = par.gamma_level;
  j["precision"] = par.precision;
  j["seed"] = par.seed;
  j["trials"] = par.trials;
  j["staging"] = par.staging;
  j["suites"] = par.suites;
  return j.dump();
}

EnginePtr make_engine(const Params& par, int& rc) {
  tk1_engine* raw = nullptr;
  tk1_status st = tk1_engine_new(config_json(par).c_str(), &raw);
  EnginePtr e(raw);
  if (st != TK1_OK) {
    std::cerr << "error: "
              << (raw ? tk1_engine_last_error(raw) : "bad configuration")
              << "\n";
    rc = 2;
    return nullptr;
  }
  rc = 0;
  return e;
}

bool write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return bool(out);
}

int cmd_run(const Params& par, const std::string& out_path) {
  int rc = 0;
  EnginePtr e = make_engine(par, rc);
  if (!e) return rc;
  char* report = nullptr;
  int all_passed = 0;
  tk1_status st = tk1_run(e.get(), &report, &all_passed);
  if (st != TK1_OK) {
    std::cerr << "error: " << tk1_engine_last_error(e.get()) << "\n";
    return 2;
  }
  std::string text = report;
  tk1_string_free(report);
  if (out_path.empty() || out_path == "-") {
    std::cout << text << "\n";
  } else if (!write_text(out_path, text + "\n")) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 2;
  }
  return all_passed ? 0 : 1;
}

int cmd_dump_tables(const Params& par, const std::string& out_dir,
                    std::vector<std::string> which) {
  int rc = 0;
  EnginePtr e = make_engine(par, rc);
  if (!e) return rc;
  if (which.empty()) which = {"classes", "characters", "theta"};
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  for (const std::string& w : which) {
    char* csv = nullptr;
    tk1_status st = tk1_dump_tables(e.get(), w.c_str(), &csv);
    if (st != TK1_OK) {
      std::cerr << "error: " << tk1_engine_last_error(e.get()) << "\n";
      return 2;
    }
    std::string path = out_dir + "/" + w + ".csv";
    bool ok = write_text(path, csv);
    tk1_string_free(csv);
    if (!ok) {
      std::cerr << "error: cannot write " << path << "\n";
      return 2;
    }
  }
  return 0;
}

int cmd_element(const Params& par, const std::string& in_path,
                const std::string& out_path) {
  int rc = 0;
  EnginePtr e = make_engine(par, rc);
  if (!e) return rc;
  std::string payload;
  if (in_path.empty() || in_path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    payload = buf.str();
  } else {
    std::ifstream in(in_path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read " << in_path << "\n";
      return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    payload = buf.str();
  }
  tk1_elem* x = nullptr;
  tk1_status st = tk1_elem_load(e.get(), payload.c_str(), &x);
  if (st != TK1_OK) {
    std::cerr << "error: " << tk1_engine_last_error(e.get()) << "\n";
    return 2;
  }
  char* dump = nullptr;
  st = tk1_elem_dump(e.get(), x, &dump);
  tk1_elem_free(x);
  if (st != TK1_OK) {
    std::cerr << "error: element dump failed\n";
    return 2;
  }
  std::string text = dump;
  tk1_string_free(dump);
  if (out_path.empty() || out_path == "-") {
    std::cout << text << "\n";
  } else if (!write_text(out_path, text + "\n")) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-level verification engine for the theta-map machinery"};
  app.set_version_flag("--version", tk1_version());
  app.require_subcommand(1);

  Params par;
  std::string out_path;
  std::string in_path;
  std::vector<std::string> which;

  CLI::App* run = app.add_subcommand("run", "run verification suites");
  add_param_options(run, par);
  run->add_option("--out", out_path, "write the JSON report here (- = stdout)");

  CLI::App* dump = app.add_subcommand(
      "dump-tables", "write the class, character and theta tables as CSV");
  add_param_options(dump, par);
  dump->add_option("--out", out_path, "output directory (default .)");
  dump->add_option("--which", which,
                   "tables to dump: classes, characters, theta (repeatable)")
      ->take_all();

  CLI::App* elem = app.add_subcommand(
      "element", "parse an element payload and print its canonical form");
  add_param_options(elem, par);
  elem->add_option("--in", in_path, "input file (- = stdin)");
  elem->add_option("--out", out_path, "output file (- = stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    /* help and version exit cleanly; anything else is a usage error */
    return code == 0 ? 0 : 2;
  }

  if (run->parsed()) return cmd_run(par, out_path);
  if (dump->parsed())
    return cmd_dump_tables(par, out_path.empty() ? "." : out_path, which);
  if (elem->parsed()) return cmd_element(par, in_path, out_path);
  return 2;
}
