#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "morsegraded/morsegraded.h"

namespace {

int report_failure(mg_status status) {
  std::cerr << "error: " << mg_status_name(status) << ": " << mg_last_error() << "\n";
  return mg_exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Morse matchings, resolutions and automata for affine semigroup rings"};
  std::string input, command = "full", format = "json", out_path, term_order;
  int degree_window = 4, series_terms = 8;
  std::vector<int> fields;
  std::size_t path_cap = 10000, state_budget = 1000000;
  std::uint64_t seed = 1;
  bool timing = false;
  app.add_option("--input", input, "Input document (JSON)")->required();
  app.add_option("--command", command, "gb|interval|chains|morse|cancel|betti|automaton|series|verify-bounds|full");
  app.add_option("--degree-window", degree_window, "Degree window D");
  app.add_option("--field", fields, "Field characteristic, 0 for the rationals (repeatable)");
  app.add_option("--path-cap", path_cap, "Maximum gradient paths enumerated per pair");
  app.add_option("--state-budget", state_budget, "Maximum automaton states");
  app.add_option("--format", format, "json or tsv (betti only)");
  app.add_option("--out", out_path, "Write the report to this file");
  app.add_option("--seed", seed, "Seed for randomized property checks");
  app.add_option("--term-order", term_order, "lex, graded-lex or graded-revlex");
  app.add_option("--series-terms", series_terms, "Series terms checked against word counts");
  app.add_flag("--timing", timing, "Include stage timings in the report");
  app.set_version_flag("--version", mg_version());
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::ifstream in(input);
  if (!in) {
    std::cerr << "error: cannot read " << input << "\n";
    return 1;
  }
  std::stringstream text;
  text << in.rdbuf();

  nlohmann::ordered_json cfg;
  cfg["input"] = input;
  cfg["command"] = command;
  if (!term_order.empty()) cfg["term_order"] = term_order;
  cfg["degree_window"] = degree_window;
  if (!fields.empty()) cfg["fields"] = fields;
  cfg["path_cap"] = path_cap;
  cfg["state_budget"] = state_budget;
  cfg["format"] = format;
  cfg["seed"] = seed;
  cfg["series_terms"] = series_terms;
  cfg["timing"] = timing;

  mg_session* session = nullptr;
  mg_status status = mg_session_open(text.str().c_str(), &session);
  if (status != MG_OK) return report_failure(status);
  char* report = nullptr;
  status = mg_run(session, cfg.dump().c_str(), &report);
  mg_session_close(session);
  if (status != MG_OK) return report_failure(status);

  if (out_path.empty()) {
    std::cout << report;
  } else {
    std::ofstream out(out_path);
    out << report;
    if (!out) {
      mg_free_string(report);
      std::cerr << "error: cannot write " << out_path << "\n";
      return 1;
    }
  }
  mg_free_string(report);
  return 0;
}
