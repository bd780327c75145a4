#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "morsegraded/groebner.hpp"
#include "morsegraded/semigroup.hpp"

namespace mg {

struct InputDocument {
  std::string name;
  Semigroup semigroup;
  std::optional<TermOrder> term_order;
  std::optional<GroebnerBasis> groebner_basis;  // verified on load
  std::vector<Multidegree> targets;
};

// Throws ParseError with a line/column or field-path diagnostic, and
// InvalidBasis when a supplied basis fails verification.
InputDocument parse_input(const std::string& text);

struct RunConfig {
  std::string input_path;
  std::string command = "full";
  std::optional<std::string> term_order;  // kind name overriding the document
  int degree_window = 4;
  std::vector<int> fields{0, 2, 3};
  std::size_t path_cap = 10000;
  std::size_t state_budget = 1000000;
  std::string format = "json";
  std::uint64_t seed = 1;
  int series_terms = 8;
  bool timing = false;

  // Throws InvalidInput when a cap or the window is not positive.
  void validate() const;
};

RunConfig parse_run_config(const std::string& json_text);
std::string run_config_json(const RunConfig& cfg);

const std::vector<std::string>& command_names();

// Deterministic report for one subcommand.
std::string run_command(const InputDocument& doc, const RunConfig& cfg);

const char* version_string();

}  // namespace mg
