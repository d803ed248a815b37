// scenario.hpp
// Scenario runner: builds the records of one exotic-structure construction,
// classifies every pair, checks the expected clauses and renders a report.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cork/fourmanifold.hpp"
#include "cork/knots.hpp"
#include "cork/serialize.hpp"

namespace cork {

struct KnotSpec {
  std::string label;  // "T(2,5)", "twist(2)", "seifert[0]"
  LaurentPoly alexander;
};

// "torus:1,2,3", "twist:1,2" or "seifert:FILE" (one matrix or an array of them).
std::vector<KnotSpec> parse_knots(const std::string& spec);

struct ScenarioParams {
  std::string id;
  long n = 2;
  std::vector<long> p_list;
  std::vector<KnotSpec> knots;
  ParityConvention convention = ParityConvention::paper;
};

// Known scenario ids in the order `cork-calculus` lists them.
const std::vector<std::string>& scenario_ids();

// Fill unset parameters with the scenario's defaults.
ScenarioParams with_defaults(ScenarioParams params);

enum class DiffeoVerdict { not_diffeomorphic, same_record, undetermined };

const char* to_string(DiffeoVerdict v);

struct RecordEntry {
  std::string label;
  std::string role;  // "input", "intermediate", "output", "reference"
  ClosedRecord record;
};

struct VerdictCell {
  std::string a;
  std::string b;
  HomeoVerdict homeo;
  std::optional<SwComparison> sw;
  std::optional<std::size_t> count_a;
  std::optional<std::size_t> count_b;
  DiffeoVerdict diffeo = DiffeoVerdict::undetermined;
};

struct Clause {
  std::string id;
  std::string statement;
  bool pass = false;
  std::string detail;
};

struct ScenarioReport {
  std::string id;
  std::vector<std::pair<std::string, std::string>> params;
  ParityConvention convention = ParityConvention::paper;
  std::vector<RecordEntry> records;
  std::vector<VerdictCell> verdicts;  // every pair of outputs
  std::vector<Clause> clauses;
  std::vector<std::string> warnings;

  bool all_pass() const;
  const ClosedRecord& record(const std::string& label) const;
};

// Throws std::invalid_argument on an unknown id or bad parameters.
ScenarioReport run_scenario(const ScenarioParams& params);

std::string to_text(const ScenarioReport& report);
Json to_json(const ScenarioReport& report);

}  // namespace cork
