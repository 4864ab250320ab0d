#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcx/atiyah/compare.hpp"
#include "json.hpp"

namespace gcx::cli {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

struct NamedSection {
  std::string bundle;
  BundleSection section;
};

struct NamedConnection {
  std::string bundle;
  Connection connection;
};

/// Parsed problem file. Objects are keyed by name; maps keep reports in a
/// stable (sorted) order.
struct ProblemFile {
  std::map<std::string, ModelChart> charts;
  std::map<std::string, Cover> covers;
  std::map<std::string, GHBundle> bundles;
  std::map<std::string, NamedSection> sections;
  std::map<std::string, NamedConnection> connections;
  std::vector<std::string> functions;
  std::optional<int> ansatz_window;
  Json requests = Json::array();
};

/// Throws Error(ParseError) on malformed JSON, unknown keys or names, and
/// expressions that do not parse.
ProblemFile parse_problem(const std::string& text);
ProblemFile parse_problem(const Json& j);

/// The built-in gallery as a problem file.
OrderedJson gallery_problem();

struct RunOptions {
  std::string command;  // empty: run every request of the file
  int window = 8;
  int samples = 5;
  bool timings = false;
};

struct Result {
  std::string command;
  std::string target;
  std::string status;  // pass | fail | infeasible | inconclusive
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<std::string> witnesses;
  std::optional<double> millis;
};

struct Report {
  std::vector<Result> results;
  std::string text() const;
  OrderedJson structured() const;
};

extern const std::vector<std::string> kCommands;

/// Runs the file's requests (filtered by command), or, when a command is given
/// and the file has no request for it, runs it on every applicable object.
Report run(const ProblemFile& f, const RunOptions& opt);

/// 2 for parse errors, 3 for validation errors, 4 for internal failures.
int exit_code(const Error& e);

}  // namespace gcx::cli
