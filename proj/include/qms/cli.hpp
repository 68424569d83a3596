#pragma once

// The qms command line: run configuration, result tables and dispatch.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "qms/exactmath.hpp"

namespace qms {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Mode { Float, Exact };
enum class Format { Json, Csv };

struct RunConfig {
  std::string module;
  std::string op;
  // Numeric flags keep their command-line text so exact mode can parse them
  // as rationals; unset flags carry the defaults below.
  std::map<std::string, std::string> params = {
      {"eps", "1"},   {"hbar", "1/10"}, {"a", "1"},  {"c", "1"},    {"delta", "0"}, {"r0", "1"},
      {"r1", "2"},    {"z0", "0"},      {"x", "1/2"}, {"tol", "1e-12"}, {"branch", "1"}, {"p", "1"},
      {"q", "2"},     {"N", "16"},      {"n", "3"},  {"n-min", "-10"}, {"n-max", "20"}, {"margin", "-1"},
      {"seeds", ""},  {"num", ""},      {"den", ""}, {"model", "catenoid"}, {"levels", "6"}};
  Mode mode = Mode::Float;
  Format format = Format::Json;
  std::uint64_t seed = 0;
  std::string sweep;  // "param=v1,v2,..."

  double real(const std::string& name) const;
  Rational exact(const std::string& name) const;
  long integer(const std::string& name) const;
  nlohmann::json echo() const;
};

struct ResultTable {
  nlohmann::json metadata = nlohmann::json::object();
  nlohmann::json summary = nlohmann::json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;

  nlohmann::json to_json() const;
  static ResultTable from_json(const nlohmann::json& j);

  // "# metadata: {...}" and "# summary: {...}" lines, a header row, then one
  // line per row. Cells that parse as JSON are read back as JSON, the rest
  // as strings.
  std::string to_csv() const;
  static ResultTable from_csv(const std::string& text);

  friend bool operator==(const ResultTable&, const ResultTable&) = default;
};

nlohmann::json complex_json(double re, double im);

// Executes one invocation. Exit status: 0 success, 1 contract violation,
// 2 usage or validation error (nothing is written to out in that case).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qms
