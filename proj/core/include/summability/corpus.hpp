#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "summability/engine.hpp"
#include "summability/test_function.hpp"

namespace summability {

using MethodCatalog = std::map<std::string, MethodDescriptor>;

std::vector<TestFunction> builtin_corpus();
MethodCatalog builtin_methods();

const TestFunction* find_function(const std::vector<TestFunction>& corpus, const std::string& label);

struct Outcome {
  LimitStatus status = LimitStatus::Converged;
  std::optional<Complex> value;
};

struct AllAgree {
  Complex value;
};

struct Separation {
  Outcome first;
  Outcome second;
};

using Expectation = std::variant<AllAgree, Separation>;

struct VerificationCase {
  std::string id;
  std::string function;
  std::vector<std::string> methods;
  Expectation expected;
  std::string reference;
  std::optional<double> tolerance;  // default 5 tol_limit
};

struct MethodOutcome {
  std::string method;
  SummationResult result;
  bool ok = false;
  std::string note;
};

struct CaseOutcome {
  std::string id;
  std::string function;
  std::string reference;
  bool passed = false;
  double tolerance = 0.0;
  std::vector<MethodOutcome> methods;
  std::string message;
  double seconds = 0.0;
};

struct VerificationReport {
  std::vector<CaseOutcome> cases;  // sorted by id
  double wall_seconds = 0.0;
  std::size_t evaluations = 0;

  std::size_t failures() const;
  bool all_passed() const { return failures() == 0; }
};

std::vector<VerificationCase> builtin_cases();
// Cases generated from every converged known value in the corpus.
std::vector<VerificationCase> known_value_cases(const std::vector<TestFunction>& corpus);

struct MatrixOptions {
  EngineOptions engine;
  unsigned jobs = 1;
};

// Throws ConfigError naming the first unknown label before evaluating anything.
VerificationReport run_matrix(const std::vector<VerificationCase>& cases, const std::vector<TestFunction>& corpus,
                              const MethodCatalog& methods, const MatrixOptions& opts = {});
VerificationReport run_matrix(const std::vector<VerificationCase>& cases, const MatrixOptions& opts = {});

std::vector<VerificationCase> parse_cases(const nlohmann::json& doc);
std::vector<VerificationCase> load_cases(const std::string& path);
nlohmann::json to_json(const VerificationCase& c);
nlohmann::json to_json(const SummationResult& r);
nlohmann::json to_json(const VerificationReport& r);

struct BridgeReport {
  Complex continuous;
  LimitStatus status = LimitStatus::Inconclusive;
  std::vector<std::pair<std::int64_t, Complex>> discrete;
  double max_deviation = 0.0;  // continuous estimate vs each discrete mean
};

// Compares M applied to the step embedding with the discrete Cesaro means at ns.
BridgeReport discrete_bridge(const TestFunction& embedded, const std::vector<std::int64_t>& ns,
                             const EngineOptions& opts = {});

}  // namespace summability
