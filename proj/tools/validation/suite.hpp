#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace elasticflow::validation {

struct Check {
  int criterion = 0;
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  double time_limit = 0.0;

  CriterionResult() = default;
  CriterionResult(int id_, std::string title_) : id(id_), title(std::move(title_)) {}

  bool pass() const;
};

struct Report {
  std::vector<CriterionResult> criteria;
  std::uint64_t seed = 0;
  std::string rng = "mt19937_64";
  bool quick = false;

  bool pass() const;
};

struct Options {
  bool quick = false;
  std::uint64_t seed = 20240611;
  /// Run criteria concurrently; each owns its generator (seed + id).
  bool parallel = true;
};

/// Criteria 1-12, in order.
Report run(const Options& opt);

/// A single criterion by id (1-12).
CriterionResult run_criterion(int id, const Options& opt);

/// "PASS  C5 ..." style one-line summary.
std::string summary_line(const CriterionResult& c);

}  // namespace elasticflow::validation
