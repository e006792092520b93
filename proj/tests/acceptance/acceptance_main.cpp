#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>

#include "validation/suite.hpp"

// Prints one line per acceptance criterion; exits nonzero if any fails.
// Usage: acceptance [--quick] [--only ID]
int main(int argc, char** argv) {
  elasticflow::validation::Options opt;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) opt.quick = true;
    else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    else {
      std::cerr << "usage: acceptance [--quick] [--only ID]\n";
      return 2;
    }
  }
  using namespace elasticflow::validation;
  if (only != 0) {
    const CriterionResult c = run_criterion(only, opt);
    std::cout << summary_line(c) << '\n';
    for (const auto& ch : c.checks)
      std::cout << "    " << (ch.pass ? "ok  " : "FAIL") << ' ' << ch.name << " = " << ch.measured
                << " (bound " << ch.bound << ")" << (ch.detail.empty() ? "" : "  " + ch.detail) << '\n';
    return c.pass() ? 0 : 1;
  }
  const Report report = run(opt);
  for (const auto& c : report.criteria) std::cout << summary_line(c) << '\n';
  std::cout << (report.pass() ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << '\n';
  return report.pass() ? 0 : 1;
}
