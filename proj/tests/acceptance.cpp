// Runs the acceptance criteria and prints one PASS/FAIL line for each.
//
// --expect-fail N marks a criterion whose failure is known and documented.
// Such a criterion still prints FAIL, but does not fail the run; if it
// starts passing, the run fails so the marker gets removed.

#include "transition/suite.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <set>

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> expect_fail;
  std::vector<int> only;
  std::uint64_t seed = 0;
  app.add_option("--expect-fail", expect_fail, "criterion known to fail")->check(CLI::Range(1, 11));
  app.add_option("--only", only, "run just these criteria")->check(CLI::Range(1, 11));
  app.add_option("--seed", seed, "seed for the randomized criteria");
  CLI11_PARSE(app, argc, argv);

  const std::set<int> known(expect_fail.begin(), expect_fail.end());
  if (only.empty()) {
    for (int i = 1; i <= 11; ++i) only.push_back(i);
  }

  transition::SuiteOptions opt;
  opt.seed = seed;
  int unexpected = 0;
  for (int id : only) {
    transition::CriterionResult r = transition::run_criterion(id, opt);
    const bool expected = known.count(id) > 0;
    std::cout << (r.passed ? "PASS" : "FAIL") << " " << r.id << " " << r.name;
    if (expected) std::cout << (r.passed ? " [expected to fail, now passes]" : " [known failure]");
    std::cout << ": " << r.detail << "\n";
    if (r.passed == expected) ++unexpected;
  }
  std::cout << (unexpected == 0 ? "acceptance: ok" : "acceptance: " + std::to_string(unexpected) + " unexpected result(s)")
            << std::endl;
  return unexpected == 0 ? 0 : 1;
}
