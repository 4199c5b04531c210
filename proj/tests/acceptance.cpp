// One line per acceptance criterion. Exit status 0 when every verdict
// matches its pinned expectation.
//
// Time limits are pinned in the suite itself (seconds):
//   1: 1   2: 5   3: 5   4: 1   5: 60   6: 60   7: 30   8, 9: none
// All comparisons are exact; there are no numeric tolerances.

#include <cstdio>
#include <iostream>
#include <string>

#include "stackt/suite.hpp"

namespace {

struct Expectation {
  int criterion;
  bool pass;
  /// For expected failures, the measured detail is pinned as well so that
  /// a change in the failure is noticed.
  std::string detail;
};

// Criterion 1 cannot hold: the identity family is a cocycle for any strict
// action on b0(Q), and the search finds 24 of them.
const Expectation kExpected[] = {
    {1, false, "fixed objects 24 (brute force 24) among 4096 families, 6 isomorphism classes; required 0"},
    {2, true, ""},
    {3, true, ""},
    {4, true, ""},
    {5, true, ""},
    {6, true, ""},
    {7, true, ""},
    {8, true, ""},
    {9, true, ""},
};

}  // namespace

int main() {
  auto report = stackt::run_paper_suite();
  int mismatches = 0;
  if (report.entries.size() != std::size(kExpected)) {
    std::cout << "expected " << std::size(kExpected) << " entries, got " << report.entries.size() << "\n";
    return 1;
  }
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const auto& e = report.entries[i];
    const auto& x = kExpected[i];
    bool as_expected = e.criterion == x.criterion && e.passed == x.pass && (x.pass || e.detail == x.detail);
    mismatches += !as_expected;
    char time[48];
    std::snprintf(time, sizeof time, "%.3f s", e.elapsed_seconds);
    std::cout << "criterion " << e.criterion << ": " << (e.passed ? "PASS" : "FAIL") << "  " << e.name << "  ("
              << time << ")  " << e.detail;
    if (!e.passed) std::cout << "  [" << e.counterexample << "]";
    if (!x.pass) std::cout << (as_expected ? "  (known failure)" : "  (failure changed)");
    if (!as_expected) std::cout << "  UNEXPECTED";
    std::cout << "\n";
  }
  std::cout << (mismatches == 0 ? "all verdicts as expected" : "verdicts differ from expectations") << "\n";
  return mismatches == 0 ? 0 : 1;
}
