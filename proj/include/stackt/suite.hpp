#pragma once

#include <string>
#include <vector>

#include "stackt/fixtures.hpp"

namespace stackt {

struct SuiteEntry {
  int criterion = 0;
  std::string name;
  /// Where the checked claim lives, as a short topic label.
  std::string location;
  bool passed = false;
  /// Measured values. Deterministic.
  std::string detail;
  /// First failing case, naming its fixture; empty on success.
  std::string counterexample;
  double elapsed_seconds = 0;
  double limit_seconds = 0;
};

struct SuiteReport {
  std::vector<SuiteEntry> entries;

  bool passed() const;
};

/// The inputs the suite runs on. Tests replace members to inject faults.
struct SuiteFixtures {
  fixtures::NamedAction quaternion;
  std::vector<fixtures::NamedAction> corpus;

  /// The quaternion twist and weak_corpus(20261015, 60).
  static SuiteFixtures standard();
};

/// Runs every acceptance check once, then a second time to compare the
/// machine renderings. Exceptions inside a check become failing entries.
SuiteReport run_paper_suite(const SuiteFixtures& f = SuiteFixtures::standard());

/// One line per entry with timings, plus a summary line.
std::string render_text(const SuiteReport& r);

/// One JSON object per line, without timings, so that two runs compare
/// byte for byte.
std::string render_machine(const SuiteReport& r);

}  // namespace stackt
