#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stackt {

using ObjectId = std::uint32_t;
using ArrowId = std::uint32_t;
using Element = std::uint32_t;

inline constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);

/// Raised when input tables are structurally unusable (index out of range,
/// missing or duplicated entries, family shape mismatch). Axiom failures are
/// never reported this way; they go into a ValidationReport.
class MalformedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an exhaustive construction or search would exceed its cap.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One violated axiom instance. `coords` holds the indices that locate the
/// failure, e.g. (g, h, k, x) for a coherence failure.
struct Violation {
  std::string kind;
  std::vector<std::int64_t> coords;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

class ValidationReport {
 public:
  bool ok() const { return violations_.empty(); }
  std::size_t size() const { return violations_.size(); }
  const std::vector<Violation>& violations() const { return violations_; }

  void add(std::string kind, std::initializer_list<std::int64_t> coords,
           std::string detail = {}) {
    violations_.push_back({std::move(kind), coords, std::move(detail)});
  }
  void add(Violation v) { violations_.push_back(std::move(v)); }

  /// Appends `other`, prefixing each kind with `scope` (e.g. "alpha(1,2).").
  void merge(const ValidationReport& other, const std::string& scope = {}) {
    for (const auto& v : other.violations_) {
      violations_.push_back({scope + v.kind, v.coords, v.detail});
    }
  }

  bool has_kind(const std::string& kind) const {
    for (const auto& v : violations_) {
      if (v.kind == kind) return true;
    }
    return false;
  }

 private:
  std::vector<Violation> violations_;
};

/// Raised when an operation requires a valid input and validation failed.
class InvalidInput : public std::invalid_argument {
 public:
  InvalidInput(const std::string& what, ValidationReport report)
      : std::invalid_argument(what), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

std::ostream& operator<<(std::ostream& os, const Violation& v);
std::ostream& operator<<(std::ostream& os, const ValidationReport& r);

enum class Verdict { kTrue, kFalse, kIndeterminate };

const char* to_string(Verdict v);

}  // namespace stackt
