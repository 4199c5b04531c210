#include "stackt/report.hpp"

namespace stackt {

std::ostream& operator<<(std::ostream& os, const Violation& v) {
  os << v.kind << '(';
  for (std::size_t i = 0; i < v.coords.size(); ++i) {
    if (i) os << ',';
    os << v.coords[i];
  }
  os << ')';
  if (!v.detail.empty()) os << ": " << v.detail;
  return os;
}

std::ostream& operator<<(std::ostream& os, const ValidationReport& r) {
  if (r.ok()) return os << "ok\n";
  for (const auto& v : r.violations()) os << v << '\n';
  return os;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kTrue:
      return "true";
    case Verdict::kFalse:
      return "false";
    case Verdict::kIndeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

}  // namespace stackt
