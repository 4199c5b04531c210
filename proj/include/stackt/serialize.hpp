#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "stackt/action.hpp"

namespace stackt {

inline constexpr std::string_view kFormatVersion = "stackt/1";

enum class DocumentKind { kGroup, kGroupoid, kAction, kGMorphism };

const char* to_string(DocumentKind k);

/// One group, groupoid, action or G-morphism with its tables.
struct SpecDocument {
  std::variant<GroupPtr, GroupoidPtr, ActionPtr, GMorphism> payload;

  DocumentKind kind() const { return static_cast<DocumentKind>(payload.index()); }
  /// These throw std::bad_variant_access on a kind mismatch.
  const GroupPtr& group() const { return std::get<GroupPtr>(payload); }
  const GroupoidPtr& groupoid() const { return std::get<GroupoidPtr>(payload); }
  const ActionPtr& action() const { return std::get<ActionPtr>(payload); }
  const GMorphism& g_morphism() const { return std::get<GMorphism>(payload); }
};

/// Same kind and equal tables.
bool operator==(const SpecDocument& a, const SpecDocument& b);

/// Raised by parse_spec. Syntax errors carry a 1-based line and column;
/// semantic errors carry the JSON pointer of the offending value.
class ParseError : public std::invalid_argument {
 public:
  enum class Kind { kSyntax, kVersion, kSemantic };

  ParseError(Kind kind, const std::string& message, std::size_t line = 0,
             std::size_t column = 0, std::string path = {});

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& path() const { return path_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
  std::string path_;
};

/// Checks shapes and index ranges only; the axioms are left to the
/// validators so that a corrupted document can still be loaded and
/// reported on.
SpecDocument parse_spec(std::string_view text);

/// Canonical text: fixed key order, two-space indent, integer tables with
/// one row per line. parse_spec(serialize_spec(d)) == d and
/// serialize_spec(parse_spec(t)) == t for canonical t.
std::string serialize_spec(const SpecDocument& doc);

/// Throws std::runtime_error if the file cannot be read, ParseError on
/// bad contents.
SpecDocument read_spec_file(const std::string& path);

}  // namespace stackt
