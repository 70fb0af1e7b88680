#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace weave {

enum class ErrorKind {
  syntax,
  duplicate_name,
  unresolved,
  undeclared_type,
  invalid_structure,
  malformed_fragment,
  precondition,
  dangling_reference,
  still_attached,
  empty_attachment_set,
  no_compatible_role,
  incomplete_port_map,
  port_mismatch,
  name_collision,
  invalid_argument,
  postcondition,
  preservation_violation,
  stage,
  unbound_parameter,
  kind_mismatch,
  empty_pattern,
  duplicate_output,
  unmatched_element,
  property_violation,
  conformance,
  io,
};

std::string_view to_string(ErrorKind kind);

struct SourcePos {
  int line = 0;
  int column = 0;
};

// Every failure raised by the toolchain. Violations that are data (validation
// reports, property results, unplaced services) are never thrown.
class ModelError : public std::runtime_error {
 public:
  ModelError(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public ModelError {
 public:
  ParseError(SourcePos pos, const std::string& message,
             std::vector<std::string> expected = {});

  SourcePos position() const noexcept { return pos_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  SourcePos pos_;
  std::vector<std::string> expected_;
};

}  // namespace weave
