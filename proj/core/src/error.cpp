#include "weave/error.hpp"

#include <sstream>

namespace weave {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::syntax: return "syntax";
    case ErrorKind::duplicate_name: return "duplicate-name";
    case ErrorKind::unresolved: return "unresolved";
    case ErrorKind::undeclared_type: return "undeclared-type";
    case ErrorKind::invalid_structure: return "invalid-structure";
    case ErrorKind::malformed_fragment: return "malformed-fragment";
    case ErrorKind::precondition: return "precondition-failure";
    case ErrorKind::dangling_reference: return "dangling-reference";
    case ErrorKind::still_attached: return "still-attached";
    case ErrorKind::empty_attachment_set: return "empty-attachment-set";
    case ErrorKind::no_compatible_role: return "no-compatible-role";
    case ErrorKind::incomplete_port_map: return "incomplete-portmap";
    case ErrorKind::port_mismatch: return "port-mismatch";
    case ErrorKind::name_collision: return "name-collision";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::postcondition: return "postcondition-failure";
    case ErrorKind::preservation_violation: return "preservation-violation";
    case ErrorKind::stage: return "stage";
    case ErrorKind::unbound_parameter: return "unbound-parameter";
    case ErrorKind::kind_mismatch: return "kind-mismatch";
    case ErrorKind::empty_pattern: return "empty-pattern";
    case ErrorKind::duplicate_output: return "duplicate-output";
    case ErrorKind::unmatched_element: return "unmatched-element";
    case ErrorKind::property_violation: return "property-violation";
    case ErrorKind::conformance: return "conformance-failure";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

ModelError::ModelError(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

namespace {

std::string format_parse_error(SourcePos pos, const std::string& message,
                               const std::vector<std::string>& expected) {
  std::ostringstream out;
  out << pos.line << ':' << pos.column << ": " << message;
  if (!expected.empty()) {
    out << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) out << (i + 1 == expected.size() ? " or " : ", ");
      out << expected[i];
    }
    out << ')';
  }
  return out.str();
}

}  // namespace

ParseError::ParseError(SourcePos pos, const std::string& message, std::vector<std::string> expected)
    : ModelError(ErrorKind::syntax, format_parse_error(pos, message, expected)),
      pos_(pos),
      expected_(std::move(expected)) {}

}  // namespace weave
