#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "weave/document.hpp"
#include "weave/model.hpp"

namespace weave {

/// Parses any of the five document kinds. On success every structural
/// invariant of the payload holds; otherwise throws ParseError (syntax) or
/// ModelError (duplicate name, unresolved reference, undeclared type, ...).
ModelDocument parse_model(std::string_view source);

/// parse_model restricted to `architecture` documents.
ArchitectureModel parse_architecture(std::string_view source);
QosPattern parse_qos_pattern(std::string_view source);
PlatformModel parse_platform(std::string_view source);
MappingModel parse_mapping(std::string_view source);
ResourceModel parse_resources(std::string_view source);

/// A single property in surface syntax, e.g. `attrSum(cost) <= 10`.
PropertyExpr parse_property(std::string_view source);

/// Fragment body without the surrounding braces:
/// `[types { A; B }] (component | connector | attach)*`.
Fragment parse_fragment(std::string_view source);

/// Canonical text. parse_model(print_model(d)) == d for every valid d.
std::string print_model(const ModelDocument& doc);
std::string print_model(const ArchitectureModel& arch);
std::string print_fragment(const Fragment& fragment, int indent);

enum class EntityKind { component, connector, port, role, attachment_set };

/// Result of resolving an ElementPath. Indices point into the model the path
/// was resolved against.
struct ResolvedEntity {
  EntityKind kind = EntityKind::component;
  std::size_t element = 0;
  std::size_t member = 0;                 // port or role index
  std::vector<std::size_t> attachments;   // attachment_set only
};

/// `x` names an element, `x::p` a port or role, `x::p::connection` the
/// (possibly empty) set of attachments incident to that port.
ResolvedEntity resolve_path(const ArchitectureModel& arch, const ElementPath& path);

enum class ViolationKind {
  duplicate_name,
  duplicate_type,
  undeclared_type,
  unresolved_endpoint,
  direction,
  type_mismatch,
  duplicate_attachment,
  invalid_name,
};

struct Violation {
  ViolationKind kind;
  ElementPath path;
  std::string message;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

ValidationReport validate_structure(const ArchitectureModel& arch);

}  // namespace weave
