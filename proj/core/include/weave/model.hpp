#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace weave {

enum class Stage { geim, intermediate, gesm };
enum class PortDirection { provided, required };
enum class RoleDirection { accepts, emits };
enum class ElementKind { component, connector };

std::string_view to_string(Stage stage);
std::string_view to_string(PortDirection direction);
std::string_view to_string(RoleDirection direction);
std::string_view to_string(ElementKind kind);

/// Attribute values are flat scalars: a number or a string.
using Scalar = std::variant<double, std::string>;
using Attributes = std::map<std::string, Scalar, std::less<>>;

std::string format_number(double value);
std::string format_scalar(const Scalar& value);
std::optional<double> numeric_attribute(const Attributes& attributes, std::string_view key);

/// `a::b::c` style reference into a model.
struct ElementPath {
  std::vector<std::string> segments;

  ElementPath() = default;
  ElementPath(std::initializer_list<std::string> parts) : segments(parts) {}
  explicit ElementPath(std::vector<std::string> parts) : segments(std::move(parts)) {}

  /// Splits on `::`. Does not check identifier syntax.
  static ElementPath from_string(std::string_view text);

  std::string str() const;
  bool empty() const { return segments.empty(); }
  std::size_t size() const { return segments.size(); }
  const std::string& head() const { return segments.front(); }

  bool operator==(const ElementPath&) const = default;
  auto operator<=>(const ElementPath&) const = default;
};

struct Port {
  std::string name;
  PortDirection direction = PortDirection::provided;
  std::string message_type;

  bool operator==(const Port&) const = default;
};

struct Role {
  std::string name;
  RoleDirection direction = RoleDirection::accepts;
  std::string message_type;

  bool operator==(const Role&) const = default;
};

struct Component {
  std::string name;
  std::vector<Port> ports;
  Attributes attributes;

  const Port* find_port(std::string_view port) const;
  bool operator==(const Component&) const = default;
};

struct Connector {
  std::string name;
  std::vector<Role> roles;
  Attributes attributes;

  const Role* find_role(std::string_view role) const;
  bool operator==(const Connector&) const = default;
};

/// Directed link from a requires port / emits role to a provides port /
/// accepts role.
struct Attachment {
  ElementPath from;
  ElementPath to;

  bool touches(std::string_view element) const;
  bool touches(const ElementPath& endpoint) const;

  bool operator==(const Attachment&) const = default;
  auto operator<=>(const Attachment&) const = default;
};

// Property forms checked by the property checker.
struct AllPortsConnected {
  bool operator==(const AllPortsConnected&) const = default;
};
struct TypeClosed {
  bool operator==(const TypeClosed&) const = default;
};
struct ExistsElement {
  ElementKind kind = ElementKind::component;
  std::string glob;
  bool operator==(const ExistsElement&) const = default;
};
struct MinReplication {
  std::string base;
  long minimum = 1;
  bool operator==(const MinReplication&) const = default;
};
struct Connected {
  ElementPath a;
  ElementPath b;
  bool operator==(const Connected&) const = default;
};
struct AttrSumBound {
  std::string attribute;
  double bound = 0;
  bool operator==(const AttrSumBound&) const = default;
};

using PropertyExpr = std::variant<AllPortsConnected, TypeClosed, ExistsElement, MinReplication,
                                  Connected, AttrSumBound>;

/// Surface syntax, e.g. `replication(b) >= 2`.
std::string to_string(const PropertyExpr& property);

/// Which end of an attachment an endpoint may sit on.
enum class Side { in, out };

Side side_of(PortDirection direction);
Side side_of(RoleDirection direction);

struct EndpointInfo {
  ElementKind owner_kind;
  std::size_t owner_index;
  std::size_t member_index;
  Side side;
  std::string message_type;
};

struct ArchitectureModel {
  std::string name;
  Stage stage = Stage::geim;
  std::vector<std::string> types;
  std::vector<Component> components;
  std::vector<Connector> connectors;
  std::vector<Attachment> attachments;
  std::vector<PropertyExpr> properties;
  Attributes attributes;

  const Component* find_component(std::string_view element) const;
  const Connector* find_connector(std::string_view element) const;
  std::optional<std::size_t> component_index(std::string_view element) const;
  std::optional<std::size_t> connector_index(std::string_view element) const;
  bool has_element(std::string_view element) const;
  bool has_type(std::string_view type) const;
  std::size_t element_count() const { return components.size() + connectors.size(); }

  /// Resolves a two-segment `element::port` path to the port or role it names.
  std::optional<EndpointInfo> endpoint(const ElementPath& path) const;

  bool operator==(const ArchitectureModel&) const = default;
};

/// Embedded model fragment carried by include/decompose actions and by
/// platform adapters. Names are local to the fragment until applied.
struct Fragment {
  std::vector<std::string> types;
  std::vector<Component> components;
  std::vector<Connector> connectors;
  std::vector<Attachment> attachments;

  std::size_t element_count() const { return components.size() + connectors.size(); }
  bool operator==(const Fragment&) const = default;
};

}  // namespace weave
