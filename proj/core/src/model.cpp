#include "weave/model.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "weave/document.hpp"
#include "weave/lexer.hpp"

namespace weave {

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::geim: return "GEIM";
    case Stage::intermediate: return "intermediate";
    case Stage::gesm: return "GESM";
  }
  return "GEIM";
}

std::string_view to_string(PortDirection direction) {
  return direction == PortDirection::provided ? "provides" : "requires";
}

std::string_view to_string(RoleDirection direction) {
  return direction == RoleDirection::accepts ? "accepts" : "emits";
}

std::string_view to_string(ElementKind kind) {
  return kind == ElementKind::component ? "component" : "connector";
}

std::string_view to_string(ParamKind kind) {
  switch (kind) {
    case ParamKind::element: return "element";
    case ParamKind::integer: return "integer";
    case ParamKind::number: return "number";
  }
  return "element";
}

std::string_view to_string(DocumentKind kind) {
  switch (kind) {
    case DocumentKind::architecture: return "architecture";
    case DocumentKind::qos_pattern: return "qos_pattern";
    case DocumentKind::platform: return "platform";
    case DocumentKind::mapping: return "mapping";
    case DocumentKind::resources: return "resources";
  }
  return "architecture";
}

const std::string& ModelDocument::name() const {
  return std::visit([](const auto& doc) -> const std::string& { return doc.name; }, payload);
}

std::string format_number(double value) {
  // Shortest representation that reads back to the same double.
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) return "0";
  return std::string(buf.data(), end);
}

std::string format_scalar(const Scalar& value) {
  if (const auto* number = std::get_if<double>(&value)) return format_number(*number);
  return quote_string(std::get<std::string>(value));
}

std::optional<double> numeric_attribute(const Attributes& attributes, std::string_view key) {
  auto it = attributes.find(key);
  if (it == attributes.end()) return std::nullopt;
  if (const auto* number = std::get_if<double>(&it->second)) return *number;
  return std::nullopt;
}

ElementPath ElementPath::from_string(std::string_view text) {
  ElementPath path;
  std::size_t start = 0;
  while (true) {
    auto sep = text.find("::", start);
    path.segments.emplace_back(text.substr(start, sep - start));
    if (sep == std::string_view::npos) break;
    start = sep + 2;
  }
  return path;
}

std::string ElementPath::str() const {
  std::string out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i > 0) out += "::";
    out += segments[i];
  }
  return out;
}

const Port* Component::find_port(std::string_view port) const {
  auto it = std::find_if(ports.begin(), ports.end(), [&](const Port& p) { return p.name == port; });
  return it == ports.end() ? nullptr : &*it;
}

const Role* Connector::find_role(std::string_view role) const {
  auto it = std::find_if(roles.begin(), roles.end(), [&](const Role& r) { return r.name == role; });
  return it == roles.end() ? nullptr : &*it;
}

bool Attachment::touches(std::string_view element) const {
  return (!from.empty() && from.head() == element) || (!to.empty() && to.head() == element);
}

bool Attachment::touches(const ElementPath& endpoint) const {
  return from == endpoint || to == endpoint;
}

Side side_of(PortDirection direction) {
  return direction == PortDirection::provided ? Side::in : Side::out;
}

Side side_of(RoleDirection direction) {
  return direction == RoleDirection::accepts ? Side::in : Side::out;
}

const Component* ArchitectureModel::find_component(std::string_view element) const {
  auto index = component_index(element);
  return index ? &components[*index] : nullptr;
}

const Connector* ArchitectureModel::find_connector(std::string_view element) const {
  auto index = connector_index(element);
  return index ? &connectors[*index] : nullptr;
}

std::optional<std::size_t> ArchitectureModel::component_index(std::string_view element) const {
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].name == element) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> ArchitectureModel::connector_index(std::string_view element) const {
  for (std::size_t i = 0; i < connectors.size(); ++i) {
    if (connectors[i].name == element) return i;
  }
  return std::nullopt;
}

bool ArchitectureModel::has_element(std::string_view element) const {
  return component_index(element).has_value() || connector_index(element).has_value();
}

bool ArchitectureModel::has_type(std::string_view type) const {
  return std::find(types.begin(), types.end(), type) != types.end();
}

std::optional<EndpointInfo> ArchitectureModel::endpoint(const ElementPath& path) const {
  if (path.size() != 2) return std::nullopt;
  if (auto c = component_index(path.segments[0])) {
    const auto& ports = components[*c].ports;
    for (std::size_t i = 0; i < ports.size(); ++i) {
      if (ports[i].name == path.segments[1]) {
        return EndpointInfo{ElementKind::component, *c, i, side_of(ports[i].direction),
                            ports[i].message_type};
      }
    }
    return std::nullopt;
  }
  if (auto k = connector_index(path.segments[0])) {
    const auto& roles = connectors[*k].roles;
    for (std::size_t i = 0; i < roles.size(); ++i) {
      if (roles[i].name == path.segments[1]) {
        return EndpointInfo{ElementKind::connector, *k, i, side_of(roles[i].direction),
                            roles[i].message_type};
      }
    }
  }
  return std::nullopt;
}

std::string to_string(const PropertyExpr& property) {
  struct Printer {
    std::string operator()(const AllPortsConnected&) const { return "allPortsConnected"; }
    std::string operator()(const TypeClosed&) const { return "typeClosed"; }
    std::string operator()(const ExistsElement& p) const {
      return "exists " + std::string(to_string(p.kind)) + " " + p.glob;
    }
    std::string operator()(const MinReplication& p) const {
      return "replication(" + p.base + ") >= " + std::to_string(p.minimum);
    }
    std::string operator()(const Connected& p) const {
      return "connected(" + p.a.str() + ", " + p.b.str() + ")";
    }
    std::string operator()(const AttrSumBound& p) const {
      return "attrSum(" + p.attribute + ") <= " + format_number(p.bound);
    }
  };
  return std::visit(Printer{}, property);
}

}  // namespace weave
