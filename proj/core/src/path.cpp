#include "weave/adl.hpp"
#include "weave/error.hpp"

namespace weave {
namespace {

[[noreturn]] void unresolved(const ElementPath& path, std::size_t segment) {
  throw ModelError(ErrorKind::unresolved, "unresolved segment '" + path.segments[segment] +
                                              "' in " + path.str());
}

}  // namespace

ResolvedEntity resolve_path(const ArchitectureModel& arch, const ElementPath& path) {
  if (path.empty()) throw ModelError(ErrorKind::unresolved, "empty path");

  ResolvedEntity entity;
  const std::string& head = path.segments[0];
  auto component = arch.component_index(head);
  auto connector = arch.connector_index(head);
  if (component && connector) {
    throw ModelError(ErrorKind::invalid_structure, "ambiguous path " + path.str());
  }
  if (!component && !connector) unresolved(path, 0);
  entity.kind = component ? EntityKind::component : EntityKind::connector;
  entity.element = component ? *component : *connector;
  if (path.size() == 1) return entity;

  const std::string& member = path.segments[1];
  bool found = false;
  if (component) {
    const auto& ports = arch.components[*component].ports;
    for (std::size_t i = 0; i < ports.size() && !found; ++i) {
      if (ports[i].name == member) {
        entity.member = i;
        found = true;
      }
    }
    entity.kind = EntityKind::port;
  } else {
    const auto& roles = arch.connectors[*connector].roles;
    for (std::size_t i = 0; i < roles.size() && !found; ++i) {
      if (roles[i].name == member) {
        entity.member = i;
        found = true;
      }
    }
    entity.kind = EntityKind::role;
  }
  if (!found) unresolved(path, 1);
  if (path.size() == 2) return entity;

  if (path.segments[2] != "connection") unresolved(path, 2);
  if (path.size() > 3) unresolved(path, 3);

  ElementPath endpoint{head, member};
  entity.kind = EntityKind::attachment_set;
  for (std::size_t i = 0; i < arch.attachments.size(); ++i) {
    if (arch.attachments[i].touches(endpoint)) entity.attachments.push_back(i);
  }
  return entity;
}

}  // namespace weave
