#include <set>

#include "weave/adl.hpp"
#include "weave/lexer.hpp"

namespace weave {

ValidationReport validate_structure(const ArchitectureModel& arch) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, ElementPath path, std::string message) {
    report.violations.push_back({kind, std::move(path), std::move(message)});
  };

  std::set<std::string, std::less<>> types;
  for (const auto& t : arch.types) {
    if (!is_identifier(t)) add(ViolationKind::invalid_name, ElementPath{t}, "invalid type name '" + t + "'");
    if (!types.insert(t).second) add(ViolationKind::duplicate_type, ElementPath{t}, "duplicate type " + t);
  }

  std::set<std::string, std::less<>> names;
  auto check_name = [&](const std::string& name) {
    if (!is_identifier(name)) {
      add(ViolationKind::invalid_name, ElementPath{name}, "invalid element name '" + name + "'");
    }
    if (!names.insert(name).second) {
      add(ViolationKind::duplicate_name, ElementPath{name}, "duplicate name " + name);
    }
  };
  auto check_member = [&](const std::string& owner, const std::string& member,
                          const std::string& type, std::set<std::string, std::less<>>& seen,
                          std::string_view what) {
    ElementPath path{owner, member};
    if (!is_identifier(member)) {
      add(ViolationKind::invalid_name, path, "invalid " + std::string(what) + " name " + path.str());
    }
    if (!seen.insert(member).second) {
      add(ViolationKind::duplicate_name, path,
          "duplicate " + std::string(what) + " name " + path.str());
    }
    if (!types.contains(type)) {
      add(ViolationKind::undeclared_type, path,
          "undeclared message type " + type + " at " + path.str());
    }
  };

  for (const auto& c : arch.components) {
    check_name(c.name);
    std::set<std::string, std::less<>> ports;
    for (const auto& p : c.ports) check_member(c.name, p.name, p.message_type, ports, "port");
  }
  for (const auto& k : arch.connectors) {
    check_name(k.name);
    std::set<std::string, std::less<>> roles;
    for (const auto& r : k.roles) check_member(k.name, r.name, r.message_type, roles, "role");
  }

  std::set<std::pair<ElementPath, ElementPath>> seen;
  for (const auto& a : arch.attachments) {
    auto from = arch.endpoint(a.from);
    auto to = arch.endpoint(a.to);
    std::string label = "attachment " + a.from.str() + " -> " + a.to.str();
    if (!from) add(ViolationKind::unresolved_endpoint, a.from, "unresolved endpoint " + a.from.str() + " in " + label);
    if (!to) add(ViolationKind::unresolved_endpoint, a.to, "unresolved endpoint " + a.to.str() + " in " + label);
    if (from && from->side != Side::out) {
      add(ViolationKind::direction, a.from,
          label + " must start at a requires port or emits role");
    }
    if (to && to->side != Side::in) {
      add(ViolationKind::direction, a.to, label + " must end at a provides port or accepts role");
    }
    if (from && to && from->message_type != to->message_type) {
      add(ViolationKind::type_mismatch, a.from,
          label + " joins message types " + from->message_type + " and " + to->message_type);
    }
    if (!seen.emplace(a.from, a.to).second) {
      add(ViolationKind::duplicate_attachment, a.from, "duplicate " + label);
    }
  }
  return report;
}

}  // namespace weave
