#include "weave/refinement.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "parser_impl.hpp"
#include "weave/adl.hpp"
#include "weave/fingerprint.hpp"

namespace weave {
namespace {

[[noreturn]] void fail(ErrorKind kind, const std::string& message) {
  throw ModelError(kind, message);
}

std::string join(const std::vector<std::string>& items, std::string_view sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

std::string describe_attachment(const Attachment& a) { return a.from.str() + " -> " + a.to.str(); }

std::string_view side_word(Side side) { return side == Side::in ? "accepts" : "emits"; }

std::string element_label(const Fragment& f) {
  std::vector<std::string> labels;
  for (const auto& c : f.components) labels.push_back("component " + c.name);
  for (const auto& k : f.connectors) labels.push_back("connector " + k.name);
  return join(labels);
}

std::vector<std::pair<Side, std::string>> members_of(const ArchitectureModel& arch,
                                                      const ResolvedEntity& element,
                                                      std::vector<std::string>& names) {
  std::vector<std::pair<Side, std::string>> members;
  if (element.kind == EntityKind::component) {
    for (const auto& p : arch.components[element.element].ports) {
      names.push_back(p.name);
      members.emplace_back(side_of(p.direction), p.message_type);
    }
  } else {
    for (const auto& r : arch.connectors[element.element].roles) {
      names.push_back(r.name);
      members.emplace_back(side_of(r.direction), r.message_type);
    }
  }
  return members;
}

const std::string& element_name(const ArchitectureModel& arch, const ResolvedEntity& e) {
  return e.kind == EntityKind::component ? arch.components[e.element].name
                                         : arch.connectors[e.element].name;
}

ResolvedEntity resolve_element(const ArchitectureModel& arch, const ElementPath& target,
                               std::string_view action) {
  if (target.size() != 1) {
    fail(ErrorKind::invalid_argument,
         std::string(action) + " target must name a component or connector, got " + target.str());
  }
  return resolve_path(arch, target);
}

// ---- exclude_type ----------------------------------------------------------

void precheck(const ArchitectureModel& arch, const ExcludeTypeAction& a) {
  if (!arch.has_type(a.type)) {
    fail(ErrorKind::precondition,
         "precondition failed: a::types includes? " + a.type + " (type not declared)");
  }
  std::vector<std::string> users;
  for (const auto& c : arch.components) {
    for (const auto& p : c.ports) {
      if (p.message_type == a.type) users.push_back(c.name + "::" + p.name);
    }
  }
  for (const auto& k : arch.connectors) {
    for (const auto& r : k.roles) {
      if (r.message_type == a.type) users.push_back(k.name + "::" + r.name);
    }
  }
  if (!users.empty()) {
    fail(ErrorKind::dangling_reference,
         "excluding type " + a.type + " would leave dangling references at " + join(users));
  }
}

ArchitectureModel transform(const ArchitectureModel& arch, const ExcludeTypeAction& a) {
  ArchitectureModel out = arch;
  std::erase(out.types, a.type);
  return out;
}

std::optional<std::string> postcheck(const ArchitectureModel& before,
                                     const ArchitectureModel& after, const ExcludeTypeAction& a) {
  if (after.has_type(a.type)) return "postcondition failed: a::types excludes? " + a.type;
  ArchitectureModel expected = before;
  std::erase(expected.types, a.type);
  if (!(expected == after)) return "exclude_type changed more than the type set";
  return std::nullopt;
}

// ---- include ---------------------------------------------------------------

void precheck(const ArchitectureModel& arch, const IncludeAction& a) {
  const Fragment& f = a.fragment;
  if (f.element_count() != 1 || !f.attachments.empty()) {
    fail(ErrorKind::malformed_fragment,
         "include expects exactly one component or connector and no attachments, got " +
             std::to_string(f.element_count()) + " element(s) and " +
             std::to_string(f.attachments.size()) + " attachment(s)");
  }
  const std::string& name = f.components.empty() ? f.connectors.front().name
                                                 : f.components.front().name;
  if (arch.has_element(name)) fail(ErrorKind::duplicate_name, "duplicate name " + name);
  detail::require_valid_fragment(f, arch.types, "include " + name);
}

ArchitectureModel transform(const ArchitectureModel& arch, const IncludeAction& a) {
  ArchitectureModel out = arch;
  for (const auto& t : a.fragment.types) {
    if (!out.has_type(t)) out.types.push_back(t);
  }
  out.components.insert(out.components.end(), a.fragment.components.begin(),
                        a.fragment.components.end());
  out.connectors.insert(out.connectors.end(), a.fragment.connectors.begin(),
                        a.fragment.connectors.end());
  return out;
}

std::optional<std::string> postcheck(const ArchitectureModel& before,
                                     const ArchitectureModel& after, const IncludeAction& a) {
  if (after.element_count() != before.element_count() + 1) {
    return "include must add exactly one element";
  }
  const auto& f = a.fragment;
  bool present = f.components.empty() ? after.find_connector(f.connectors.front().name) != nullptr
                                      : after.find_component(f.components.front().name) != nullptr;
  if (!present) return "included element missing from result";
  return std::nullopt;
}

// ---- replicate -------------------------------------------------------------

void precheck(const ArchitectureModel& arch, const ReplicateAction& a) {
  auto target = resolve_element(arch, a.target, "replicate");
  if (target.kind != EntityKind::component) {
    fail(ErrorKind::invalid_argument, "replicate target " + a.target.str() + " is not a component");
  }
  if (a.count < 2) {
    fail(ErrorKind::invalid_argument,
         "replica count must be at least 2, got " + std::to_string(a.count));
  }
  for (long i = 1; i <= a.count; ++i) {
    auto name = replica_name(a.target.head(), i);
    if (arch.has_element(name)) {
      fail(ErrorKind::name_collision, "replica name " + name + " is already in use");
    }
  }
}

ArchitectureModel transform(const ArchitectureModel& arch, const ReplicateAction& a) {
  const std::string& base = a.target.head();
  ArchitectureModel out = arch;
  auto index = *arch.component_index(base);

  std::vector<Component> replicas;
  for (long i = 1; i <= a.count; ++i) {
    Component copy = arch.components[index];
    copy.name = replica_name(base, i);
    replicas.push_back(std::move(copy));
  }
  out.components.erase(out.components.begin() + static_cast<std::ptrdiff_t>(index));
  out.components.insert(out.components.begin() + static_cast<std::ptrdiff_t>(index),
                        replicas.begin(), replicas.end());

  out.attachments.clear();
  for (const auto& att : arch.attachments) {
    if (!att.touches(base)) {
      out.attachments.push_back(att);
      continue;
    }
    for (long i = 1; i <= a.count; ++i) {
      Attachment copy = att;
      if (copy.from.head() == base) copy.from.segments[0] = replica_name(base, i);
      if (copy.to.head() == base) copy.to.segments[0] = replica_name(base, i);
      out.attachments.push_back(std::move(copy));
    }
  }
  return out;
}

std::optional<std::string> postcheck(const ArchitectureModel& before,
                                     const ArchitectureModel& after, const ReplicateAction& a) {
  const std::string& base = a.target.head();
  if (after.has_element(base)) return "replicated component " + base + " still present";
  long replicas = 0;
  for (long i = 1; i <= a.count; ++i) replicas += after.has_element(replica_name(base, i)) ? 1 : 0;
  if (replicas != a.count) return "expected " + std::to_string(a.count) + " replicas";
  auto incident_before = std::count_if(before.attachments.begin(), before.attachments.end(),
                                       [&](const Attachment& x) { return x.touches(base); });
  long incident_after = 0;
  for (const auto& x : after.attachments) {
    for (long i = 1; i <= a.count; ++i) {
      if (x.touches(replica_name(base, i))) {
        ++incident_after;
        break;
      }
    }
  }
  if (incident_after != a.count * incident_before) {
    return "replica fan-out produced " + std::to_string(incident_after) +
           " incident attachments, expected " + std::to_string(a.count * incident_before);
  }
  return std::nullopt;
}

// ---- unify -----------------------------------------------------------------

struct Reroute {
  Attachment original;
  Attachment first;
  Attachment second;
};

std::optional<std::string> first_role(const Connector& c, Side side, const std::string& type) {
  for (const auto& r : c.roles) {
    if (side_of(r.direction) == side && r.message_type == type) return r.name;
  }
  return std::nullopt;
}

std::vector<Reroute> plan_unify(const ArchitectureModel& arch, const UnifyAction& a) {
  if (a.connection.size() != 3 || a.connection.segments[2] != "connection") {
    fail(ErrorKind::invalid_argument,
         "unify expects an element::port::connection path, got " + a.connection.str());
  }
  auto set = resolve_path(arch, a.connection);
  ElementPath port{a.connection.segments[0], a.connection.segments[1]};
  if (set.attachments.empty()) {
    fail(ErrorKind::empty_attachment_set, "empty attachment set for " + a.connection.str());
  }
  const Connector* connector = arch.find_connector(a.connector);
  if (connector == nullptr) {
    fail(ErrorKind::unresolved, arch.find_component(a.connector) != nullptr
                                    ? a.connector + " is a component, not a connector"
                                    : "unresolved connector " + a.connector);
  }
  if (port.head() == a.connector) {
    fail(ErrorKind::invalid_argument, "cannot unify a role of " + a.connector + " with itself");
  }
  auto near = *arch.endpoint(port);
  std::string near_label = port.str() + " (" +
                           (near.owner_kind == ElementKind::component
                                ? std::string(to_string(arch.components[near.owner_index]
                                                            .ports[near.member_index]
                                                            .direction))
                                : std::string(side_word(near.side))) +
                           " " + near.message_type + ")";

  std::vector<Reroute> plan;
  for (auto index : set.attachments) {
    const Attachment& att = arch.attachments[index];
    bool outbound = att.from == port;
    const ElementPath& far = outbound ? att.to : att.from;
    if (far.head() == a.connector) {
      fail(ErrorKind::no_compatible_role, "attachment " + describe_attachment(att) +
                                              " is already routed through " + a.connector);
    }
    auto far_info = *arch.endpoint(far);
    // Traffic flows out of `from` into `to`; the connector takes the middle.
    const std::string& upstream_type = outbound ? near.message_type : far_info.message_type;
    const std::string& downstream_type = outbound ? far_info.message_type : near.message_type;
    auto accepts = first_role(*connector, Side::in, upstream_type);
    auto emits = first_role(*connector, Side::out, downstream_type);
    if (!accepts || !emits) {
      std::string need = !accepts ? "an accepts role typed " + upstream_type
                                  : "an emits role typed " + downstream_type;
      fail(ErrorKind::no_compatible_role,
           "no compatible role on connector " + a.connector + " for " + near_label + " via " +
               describe_attachment(att) + ": needs " + need);
    }
    Attachment first{att.from, ElementPath{a.connector, *accepts}};
    Attachment second{ElementPath{a.connector, *emits}, att.to};
    plan.push_back({att, std::move(first), std::move(second)});
  }
  return plan;
}

void precheck(const ArchitectureModel& arch, const UnifyAction& a) { plan_unify(arch, a); }

ArchitectureModel transform(const ArchitectureModel& arch, const UnifyAction& a) {
  auto plan = plan_unify(arch, a);
  ArchitectureModel out = arch;
  out.attachments.clear();
  std::set<Attachment> seen;
  auto push = [&](const Attachment& x) {
    if (seen.insert(x).second) out.attachments.push_back(x);
  };
  for (const auto& att : arch.attachments) {
    auto it = std::find_if(plan.begin(), plan.end(),
                           [&](const Reroute& r) { return r.original == att; });
    if (it == plan.end()) {
      push(att);
    } else {
      push(it->first);
      push(it->second);
    }
  }
  return out;
}

std::optional<std::string> postcheck(const ArchitectureModel& before,
                                     const ArchitectureModel& after, const UnifyAction& a) {
  auto plan = plan_unify(before, a);
  for (const auto& r : plan) {
    if (std::find(after.attachments.begin(), after.attachments.end(), r.original) !=
        after.attachments.end()) {
      return "direct attachment " + describe_attachment(r.original) + " remains after unify";
    }
  }
  return std::nullopt;
}

// ---- decompose -------------------------------------------------------------

struct DecomposePlan {
  ResolvedEntity parent;
  std::string parent_name;
  std::map<std::string, std::string, std::less<>> rename;  // fragment-local -> final
  std::map<std::string, ElementPath, std::less<>> mapped;   // parent member -> final path
};

std::optional<EndpointInfo> fragment_endpoint(const Fragment& sub, const ElementPath& path) {
  ArchitectureModel probe;
  probe.components = sub.components;
  probe.connectors = sub.connectors;
  return probe.endpoint(path);
}

DecomposePlan plan_decompose(const ArchitectureModel& arch, const DecomposeAction& a) {
  DecomposePlan plan;
  plan.parent = resolve_element(arch, a.target, "decompose");
  plan.parent_name = element_name(arch, plan.parent);
  const std::string& parent = plan.parent_name;

  detail::require_valid_fragment(a.sub, arch.types, "decompose " + parent);
  if (a.sub.element_count() == 0) {
    fail(ErrorKind::malformed_fragment, "decompose " + parent + " into an empty fragment");
  }

  auto final_name = [&](const std::string& local) {
    return a.prefix_names ? parent + "_" + local : local;
  };
  for (const auto& c : a.sub.components) plan.rename[c.name] = final_name(c.name);
  for (const auto& k : a.sub.connectors) plan.rename[k.name] = final_name(k.name);
  for (const auto& [local, name] : plan.rename) {
    if (name != parent && arch.has_element(name)) {
      fail(ErrorKind::name_collision, "decomposing " + parent + " would reuse existing name " + name);
    }
  }

  std::vector<std::string> member_names;
  auto members = members_of(arch, plan.parent, member_names);
  std::string member_word = plan.parent.kind == EntityKind::component ? "port" : "role";

  for (const auto& [member, inner] : a.port_map) {
    auto pos = std::find(member_names.begin(), member_names.end(), member);
    if (pos == member_names.end()) {
      fail(ErrorKind::port_mismatch, "portmap names unknown " + member_word + " " + parent +
                                         "::" + member);
    }
    if (plan.mapped.contains(member)) {
      fail(ErrorKind::port_mismatch, "portmap maps " + parent + "::" + member + " twice");
    }
    auto info = fragment_endpoint(a.sub, inner);
    if (!info) {
      fail(ErrorKind::port_mismatch, "portmap target " + inner.str() + " for " + parent + "::" +
                                         member + " is not a port or role of the fragment");
    }
    const auto& [side, type] = members[static_cast<std::size_t>(pos - member_names.begin())];
    if (info->side != side || info->message_type != type) {
      fail(ErrorKind::port_mismatch,
           "direction/type mismatch for " + parent + "::" + member + " (" +
               (side == Side::in ? "inbound " : "outbound ") + type + ") mapped to " +
               inner.str() + " (" + (info->side == Side::in ? "inbound " : "outbound ") +
               info->message_type + ")");
    }
    plan.mapped.emplace(member, ElementPath{plan.rename.at(inner.head()), inner.segments[1]});
  }

  std::vector<std::string> unmapped;
  for (const auto& m : member_names) {
    if (!plan.mapped.contains(m)) unmapped.push_back(m);
  }
  if (!unmapped.empty()) {
    fail(ErrorKind::incomplete_port_map,
         "incomplete portmap for " + parent + ": unmapped " + member_word + "(s) " + join(unmapped));
  }
  return plan;
}

void precheck(const ArchitectureModel& arch, const DecomposeAction& a) { plan_decompose(arch, a); }

ArchitectureModel transform(const ArchitectureModel& arch, const DecomposeAction& a) {
  auto plan = plan_decompose(arch, a);
  const std::string& parent = plan.parent_name;
  ArchitectureModel out = arch;

  for (const auto& t : a.sub.types) {
    if (!out.has_type(t)) out.types.push_back(t);
  }

  std::vector<Component> components = a.sub.components;
  for (auto& c : components) c.name = plan.rename.at(c.name);
  std::vector<Connector> connectors = a.sub.connectors;
  for (auto& k : connectors) k.name = plan.rename.at(k.name);

  auto at = static_cast<std::ptrdiff_t>(plan.parent.element);
  if (plan.parent.kind == EntityKind::component) {
    out.components.erase(out.components.begin() + at);
    out.components.insert(out.components.begin() + at, components.begin(), components.end());
    out.connectors.insert(out.connectors.end(), connectors.begin(), connectors.end());
  } else {
    out.connectors.erase(out.connectors.begin() + at);
    out.connectors.insert(out.connectors.begin() + at, connectors.begin(), connectors.end());
    out.components.insert(out.components.end(), components.begin(), components.end());
  }

  out.attachments.clear();
  for (auto att : arch.attachments) {
    if (att.from.head() == parent) att.from = plan.mapped.at(att.from.segments[1]);
    if (att.to.head() == parent) att.to = plan.mapped.at(att.to.segments[1]);
    out.attachments.push_back(std::move(att));
  }
  for (auto att : a.sub.attachments) {
    att.from.segments[0] = plan.rename.at(att.from.head());
    att.to.segments[0] = plan.rename.at(att.to.head());
    out.attachments.push_back(std::move(att));
  }
  return out;
}

std::optional<std::string> postcheck(const ArchitectureModel& before,
                                     const ArchitectureModel& after, const DecomposeAction& a) {
  auto plan = plan_decompose(before, a);
  bool reused = false;
  for (const auto& [local, name] : plan.rename) reused = reused || name == plan.parent_name;
  if (!reused && after.has_element(plan.parent_name)) {
    return "decomposed element " + plan.parent_name + " still present";
  }
  if (after.element_count() != before.element_count() - 1 + a.sub.element_count()) {
    return "decompose produced an unexpected element count";
  }
  return std::nullopt;
}

// ---- exclude ---------------------------------------------------------------

void precheck(const ArchitectureModel& arch, const ExcludeAction& a) {
  resolve_element(arch, a.target, "exclude");
  std::vector<std::string> incident;
  for (const auto& att : arch.attachments) {
    if (att.touches(a.target.head())) incident.push_back(describe_attachment(att));
  }
  if (!incident.empty()) {
    fail(ErrorKind::still_attached,
         a.target.str() + " is still attached: " + join(incident, "; "));
  }
}

ArchitectureModel transform(const ArchitectureModel& arch, const ExcludeAction& a) {
  ArchitectureModel out = arch;
  const std::string& name = a.target.head();
  std::erase_if(out.components, [&](const Component& c) { return c.name == name; });
  std::erase_if(out.connectors, [&](const Connector& k) { return k.name == name; });
  return out;
}

std::optional<std::string> postcheck(const ArchitectureModel&, const ArchitectureModel& after,
                                     const ExcludeAction& a) {
  if (after.has_element(a.target.head())) return a.target.str() + " still present after exclude";
  return std::nullopt;
}

// ---- dispatch --------------------------------------------------------------

void run_precheck(const ArchitectureModel& arch, const RefinementAction& action) {
  std::visit([&](const auto& a) { precheck(arch, a); }, action);
}

ArchitectureModel run_transform(const ArchitectureModel& arch, const RefinementAction& action) {
  return std::visit([&](const auto& a) { return transform(arch, a); }, action);
}

std::optional<std::string> run_postcheck(const ArchitectureModel& before,
                                         const ArchitectureModel& after,
                                         const RefinementAction& action) {
  auto specific = std::visit([&](const auto& a) { return postcheck(before, after, a); }, action);
  if (specific) return specific;
  auto report = validate_structure(after);
  if (!report.ok()) {
    std::vector<std::string> messages;
    for (const auto& v : report.violations) messages.push_back(v.message);
    return "result fails structural validation: " + join(messages, "; ");
  }
  return std::nullopt;
}

ArchitectureModel run_checked(const ArchitectureModel& arch, const RefinementAction& action) {
  run_precheck(arch, action);
  auto result = run_transform(arch, action);
  if (auto problem = run_postcheck(arch, result, action)) fail(ErrorKind::postcondition, *problem);
  return result;
}

}  // namespace

std::string_view action_name(const RefinementAction& action) {
  struct Name {
    std::string_view operator()(const IncludeAction&) const { return "include"; }
    std::string_view operator()(const ExcludeAction&) const { return "exclude"; }
    std::string_view operator()(const ExcludeTypeAction&) const { return "exclude_type"; }
    std::string_view operator()(const ReplicateAction&) const { return "replicate"; }
    std::string_view operator()(const UnifyAction&) const { return "unify"; }
    std::string_view operator()(const DecomposeAction&) const { return "decompose"; }
  };
  return std::visit(Name{}, action);
}

std::vector<std::pair<std::string, std::string>> action_arguments(const RefinementAction& action) {
  struct Args {
    using Result = std::vector<std::pair<std::string, std::string>>;
    Result operator()(const IncludeAction& a) const {
      return {{"element", element_label(a.fragment)}};
    }
    Result operator()(const ExcludeAction& a) const { return {{"target", a.target.str()}}; }
    Result operator()(const ExcludeTypeAction& a) const { return {{"type", a.type}}; }
    Result operator()(const ReplicateAction& a) const {
      return {{"target", a.target.str()}, {"count", std::to_string(a.count)}};
    }
    Result operator()(const UnifyAction& a) const {
      return {{"connection", a.connection.str()}, {"connector", a.connector}};
    }
    Result operator()(const DecomposeAction& a) const {
      std::vector<std::string> entries;
      for (const auto& [member, inner] : a.port_map) entries.push_back(member + " -> " + inner.str());
      return {{"target", a.target.str()},
              {"fragment", element_label(a.sub)},
              {"portmap", join(entries, "; ")},
              {"naming", a.prefix_names ? "prefixed" : "verbatim"}};
    }
  };
  return std::visit(Args{}, action);
}

std::string describe(const RefinementAction& action) {
  struct Describe {
    std::string operator()(const IncludeAction& a) const {
      return "include " + element_label(a.fragment);
    }
    std::string operator()(const ExcludeAction& a) const { return "exclude " + a.target.str(); }
    std::string operator()(const ExcludeTypeAction& a) const { return "exclude_type " + a.type; }
    std::string operator()(const ReplicateAction& a) const {
      return "replicate " + a.target.str() + " " + std::to_string(a.count);
    }
    std::string operator()(const UnifyAction& a) const {
      return "unify " + a.connection.str() + " with " + a.connector;
    }
    std::string operator()(const DecomposeAction& a) const {
      return "decompose " + a.target.str() + " into {" + element_label(a.sub) + "}";
    }
  };
  return std::visit(Describe{}, action);
}

ArchitectureModel apply_exclude_type(const ArchitectureModel& arch, std::string_view type) {
  return run_checked(arch, ExcludeTypeAction{std::string(type)});
}

ArchitectureModel apply_include(const ArchitectureModel& arch, const Fragment& fragment) {
  return run_checked(arch, IncludeAction{fragment});
}

ArchitectureModel apply_replicate(const ArchitectureModel& arch, const ElementPath& target,
                                  long count) {
  return run_checked(arch, ReplicateAction{target, count});
}

ArchitectureModel apply_unify(const ArchitectureModel& arch, const ElementPath& connection,
                              std::string_view connector) {
  return run_checked(arch, UnifyAction{connection, std::string(connector)});
}

ArchitectureModel apply_decompose(const ArchitectureModel& arch, const ElementPath& target,
                                  const Fragment& sub, const PortMap& port_map,
                                  bool prefix_names) {
  return run_checked(arch, DecomposeAction{target, sub, port_map, prefix_names});
}

ArchitectureModel apply_exclude(const ArchitectureModel& arch, const ElementPath& target) {
  return run_checked(arch, ExcludeAction{target});
}

ArchitectureModel apply_action(const ArchitectureModel& arch, const RefinementAction& action) {
  return run_checked(arch, action);
}

std::string StepOrigin::str() const {
  switch (kind) {
    case Kind::user: return "user";
    case Kind::qos_pattern: return "qos_pattern(" + name + ")";
    case Kind::platform: return "platform(" + name + ")";
  }
  return "user";
}

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::passed: return "passed";
    case CheckStatus::failed: return "failed";
    case CheckStatus::skipped: return "skipped";
  }
  return "skipped";
}

class StepRunner {
 public:
  StepRunner(const ArchitectureModel& input, const RefinementStep& step,
             std::span<const PropertyExpr> preserved)
      : input_(input), step_(step), preserved_(preserved) {}

  StepOutcome run() {
    StepOutcome outcome{input_, RefinementTrace(step_.origin), std::nullopt};
    if (step_.actions.empty()) {
      outcome.failure = StepFailure{0, ErrorKind::invalid_argument,
                                    "a refinement step needs at least one action", {}};
      return outcome;
    }
    if (auto report = validate_structure(input_); !report.ok()) {
      outcome.failure = StepFailure{0, ErrorKind::invalid_structure,
                                    "input model is invalid: " + report.violations.front().message,
                                    {}};
      return outcome;
    }

    ArchitectureModel current = input_;
    for (std::size_t i = 0; i < step_.actions.size(); ++i) {
      const auto& action = step_.actions[i];
      TraceEntry entry;
      entry.index = i + 1;
      entry.action = std::string(action_name(action));
      entry.arguments = action_arguments(action);

      auto reject = [&](ErrorKind kind, std::string message,
                        std::vector<PropertyResult> violated = {}) {
        outcome.trace.entries_.push_back(entry);
        outcome.failure = StepFailure{i + 1, kind,
                                      "action " + std::to_string(i + 1) + " (" + describe(action) +
                                          "): " + message,
                                      std::move(violated)};
        outcome.model = input_;
      };

      try {
        run_precheck(current, action);
        entry.pre = {CheckStatus::passed, {}};
      } catch (const ModelError& e) {
        entry.pre = {CheckStatus::failed, e.what()};
        reject(e.kind(), e.what());
        return outcome;
      }

      ArchitectureModel next;
      try {
        next = run_transform(current, action);
        if (auto problem = run_postcheck(current, next, action)) {
          throw ModelError(ErrorKind::postcondition, *problem);
        }
        entry.post = {CheckStatus::passed, {}};
      } catch (const ModelError& e) {
        entry.post = {CheckStatus::failed, e.what()};
        reject(ErrorKind::postcondition, e.what());
        return outcome;
      }

      auto results = evaluate_all(next, preserved_);
      std::vector<PropertyResult> violated;
      for (auto& r : results) {
        if (!r.holds) violated.push_back(std::move(r));
      }
      if (!violated.empty()) {
        std::vector<std::string> names;
        for (const auto& v : violated) names.push_back(to_string(v.property) + " [" + v.detail + "]");
        std::string message = "preservation violated: " + join(names, "; ");
        entry.preserved = {CheckStatus::failed, message};
        reject(ErrorKind::preservation_violation, message, std::move(violated));
        return outcome;
      }
      entry.preserved = {CheckStatus::passed,
                         std::to_string(preserved_.size()) + " propert" +
                             (preserved_.size() == 1 ? "y" : "ies") + " hold"};
      entry.fingerprint = content_fingerprint(print_model(next));
      outcome.trace.entries_.push_back(std::move(entry));
      current = std::move(next);
    }
    outcome.model = std::move(current);
    return outcome;
  }

 private:
  const ArchitectureModel& input_;
  const RefinementStep& step_;
  std::span<const PropertyExpr> preserved_;
};

StepOutcome apply_step(const ArchitectureModel& arch, const RefinementStep& step,
                       std::span<const PropertyExpr> preserved) {
  return StepRunner(arch, step, preserved).run();
}

}  // namespace weave
