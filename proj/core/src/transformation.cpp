#include "weave/transformation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "parser_impl.hpp"
#include "weave/adl.hpp"

namespace weave {
namespace {

[[noreturn]] void fail(ErrorKind kind, const std::string& message) {
  throw ModelError(kind, message);
}

// Appends the properties not already declared, keeping their order.
void append_properties(std::vector<PropertyExpr>& declared, const std::vector<PropertyExpr>& extra) {
  for (const auto& p : extra) {
    if (std::find(declared.begin(), declared.end(), p) == declared.end()) declared.push_back(p);
  }
}

std::optional<long> to_integer(std::string_view text) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::optional<double> to_number(std::string_view text) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

Substitutions check_bindings(const QosPattern& pattern, const Bindings& bindings,
                             const ArchitectureModel& arch) {
  for (const auto& [key, value] : bindings) {
    bool declared = std::any_of(pattern.params.begin(), pattern.params.end(),
                                [&](const PatternParam& p) { return p.name == key; });
    if (!declared) {
      fail(ErrorKind::invalid_argument,
           "pattern " + pattern.name + " has no parameter named " + key);
    }
  }
  Substitutions values;
  for (const auto& param : pattern.params) {
    auto it = bindings.find(param.name);
    if (it == bindings.end()) {
      fail(ErrorKind::unbound_parameter,
           "unbound parameter " + param.name + " of pattern " + pattern.name);
    }
    const std::string& value = it->second;
    std::string mismatch = "parameter " + param.name + " of pattern " + pattern.name +
                           " expects " + std::string(to_string(param.kind)) + ", got '" + value +
                           "'";
    switch (param.kind) {
      case ParamKind::element:
        if (!is_identifier(value)) fail(ErrorKind::kind_mismatch, mismatch);
        if (!arch.has_element(value)) {
          fail(ErrorKind::unresolved, "binding " + param.name + "=" + value +
                                          " does not name an element of " + arch.name);
        }
        values[param.name] = value;
        break;
      case ParamKind::integer: {
        auto n = to_integer(value);
        if (!n) fail(ErrorKind::kind_mismatch, mismatch);
        values[param.name] = std::to_string(*n);
        break;
      }
      case ParamKind::number: {
        auto x = to_number(value);
        if (!x) fail(ErrorKind::kind_mismatch, mismatch);
        values[param.name] = format_number(*x);
        break;
      }
    }
  }
  return values;
}

struct MemberView {
  std::string name;
  Side side;
  std::string type;
  bool attached;
};

std::vector<MemberView> attached_members(const ArchitectureModel& arch, const std::string& element,
                                         std::string_view generator) {
  std::vector<MemberView> members;
  auto attached = [&](const std::string& member) {
    ElementPath path{element, member};
    return std::any_of(arch.attachments.begin(), arch.attachments.end(),
                       [&](const Attachment& a) { return a.touches(path); });
  };
  if (const auto* c = arch.find_component(element)) {
    for (const auto& p : c->ports) {
      members.push_back({p.name, side_of(p.direction), p.message_type, attached(p.name)});
    }
  } else if (const auto* k = arch.find_connector(element)) {
    for (const auto& r : k->roles) {
      members.push_back({r.name, side_of(r.direction), r.message_type, attached(r.name)});
    }
  } else {
    fail(ErrorKind::unresolved,
         std::string(generator) + "(" + element + "): no such element");
  }
  std::erase_if(members, [](const MemberView& m) { return !m.attached; });
  return members;
}

GeneratorFn make_generators(const ArchitectureModel& arch) {
  return [&arch](std::string_view name, const std::vector<std::string>& args) {
    auto arity = [&](std::size_t n) {
      if (args.size() != n) {
        fail(ErrorKind::invalid_argument, "generator " + std::string(name) + " takes " +
                                              std::to_string(n) + " argument(s), got " +
                                              std::to_string(args.size()));
      }
    };
    std::vector<std::string> out;
    auto add_unique = [&](const std::string& v) {
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    };
    if (name == "types") {
      arity(0);
      return arch.types;
    }
    if (name == "replicas") {
      arity(2);
      auto n = to_integer(args[1]);
      if (!n || *n < 0) fail(ErrorKind::invalid_argument, "replicas count must be a natural number");
      for (long i = 1; i <= *n; ++i) out.push_back(replica_name(args[0], i));
      return out;
    }
    arity(1);
    auto members = attached_members(arch, args[0], name);
    if (name == "attached_ports") {
      for (const auto& m : members) out.push_back(m.name);
    } else if (name == "attached_provides") {
      for (const auto& m : members) {
        if (m.side == Side::in) out.push_back(m.name);
      }
    } else if (name == "attached_requires") {
      for (const auto& m : members) {
        if (m.side == Side::out) out.push_back(m.name);
      }
    } else if (name == "attached_types") {
      for (const auto& m : members) add_unique(m.type);
    } else if (name == "provides_types") {
      for (const auto& m : members) {
        if (m.side == Side::in) add_unique(m.type);
      }
    } else if (name == "requires_types") {
      for (const auto& m : members) {
        if (m.side == Side::out) add_unique(m.type);
      }
    } else {
      fail(ErrorKind::invalid_argument, "unknown generator " + std::string(name));
    }
    return out;
  };
}

// Named fragment of an expanded pattern: the name of its first element.
struct NamedFragment {
  std::string name;
  Fragment fragment;
};

template <typename F>
auto reparse(std::string_view context, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    throw ModelError(ErrorKind::syntax, std::string(context) + ": " + e.what());
  }
}

PortMap parse_port_map(detail::Parser& p) {
  PortMap map;
  while (!p.at_end() && !p.at_punct("}")) {
    auto member = p.expect_identifier("port or role name");
    p.expect_punct("->");
    auto inner = p.parse_path();
    if (inner.size() != 2) p.fail("portmap target must be element::member");
    map.emplace_back(std::move(member), std::move(inner));
    if (!p.accept_punct(",")) p.accept_punct(";");
  }
  return map;
}

const Fragment& find_fragment(const std::vector<NamedFragment>& fragments, const std::string& name,
                              const std::string& pattern) {
  for (const auto& f : fragments) {
    if (f.name == name) return f.fragment;
  }
  fail(ErrorKind::unresolved, "pattern " + pattern + " declares no fragment named " + name);
}

RefinementAction parse_action(detail::Parser& p, const std::vector<NamedFragment>& fragments,
                              const std::string& pattern) {
  if (p.accept_word("include")) {
    auto name = p.expect_identifier("fragment name");
    return IncludeAction{find_fragment(fragments, name, pattern)};
  }
  if (p.accept_word("exclude_type")) return ExcludeTypeAction{p.expect_identifier("type name")};
  if (p.accept_word("exclude")) return ExcludeAction{p.parse_path()};
  if (p.accept_word("replicate")) {
    auto target = p.parse_path();
    return ReplicateAction{std::move(target), p.expect_integer()};
  }
  if (p.accept_word("unify")) {
    auto connection = p.parse_path();
    p.expect_word("with");
    return UnifyAction{std::move(connection), p.expect_identifier("connector name")};
  }
  if (p.accept_word("decompose")) {
    DecomposeAction action;
    action.target = p.parse_path();
    p.expect_word("into");
    action.sub = find_fragment(fragments, p.expect_identifier("fragment name"), pattern);
    p.expect_word("portmap");
    p.expect_punct("{");
    action.port_map = parse_port_map(p);
    p.expect_punct("}");
    return action;
  }
  p.fail_expected({"'include'", "'exclude'", "'exclude_type'", "'replicate'", "'unify'",
                   "'decompose'"});
}

}  // namespace

CompiledPattern compile_pattern(const QosPattern& pattern, const Bindings& bindings,
                                const ArchitectureModel& arch) {
  Substitutions values = check_bindings(pattern, bindings, arch);
  GeneratorFn generators = make_generators(arch);
  std::string context = "expanded pattern " + pattern.name;

  std::vector<NamedFragment> fragments;
  for (const auto& tpl : pattern.fragments) {
    auto text = expand_template(tpl, values, generators);
    Fragment fragment = reparse(context, [&] { return parse_fragment(text); });
    if (fragment.element_count() == 0) {
      fail(ErrorKind::malformed_fragment, "fragment of " + pattern.name + " declares no element");
    }
    std::string name = fragment.components.empty() ? fragment.connectors.front().name
                                                   : fragment.components.front().name;
    fragments.push_back({std::move(name), std::move(fragment)});
  }

  CompiledPattern compiled;
  compiled.step.origin = StepOrigin{StepOrigin::Kind::qos_pattern, pattern.name};
  auto body = expand_template(pattern.body, values, generators);
  reparse(context, [&] {
    detail::Parser p(body);
    while (!p.at_end()) {
      if (p.accept_word("action")) {
        compiled.step.actions.push_back(parse_action(p, fragments, pattern.name));
      } else if (p.accept_word("ensures")) {
        compiled.ensures.push_back(p.parse_property());
      } else {
        p.fail_expected({"'action'", "'ensures'"});
      }
    }
    return 0;
  });
  if (compiled.step.actions.empty()) {
    fail(ErrorKind::empty_pattern,
         "pattern " + pattern.name + " expands to no actions for these bindings");
  }
  return compiled;
}

StepOutcome apply_pattern(const ArchitectureModel& arch, const QosPattern& pattern,
                          const Bindings& bindings) {
  if (arch.stage == Stage::gesm) {
    fail(ErrorKind::stage, "pattern " + pattern.name + " cannot be applied to a GESM");
  }
  auto compiled = compile_pattern(pattern, bindings, arch);
  auto outcome = apply_step(arch, compiled.step, arch.properties);
  if (outcome.ok()) {
    append_properties(outcome.model.properties, compiled.ensures);
    outcome.model.stage = Stage::intermediate;
  }
  return outcome;
}

RefinementStep compile_platform(const PlatformModel& platform, const ArchitectureModel& arch) {
  RefinementStep step;
  step.origin = StepOrigin{StepOrigin::Kind::platform, platform.name};
  std::string context = "platform " + platform.name;
  GeneratorFn generators = make_generators(arch);

  for (const auto& rule : platform.rewrites) {
    std::vector<std::string> matches;
    if (rule.match_kind == ElementKind::component) {
      for (const auto& c : arch.components) {
        if (glob_match(rule.glob, c.name)) matches.push_back(c.name);
      }
    } else {
      for (const auto& k : arch.connectors) {
        if (glob_match(rule.glob, k.name)) matches.push_back(k.name);
      }
    }
    for (const auto& name : matches) {
      Substitutions values{{"name", name}};
      auto fragment_text = expand_template(rule.replacement, values, generators);
      auto map_text = expand_template(rule.port_map, values, generators);
      DecomposeAction action;
      action.target = ElementPath{name};
      action.prefix_names = false;
      action.sub = reparse(context, [&] { return parse_fragment(fragment_text); });
      action.port_map = reparse(context, [&] {
        detail::Parser p(map_text);
        auto map = parse_port_map(p);
        p.expect_end();
        return map;
      });
      step.actions.emplace_back(std::move(action));
    }
  }

  for (const auto& adapter : platform.adapters) {
    // One include per element; each carries the adapter's type declarations.
    for (const auto& c : adapter.components) {
      step.actions.emplace_back(IncludeAction{Fragment{adapter.types, {c}, {}, {}}});
    }
    for (const auto& k : adapter.connectors) {
      step.actions.emplace_back(IncludeAction{Fragment{adapter.types, {}, {k}, {}}});
    }
  }
  return step;
}

bool PlatformOutcome::conformant() const {
  return step.ok() && std::all_of(conformance.begin(), conformance.end(), [](const PropertyResult& r) {
           return r.holds && !r.error;
         });
}

PlatformOutcome apply_platform(const ArchitectureModel& arch, const PlatformModel& platform) {
  if (arch.stage == Stage::gesm) {
    fail(ErrorKind::stage, "platform " + platform.name + " cannot be applied to a GESM");
  }
  auto step = compile_platform(platform, arch);
  PlatformOutcome outcome;
  if (step.actions.empty()) {
    if (auto report = validate_structure(arch); !report.ok()) {
      fail(ErrorKind::invalid_structure, "input model is invalid: " + report.violations.front().message);
    }
    outcome.step = StepOutcome{arch, RefinementTrace(step.origin), std::nullopt};
  } else {
    outcome.step = apply_step(arch, step, arch.properties);
  }
  if (!outcome.step.ok()) return outcome;

  auto& model = outcome.step.model;
  append_properties(model.properties, platform.conformance);
  model.stage = Stage::gesm;
  outcome.conformance = evaluate_all(model, platform.conformance);
  return outcome;
}

}  // namespace weave
