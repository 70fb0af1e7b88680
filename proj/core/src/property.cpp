#include "weave/property.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>

#include "weave/adl.hpp"
#include "weave/error.hpp"

namespace weave {
namespace {

struct Evaluator {
  const ArchitectureModel& arch;

  PropertyResult operator()(const AllPortsConnected& p) const {
    PropertyResult r{p, true, {}, {}, {}};
    for (const auto& c : arch.components) {
      for (const auto& port : c.ports) {
        ElementPath endpoint{c.name, port.name};
        bool attached = std::any_of(arch.attachments.begin(), arch.attachments.end(),
                                    [&](const Attachment& a) { return a.touches(endpoint); });
        if (!attached) r.witnesses.push_back(std::move(endpoint));
      }
    }
    r.holds = r.witnesses.empty();
    r.detail = r.holds ? "all ports connected"
                       : std::to_string(r.witnesses.size()) + " unconnected port(s)";
    return r;
  }

  PropertyResult operator()(const TypeClosed& p) const {
    PropertyResult r{p, true, {}, {}, {}};
    std::set<std::string> missing;
    auto check = [&](const std::string& owner, const std::string& member, const std::string& type) {
      if (!arch.has_type(type)) {
        r.witnesses.push_back(ElementPath{owner, member});
        missing.insert(type);
      }
    };
    for (const auto& c : arch.components) {
      for (const auto& port : c.ports) check(c.name, port.name, port.message_type);
    }
    for (const auto& k : arch.connectors) {
      for (const auto& role : k.roles) check(k.name, role.name, role.message_type);
    }
    r.holds = missing.empty();
    if (r.holds) {
      r.detail = "all message types declared";
    } else {
      r.detail = "undeclared types:";
      for (const auto& t : missing) r.detail += " " + t;
    }
    return r;
  }

  PropertyResult operator()(const ExistsElement& p) const {
    PropertyResult r{p, false, {}, {}, {}};
    auto scan = [&](const auto& elements) {
      for (const auto& e : elements) {
        if (glob_match(p.glob, e.name)) r.witnesses.push_back(ElementPath{e.name});
      }
    };
    if (p.kind == ElementKind::component) {
      scan(arch.components);
    } else {
      scan(arch.connectors);
    }
    r.holds = !r.witnesses.empty();
    r.detail = std::to_string(r.witnesses.size()) + " matching " + std::string(to_string(p.kind)) +
               "(s)";
    if (!r.holds) r.witnesses.push_back(ElementPath{p.glob});
    return r;
  }

  PropertyResult operator()(const MinReplication& p) const {
    PropertyResult r{p, false, {}, {}, {}};
    for (const auto& c : arch.components) {
      if (is_replica_name(c.name, p.base)) r.witnesses.push_back(ElementPath{c.name});
    }
    auto count = static_cast<long>(r.witnesses.size());
    r.holds = count >= p.minimum;
    r.detail = "count=" + std::to_string(count);
    if (r.witnesses.empty()) r.witnesses.push_back(ElementPath{p.base});
    return r;
  }

  PropertyResult operator()(const Connected& p) const {
    // Resolution errors propagate; evaluate_all records them per property.
    resolve_path(arch, p.a);
    resolve_path(arch, p.b);
    const std::string& start = p.a.head();
    const std::string& goal = p.b.head();

    std::map<std::string, std::vector<std::string>, std::less<>> adjacent;
    for (const auto& a : arch.attachments) {
      adjacent[a.from.head()].push_back(a.to.head());
      adjacent[a.to.head()].push_back(a.from.head());
    }
    std::map<std::string, std::string, std::less<>> parent{{start, start}};
    std::deque<std::string> queue{start};
    while (!queue.empty() && !parent.contains(goal)) {
      std::string node = queue.front();
      queue.pop_front();
      for (const auto& next : adjacent[node]) {
        if (parent.emplace(next, node).second) queue.push_back(next);
      }
    }

    PropertyResult r{p, parent.contains(goal), {}, {}, {}};
    if (r.holds) {
      std::vector<ElementPath> route;
      for (std::string node = goal;; node = parent[node]) {
        route.push_back(ElementPath{node});
        if (node == start) break;
      }
      std::reverse(route.begin(), route.end());
      r.witnesses = std::move(route);
      r.detail = "path of " + std::to_string(r.witnesses.size()) + " element(s)";
    } else {
      r.witnesses = {ElementPath{start}, ElementPath{goal}};
      r.detail = "no path between " + start + " and " + goal;
    }
    return r;
  }

  PropertyResult operator()(const AttrSumBound& p) const {
    PropertyResult r{p, false, {}, {}, {}};
    double sum = 0;
    auto add = [&](const std::string& name, const Attributes& attributes) {
      auto it = attributes.find(p.attribute);
      if (it == attributes.end()) return;
      const auto* value = std::get_if<double>(&it->second);
      if (value == nullptr) {
        throw ModelError(ErrorKind::invalid_argument,
                         "attribute " + p.attribute + " on " + name + " is not numeric");
      }
      sum += *value;
      r.witnesses.push_back(ElementPath{name});
    };
    for (const auto& c : arch.components) add(c.name, c.attributes);
    for (const auto& k : arch.connectors) add(k.name, k.attributes);
    r.holds = sum <= p.bound;
    r.detail = "sum=" + format_number(sum);
    return r;
  }
};

}  // namespace

PropertyResult evaluate(const ArchitectureModel& arch, const PropertyExpr& property) {
  return std::visit(Evaluator{arch}, property);
}

std::vector<PropertyResult> evaluate_all(const ArchitectureModel& arch,
                                         std::span<const PropertyExpr> properties) {
  std::vector<PropertyResult> results;
  results.reserve(properties.size());
  for (const auto& property : properties) {
    try {
      results.push_back(evaluate(arch, property));
    } catch (const ModelError& e) {
      PropertyResult failed{property, false, {}, e.what(), e.what()};
      if (const auto* c = std::get_if<Connected>(&property)) failed.witnesses = {c->a, c->b};
      results.push_back(std::move(failed));
    }
  }
  return results;
}

PreservationReport check_preservation(const ArchitectureModel& parent,
                                      const ArchitectureModel& child) {
  PreservationReport report;
  report.results = evaluate_all(child, parent.properties);
  report.preserved = std::all_of(report.results.begin(), report.results.end(),
                                 [](const PropertyResult& r) { return r.holds; });
  return report;
}

bool glob_match(std::string_view glob, std::string_view text) {
  std::size_t g = 0, t = 0;
  std::size_t star = std::string_view::npos, resume = 0;
  while (t < text.size()) {
    if (g < glob.size() && glob[g] == '*') {
      star = g++;
      resume = t;
    } else if (g < glob.size() && glob[g] == text[t]) {
      ++g;
      ++t;
    } else if (star != std::string_view::npos) {
      g = star + 1;
      t = ++resume;
    } else {
      return false;
    }
  }
  while (g < glob.size() && glob[g] == '*') ++g;
  return g == glob.size();
}

bool is_replica_name(std::string_view name, std::string_view base) {
  if (name == base) return true;
  if (name.size() <= base.size() + 1 || name.substr(0, base.size()) != base ||
      name[base.size()] != '_') {
    return false;
  }
  auto suffix = name.substr(base.size() + 1);
  return std::all_of(suffix.begin(), suffix.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

std::string replica_name(std::string_view base, long index) {
  return std::string(base) + "_" + std::to_string(index);
}

}  // namespace weave
