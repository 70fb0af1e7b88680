#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <string_view>

namespace weave::testing {

bool oracle_glob(const std::string& glob, const std::string& text) {
  std::string pattern;
  for (char c : glob) {
    if (c == '*') {
      pattern += ".*";
    } else {
      if (std::string_view(".^$|()[]{}+?\\").find(c) != std::string_view::npos) pattern += '\\';
      pattern += c;
    }
  }
  return std::regex_match(text, std::regex(pattern));
}

namespace {

std::vector<std::string> element_names(const ArchitectureModel& arch) {
  std::vector<std::string> names;
  for (const auto& c : arch.components) names.push_back(c.name);
  for (const auto& k : arch.connectors) names.push_back(k.name);
  return names;
}

// Endpoint lookup: (element, member) -> (is_in_side, type).
struct Member {
  bool inbound;
  std::string type;
};

std::map<std::pair<std::string, std::string>, Member> member_table(const ArchitectureModel& arch) {
  std::map<std::pair<std::string, std::string>, Member> table;
  for (const auto& c : arch.components) {
    for (const auto& p : c.ports) {
      table[{c.name, p.name}] = {p.direction == PortDirection::provided, p.message_type};
    }
  }
  for (const auto& k : arch.connectors) {
    for (const auto& r : k.roles) {
      table[{k.name, r.name}] = {r.direction == RoleDirection::accepts, r.message_type};
    }
  }
  return table;
}

}  // namespace

std::size_t count_simple_paths(const ArchitectureModel& arch, const std::string& a,
                               const std::string& b) {
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& att : arch.attachments) edges.emplace_back(att.from.segments[0], att.to.segments[0]);
  if (a == b) return 1;
  std::set<std::string> visited{a};
  std::size_t count = 0;
  std::function<void(const std::string&)> walk = [&](const std::string& node) {
    std::set<std::string> neighbours;
    for (const auto& [x, y] : edges) {
      if (x == node) neighbours.insert(y);
      if (y == node) neighbours.insert(x);
    }
    for (const auto& next : neighbours) {
      if (next == b) {
        ++count;
        continue;
      }
      if (visited.count(next)) continue;
      visited.insert(next);
      walk(next);
      visited.erase(next);
    }
  };
  walk(a);
  return count;
}

double direct_sum(const ArchitectureModel& arch, const std::string& attribute) {
  double total = 0;
  auto add = [&](const Attributes& attrs) {
    for (const auto& [key, value] : attrs) {
      if (key == attribute && std::holds_alternative<double>(value)) total += std::get<double>(value);
    }
  };
  for (const auto& c : arch.components) add(c.attributes);
  for (const auto& k : arch.connectors) add(k.attributes);
  return total;
}

bool oracle_holds(const ArchitectureModel& arch, const PropertyExpr& property) {
  if (std::holds_alternative<AllPortsConnected>(property)) {
    for (const auto& c : arch.components) {
      for (const auto& p : c.ports) {
        bool attached = false;
        for (const auto& att : arch.attachments) {
          for (const auto* end : {&att.from, &att.to}) {
            if (end->segments == std::vector<std::string>{c.name, p.name}) attached = true;
          }
        }
        if (!attached) return false;
      }
    }
    return true;
  }
  if (std::holds_alternative<TypeClosed>(property)) {
    std::set<std::string> declared(arch.types.begin(), arch.types.end());
    for (const auto& [key, member] : member_table(arch)) {
      if (!declared.count(member.type)) return false;
    }
    return true;
  }
  if (const auto* e = std::get_if<ExistsElement>(&property)) {
    if (e->kind == ElementKind::component) {
      for (const auto& c : arch.components) {
        if (oracle_glob(e->glob, c.name)) return true;
      }
    } else {
      for (const auto& k : arch.connectors) {
        if (oracle_glob(e->glob, k.name)) return true;
      }
    }
    return false;
  }
  if (const auto* r = std::get_if<MinReplication>(&property)) {
    std::regex replica(r->base + "(_[0-9]+)?");
    long count = 0;
    for (const auto& c : arch.components) count += std::regex_match(c.name, replica) ? 1 : 0;
    return count >= r->minimum;
  }
  if (const auto* c = std::get_if<Connected>(&property)) {
    auto names = element_names(arch);
    auto known = [&](const ElementPath& p) {
      return p.segments.size() == 1 &&
             std::find(names.begin(), names.end(), p.segments[0]) != names.end();
    };
    if (!known(c->a) || !known(c->b)) return false;
    return count_simple_paths(arch, c->a.segments[0], c->b.segments[0]) > 0;
  }
  const auto& s = std::get<AttrSumBound>(property);
  return direct_sum(arch, s.attribute) <= s.bound;
}

std::string structural_problem(const ArchitectureModel& arch) {
  std::set<std::string> names;
  for (const auto& n : element_names(arch)) {
    if (!names.insert(n).second) return "duplicate element " + n;
  }
  std::set<std::string> types(arch.types.begin(), arch.types.end());
  if (types.size() != arch.types.size()) return "duplicate type";
  for (const auto& c : arch.components) {
    std::set<std::string> members;
    for (const auto& p : c.ports) {
      if (!members.insert(p.name).second) return "duplicate port " + c.name + "::" + p.name;
      if (!types.count(p.message_type)) return "undeclared type at " + c.name + "::" + p.name;
    }
  }
  for (const auto& k : arch.connectors) {
    std::set<std::string> members;
    for (const auto& r : k.roles) {
      if (!members.insert(r.name).second) return "duplicate role " + k.name + "::" + r.name;
      if (!types.count(r.message_type)) return "undeclared type at " + k.name + "::" + r.name;
    }
  }
  auto table = member_table(arch);
  std::set<std::pair<std::vector<std::string>, std::vector<std::string>>> seen;
  for (const auto& att : arch.attachments) {
    if (att.from.segments.size() != 2 || att.to.segments.size() != 2) return "bad endpoint arity";
    auto from = table.find({att.from.segments[0], att.from.segments[1]});
    auto to = table.find({att.to.segments[0], att.to.segments[1]});
    if (from == table.end() || to == table.end()) return "unresolved endpoint";
    if (from->second.inbound || !to->second.inbound) return "wrong direction";
    if (from->second.type != to->second.type) return "type mismatch";
    if (!seen.insert({att.from.segments, att.to.segments}).second) return "duplicate attachment";
  }
  return {};
}

bool feasible_assignment_exists(const std::vector<double>& loads,
                                const std::vector<double>& capacities) {
  if (loads.empty()) return true;
  if (capacities.empty()) return false;
  std::vector<std::size_t> choice(loads.size(), 0);
  while (true) {
    std::vector<double> used(capacities.size(), 0);
    for (std::size_t i = 0; i < loads.size(); ++i) used[choice[i]] += loads[i];
    bool fits = true;
    for (std::size_t n = 0; n < capacities.size(); ++n) fits = fits && used[n] <= capacities[n];
    if (fits) return true;
    std::size_t digit = 0;
    while (digit < choice.size() && ++choice[digit] == capacities.size()) choice[digit++] = 0;
    if (digit == choice.size()) return false;
  }
}

}  // namespace weave::testing
