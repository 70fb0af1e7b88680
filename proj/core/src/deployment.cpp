#include <algorithm>

#include "weave/codegen.hpp"
#include "weave/error.hpp"

namespace weave {

DeploymentPlan plan_deployment(const ArchitectureModel& gesm, const ResourceModel& resources) {
  if (gesm.stage != Stage::gesm) {
    throw ModelError(ErrorKind::stage, "deployment planning requires GESM, model " + gesm.name +
                                           " is at stage " + std::string(to_string(gesm.stage)));
  }
  struct Item {
    std::string name;
    double load;
  };
  std::vector<Item> items;
  for (const auto& c : gesm.components) {
    double load = 0;
    if (auto it = c.attributes.find("load"); it != c.attributes.end()) {
      const auto* number = std::get_if<double>(&it->second);
      if (number == nullptr) {
        throw ModelError(ErrorKind::invalid_argument, "load of " + c.name + " is not numeric");
      }
      load = *number;
    }
    items.push_back({c.name, load});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return a.load != b.load ? a.load > b.load : a.name < b.name;
  });

  std::vector<double> remaining;
  for (const auto& n : resources.nodes) remaining.push_back(n.capacity);

  DeploymentPlan plan;
  for (const auto& item : items) {
    auto slot = std::find_if(remaining.begin(), remaining.end(),
                             [&](double room) { return room >= item.load; });
    if (slot == remaining.end()) {
      plan.unplaced.push_back(item.name);
      continue;
    }
    *slot -= item.load;
    plan.assignments.emplace_back(item.name,
                                  resources.nodes[static_cast<std::size_t>(slot - remaining.begin())].name);
  }
  return plan;
}

}  // namespace weave
