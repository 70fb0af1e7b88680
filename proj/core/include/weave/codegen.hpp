#pragma once

#include <string>
#include <utility>
#include <vector>

#include "weave/document.hpp"
#include "weave/model.hpp"

namespace weave {

struct GeneratedFile {
  std::string path;  // relative, '/'-separated
  std::string content;

  bool operator==(const GeneratedFile&) const = default;
};

/// GESA: generated files (the manifest last) plus the element -> path map.
struct GeneratedBundle {
  std::vector<GeneratedFile> files;
  std::vector<std::pair<std::string, std::string>> manifest;

  bool operator==(const GeneratedBundle&) const = default;
};

struct GenerateOptions {
  std::string platform;  // value of `{platform}`
  bool strict = false;   // also enabled by the mapping's own `strict` flag
};

/// Translates a GESM through a mapping model. Placeholders: {name} {kind}
/// {ports} {attrs} {stage} {platform}.
GeneratedBundle generate(const ArchitectureModel& gesm, const MappingModel& mapping,
                         const GenerateOptions& options = {});

/// Manifest text: `element<TAB>path` lines sorted by element name.
std::string render_manifest(const std::vector<std::pair<std::string, std::string>>& manifest);

/// GEDM: component -> node assignments plus whatever did not fit.
struct DeploymentPlan {
  std::vector<std::pair<std::string, std::string>> assignments;
  std::vector<std::string> unplaced;

  bool operator==(const DeploymentPlan&) const = default;
};

/// First-fit decreasing on the numeric `load` attribute (missing -> 0):
/// components by load descending then name ascending, nodes in declared
/// order. Throws ModelError(stage) unless the model is a GESM.
DeploymentPlan plan_deployment(const ArchitectureModel& gesm, const ResourceModel& resources);

}  // namespace weave
