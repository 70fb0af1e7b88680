#include "weave/codegen.hpp"

#include <algorithm>
#include <set>

#include "weave/error.hpp"
#include "weave/lexer.hpp"
#include "weave/property.hpp"

namespace weave {
namespace {

struct ElementView {
  ElementKind kind;
  std::string name;
  std::vector<std::string> members;  // `name direction type`
  const Attributes* attributes;
};

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) out += '\n';
    out += lines[i];
  }
  return out;
}

std::string instantiate(std::string_view text, const ElementView& e, const ArchitectureModel& gesm,
                        const GenerateOptions& options) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      auto close = text.find('}', i + 1);
      if (close != std::string_view::npos) {
        auto key = text.substr(i + 1, close - i - 1);
        std::optional<std::string> value;
        if (key == "name") {
          value = e.name;
        } else if (key == "kind") {
          value = std::string(to_string(e.kind));
        } else if (key == "ports") {
          value = join_lines(e.members);
        } else if (key == "attrs") {
          std::vector<std::string> lines;
          for (const auto& [k, v] : *e.attributes) lines.push_back(k + "=" + format_scalar(v));
          value = join_lines(lines);
        } else if (key == "stage") {
          value = std::string(to_string(gesm.stage));
        } else if (key == "platform") {
          value = options.platform;
        }
        if (value) {
          out += *value;
          i = close + 1;
          continue;
        }
      }
    }
    out += text[i++];
  }
  return out;
}

void check_relative(const std::string& path, const std::string& element) {
  bool bad = path.empty() || path.front() == '/' || path.find('\\') != std::string::npos ||
             path.find('\0') != std::string::npos;
  std::size_t start = 0;
  while (!bad) {
    auto slash = path.find('/', start);
    auto segment = std::string_view(path).substr(start, slash - start);
    bad = segment.empty() || segment == "." || segment == "..";
    if (slash == std::string::npos) break;
    start = slash + 1;
  }
  if (bad) {
    throw ModelError(ErrorKind::invalid_argument,
                     "output path '" + path + "' for " + element + " is not a safe relative path");
  }
}

}  // namespace

GeneratedBundle generate(const ArchitectureModel& gesm, const MappingModel& mapping,
                         const GenerateOptions& options) {
  if (gesm.stage != Stage::gesm) {
    throw ModelError(ErrorKind::stage, "translation requires GESM, model " + gesm.name +
                                           " is at stage " + std::string(to_string(gesm.stage)));
  }
  bool strict = options.strict || mapping.strict;

  std::vector<ElementView> elements;
  for (const auto& c : gesm.components) {
    ElementView v{ElementKind::component, c.name, {}, &c.attributes};
    for (const auto& p : c.ports) {
      v.members.push_back(p.name + " " + std::string(to_string(p.direction)) + " " +
                          p.message_type);
    }
    elements.push_back(std::move(v));
  }
  for (const auto& k : gesm.connectors) {
    ElementView v{ElementKind::connector, k.name, {}, &k.attributes};
    for (const auto& r : k.roles) {
      v.members.push_back(r.name + " " + std::string(to_string(r.direction)) + " " +
                          r.message_type);
    }
    elements.push_back(std::move(v));
  }

  GeneratedBundle bundle;
  std::set<std::string, std::less<>> paths{mapping.manifest_name};
  for (const auto& e : elements) {
    auto rule = std::find_if(mapping.rules.begin(), mapping.rules.end(), [&](const MappingRule& r) {
      return r.match_kind == e.kind && glob_match(r.glob, e.name);
    });
    if (rule == mapping.rules.end()) {
      if (strict && e.kind == ElementKind::component) {
        throw ModelError(ErrorKind::unmatched_element,
                         "no mapping rule in " + mapping.name + " matches component " + e.name);
      }
      continue;
    }
    auto path = instantiate(rule->output_pattern, e, gesm, options);
    check_relative(path, e.name);
    if (!paths.insert(path).second) {
      throw ModelError(ErrorKind::duplicate_output,
                       "duplicate output path " + path + " (element " + e.name + ")");
    }
    bundle.files.push_back({path, instantiate(rule->template_text, e, gesm, options)});
    bundle.manifest.emplace_back(e.name, std::move(path));
  }
  std::sort(bundle.manifest.begin(), bundle.manifest.end());
  bundle.files.push_back({mapping.manifest_name, render_manifest(bundle.manifest)});
  return bundle;
}

std::string render_manifest(const std::vector<std::pair<std::string, std::string>>& manifest) {
  auto sorted = manifest;
  std::sort(sorted.begin(), sorted.end());
  std::string out;
  for (const auto& [element, path] : sorted) out += element + "\t" + path + "\n";
  return out;
}

}  // namespace weave
