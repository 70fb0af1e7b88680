#include "weave/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "weave/adl.hpp"
#include "weave/codegen.hpp"
#include "weave/fingerprint.hpp"
#include "weave/report.hpp"

namespace weave::cli {
namespace {

// A failed stage: its report entry is already recorded when this is thrown.
struct StageAbort {
  int exit_code;
  std::string stage;
  Json error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError(ErrorKind::io, "cannot read " + path.generic_string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw ModelError(ErrorKind::io, "cannot write " + path.generic_string());
}

void require_file(const fs::path& path, std::string_view option) {
  if (path.empty()) throw UsageError(std::string(option) + " is required");
  if (!fs::is_regular_file(path)) {
    throw UsageError(std::string(option) + ": no such file: " + path.generic_string());
  }
}

Json header(std::string_view command) {
  Json j;
  j["tool"] = "weave";
  j["version"] = WEAVE_VERSION;
  j["command"] = command;
  return j;
}

std::string spec_label(const PatternSpec& spec) {
  std::string label = spec.path.generic_string();
  char sep = ':';
  for (const auto& [k, v] : spec.bindings) {
    label += sep + k + "=" + v;
    sep = ',';
  }
  return label;
}

bool all_hold(std::span<const PropertyResult> results) {
  return std::all_of(results.begin(), results.end(),
                     [](const PropertyResult& r) { return r.holds && !r.error; });
}

std::string failing_summary(std::span<const PropertyResult> results) {
  std::string out;
  for (const auto& r : results) {
    if (r.holds && !r.error) continue;
    if (!out.empty()) out += "; ";
    out += to_string(r.property) + " (" + (r.error ? *r.error : r.detail) + ")";
  }
  return out;
}

class BuildRun {
 public:
  explicit BuildRun(const BuildConfig& config) : config_(config) {}

  RunResult run() {
    RunResult result;
    report_ = header("build");
    report_["inputs"] = Json::array();
    stages_ = Json::array();
    clear_outputs();
    try {
      execute();
      report_["stages"] = std::move(stages_);
      report_["outcome"] = Json{{"status", "ok"}};
      result.exit_code = kOk;
      result.summary = summary_;
    } catch (const StageAbort& abort) {
      report_["stages"] = std::move(stages_);
      report_["outcome"] =
          Json{{"status", "failed"}, {"stage", abort.stage}, {"error", abort.error}};
      result.exit_code = abort.exit_code;
      result.summary = "failed at " + abort.stage + ": " +
                       abort.error.value("message", std::string("unknown error"));
    } catch (const std::exception& e) {
      ErrorKind kind = ErrorKind::io;
      if (const auto* model_error = dynamic_cast<const ModelError*>(&e)) kind = model_error->kind();
      report_["stages"] = std::move(stages_);
      report_["outcome"] =
          Json{{"status", "failed"}, {"stage", "io"}, {"error", error_json(kind, e.what())}};
      result.exit_code = kInvalidInput;
      result.summary = e.what();
    }
    report_["exit_code"] = result.exit_code;
    result.report = std::move(report_);
    write_file(config_.report.value_or(config_.out / "report.json"), dump_report(result.report));
    return result;
  }

 private:
  [[noreturn]] void fail_stage(int code, Json stage, ErrorKind kind, const std::string& message) {
    stage["status"] = "failed";
    stage["error"] = error_json(kind, message);
    std::string name = stage["stage"];
    stages_.push_back(std::move(stage));
    throw StageAbort{code, std::move(name), error_json(kind, message)};
  }

  void clear_outputs() {
    std::error_code ec;
    fs::remove(config_.out / "gesm.adl", ec);
    fs::remove(config_.out / "gedm.json", ec);
    fs::remove_all(config_.out / "gesa", ec);
  }

  std::string load(std::string_view role, const fs::path& path) {
    std::string text = read_file(path);
    report_["inputs"].push_back(Json{{"role", role},
                                     {"path", path.generic_string()},
                                     {"fingerprint", content_fingerprint(text)}});
    return text;
  }

  template <typename T, typename Parse>
  T parse_input(std::string_view role, const fs::path& path, Parse parse) {
    std::string text = load(role, path);
    try {
      return parse(text);
    } catch (const ModelError& e) {
      fail_stage(kInvalidInput, Json{{"stage", "parse"}, {"file", path.generic_string()}}, e.kind(),
            path.generic_string() + ":" + e.what());
    }
  }

  void execute() {
    auto geim = parse_input<ArchitectureModel>("geim", config_.geim, parse_architecture);
    std::vector<QosPattern> patterns;
    for (const auto& spec : config_.gecms) {
      patterns.push_back(parse_input<QosPattern>("gecm", spec.path, parse_qos_pattern));
    }
    auto platform = parse_input<PlatformModel>("getm", config_.getm, parse_platform);
    auto mapping = parse_input<MappingModel>("gemm", config_.gemm, parse_mapping);
    std::optional<ResourceModel> resources;
    if (config_.germ) {
      resources = parse_input<ResourceModel>("germ", *config_.germ, parse_resources);
    }
    stages_.push_back(Json{{"stage", "parse"}, {"status", "ok"}});

    check_geim(geim);
    ArchitectureModel model = geim;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      model = apply_gecm(model, patterns[i], config_.gecms[i]);
    }
    model = apply_getm(model, platform);

    auto gesm_text = print_model(model);
    write_file(config_.out / "gesm.adl", gesm_text);
    stages_.push_back(Json{{"stage", "gesm"},
                           {"status", "ok"},
                           {"path", "gesm.adl"},
                           {"fingerprint", content_fingerprint(gesm_text)}});

    auto files = generate_gesa(model, mapping, platform.name);
    if (resources) deploy(model, *resources);
    summary_ = model.name + " refined to GESM with " +
               std::to_string(model.element_count()) + " elements, " + std::to_string(files) +
               " files generated";
  }

  void check_geim(const ArchitectureModel& geim) {
    Json stage{{"stage", "geim-check"}};
    auto results = evaluate_all(geim, geim.properties);
    stage["properties"] = to_json(results);
    if (!all_hold(results)) {
      fail_stage(kPropertyViolation, std::move(stage), ErrorKind::property_violation,
            "declared properties violated: " + failing_summary(results));
    }
    stage["status"] = "ok";
    stages_.push_back(std::move(stage));
  }

  ArchitectureModel apply_gecm(const ArchitectureModel& model, const QosPattern& pattern,
                               const PatternSpec& spec) {
    Json stage{{"stage", "gecm"}, {"pattern", pattern.name}, {"file", spec.path.generic_string()}};
    Json bindings = Json::object();
    for (const auto& [k, v] : spec.bindings) bindings[k] = v;
    stage["bindings"] = std::move(bindings);

    std::optional<StepOutcome> outcome;
    try {
      outcome = apply_pattern(model, pattern, spec.bindings);
    } catch (const ModelError& e) {
      fail_stage(kRefinementFailure, std::move(stage), e.kind(),
            "pattern " + pattern.name + ": " + e.what());
    }
    stage["trace"] = to_json(outcome->trace);
    if (!outcome->ok()) {
      stage["status"] = "failed";
      stage["error"] = to_json(*outcome->failure);
      stages_.push_back(stage);
      throw StageAbort{kRefinementFailure, "gecm", stage["error"]};
    }

    std::span<const PropertyExpr> ensures(
        outcome->model.properties.begin() + static_cast<std::ptrdiff_t>(model.properties.size()),
        outcome->model.properties.end());
    auto results = evaluate_all(outcome->model, ensures);
    stage["ensures"] = to_json(results);
    if (!all_hold(results)) {
      fail_stage(kRefinementFailure, std::move(stage), ErrorKind::postcondition,
            "pattern " + pattern.name + " ensures violated: " + failing_summary(results));
    }
    stage["status"] = "ok";
    stages_.push_back(std::move(stage));
    return std::move(outcome->model);
  }

  ArchitectureModel apply_getm(const ArchitectureModel& model, const PlatformModel& platform) {
    Json stage{{"stage", "getm"}, {"platform", platform.name},
               {"file", config_.getm.generic_string()}};
    std::optional<PlatformOutcome> outcome;
    try {
      outcome = apply_platform(model, platform);
    } catch (const ModelError& e) {
      fail_stage(kRefinementFailure, std::move(stage), e.kind(),
            "platform " + platform.name + ": " + e.what());
    }
    stage["trace"] = to_json(outcome->step.trace);
    if (!outcome->step.ok()) {
      stage["status"] = "failed";
      stage["error"] = to_json(*outcome->step.failure);
      stages_.push_back(stage);
      throw StageAbort{kRefinementFailure, "getm", stage["error"]};
    }
    stage["conformance"] = to_json(outcome->conformance);
    if (!outcome->conformant()) {
      fail_stage(kConformanceFailure, std::move(stage), ErrorKind::conformance,
            "platform " + platform.name + " requirements not met: " +
                failing_summary(outcome->conformance));
    }
    stage["status"] = "ok";
    stages_.push_back(std::move(stage));
    return std::move(outcome->step.model);
  }

  std::size_t generate_gesa(const ArchitectureModel& gesm, const MappingModel& mapping,
                            const std::string& platform) {
    Json stage{{"stage", "gemm"}, {"mapping", mapping.name}};
    GeneratedBundle bundle;
    try {
      bundle = generate(gesm, mapping, GenerateOptions{platform, config_.strict});
    } catch (const ModelError& e) {
      fail_stage(kInvalidInput, std::move(stage), e.kind(), e.what());
    }
    Json files = Json::array();
    for (const auto& file : bundle.files) {
      write_file(config_.out / "gesa" / fs::path(file.path), file.content);
      files.push_back(Json{{"path", "gesa/" + file.path},
                           {"fingerprint", content_fingerprint(file.content)}});
    }
    stage["status"] = "ok";
    stage["manifest"] = "gesa/" + mapping.manifest_name;
    stage["files"] = std::move(files);
    stages_.push_back(std::move(stage));
    return bundle.files.size();
  }

  void deploy(const ArchitectureModel& gesm, const ResourceModel& resources) {
    Json stage{{"stage", "germ"}, {"resources", resources.name}};
    DeploymentPlan plan;
    try {
      plan = plan_deployment(gesm, resources);
    } catch (const ModelError& e) {
      fail_stage(kInvalidInput, std::move(stage), e.kind(), e.what());
    }
    Json gedm = to_json(plan);
    write_file(config_.out / "gedm.json", dump_report(gedm));
    stage["status"] = "ok";
    stage["path"] = "gedm.json";
    stage["plan"] = std::move(gedm);
    stages_.push_back(std::move(stage));
  }

  const BuildConfig& config_;
  Json report_;
  Json stages_;
  std::string summary_;
};

void require_build_inputs(const BuildConfig& config) {
  require_file(config.geim, "--geim");
  for (const auto& spec : config.gecms) require_file(spec.path, "--gecm");
  require_file(config.getm, "--getm");
  require_file(config.gemm, "--gemm");
  if (config.germ) require_file(*config.germ, "--germ");
  if (config.out.empty()) throw UsageError("--out is required");
}

}  // namespace

PatternSpec parse_pattern_spec(std::string_view text) {
  PatternSpec spec;
  auto colon = text.rfind(':');
  if (colon == std::string_view::npos ||
      text.substr(colon + 1).find('=') == std::string_view::npos) {
    spec.path = fs::path(std::string(text));
    return spec;
  }
  spec.path = fs::path(std::string(text.substr(0, colon)));
  auto rest = text.substr(colon + 1);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    auto item = rest.substr(0, comma);
    auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size()) {
      throw UsageError("malformed binding '" + std::string(item) + "' in " + std::string(text));
    }
    std::string key(item.substr(0, eq));
    if (!spec.bindings.emplace(key, std::string(item.substr(eq + 1))).second) {
      throw UsageError("binding " + key + " given twice in " + std::string(text));
    }
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (spec.path.empty()) throw UsageError("missing pattern file in " + std::string(text));
  return spec;
}

std::string dump_report(const nlohmann::ordered_json& report) { return report.dump(2) + "\n"; }

RunResult run_check(const fs::path& model) {
  require_file(model, "model");
  RunResult result;
  Json report = header("check");
  std::string text = read_file(model);
  report["inputs"] = Json::array({Json{{"role", "model"},
                                       {"path", model.generic_string()},
                                       {"fingerprint", content_fingerprint(text)}}});
  Json stages = Json::array();
  Json outcome{{"status", "ok"}};
  try {
    auto doc = parse_model(text);
    stages.push_back(Json{{"stage", "parse"},
                          {"status", "ok"},
                          {"kind", to_string(doc.kind())},
                          {"name", doc.name()}});
    if (const auto* arch = std::get_if<ArchitectureModel>(&doc.payload)) {
      auto results = evaluate_all(*arch, arch->properties);
      bool ok = all_hold(results);
      stages.push_back(Json{{"stage", "properties"},
                            {"status", ok ? "ok" : "failed"},
                            {"properties", to_json(results)}});
      if (!ok) {
        std::string message = "declared properties violated: " + failing_summary(results);
        outcome = Json{{"status", "failed"},
                       {"stage", "properties"},
                       {"error", error_json(ErrorKind::property_violation, message)}};
        result.exit_code = kPropertyViolation;
        result.summary = message;
      } else {
        result.summary = arch->name + ", " + std::to_string(results.size()) +
                         " properties hold";
      }
    } else {
      result.summary = std::string(to_string(doc.kind())) + " " + doc.name() + " is valid";
    }
  } catch (const ModelError& e) {
    std::string message = model.generic_string() + ":" + e.what();
    stages.push_back(Json{{"stage", "parse"},
                          {"status", "failed"},
                          {"error", error_json(e.kind(), message)}});
    outcome = Json{{"status", "failed"}, {"stage", "parse"}, {"error", error_json(e.kind(), message)}};
    result.exit_code = kInvalidInput;
    result.summary = message;
  }
  report["stages"] = std::move(stages);
  report["outcome"] = std::move(outcome);
  report["exit_code"] = result.exit_code;
  result.report = std::move(report);
  return result;
}

RunResult run_build(const BuildConfig& config) {
  require_build_inputs(config);
  return BuildRun(config).run();
}

RunResult run_matrix(const MatrixConfig& config) {
  if (config.gecm_sets.empty()) throw UsageError("at least one --gecm-set is required");
  if (config.getms.empty()) throw UsageError("at least one --getm is required");
  std::set<std::string> stems;
  for (const auto& getm : config.getms) {
    if (!stems.insert(getm.stem().string()).second) {
      throw UsageError("platform files must have distinct names: " + getm.stem().string());
    }
  }

  struct Combination {
    std::size_t set;
    BuildConfig build;
    std::string dir;
  };
  std::vector<Combination> combinations;
  for (std::size_t i = 0; i < config.gecm_sets.size(); ++i) {
    for (const auto& getm : config.getms) {
      Combination c{i + 1, {}, "set" + std::to_string(i + 1) + "-" + getm.stem().string()};
      c.build.geim = config.geim;
      c.build.gecms = config.gecm_sets[i];
      c.build.getm = getm;
      c.build.gemm = config.gemm;
      c.build.germ = config.germ;
      c.build.out = config.out / c.dir;
      c.build.strict = config.strict;
      require_build_inputs(c.build);
      combinations.push_back(std::move(c));
    }
  }

  std::vector<std::future<RunResult>> futures;
  for (const auto& c : combinations) {
    futures.push_back(std::async(std::launch::async, [&c] { return run_build(c.build); }));
  }

  RunResult result;
  Json report = header("matrix");
  Json rows = Json::array();
  std::size_t failed = 0;
  for (std::size_t k = 0; k < combinations.size(); ++k) {
    const auto& c = combinations[k];
    RunResult row = futures[k].get();
    Json patterns = Json::array();
    for (const auto& spec : c.build.gecms) patterns.push_back(spec_label(spec));
    Json entry{{"set", c.set},
               {"patterns", std::move(patterns)},
               {"platform", c.build.getm.generic_string()},
               {"dir", c.dir},
               {"exit_code", row.exit_code},
               {"outcome", row.report["outcome"]}};
    for (const auto& stage : row.report["stages"]) {
      if (stage["stage"] == "gesm") entry["gesm_fingerprint"] = stage["fingerprint"];
    }
    rows.push_back(std::move(entry));
    if (row.exit_code != kOk) {
      if (failed++ == 0) result.exit_code = row.exit_code;
    }
  }
  report["combinations"] = std::move(rows);
  report["outcome"] = failed == 0 ? Json{{"status", "ok"}}
                                  : Json{{"status", "failed"}, {"failed_combinations", failed}};
  report["exit_code"] = result.exit_code;
  write_file(config.out / "matrix.json", dump_report(report));
  result.summary = std::to_string(combinations.size() - failed) + "/" +
                   std::to_string(combinations.size()) + " combinations succeeded";
  result.report = std::move(report);
  return result;
}

}  // namespace weave::cli
