#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "weave/transformation.hpp"

namespace weave::cli {

namespace fs = std::filesystem;

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 1,       // parse, validation or generation failure
  kPropertyViolation = 2,  // GEIM declared property fails
  kRefinementFailure = 3,  // pattern/platform step, preservation or ensures failure
  kConformanceFailure = 4, // platform requires list fails
  kUsage = 64,
};

/// Bad invocation: missing input file, malformed pattern spec. No report is
/// written for these.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PatternSpec {
  fs::path path;
  Bindings bindings;
};

/// `FILE[:k=v,k=v]`. The binding suffix starts at the last `:` followed by
/// text containing `=`.
PatternSpec parse_pattern_spec(std::string_view text);

struct BuildConfig {
  fs::path geim;
  std::vector<PatternSpec> gecms;  // applied in order
  fs::path getm;
  fs::path gemm;
  std::optional<fs::path> germ;
  fs::path out;
  std::optional<fs::path> report;  // defaults to <out>/report.json
  bool strict = false;
};

struct MatrixConfig {
  fs::path geim;
  std::vector<std::vector<PatternSpec>> gecm_sets;
  std::vector<fs::path> getms;
  fs::path gemm;
  std::optional<fs::path> germ;
  fs::path out;
  bool strict = false;
};

struct RunResult {
  int exit_code = kOk;
  nlohmann::ordered_json report;
  std::string summary;  // one human-readable line
};

/// Parse, validate and evaluate the declared properties of one model file.
/// Non-architecture documents are parsed and validated only.
RunResult run_check(const fs::path& model);

/// Full pipeline. The report is written even on failure.
RunResult run_build(const BuildConfig& config);

/// One build per (gecm set x platform) in `<out>/set<i>-<platform stem>`,
/// summarised in `<out>/matrix.json`.
RunResult run_matrix(const MatrixConfig& config);

/// Pretty JSON with a trailing newline.
std::string dump_report(const nlohmann::ordered_json& report);

}  // namespace weave::cli
