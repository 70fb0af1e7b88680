#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "weave/error.hpp"
#include "weave/model.hpp"
#include "weave/property.hpp"

namespace weave {

struct IncludeAction {
  Fragment fragment;  // exactly one component or connector
  bool operator==(const IncludeAction&) const = default;
};

struct ExcludeAction {
  ElementPath target;
  bool operator==(const ExcludeAction&) const = default;
};

struct ExcludeTypeAction {
  std::string type;
  bool operator==(const ExcludeTypeAction&) const = default;
};

struct ReplicateAction {
  ElementPath target;
  long count = 2;
  bool operator==(const ReplicateAction&) const = default;
};

struct UnifyAction {
  ElementPath connection;  // `element::port::connection`
  std::string connector;
  bool operator==(const UnifyAction&) const = default;
};

using PortMap = std::vector<std::pair<std::string, ElementPath>>;

struct DecomposeAction {
  ElementPath target;
  Fragment sub;
  PortMap port_map;  // parent port/role -> path local to `sub`
  // When false the fragment names are used verbatim (platform rewrites name
  // their replacements explicitly through `$name`).
  bool prefix_names = true;
  bool operator==(const DecomposeAction&) const = default;
};

using RefinementAction = std::variant<IncludeAction, ExcludeAction, ExcludeTypeAction,
                                      ReplicateAction, UnifyAction, DecomposeAction>;

std::string_view action_name(const RefinementAction& action);
std::vector<std::pair<std::string, std::string>> action_arguments(const RefinementAction& action);
std::string describe(const RefinementAction& action);

// Primitive actions. Each takes an immutable model and returns a new one, or
// throws ModelError leaving the input untouched.
ArchitectureModel apply_exclude_type(const ArchitectureModel& arch, std::string_view type);
ArchitectureModel apply_include(const ArchitectureModel& arch, const Fragment& fragment);
ArchitectureModel apply_replicate(const ArchitectureModel& arch, const ElementPath& target,
                                  long count);
ArchitectureModel apply_unify(const ArchitectureModel& arch, const ElementPath& connection,
                              std::string_view connector);
ArchitectureModel apply_decompose(const ArchitectureModel& arch, const ElementPath& target,
                                  const Fragment& sub, const PortMap& port_map,
                                  bool prefix_names = true);
ArchitectureModel apply_exclude(const ArchitectureModel& arch, const ElementPath& target);
ArchitectureModel apply_action(const ArchitectureModel& arch, const RefinementAction& action);

struct StepOrigin {
  enum class Kind { user, qos_pattern, platform };
  Kind kind = Kind::user;
  std::string name;

  std::string str() const;
  bool operator==(const StepOrigin&) const = default;
};

struct RefinementStep {
  std::vector<RefinementAction> actions;
  StepOrigin origin;
};

enum class CheckStatus { passed, failed, skipped };
std::string_view to_string(CheckStatus status);

struct CheckResult {
  CheckStatus status = CheckStatus::skipped;
  std::string detail;
};

struct TraceEntry {
  std::size_t index = 0;  // 1-based position in the step
  std::string action;
  std::vector<std::pair<std::string, std::string>> arguments;
  CheckResult pre;
  CheckResult post;
  CheckResult preserved;
  std::string fingerprint;  // of the canonical model after the action; empty on failure
};

class StepRunner;

/// Audit log of one step. Only the engine appends entries.
class RefinementTrace {
 public:
  RefinementTrace() = default;
  explicit RefinementTrace(StepOrigin origin) : origin_(std::move(origin)) {}

  const StepOrigin& origin() const { return origin_; }
  const std::vector<TraceEntry>& entries() const { return entries_; }

 private:
  friend class StepRunner;
  StepOrigin origin_;
  std::vector<TraceEntry> entries_;
};

struct StepFailure {
  std::size_t action_index = 0;  // 1-based; 0 when the step was rejected before any action
  ErrorKind kind = ErrorKind::precondition;
  std::string message;
  std::vector<PropertyResult> violated;
};

struct StepOutcome {
  ArchitectureModel model;  // the input, unchanged, when failure is set
  RefinementTrace trace;
  std::optional<StepFailure> failure;

  bool ok() const { return !failure.has_value(); }
};

/// Applies the actions in order. After each action the model must pass
/// validate_structure and every property in `preserved` must hold; otherwise
/// the whole step is rejected and the input model is returned.
StepOutcome apply_step(const ArchitectureModel& arch, const RefinementStep& step,
                       std::span<const PropertyExpr> preserved);

}  // namespace weave
