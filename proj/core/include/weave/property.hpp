#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weave/model.hpp"

namespace weave {

struct PropertyResult {
  PropertyExpr property;
  bool holds = false;
  std::vector<ElementPath> witnesses;
  std::string detail;
  std::optional<std::string> error;  // set when the property could not be evaluated

  bool operator==(const PropertyResult&) const = default;
};

/// Evaluates one structural property. Throws ModelError(unresolved) when a
/// path inside `connected(...)` does not resolve.
///
/// Witnesses: violating ports (allPortsConnected), ports/roles with an
/// undeclared type (typeClosed), matching elements (exists, replication), the
/// two endpoints of a failed connected(...). A failing exists/replication with
/// no match cites the pattern itself.
PropertyResult evaluate(const ArchitectureModel& arch, const PropertyExpr& property);

/// Element-wise evaluate in input order; errors are recorded per result
/// instead of aborting.
std::vector<PropertyResult> evaluate_all(const ArchitectureModel& arch,
                                         std::span<const PropertyExpr> properties);

struct PreservationReport {
  std::vector<PropertyResult> results;
  bool preserved = true;
};

/// Evaluates every property declared on `parent` against `child`.
PreservationReport check_preservation(const ArchitectureModel& parent,
                                      const ArchitectureModel& child);

/// `*` is the only wildcard.
bool glob_match(std::string_view glob, std::string_view text);

/// True for `base` itself and for `base_<digits>` replica names.
bool is_replica_name(std::string_view name, std::string_view base);

std::string replica_name(std::string_view base, long index);

}  // namespace weave
