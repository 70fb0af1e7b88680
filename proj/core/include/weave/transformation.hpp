#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "weave/document.hpp"
#include "weave/model.hpp"
#include "weave/property.hpp"
#include "weave/refinement.hpp"

namespace weave {

/// Parameter name -> textual value (identifier or number).
using Bindings = std::map<std::string, std::string, std::less<>>;

struct CompiledPattern {
  RefinementStep step;
  std::vector<PropertyExpr> ensures;
};

/// Instantiates a QoS pattern against `arch`. Loop generators observe `arch`
/// as it is before any action runs:
///
///   replicas(e, n)          e_1 .. e_n
///   attached_ports(e)       ports of e with at least one attachment
///   attached_provides(e)    ... restricted to provides ports
///   attached_requires(e)    ... restricted to requires ports
///   attached_types(e)       distinct message types of attached ports
///   provides_types(e)       distinct message types of attached provides ports
///   requires_types(e)       distinct message types of attached requires ports
///   types()                 every declared type
CompiledPattern compile_pattern(const QosPattern& pattern, const Bindings& bindings,
                                const ArchitectureModel& arch);

/// Compiles and applies a pattern with the model's declared properties as the
/// preserved set. On success the ensured properties not yet declared are
/// appended and the
/// stage becomes `intermediate`. Compilation errors are thrown; step failures
/// are reported in the outcome.
StepOutcome apply_pattern(const ArchitectureModel& arch, const QosPattern& pattern,
                          const Bindings& bindings);

/// Rewrites become decompose actions, adapters become include actions.
RefinementStep compile_platform(const PlatformModel& platform, const ArchitectureModel& arch);

struct PlatformOutcome {
  StepOutcome step;                           // model is the GESM when step.ok()
  std::vector<PropertyResult> conformance;    // the platform's requires list
  bool conformant() const;
};

/// Produces the GESM: rewrites and adapters applied, the platform's requires
/// appended to the declared properties and evaluated. Throws
/// ModelError(stage) when `arch` is already a GESM.
PlatformOutcome apply_platform(const ArchitectureModel& arch, const PlatformModel& platform);

}  // namespace weave
