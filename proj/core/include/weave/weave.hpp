#pragma once

#include "weave/adl.hpp"
#include "weave/codegen.hpp"
#include "weave/document.hpp"
#include "weave/error.hpp"
#include "weave/fingerprint.hpp"
#include "weave/model.hpp"
#include "weave/property.hpp"
#include "weave/refinement.hpp"
#include "weave/transformation.hpp"
