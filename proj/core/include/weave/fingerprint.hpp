#pragma once

#include <string>
#include <string_view>

namespace weave {

/// `sha256:<hex>` of the given bytes.
std::string content_fingerprint(std::string_view bytes);

}  // namespace weave
