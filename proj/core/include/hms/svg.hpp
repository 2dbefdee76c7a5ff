#pragma once

#include "hms/tropical.hpp"

#include <string>

namespace hms {

/// Deterministic two-panel drawing: the subdivided point configuration on the
/// left, the dual tropical curve with edge labels on the right. Byte-stable
/// for a fixed model.
std::string render_svg(const TropicalModel& m);

void emit_svg(const TropicalModel& m, const std::string& path);

}  // namespace hms
