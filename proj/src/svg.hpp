#pragma once

#include <string>

#include "runner.hpp"

namespace kvis {

// SVG 1.1 document: input boundary thin, reported region boundary thick,
// window chords dashed, q as a dot.
std::string render_svg(const Scene& scene, const RunResult& result);

}  // namespace kvis
