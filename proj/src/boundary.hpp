#pragma once

#include <functional>

#include "sweep.hpp"

namespace kvis {

// Runs the chosen window algorithm into a sink. The boundary walker
// re-invokes it once per reported endpoint because the sink is write-only.
using WindowsRunner = std::function<void(WindowSink&)>;

// Reconstructs the region boundary as an ordered piece stream: walks each
// boundary component, splitting at window endpoints found via filtered
// re-runs of the window algorithm, emitting the k-visible arcs and every
// chord (at its near endpoint). Windowless components are classified
// whole by a single crossing-count test.
void report_boundary(const SceneView& view, const WindowsRunner& runner,
                     WorkspaceMeter& meter, BoundarySink& sink);

}  // namespace kvis
