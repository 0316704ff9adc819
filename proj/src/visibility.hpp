#pragma once

#include <functional>
#include <optional>

#include "sweep.hpp"

namespace kvis {

// Declared workspace of the constant-memory algorithm's own state (its
// selection and scan subcalls charge separately; the documented total
// budget lives in runner.hpp).
inline constexpr std::int64_t kConstStateWords = 4 * kDirSlotWords + 2 * kRatSlotWords + 16;

// Rolling classification pass; ring vertices are read once each, segment
// records once. Visits every vertex (order within a ring starts at its
// second vertex and wraps).
void for_each_vertex_classified(
    const SceneView& view,
    const std::function<void(std::size_t, const Point&, VertexClass)>& f);

struct CriticalScan {
  std::size_t count = 0;
  std::optional<std::size_t> first;  // critical vertex of smallest absolute angle
};
CriticalScan scan_criticals(const SceneView& view);

// Critical vertex with the smallest sweep angle strictly after `cur`,
// where sweep angles are measured ccw from `base`.
std::optional<std::size_t> next_critical_after(const SceneView& view, const Direction& base,
                                               const Direction& cur);

// Algorithm: walk critical vertices in angular order, maintain the
// rank-(k+1) crossing incrementally, report every window. O(1) words.
void windows_constant(const SceneView& view, WorkspaceMeter& meter, WindowSink& sink);

// Window of the ray through one k-visible critical vertex, given its
// rank-(k+1) crossing: two more rank steps produce the chord, if both
// bounding crossings exist.
struct WindowPair {
  WindowEndpoint near, far;
};
std::optional<WindowPair> window_for(const SceneView& view, std::size_t critical_index,
                                     const RankedCrossing& ek1, WorkspaceMeter& meter);

}  // namespace kvis
