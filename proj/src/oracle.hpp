#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scene.hpp"
#include "windows.hpp"

namespace kvis {

// Full-memory reference implementation used for differential testing. It
// shares only the exact geometric primitives with the algorithms under
// test; every sweep, rank and window here is derived independently by
// materializing and sorting complete crossing lists.

// All crossings of the ray from q through one vertex, exactly sorted.
struct SortedCrossings {
  struct Hit {
    std::size_t edge;
    Rat t;
  };
  std::vector<Hit> interior;  // ascending t; the target vertex itself is separate
  long below_vertex = 0;      // hits with t < 1
};
SortedCrossings oracle_crossings(const Scene& s, std::size_t target_vertex);

// Window endpoints for the whole scene, in angular order starting at the
// minimum-angle critical vertex (plus the marker records the algorithms
// emit for the trivial cases).
std::vector<WindowRecord> oracle_windows(const Scene& s);

enum class PointClass { Visible, NotVisible, Degenerate };

// k-visibility of an arbitrary point by counting proper crossings of the
// open segment pq; Degenerate when the segment grazes a vertex or p/q lies
// on the boundary (samplers resample).
PointClass classify_point(const Scene& s, const Point& p);

// k-visibility of a boundary point p (on edge `on_edge`): crossings
// strictly between q and p, critical vertices counted twice.
bool boundary_point_visible(const Scene& s, const Point& p);

// Oracle-side vertex classification (independent of the sweep module).
VertexClass oracle_classify(const Scene& s, std::size_t v);

}  // namespace kvis
