#pragma once

#include <cstdint>
#include <optional>

#include "geom.hpp"
#include "memory.hpp"

namespace kvis {

enum class WindowType { CCW, CW };

// One endpoint of a window chord: the triple (theta, j, type) realized as
// (direction to the stabbed critical vertex, edge index, type) plus the
// exact endpoint position. The mate fields describe the other endpoint of
// the same chord; they ride along so boundary reconstruction can draw the
// chord without re-deriving it.
struct WindowEndpoint {
  Direction dir;  // primitive integer direction of the stabbing ray
  std::size_t edge = 0;
  WindowType type = WindowType::CCW;
  Point at;
  bool near = true;  // near endpoint lies closer to q than its mate
  std::size_t source_vertex = 0;
  Point mate;
  std::size_t mate_edge = 0;

  // Identity as an element of W_k: (theta, j, type, position, side).
  bool same_endpoint(const WindowEndpoint& o) const {
    return edge == o.edge && type == o.type && near == o.near && at == o.at &&
           dir.dx == o.dir.dx && dir.dy == o.dir.dy;
  }
};

struct WindowRecord {
  enum class Kind { Endpoint, WholeSceneVisible, NoCriticalVertices };
  Kind kind = Kind::Endpoint;
  std::optional<WindowEndpoint> ep;

  static WindowRecord endpoint(WindowEndpoint e) {
    return WindowRecord{Kind::Endpoint, std::move(e)};
  }
  static WindowRecord whole_scene() {
    return WindowRecord{Kind::WholeSceneVisible, std::nullopt};
  }
  static WindowRecord no_critical() {
    return WindowRecord{Kind::NoCriticalVertices, std::nullopt};
  }
};

// One piece of the reported region boundary: either a maximal-per-edge arc
// of the input boundary (ccw along its ring / along its segment) or a
// window chord crossing the interior.
struct BoundaryRecord {
  enum class Kind { Arc, Chord, WholeSceneVisible };
  Kind kind = Kind::Arc;
  std::size_t edge = 0;  // carrying edge for arcs; near edge for chords
  Point from, to;
  WindowType type = WindowType::CCW;  // chords only
};

using WindowSink = Sink<WindowRecord>;
using BoundarySink = Sink<BoundaryRecord>;

}  // namespace kvis
