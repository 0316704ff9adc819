#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "geom.hpp"
#include "memory.hpp"

namespace kvis {

enum class SceneKind { Polygon, Holes, Segments };

// Contiguous run of vertex ids forming a closed ring (edges wrap).
struct Ring {
  std::size_t start;
  std::size_t len;
};

// Immutable problem instance. Vertex layout:
//   Polygon/Holes: all ring vertices, outer ring first.
//   Segments: the four bounding-box corners (one ring), then two endpoint
//   vertices per input segment.
// Input records (the unit the read counter counts):
//   Polygon/Holes: one record per vertex.
//   Segments: one record per segment (both endpoints), then one record per
//   box corner.
struct Scene {
  SceneKind kind = SceneKind::Polygon;
  std::vector<Point> pts;
  std::vector<Ring> rings;
  std::size_t n_segments = 0;
  std::optional<std::array<Rat, 4>> box;  // x0 y0 x1 y1
  Point q{Rat(0), Rat(0)};
  long k_input = 0;

  std::size_t num_vertices() const { return pts.size(); }
  std::size_t ring_vertex_count() const;
  std::size_t num_edges() const { return ring_vertex_count() + n_segments; }
  std::size_t num_records() const {
    return kind == SceneKind::Segments ? n_segments + 4 : pts.size();
  }

  // Effective k: odd values round down; even k computes the same region.
  long k() const { return k_input % 2 != 0 ? k_input - 1 : k_input; }
  bool whole_scene_visible() const {
    return k() >= static_cast<long>(num_vertices());
  }

  bool operator==(const Scene& o) const;

  // --- structural index arithmetic (no data reads) ---
  bool is_ring_vertex(std::size_t v) const { return v < ring_vertex_count(); }
  std::size_t ring_of(std::size_t v) const;
  std::size_t ring_next(std::size_t v) const;
  std::size_t ring_prev(std::size_t v) const;
  // Edge ids: ring edges first (edge id = source vertex id), then one edge
  // per segment.
  bool is_ring_edge(std::size_t e) const { return e < ring_vertex_count(); }
  std::size_t edge_src(std::size_t e) const;
  std::size_t edge_dst(std::size_t e) const;
  // Edges incident to a vertex: ring vertices have two, segment endpoints one.
  std::size_t incoming_edge(std::size_t v) const;  // ring vertices only
  std::size_t outgoing_edge(std::size_t v) const;  // ring vertices only
  std::size_t segment_edge(std::size_t v) const;   // segment endpoints only
  std::size_t vertex_degree(std::size_t v) const { return is_ring_vertex(v) ? 2 : 1; }
  std::size_t segment_of_vertex(std::size_t v) const;
  std::size_t partner_vertex(std::size_t v) const;  // other endpoint of the segment
};

// Per-query counted access to a scene. Coordinates go through the read
// counter; index arithmetic does not.
class SceneView {
 public:
  explicit SceneView(const Scene& s) : scene_(&s) {}

  const Scene& scene() const { return *scene_; }
  std::size_t num_vertices() const { return scene_->num_vertices(); }
  std::size_t num_edges() const { return scene_->num_edges(); }
  std::size_t num_records() const { return scene_->num_records(); }
  const Point& q() const { return scene_->q; }
  long k() const { return scene_->k(); }

  std::uint64_t reads() const { return reads_; }
  void reset_reads() { reads_ = 0; }

  // One counted record read; returns the vertex coordinates.
  const Point& vertex(std::size_t v) const {
    ++reads_;
    return scene_->pts[v];
  }
  // Both endpoints of a segment-kind vertex's record in one read.
  std::pair<const Point*, const Point*> segment_record(std::size_t seg) const {
    ++reads_;
    const std::size_t base = scene_->ring_vertex_count() + 2 * seg;
    return {&scene_->pts[base], &scene_->pts[base + 1]};
  }

 private:
  const Scene* scene_;
  mutable std::uint64_t reads_ = 0;
};

enum class VertexClass { StartCritical, EndCritical, NonCritical };

enum class ValidationLevel { Fast, Exhaustive };

// Structural and geometric validation: ring sizes and orientation, q
// strictly interior (and outside holes / off segments), boundary
// simplicity, weak general position. Fast mode samples the quadratic
// pair tests deterministically; Exhaustive checks every pair.
// Throws InvalidSceneError or DegeneracyError.
void validate_scene(const Scene& s, ValidationLevel level);

}  // namespace kvis
