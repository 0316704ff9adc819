#pragma once

#include <functional>
#include <optional>

#include "memory.hpp"
#include "scene.hpp"
#include "selection.hpp"
#include "windows.hpp"

namespace kvis {

// Declared workspace capacity of one bounded-precision scalar / point.
// The meter charges these slot sizes so peaks are exactly reproducible;
// inputs are required to stay within them.
inline constexpr std::int64_t kRatSlotWords = 4;
inline constexpr std::int64_t kPointSlotWords = 2 * kRatSlotWords;
inline constexpr std::int64_t kDirSlotWords = 2 * kRatSlotWords;

VertexClass classify_vertex(const SceneView& view, std::size_t v);
bool is_critical(VertexClass c);

// Critical-vertex count straight off the scene, uncounted; used for
// reporting, not by the algorithms.
std::size_t scene_critical_count(const Scene& s);

// The ray from q through one scene vertex; the vertex sits at t == 1.
struct RayContext {
  const SceneView* view;
  std::size_t target;
  Direction dir;  // vertex - q
  VertexClass vclass;
  int event_entries;  // crossing entries the vertex contributes: ring 2, segment endpoint 1
  int event_span;     // ranks the vertex occupies on its own ray: critical 2, else 1
  Point vertex_point(const Point& q) const { return Point{q.x + dir.dx, q.y + dir.dy}; }
};

RayContext make_ray(const SceneView& view, std::size_t target_vertex);

// One crossing of the ray with the boundary, streamed in edge order.
struct CrossingRecord {
  enum class Kind { Interior, VertexEvent };
  std::size_t edge;  // interior: the crossing edge; event: target's outgoing/segment edge
  Rat t;
  Kind kind;
  int rank_span;  // 1 for interior; event_span for the vertex event
};

// Streams every crossing of the ray; the target vertex yields exactly one
// VertexEvent record (its two incident endpoint hits merged). Any other
// vertex exactly on the ray violates weak general position and throws.
void crossings_scan(const RayContext& ctx, const std::function<void(const CrossingRecord&)>& f);

struct InteriorCrossing {
  std::size_t edge;
  Rat t;
};

// Single-pass counting/extremum helpers over interior crossings.
struct RayCounts {
  long total = 0;       // all interior crossings
  long below_one = 0;   // t < 1 (strictly before the target vertex)
  long below_ref = 0;   // t < t_ref, when a reference was supplied
};
RayCounts ray_counts(const RayContext& ctx, const Rat* t_ref);

std::optional<InteriorCrossing> min_interior_above(const RayContext& ctx, const Rat& t);
std::optional<InteriorCrossing> max_interior_below(const RayContext& ctx, const Rat& t);

// Observation-style chain walk: from a known edge of a chain, find that
// chain's crossing with the ray, walking across non-critical vertices in
// both directions.
struct ChainFind {
  enum class State { Interior, AtTarget, Miss };
  State state = State::Miss;
  std::size_t edge = 0;
  Rat t;
};
ChainFind chain_find_edge(const SceneView& view, const RayContext& ctx, std::size_t start_edge);

// KeyedScan over the interior crossings of a ray (key: crossing parameter,
// optionally reversed so "smallest" means farthest). Sequential access
// reads each ring vertex once.
class RayInteriorScan {
 public:
  using key_type = Rat;
  RayInteriorScan(const RayContext& ctx, bool reversed) : ctx_(&ctx), reversed_(reversed) {}
  std::size_t size() const { return ctx_->view->num_edges(); }
  std::optional<Rat> key(std::size_t e) const;
  int compare(const Rat& a, const Rat& b) const {
    const int c = cmp(a, b);
    return reversed_ ? -c : c;
  }
  std::int64_t key_slot_words() const { return kRatSlotWords; }

 private:
  const RayContext* ctx_;
  bool reversed_;
  mutable std::optional<std::pair<std::size_t, Point>> cache_;
};

// A crossing located at a specific true rank. Vertex events of critical
// targets span two consecutive ranks.
struct RankedCrossing {
  CrossingRecord::Kind kind;
  std::size_t edge;
  Rat t;
  long rank_lo;
  long rank_hi;
};

struct LocatedRank {
  std::optional<RankedCrossing> at;  // crossing of the requested rank, if it exists
  long m = 0;                        // interior crossings strictly below the vertex
  long interior_total = 0;
};

// Previous ray's rank-(k+1) chain representative, enabling the
// at-most-two-pass incremental step between adjacent critical rays.
struct RankHint {
  std::size_t edge;
};

// Find the crossing of true rank r on the ray. Without a hint this runs
// the read-only k-selection (ceil(r/s) passes); with one it recounts the
// hinted chain's crossing and walks at most a couple of steps.
LocatedRank rank_crossing(const RayContext& ctx, long r, const std::optional<RankHint>& hint,
                          std::size_t s, WorkspaceMeter& meter);

// Next crossing above `from` in true-rank order (steps over the vertex
// event when it lies between).
std::optional<RankedCrossing> step_up(const RayContext& ctx, const RankedCrossing& from);

// Emit both endpoints of the window bounded by the crossings at true ranks
// k+2 (near) and k+3 (far).
void emit_window(const RayContext& ctx, const RankedCrossing& near_rc,
                 const RankedCrossing& far_rc, WindowSink& sink);

// Convention for a window endpoint that coincides with the stabbed vertex.
std::size_t vertex_endpoint_edge(const Scene& s, std::size_t v);

// Crossings of the open segment (q, p) for a point p on the boundary,
// counting critical vertices on the segment as two. Exact; one pass.
long rank_of_boundary_point(const SceneView& view, const Point& p);

}  // namespace kvis
