#pragma once

#include <map>
#include <optional>
#include <set>

#include "sweep.hpp"

namespace kvis {

// Candidate neighbourhood of the rank-(k+1) crossing: a balanced ordered
// structure over edge ids, ordered by crossing parameter along a moving
// comparison ray, with a cursor tracking the current rank-(k+1) entry.
// With events enabled it also maintains the angle-keyed companion set
// (each edge keyed by the larger angle of its endpoints, cross-linked),
// so non-critical vertices are handled lazily.
class CandidateSet {
 public:
  CandidateSet(const SceneView& view, std::size_t s, bool with_events, WorkspaceMeter& meter);

  struct BuildAnchor {
    Rat t;
    std::optional<std::size_t> interior_edge;
  };

  // Rebuild from scratch around the anchor on the ray through `ref` (an
  // already-processed vertex): up to 2s+2 crossings on each side via the
  // batched selection sweeps. Without an anchor the neighbourhood is the
  // top of the crossing list (the rank-(k+1) crossing does not exist yet).
  void build(const RayContext& ref, const std::optional<BuildAnchor>& anchor, long k);

  // Swap edges whose endpoint angles precede the ray through `ctx.target`
  // (events mode). Each drained endpoint must be non-critical.
  void drain_events_before(const RayContext& ctx);

  // Update for the vertex being processed and re-seat the cursor.
  void apply_vertex(const RayContext& ctx);

  struct Spot {
    bool at_vertex;  // endpoint coincides with the processed vertex
    std::size_t edge;
    Rat t;
  };
  struct WindowQuery {
    bool visible = false;
    std::optional<std::pair<Spot, Spot>> window;  // near, far
  };
  // Visibility of the just-applied critical vertex and its window, straight
  // off the cursor neighbourhood.
  WindowQuery query_window(const RayContext& ctx, long k) const;

  // Cursor crossing on the current ray, as the next rebuild's anchor.
  std::optional<BuildAnchor> cursor_anchor() const;

  // Cumulative cursor displacement since the last build (audited against
  // the 2s+2 candidate margin).
  std::size_t drift() const { return drift_; }
  std::size_t size() const { return order_.size(); }
  long list_total() const { return list_total_; }

  // Exact recomputation check of the stored order on the current ray.
  bool debug_order_valid() const;

 private:
  struct EntryData {
    Point a, b;
    std::size_t ahead_vertex = SIZE_MAX;  // endpoint still ahead of the sweep
  };
  struct RayCmp {
    const CandidateSet* cs;
    bool operator()(std::size_t e1, std::size_t e2) const { return cs->entry_less(e1, e2); }
  };
  struct ThetaCmp {
    const CandidateSet* cs;
    bool operator()(std::size_t e1, std::size_t e2) const { return cs->theta_less(e1, e2); }
  };
  using Order = std::set<std::size_t, RayCmp>;

  bool entry_less(std::size_t e1, std::size_t e2) const;
  bool theta_less(std::size_t e1, std::size_t e2) const;
  Rat cross_param(std::size_t e) const;
  Rat cross_param_for(const EntryData& d) const;

  void insert_entry(std::size_t edge, const Point& a, const Point& b, std::size_t ahead);
  void erase_entry(Order::iterator it);
  Order::iterator guarded_pred(Order::iterator it, const char* what);
  Order::iterator guarded_succ(Order::iterator it, const char* what) const;
  void shift_cursor_down(int steps);  // toward q
  void shift_cursor_up(int steps);
  void maybe_reify_cursor(long k);
  std::size_t ahead_vertex_of(std::size_t edge, const Point& a, const Point& b) const;
  struct RefEvent {
    std::size_t edge;
    Point a, b;
    std::size_t ahead;
  };
  std::vector<RefEvent> ref_events(const RayContext& ref) const;
  Spot spot_of(Order::iterator it, const RayContext& ctx) const;

  const SceneView* view_;
  std::size_t s_;
  bool with_events_;
  WorkspaceMeter* meter_;
  ScopedWords capacity_;

  Point q_;
  Direction cmp_dir_{Rat(1), Rat(0)};  // comparison ray for the order
  Order order_;
  std::map<std::size_t, Order::iterator> by_edge_;
  std::map<std::size_t, EntryData> data_;
  std::set<std::size_t, ThetaCmp> theta_;

  std::optional<Order::iterator> cursor_;
  long list_total_ = 0;
  long k_ = 0;
  bool saturated_below_ = false;
  bool saturated_above_ = false;
  std::size_t drift_ = 0;
};

// Batched window algorithms: all vertices in angular batches of s, or
// critical vertices only with lazy event draining.
void windows_batched_all(const SceneView& view, std::size_t s, WorkspaceMeter& meter,
                         WindowSink& sink);
void windows_batched_critical(const SceneView& view, std::size_t s, WorkspaceMeter& meter,
                              WindowSink& sink);

}  // namespace kvis
