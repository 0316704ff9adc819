#include "boundary.hpp"

#include "errors.hpp"

namespace kvis {

namespace {

constexpr std::int64_t kBoundaryStateWords = 6 * kPointSlotWords + 4 * kRatSlotWords + 24;

std::size_t comp_of_edge(const Scene& s, std::size_t e) {
  if (s.is_ring_edge(e)) return s.ring_of(e);
  return s.rings.size() + (e - s.ring_vertex_count());
}

struct EndpointPos {
  std::size_t edge;
  Rat u;
};

int cmp_pos(const EndpointPos& a, const EndpointPos& b) {
  if (a.edge != b.edge) return a.edge < b.edge ? -1 : 1;
  return cmp(a.u, b.u);
}

// Keeps the first endpoint of one component in boundary order, and the
// first strictly after a given position; O(1) state per re-run.
class CompFilter : public WindowSink {
 public:
  CompFilter(const SceneView& view, std::size_t comp, std::optional<EndpointPos> after)
      : view_(&view), comp_(comp), after_(std::move(after)) {}

  std::size_t count = 0;
  std::optional<std::pair<EndpointPos, WindowEndpoint>> first_overall;
  std::optional<std::pair<EndpointPos, WindowEndpoint>> first_after;

 protected:
  void accept(WindowRecord r) override {
    if (r.kind != WindowRecord::Kind::Endpoint) return;
    const WindowEndpoint& ep = *r.ep;
    const Scene& s = view_->scene();
    if (comp_of_edge(s, ep.edge) != comp_) return;
    ++count;
    Point a, b;
    if (s.is_ring_edge(ep.edge)) {
      a = view_->vertex(s.edge_src(ep.edge));
      b = view_->vertex(s.edge_dst(ep.edge));
    } else {
      auto [pa, pb] = view_->segment_record(ep.edge - s.ring_vertex_count());
      a = *pa;
      b = *pb;
    }
    const EndpointPos pos{ep.edge, param_on_segment(a, b, ep.at)};
    if (!first_overall || cmp_pos(pos, first_overall->first) < 0) first_overall = {pos, ep};
    if (after_ && cmp_pos(pos, *after_) > 0)
      if (!first_after || cmp_pos(pos, first_after->first) < 0) first_after = {pos, ep};
  }

 private:
  const SceneView* view_;
  std::size_t comp_;
  std::optional<EndpointPos> after_;
};

Point midpoint(const Point& a, const Point& b) {
  return Point{(a.x + b.x) / 2, (a.y + b.y) / 2};
}

void emit_chord(const WindowEndpoint& ep, BoundarySink& sink) {
  sink.emit(BoundaryRecord{BoundaryRecord::Kind::Chord, ep.edge, ep.at, ep.mate, ep.type});
}

// Arc pieces along a ring from (e1, p1) forward to (e2, p2); `wrap` walks
// the long way round when the positions coincide or run backward.
void emit_ring_arc(const SceneView& view, std::size_t ring_idx, std::size_t e1,
                   const Point& p1, std::size_t e2, const Point& p2, BoundarySink& sink) {
  const Scene& s = view.scene();
  if (e1 == e2) {
    const Point a = view.vertex(s.edge_src(e1));
    const Point b = view.vertex(s.edge_dst(e1));
    const Rat u1 = param_on_segment(a, b, p1);
    const Rat u2 = param_on_segment(a, b, p2);
    if (u1 < u2) {
      sink.emit(BoundaryRecord{BoundaryRecord::Kind::Arc, e1, p1, p2, WindowType::CCW});
      return;
    }
  }
  const Ring& r = s.rings[ring_idx];
  std::size_t e = e1;
  Point from = p1;
  for (std::size_t guard = 0; guard <= r.len; ++guard) {
    const Point dst = view.vertex(s.edge_dst(e));
    if (e == e2 && guard > 0) break;  // reached the target edge boundary
    if (!(from == dst))
      sink.emit(BoundaryRecord{BoundaryRecord::Kind::Arc, e, from, dst, WindowType::CCW});
    e = s.ring_next(e);
    from = dst;
    if (e == e2) break;
  }
  if (!(from == p2))
    sink.emit(BoundaryRecord{BoundaryRecord::Kind::Arc, e2, from, p2, WindowType::CCW});
}

void walk_ring(const SceneView& view, const WindowsRunner& runner, std::size_t comp,
               std::size_t ring_idx, long k, BoundarySink& sink) {
  const Scene& s = view.scene();
  const Ring& r = s.rings[ring_idx];

  CompFilter head(view, comp, std::nullopt);
  runner(head);
  if (head.count == 0) {
    // Uniformly visible or invisible; decide at one vertex.
    const Point probe = view.vertex(r.start);
    if (rank_of_boundary_point(view, probe) > k) return;
    for (std::size_t i = 0; i < r.len; ++i) {
      const std::size_t e = r.start + i;
      sink.emit(BoundaryRecord{BoundaryRecord::Kind::Arc, e, view.vertex(s.edge_src(e)),
                               view.vertex(s.edge_dst(e)), WindowType::CCW});
    }
    return;
  }

  std::pair<EndpointPos, WindowEndpoint> cur = *head.first_overall;
  for (std::size_t step = 0; step < head.count; ++step) {
    if (cur.second.near) emit_chord(cur.second, sink);
    CompFilter f(view, comp, cur.first);
    runner(f);
    const auto next = f.first_after ? *f.first_after : *f.first_overall;
    // Arc from cur to next (cyclically); sample its first stretch.
    Point first_end;
    if (cur.first.edge == next.first.edge && cur.first.u < next.first.u) {
      first_end = next.second.at;
    } else {
      first_end = view.vertex(s.edge_dst(cur.first.edge));
    }
    if (rank_of_boundary_point(view, midpoint(cur.second.at, first_end)) <= k)
      emit_ring_arc(view, ring_idx, cur.first.edge, cur.second.at, next.first.edge,
                    next.second.at, sink);
    cur = next;
  }
}

void walk_segment(const SceneView& view, const WindowsRunner& runner, std::size_t comp,
                  std::size_t seg, long k, BoundarySink& sink) {
  const Scene& s = view.scene();
  auto [pa, pb] = view.segment_record(seg);
  const Point a = *pa;
  const Point b = *pb;
  const std::size_t edge = s.ring_vertex_count() + seg;

  CompFilter head(view, comp, std::nullopt);
  runner(head);
  if (head.count == 0) {
    if (rank_of_boundary_point(view, a) <= k)
      sink.emit(BoundaryRecord{BoundaryRecord::Kind::Arc, edge, a, b, WindowType::CCW});
    return;
  }

  std::pair<EndpointPos, WindowEndpoint> cur = *head.first_overall;
  if (rank_of_boundary_point(view, midpoint(a, cur.second.at)) <= k)
    sink.emit(
        BoundaryRecord{BoundaryRecord::Kind::Arc, edge, a, cur.second.at, WindowType::CCW});
  for (std::size_t step = 0; step < head.count; ++step) {
    if (cur.second.near) emit_chord(cur.second, sink);
    Point piece_end = b;
    std::optional<std::pair<EndpointPos, WindowEndpoint>> next;
    if (step + 1 < head.count) {
      CompFilter f(view, comp, cur.first);
      runner(f);
      if (!f.first_after) throw AuditError("segment endpoint enumeration came up short");
      next = *f.first_after;
      piece_end = next->second.at;
    }
    if (rank_of_boundary_point(view, midpoint(cur.second.at, piece_end)) <= k)
      sink.emit(BoundaryRecord{BoundaryRecord::Kind::Arc, edge, cur.second.at, piece_end,
                               WindowType::CCW});
    if (!next) break;
    cur = *next;
  }
}

}  // namespace

void report_boundary(const SceneView& view, const WindowsRunner& runner,
                     WorkspaceMeter& meter, BoundarySink& sink) {
  const Scene& s = view.scene();
  if (s.whole_scene_visible()) {
    sink.emit(BoundaryRecord{BoundaryRecord::Kind::WholeSceneVisible, 0, Point{}, Point{},
                             WindowType::CCW});
    return;
  }
  ScopedWords guard(meter, kBoundaryStateWords, "report_boundary.state");
  const long k = view.k();
  for (std::size_t ri = 0; ri < s.rings.size(); ++ri)
    walk_ring(view, runner, ri, ri, k, sink);
  for (std::size_t seg = 0; seg < s.n_segments; ++seg)
    walk_segment(view, runner, s.rings.size() + seg, seg, k, sink);
}

}  // namespace kvis
