#include "visibility.hpp"

#include "errors.hpp"

namespace kvis {

namespace {

VertexClass classify3(const Point& q, const Point& prev, const Point& cur, const Point& next,
                      std::size_t v) {
  const int s_prev = orient(q, cur, prev);
  const int s_next = orient(q, cur, next);
  if (s_prev == 0 || s_next == 0)
    throw DegeneracyError("neighbour of vertex " + std::to_string(v) +
                          " is collinear with q and the vertex");
  if (s_prev < 0 && s_next < 0) return VertexClass::EndCritical;
  if (s_prev > 0 && s_next > 0) return VertexClass::StartCritical;
  return VertexClass::NonCritical;
}

}  // namespace

void for_each_vertex_classified(
    const SceneView& view,
    const std::function<void(std::size_t, const Point&, VertexClass)>& f) {
  const Scene& s = view.scene();
  const Point& q = s.q;
  for (const Ring& r : s.rings) {
    const Point p0 = view.vertex(r.start);
    const Point p1 = view.vertex(r.start + 1);
    Point prev = p0, cur = p1;
    for (std::size_t i = 2; i < r.len; ++i) {
      const Point next = view.vertex(r.start + i);
      f(r.start + i - 1, cur, classify3(q, prev, cur, next, r.start + i - 1));
      prev = cur;
      cur = next;
    }
    f(r.start + r.len - 1, cur, classify3(q, prev, cur, p0, r.start + r.len - 1));
    f(r.start, p0, classify3(q, cur, p0, p1, r.start));
  }
  const std::size_t rv = s.ring_vertex_count();
  for (std::size_t i = 0; i < s.n_segments; ++i) {
    auto [a, b] = view.segment_record(i);
    const int side = orient(q, *a, *b);
    if (side == 0) throw DegeneracyError("q collinear with segment " + std::to_string(i));
    f(rv + 2 * i, *a, side < 0 ? VertexClass::EndCritical : VertexClass::StartCritical);
    const int side_b = -side;
    f(rv + 2 * i + 1, *b,
      side_b < 0 ? VertexClass::EndCritical : VertexClass::StartCritical);
  }
}

CriticalScan scan_criticals(const SceneView& view) {
  const Point& q = view.q();
  CriticalScan out;
  std::optional<Direction> best;
  for_each_vertex_classified(view, [&](std::size_t v, const Point& p, VertexClass cls) {
    if (!is_critical(cls)) return;
    ++out.count;
    const Direction d = vec(q, p);
    if (!best) {
      best = d;
      out.first = v;
      return;
    }
    const int c = angular_compare(d, *best);
    if (c == 0)
      throw DegeneracyError("critical vertices " + std::to_string(v) + " and " +
                            std::to_string(*out.first) + " share an angle");
    if (c < 0) {
      best = d;
      out.first = v;
    }
  });
  return out;
}

std::optional<std::size_t> next_critical_after(const SceneView& view, const Direction& base,
                                               const Direction& cur) {
  const Point& q = view.q();
  std::optional<std::size_t> pick;
  std::optional<Direction> best;
  for_each_vertex_classified(view, [&](std::size_t v, const Point& p, VertexClass cls) {
    if (!is_critical(cls)) return;
    const Direction d = vec(q, p);
    if (angular_compare_from(base, d, cur) <= 0) return;
    if (!best) {
      best = d;
      pick = v;
      return;
    }
    const int c = angular_compare_from(base, d, *best);
    if (c == 0)
      throw DegeneracyError("critical vertices " + std::to_string(v) + " and " +
                            std::to_string(*pick) + " share an angle");
    if (c < 0) {
      best = d;
      pick = v;
    }
  });
  return pick;
}

namespace {

// Chain representative near rank k+1 for the next ray's incremental step.
std::optional<RankHint> hint_from(const RayContext& ctx, const LocatedRank& lr) {
  if (lr.at && lr.at->kind == CrossingRecord::Kind::Interior)
    return RankHint{lr.at->edge};
  if (auto below = max_interior_below(ctx, Rat(1))) return RankHint{below->edge};
  if (auto above = min_interior_above(ctx, Rat(1))) return RankHint{above->edge};
  return std::nullopt;
}

}  // namespace

void windows_constant(const SceneView& view, WorkspaceMeter& meter, WindowSink& sink) {
  const Scene& s = view.scene();
  if (s.whole_scene_visible()) {
    sink.emit(WindowRecord::whole_scene());
    return;
  }
  ScopedWords state(meter, kConstStateWords, "windows_constant.state");

  const CriticalScan cs = scan_criticals(view);
  if (cs.count == 0) {
    sink.emit(WindowRecord::no_critical());
    return;
  }

  const long k = view.k();
  std::size_t v = *cs.first;
  Direction base{Rat(1), Rat(0)};
  std::optional<RankHint> hint;

  for (std::size_t processed = 0; processed < cs.count; ++processed) {
    const RayContext ctx = make_ray(view, v);
    if (processed == 0) base = ctx.dir;

    const LocatedRank lr = rank_crossing(ctx, k + 1, hint, 1, meter);
    if (lr.m <= k && lr.at) {  // k-visible and the rank-(k+1) crossing exists
      // The vertex double may itself cover rank k+2.
      std::optional<RankedCrossing> near_rc =
          lr.at->rank_hi >= k + 2 ? lr.at : step_up(ctx, *lr.at);
      if (near_rc) {
        if (auto far_rc = step_up(ctx, *near_rc)) emit_window(ctx, *near_rc, *far_rc, sink);
      }
    }

    if (processed + 1 < cs.count) {
      hint = hint_from(ctx, lr);
      auto nxt = next_critical_after(view, base, ctx.dir);
      if (!nxt)
        throw AuditError("ran out of critical vertices after processing " +
                         std::to_string(processed + 1) + " of " + std::to_string(cs.count));
      v = *nxt;
    }
  }
}

std::optional<WindowPair> window_for(const SceneView& view, std::size_t critical_index,
                                     const RankedCrossing& ek1, WorkspaceMeter& meter) {
  ScopedWords guard(meter, 2 * kPointSlotWords + 2 * kRatSlotWords + 8, "window_for.state");
  const RayContext ctx = make_ray(view, critical_index);
  const long k = view.k();
  std::optional<RankedCrossing> near_rc =
      ek1.rank_hi >= k + 2 ? std::optional<RankedCrossing>(ek1) : step_up(ctx, ek1);
  if (!near_rc) return std::nullopt;
  auto far_rc = step_up(ctx, *near_rc);
  if (!far_rc) return std::nullopt;
  RecordingSink<WindowRecord> tmp;
  emit_window(ctx, *near_rc, *far_rc, tmp);
  return WindowPair{*tmp.records()[0].ep, *tmp.records()[1].ep};
}

}  // namespace kvis
