#include "sweep.hpp"

#include "errors.hpp"

namespace kvis {

namespace {

// Rolling pass over all edges: f(edge_id, a, b). Ring vertices are read
// once each; segment records once each.
template <class F>
void for_each_edge(const SceneView& view, F&& f) {
  const Scene& s = view.scene();
  for (const Ring& r : s.rings) {
    Point first = view.vertex(r.start);
    Point prev = first;
    for (std::size_t i = 1; i < r.len; ++i) {
      const Point& cur = view.vertex(r.start + i);
      f(r.start + i - 1, prev, cur);
      prev = cur;
    }
    f(r.start + r.len - 1, prev, first);
  }
  const std::size_t rv = s.ring_vertex_count();
  for (std::size_t i = 0; i < s.n_segments; ++i) {
    auto [a, b] = view.segment_record(i);
    f(rv + i, *a, *b);
  }
}

VertexClass classify_from_sides(int s_prev, int s_next, std::size_t v) {
  if (s_prev == 0 || s_next == 0)
    throw DegeneracyError("neighbour of vertex " + std::to_string(v) +
                          " is collinear with q and the vertex");
  if (s_prev < 0 && s_next < 0) return VertexClass::EndCritical;
  if (s_prev > 0 && s_next > 0) return VertexClass::StartCritical;
  return VertexClass::NonCritical;
}

}  // namespace

bool is_critical(VertexClass c) { return c != VertexClass::NonCritical; }

VertexClass classify_vertex(const SceneView& view, std::size_t v) {
  const Scene& s = view.scene();
  const Point& q = s.q;
  if (s.is_ring_vertex(v)) {
    const Point cur = view.vertex(v);
    const Point prev = view.vertex(s.ring_prev(v));
    const Point next = view.vertex(s.ring_next(v));
    return classify_from_sides(orient(q, cur, prev), orient(q, cur, next), v);
  }
  auto [a, b] = view.segment_record(s.segment_of_vertex(v));
  const Point& cur = (v - s.ring_vertex_count()) % 2 == 0 ? *a : *b;
  const Point& partner = (v - s.ring_vertex_count()) % 2 == 0 ? *b : *a;
  const int side = orient(q, cur, partner);
  if (side == 0)
    throw DegeneracyError("q collinear with segment " +
                          std::to_string(s.segment_of_vertex(v)));
  // A segment endpoint has one incident edge; it is always critical.
  return side < 0 ? VertexClass::EndCritical : VertexClass::StartCritical;
}

std::size_t scene_critical_count(const Scene& s) {
  SceneView v(s);
  std::size_t c = 0;
  for (std::size_t i = 0; i < s.num_vertices(); ++i)
    if (is_critical(classify_vertex(v, i))) ++c;
  return c;
}

RayContext make_ray(const SceneView& view, std::size_t target_vertex) {
  const Scene& s = view.scene();
  RayContext ctx;
  ctx.view = &view;
  ctx.target = target_vertex;
  const Point p = view.vertex(target_vertex);
  ctx.dir = vec(s.q, p);
  if (ctx.dir.dx == 0 && ctx.dir.dy == 0)
    throw InvalidSceneError("query point coincides with a vertex");
  ctx.vclass = classify_vertex(view, target_vertex);
  ctx.event_entries = s.is_ring_vertex(target_vertex) ? 2 : 1;
  ctx.event_span = is_critical(ctx.vclass) ? 2 : 1;
  return ctx;
}

namespace {

bool edge_incident_to(const Scene& s, std::size_t e, std::size_t v) {
  return s.edge_src(e) == v || s.edge_dst(e) == v;
}

// Interior crossing of one edge with the ray; throws on foreign vertices
// exactly on the ray.
std::optional<Rat> interior_hit(const RayContext& ctx, std::size_t e, const Point& a,
                                const Point& b) {
  const Scene& s = ctx.view->scene();
  if (edge_incident_to(s, e, ctx.target)) return std::nullopt;
  auto hit = ray_segment_intersect(s.q, ctx.dir, a, b);
  if (!hit) return std::nullopt;
  if (hit->kind != RayHit::Kind::Interior)
    throw DegeneracyError("vertex of edge " + std::to_string(e) +
                          " lies exactly on the ray through vertex " +
                          std::to_string(ctx.target));
  return hit->t;
}

}  // namespace

void crossings_scan(const RayContext& ctx,
                    const std::function<void(const CrossingRecord&)>& f) {
  bool event_emitted = false;
  const Scene& s = ctx.view->scene();
  for_each_edge(*ctx.view, [&](std::size_t e, const Point& a, const Point& b) {
    if (edge_incident_to(s, e, ctx.target)) {
      if (!event_emitted) {
        event_emitted = true;
        f(CrossingRecord{vertex_endpoint_edge(s, ctx.target), Rat(1),
                         CrossingRecord::Kind::VertexEvent, ctx.event_span});
      }
      return;
    }
    if (auto t = interior_hit(ctx, e, a, b))
      f(CrossingRecord{e, *t, CrossingRecord::Kind::Interior, 1});
  });
}

RayCounts ray_counts(const RayContext& ctx, const Rat* t_ref) {
  RayCounts out;
  for_each_edge(*ctx.view, [&](std::size_t e, const Point& a, const Point& b) {
    auto t = interior_hit(ctx, e, a, b);
    if (!t) return;
    ++out.total;
    if (*t < 1) ++out.below_one;
    if (t_ref && *t < *t_ref) ++out.below_ref;
  });
  return out;
}

std::optional<InteriorCrossing> min_interior_above(const RayContext& ctx, const Rat& t) {
  std::optional<InteriorCrossing> best;
  for_each_edge(*ctx.view, [&](std::size_t e, const Point& a, const Point& b) {
    auto h = interior_hit(ctx, e, a, b);
    if (!h || *h <= t) return;
    if (!best || *h < best->t) best = InteriorCrossing{e, *h};
  });
  return best;
}

std::optional<InteriorCrossing> max_interior_below(const RayContext& ctx, const Rat& t) {
  std::optional<InteriorCrossing> best;
  for_each_edge(*ctx.view, [&](std::size_t e, const Point& a, const Point& b) {
    auto h = interior_hit(ctx, e, a, b);
    if (!h || *h >= t) return;
    if (!best || *h > best->t) best = InteriorCrossing{e, *h};
  });
  return best;
}

ChainFind chain_find_edge(const SceneView& view, const RayContext& ctx,
                          std::size_t start_edge) {
  const Scene& s = view.scene();

  auto test = [&](std::size_t e, const Point& a, const Point& b) -> std::optional<ChainFind> {
    if (edge_incident_to(s, e, ctx.target))
      return ChainFind{ChainFind::State::AtTarget, e, Rat(1)};
    if (auto t = interior_hit(ctx, e, a, b)) return ChainFind{ChainFind::State::Interior, e, *t};
    return std::nullopt;
  };

  if (!s.is_ring_edge(start_edge)) {
    const std::size_t seg = start_edge - s.ring_vertex_count();
    auto [a, b] = view.segment_record(seg);
    if (auto r = test(start_edge, *a, *b)) return *r;
    return ChainFind{ChainFind::State::Miss, 0, Rat(0)};
  }

  Point a0 = view.vertex(s.edge_src(start_edge));
  Point b0 = view.vertex(s.edge_dst(start_edge));
  if (auto r = test(start_edge, a0, b0)) return *r;

  const std::size_t ring_len = s.rings[s.ring_of(start_edge)].len;

  // Forward across non-critical shared vertices.
  {
    std::size_t e = start_edge;
    Point a = a0, b = b0;
    for (std::size_t steps = 0; steps + 1 < ring_len; ++steps) {
      const std::size_t shared = s.edge_dst(e);
      const std::size_t ne = s.outgoing_edge(shared);
      const Point c = view.vertex(s.edge_dst(ne));
      if (is_critical(classify_from_sides(orient(s.q, b, a), orient(s.q, b, c), shared))) break;
      if (auto r = test(ne, b, c)) return *r;
      e = ne;
      a = b;
      b = c;
    }
  }
  // Backward.
  {
    std::size_t e = start_edge;
    Point a = a0, b = b0;
    for (std::size_t steps = 0; steps + 1 < ring_len; ++steps) {
      const std::size_t shared = s.edge_src(e);
      const std::size_t pe = s.incoming_edge(shared);
      const Point c = view.vertex(s.edge_src(pe));
      if (is_critical(classify_from_sides(orient(s.q, a, c), orient(s.q, a, b), shared))) break;
      if (auto r = test(pe, c, a)) return *r;
      e = pe;
      b = a;
      a = c;
    }
  }
  return ChainFind{ChainFind::State::Miss, 0, Rat(0)};
}

std::optional<Rat> RayInteriorScan::key(std::size_t e) const {
  const Scene& s = ctx_->view->scene();
  if (!s.is_ring_edge(e)) {
    auto [a, b] = ctx_->view->segment_record(e - s.ring_vertex_count());
    return interior_hit(*ctx_, e, *a, *b);
  }
  const std::size_t src = s.edge_src(e);
  const std::size_t dst = s.edge_dst(e);
  Point a;
  if (cache_ && cache_->first == src) {
    a = cache_->second;
  } else {
    a = ctx_->view->vertex(src);
  }
  Point b = ctx_->view->vertex(dst);
  cache_ = {dst, b};
  return interior_hit(*ctx_, e, a, b);
}

namespace {

RankedCrossing event_crossing(const RayContext& ctx, long m) {
  return RankedCrossing{CrossingRecord::Kind::VertexEvent,
                        vertex_endpoint_edge(ctx.view->scene(), ctx.target), Rat(1), m + 1,
                        m + ctx.event_span};
}

RankedCrossing interior_crossing(const InteriorCrossing& c, long rank) {
  return RankedCrossing{CrossingRecord::Kind::Interior, c.edge, c.t, rank, rank};
}

// Rank of an interior crossing given how many interior crossings precede it
// and whether the vertex event precedes it.
long interior_rank(const RayContext& ctx, long interior_below, bool event_below) {
  return interior_below + 1 + (event_below ? ctx.event_span : 0);
}

}  // namespace

std::optional<RankedCrossing> step_up(const RayContext& ctx, const RankedCrossing& from) {
  auto next = min_interior_above(ctx, from.t);
  const bool event_between =
      from.kind == CrossingRecord::Kind::Interior && from.t < 1 && (!next || next->t > 1);
  if (event_between) return event_crossing(ctx, from.rank_hi);  // rank_hi == interior count below 1
  if (!next) return std::nullopt;
  return interior_crossing(*next, from.rank_hi + 1);
}

namespace {

std::optional<RankedCrossing> step_down(const RayContext& ctx, const RankedCrossing& from) {
  auto prev = max_interior_below(ctx, from.t);
  const bool event_between =
      from.kind == CrossingRecord::Kind::Interior && from.t > 1 && (!prev || prev->t < 1);
  if (event_between) {
    // Event ranks end just below `from`.
    const long hi = from.rank_lo - 1;
    return RankedCrossing{CrossingRecord::Kind::VertexEvent,
                          vertex_endpoint_edge(ctx.view->scene(), ctx.target), Rat(1),
                          hi - ctx.event_span + 1, hi};
  }
  if (!prev) return std::nullopt;
  return interior_crossing(*prev, from.rank_lo - 1);
}

// Fresh (selection-based) location of the interior crossing with the given
// 1-based interior index.
std::optional<InteriorCrossing> interior_by_index(const RayContext& ctx, long idx,
                                                  std::size_t s, WorkspaceMeter& meter) {
  if (idx < 1) return std::nullopt;
  RayInteriorScan scan(ctx, false);
  try {
    auto e = kth_smallest(scan, static_cast<std::size_t>(idx), s, meter);
    return InteriorCrossing{e.index, e.key};
  } catch (const NotEnoughElementsError&) {
    return std::nullopt;
  }
}

}  // namespace

LocatedRank rank_crossing(const RayContext& ctx, long r, const std::optional<RankHint>& hint,
                          std::size_t s, WorkspaceMeter& meter) {
  ScopedWords guard(meter, 4 * kRatSlotWords + 16, "rank_crossing.state");
  LocatedRank out;

  if (hint) {
    ChainFind f = chain_find_edge(*ctx.view, ctx, hint->edge);
    if (f.state != ChainFind::State::Miss) {
      std::optional<RankedCrossing> pos;
      if (f.state == ChainFind::State::AtTarget) {
        const RayCounts rc = ray_counts(ctx, nullptr);
        out.m = rc.below_one;
        out.interior_total = rc.total;
        pos = event_crossing(ctx, out.m);
      } else {
        const RayCounts rc = ray_counts(ctx, &f.t);
        out.m = rc.below_one;
        out.interior_total = rc.total;
        pos = interior_crossing({f.edge, f.t},
                                interior_rank(ctx, rc.below_ref, Rat(1) < f.t));
      }
      // The adjacent-ray argument caps this walk at two steps; allow slack
      // and fall through to the fresh path beyond it.
      for (int steps = 0; steps < 6 && pos; ++steps) {
        if (r >= pos->rank_lo && r <= pos->rank_hi) {
          out.at = pos;
          return out;
        }
        pos = (r > pos->rank_hi) ? step_up(ctx, *pos) : step_down(ctx, *pos);
      }
      if (pos && r >= pos->rank_lo && r <= pos->rank_hi) {
        out.at = pos;
        return out;
      }
      if (!pos && r > out.interior_total + ctx.event_span) return out;  // rank beyond the list
    }
  }

  const RayCounts rc = ray_counts(ctx, nullptr);
  out.m = rc.below_one;
  out.interior_total = rc.total;
  const long ev_lo = out.m + 1;
  const long ev_hi = out.m + ctx.event_span;
  if (r >= ev_lo && r <= ev_hi) {
    out.at = event_crossing(ctx, out.m);
    return out;
  }
  const long interior_idx = r <= out.m ? r : r - ctx.event_span;
  if (auto c = interior_by_index(ctx, interior_idx, s, meter))
    out.at = interior_crossing(*c, r);
  return out;
}

std::size_t vertex_endpoint_edge(const Scene& s, std::size_t v) {
  return s.is_ring_vertex(v) ? s.outgoing_edge(v) : s.segment_edge(v);
}

void emit_window(const RayContext& ctx, const RankedCrossing& near_rc,
                 const RankedCrossing& far_rc, WindowSink& sink) {
  const Scene& s = ctx.view->scene();
  const WindowType type =
      ctx.vclass == VertexClass::EndCritical ? WindowType::CCW : WindowType::CW;
  const Direction prim = primitive_direction(ctx.dir);

  auto place = [&](const RankedCrossing& rc) -> std::pair<Point, std::size_t> {
    if (rc.kind == CrossingRecord::Kind::VertexEvent)
      return {ctx.vertex_point(s.q), vertex_endpoint_edge(s, ctx.target)};
    return {point_on_ray(s.q, ctx.dir, rc.t), rc.edge};
  };
  auto [near_pt, near_edge] = place(near_rc);
  auto [far_pt, far_edge] = place(far_rc);

  WindowEndpoint ne{prim, near_edge, type, near_pt, true, ctx.target, far_pt, far_edge};
  WindowEndpoint fe{prim, far_edge, type, far_pt, false, ctx.target, near_pt, near_edge};
  sink.emit(WindowRecord::endpoint(std::move(ne)));
  sink.emit(WindowRecord::endpoint(std::move(fe)));
}

long rank_of_boundary_point(const SceneView& view, const Point& p) {
  const Scene& s = view.scene();
  const Point& q = s.q;
  const Direction d = vec(q, p);
  long count = 0;
  // Classify vertices lazily when the segment passes exactly through one.
  for_each_edge(view, [&](std::size_t e, const Point& a, const Point& b) {
    auto hit = ray_segment_intersect(q, d, a, b);
    if (!hit || hit->t >= 1) return;
    if (hit->kind == RayHit::Kind::Interior) {
      ++count;
      return;
    }
    // Vertex exactly on the open segment: count it once (from a canonical
    // incident edge) with multiplicity 2 if critical.
    const std::size_t v =
        hit->kind == RayHit::Kind::EndpointA ? s.edge_src(e) : s.edge_dst(e);
    if (s.is_ring_vertex(v)) {
      if (e != s.outgoing_edge(v)) return;  // counted at the other incident edge
    }
    count += is_critical(classify_vertex(view, v)) ? 2 : 1;
  });
  return count;
}

}  // namespace kvis
