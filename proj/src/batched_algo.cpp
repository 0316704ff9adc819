#include <algorithm>

#include "batched.hpp"
#include "errors.hpp"
#include "visibility.hpp"

namespace kvis {

namespace {

constexpr std::int64_t kCandEntryWords = 24;  // edge id + cached endpoints + links
constexpr std::int64_t kThetaEntryWords = 2;

std::int64_t candidate_capacity_words(std::size_t s) {
  const std::int64_t entries = 6 * static_cast<std::int64_t>(s) + 8;
  return entries * (kCandEntryWords + kThetaEntryWords) + 32;
}

}  // namespace

CandidateSet::CandidateSet(const SceneView& view, std::size_t s, bool with_events,
                           WorkspaceMeter& meter)
    : view_(&view),
      s_(s),
      with_events_(with_events),
      meter_(&meter),
      capacity_(meter, candidate_capacity_words(s), "candidate_set.capacity"),
      q_(view.q()),
      order_(RayCmp{this}),
      theta_(ThetaCmp{this}) {}

Rat CandidateSet::cross_param_for(const EntryData& d) const {
  const Direction ab = vec(d.a, d.b);
  const Rat denom = cmp_dir_.dx * ab.dy - cmp_dir_.dy * ab.dx;
  if (sgn(denom) == 0)
    throw DegeneracyError("candidate edge parallel to the comparison ray");
  const Direction qa = vec(q_, d.a);
  return (qa.dx * ab.dy - qa.dy * ab.dx) / denom;
}

Rat CandidateSet::cross_param(std::size_t e) const {
  return cross_param_for(data_.at(e));
}

bool CandidateSet::entry_less(std::size_t e1, std::size_t e2) const {
  if (e1 == e2) return false;
  const EntryData& d1 = data_.at(e1);
  const EntryData& d2 = data_.at(e2);
  const Rat t1 = cross_param_for(d1);
  const Rat t2 = cross_param_for(d2);
  if (t1 != t2) return t1 < t2;

  // Shared-vertex tie: both edges pass through the same point P on the
  // ray. The order is their crossing order on the nearby rays where both
  // cross: determined by the side the pair lies on.
  const Point p = point_on_ray(q_, cmp_dir_, t1);
  auto other = [&](const EntryData& d) -> const Point& {
    if (d.a == p) return d.b;
    if (d.b == p) return d.a;
    throw AuditError("tied crossing parameters without a shared vertex");
  };
  const Point& o1 = other(d1);
  const Point& o2 = other(d2);
  const int s1 = orient(q_, p, o1);
  const int s2 = orient(q_, p, o2);
  const int turn = orient(p, o1, o2);
  if (turn == 0) throw DegeneracyError("incident edges are collinear at a shared vertex");
  if (s1 > 0 && s2 > 0) return turn < 0;  // start pair: order just after the event
  if (s1 < 0 && s2 < 0) return turn > 0;  // end pair: order just before the event
  throw AuditError("tied crossings straddle the ray");
}

bool CandidateSet::theta_less(std::size_t e1, std::size_t e2) const {
  if (e1 == e2) return false;
  const Scene& sc = view_->scene();
  const EntryData& d1 = data_.at(e1);
  const EntryData& d2 = data_.at(e2);
  const Point& p1 = sc.edge_src(e1) == d1.ahead_vertex ? d1.a : d1.b;
  const Point& p2 = sc.edge_src(e2) == d2.ahead_vertex ? d2.a : d2.b;
  const int c = sign_cross(vec(q_, p1), vec(q_, p2));
  if (c != 0) return c > 0;  // earlier in ccw order within the common half-circle
  if (d1.ahead_vertex != d2.ahead_vertex)
    throw DegeneracyError("distinct vertices share an angle from q");
  return e1 < e2;
}

std::size_t CandidateSet::ahead_vertex_of(std::size_t edge, const Point& a,
                                          const Point& b) const {
  const Scene& sc = view_->scene();
  const int side_a = sign_cross(cmp_dir_, vec(q_, a));
  const int side_b = sign_cross(cmp_dir_, vec(q_, b));
  if (side_a > 0 && side_b <= 0) return sc.edge_src(edge);
  if (side_b > 0 && side_a <= 0) return sc.edge_dst(edge);
  throw AuditError("candidate edge has no unique endpoint ahead of the sweep");
}

void CandidateSet::insert_entry(std::size_t edge, const Point& a, const Point& b,
                                std::size_t ahead) {
  if (data_.size() >= static_cast<std::size_t>(6 * s_ + 8))
    throw AuditError("candidate set exceeded its declared capacity");
  data_[edge] = EntryData{a, b, ahead};
  auto [it, ok] = order_.insert(edge);
  if (!ok) throw AuditError("duplicate candidate edge " + std::to_string(edge));
  by_edge_[edge] = it;
  if (with_events_) theta_.insert(edge);
}

void CandidateSet::erase_entry(Order::iterator it) {
  const std::size_t edge = *it;
  if (with_events_) theta_.erase(edge);
  by_edge_.erase(edge);
  order_.erase(it);
  data_.erase(edge);
}

CandidateSet::Order::iterator CandidateSet::guarded_pred(Order::iterator it,
                                                         const char* what) {
  if (it == order_.begin())
    throw AuditError(std::string("cursor drifted below the candidate window: ") + what);
  return std::prev(it);
}

CandidateSet::Order::iterator CandidateSet::guarded_succ(Order::iterator it,
                                                         const char* what) const {
  auto n = std::next(it);
  if (n == order_.end())
    throw AuditError(std::string("cursor drifted above the candidate window: ") + what);
  return n;
}

void CandidateSet::shift_cursor_down(int steps) {
  for (int i = 0; i < steps; ++i) *cursor_ = guarded_pred(*cursor_, "shift down");
  drift_ += steps;
}

void CandidateSet::shift_cursor_up(int steps) {
  for (int i = 0; i < steps; ++i) *cursor_ = guarded_succ(*cursor_, "shift up");
  drift_ += steps;
}

void CandidateSet::maybe_reify_cursor(long k) {
  if (cursor_ || list_total_ < k + 1) return;
  if (saturated_above_)
    throw AuditError("rank k+1 appeared beyond the tracked candidate window");
  if (order_.empty()) throw AuditError("empty candidate set while crossings exist");
  auto it = std::prev(order_.end());  // rank(list max) == list_total_
  for (long r = list_total_; r > k + 1; --r) it = guarded_pred(it, "reify");
  cursor_ = it;
  drift_ += static_cast<std::size_t>(list_total_ - (k + 1));
}

std::vector<CandidateSet::RefEvent> CandidateSet::ref_events(const RayContext& ref) const {
  const Scene& sc = view_->scene();
  const std::size_t v = ref.target;
  const Point v_pt = ref.vertex_point(q_);
  std::vector<RefEvent> out;
  if (!sc.is_ring_vertex(v)) {
    if (ref.vclass == VertexClass::EndCritical) return out;
    auto [a, b] = view_->segment_record(sc.segment_of_vertex(v));
    out.push_back(RefEvent{sc.segment_edge(v), *a, *b, sc.partner_vertex(v)});
    return out;
  }
  const Point p_prev = view_->vertex(sc.ring_prev(v));
  const Point p_next = view_->vertex(sc.ring_next(v));
  switch (ref.vclass) {
    case VertexClass::EndCritical:
      break;
    case VertexClass::StartCritical:
      out.push_back(RefEvent{sc.incoming_edge(v), p_prev, v_pt, sc.ring_prev(v)});
      out.push_back(RefEvent{sc.outgoing_edge(v), v_pt, p_next, sc.ring_next(v)});
      break;
    case VertexClass::NonCritical: {
      // Only the edge still being crossed is on the list.
      if (orient(q_, v_pt, p_prev) > 0)
        out.push_back(RefEvent{sc.incoming_edge(v), p_prev, v_pt, sc.ring_prev(v)});
      else
        out.push_back(RefEvent{sc.outgoing_edge(v), v_pt, p_next, sc.ring_next(v)});
      break;
    }
  }
  return out;
}

void CandidateSet::build(const RayContext& ref, const std::optional<BuildAnchor>& anchor,
                         long k) {
  k_ = k;
  order_.clear();
  by_edge_.clear();
  theta_.clear();
  data_.clear();
  cursor_.reset();
  drift_ = 0;
  cmp_dir_ = ref.dir;
  list_total_ = 0;

  const Rat* t_ref = anchor ? &anchor->t : nullptr;
  const RayCounts rc = ray_counts(ref, t_ref);
  const std::size_t cap = 2 * s_ + 2;

  RayInteriorScan fwd(ref, false);
  RayInteriorScan rev(ref, true);
  using Entry = ScanEntry<Rat>;
  std::optional<Rat> pivot;
  if (anchor) pivot = anchor->t;

  std::vector<Entry> below = s_smallest_above(rev, pivot, cap, *meter_);
  std::reverse(below.begin(), below.end());  // ascending t
  std::vector<Entry> above;
  if (anchor) above = s_smallest_above(fwd, pivot, cap, *meter_);

  const long below_total = anchor ? rc.below_ref : rc.total;
  saturated_below_ =
      below.size() == cap && below_total > static_cast<long>(below.size());
  const long above_total =
      rc.total - below_total - ((anchor && anchor->interior_edge) ? 1 : 0);
  saturated_above_ = above.size() == cap && above_total > static_cast<long>(above.size());

  const Scene& sc = view_->scene();
  auto add = [&](std::size_t edge) {
    Point a, b;
    if (sc.is_ring_edge(edge)) {
      a = view_->vertex(sc.edge_src(edge));
      b = view_->vertex(sc.edge_dst(edge));
    } else {
      auto [pa, pb] = view_->segment_record(edge - sc.ring_vertex_count());
      a = *pa;
      b = *pb;
    }
    insert_entry(edge, a, b, ahead_vertex_of(edge, a, b));
  };
  for (const Entry& e : below) add(e.index);
  if (anchor && anchor->interior_edge) add(*anchor->interior_edge);
  for (const Entry& e : above) add(e.index);

  list_total_ = rc.total;

  // The reference vertex's own crossing entries join the list only where
  // they keep the tracked block contiguous in rank; otherwise they are
  // counted but left untracked behind a saturation mark.
  const std::vector<RefEvent> events = ref_events(ref);
  bool events_tracked = true;
  bool events_below = false;
  if (!events.empty()) {
    list_total_ += static_cast<long>(events.size());
    if (!order_.empty()) {
      const Rat t_min = cross_param(*order_.begin());
      const Rat t_max = cross_param(*order_.rbegin());
      events_below = Rat(1) < t_min;
      if (events_below && saturated_below_)
        events_tracked = false;
      else if (t_max < 1 && saturated_above_)
        events_tracked = false;
    }
    if (events_tracked) {
      for (const RefEvent& ev : events) insert_entry(ev.edge, ev.a, ev.b, ev.ahead);
    } else if (events_below) {
      saturated_below_ = true;
    } else {
      saturated_above_ = true;
    }
  }

  if (order_.empty()) throw AuditError("candidate set built empty");
  if (list_total_ < k + 1) return;  // cursor stays unset until crossings appear

  const Rat t_first = cross_param(*order_.begin());
  const RayCounts rc2 = ray_counts(ref, &t_first);
  long rank = rc2.below_ref + 1;  // untracked interiors all sit below T.min
  if (!events_tracked && events_below) rank += static_cast<long>(events.size());
  if (rank > k + 1) throw AuditError("candidate window starts above rank k+1");
  auto it = order_.begin();
  while (rank < k + 1) {
    it = guarded_succ(it, "cursor placement");
    ++rank;
  }
  cursor_ = it;
}

void CandidateSet::drain_events_before(const RayContext& ctx) {
  if (!with_events_) return;
  const Scene& sc = view_->scene();
  while (!theta_.empty()) {
    const std::size_t edge = *theta_.begin();
    const EntryData& d = data_.at(edge);
    const std::size_t u = d.ahead_vertex;
    const Point u_pt = sc.edge_src(edge) == u ? d.a : d.b;
    const Direction ev_dir = vec(q_, u_pt);

    // Event strictly before the target's angle? Events live within half a
    // turn of the sweep position, so the cross sign decides unless the
    // target is more than half a turn ahead.
    if (same_direction(ev_dir, ctx.dir)) {
      if (u != ctx.target)
        throw DegeneracyError("event vertex shares the target's angle");
      break;  // the target's own events are handled by its class update
    }
    const int cls = [&] {
      const int cr = sign_cross(cmp_dir_, ctx.dir);
      if (cr > 0) return 1;
      if (cr < 0) return 3;
      const Rat dot = cmp_dir_.dx * ctx.dir.dx + cmp_dir_.dy * ctx.dir.dy;
      return sgn(dot) > 0 ? 0 : 2;
    }();
    if (cls == 1 && sign_cross(ev_dir, ctx.dir) <= 0) break;  // event not before target

    if (!sc.is_ring_vertex(u))
      throw AuditError("segment endpoint reached through an event drain");

    // Swap the expiring edge for the next edge along the boundary at u.
    const std::size_t succ_edge = edge == sc.incoming_edge(u) ? sc.outgoing_edge(u)
                                                              : sc.incoming_edge(u);
    const std::size_t far_v =
        succ_edge == sc.outgoing_edge(u) ? sc.ring_next(u) : sc.ring_prev(u);
    const Point far_pt = view_->vertex(far_v);
    if (orient(q_, u_pt, far_pt) <= 0)
      throw AuditError("drained vertex is critical or collinear");

    cmp_dir_ = ev_dir;  // all remaining candidates cross the ray through u
    auto it = by_edge_.at(edge);
    const bool was_cursor = cursor_ && *cursor_ == it;
    erase_entry(it);
    if (succ_edge == sc.outgoing_edge(u))
      insert_entry(succ_edge, u_pt, far_pt, far_v);
    else
      insert_entry(succ_edge, far_pt, u_pt, far_v);
    if (was_cursor) cursor_ = by_edge_.at(succ_edge);
  }
}

void CandidateSet::apply_vertex(const RayContext& ctx) {
  const Scene& sc = view_->scene();
  const std::size_t v = ctx.target;
  cmp_dir_ = ctx.dir;
  const Point v_pt = ctx.vertex_point(q_);

  struct Member {
    std::size_t edge;
    Point a, b;
    std::size_t ahead;
  };
  std::vector<Member> members;

  if (ctx.vclass == VertexClass::NonCritical) {
    const Point p_prev = view_->vertex(sc.ring_prev(v));
    const Point p_next = view_->vertex(sc.ring_next(v));
    const int s_prev = orient(q_, v_pt, p_prev);
    const std::size_t old_edge = s_prev < 0 ? sc.incoming_edge(v) : sc.outgoing_edge(v);
    auto found = by_edge_.find(old_edge);
    if (found == by_edge_.end()) return;
    auto it = found->second;
    const bool was_cursor = cursor_ && *cursor_ == it;
    erase_entry(it);
    if (s_prev < 0)
      insert_entry(sc.outgoing_edge(v), v_pt, p_next, sc.ring_next(v));
    else
      insert_entry(sc.incoming_edge(v), p_prev, v_pt, sc.ring_prev(v));
    if (was_cursor)
      cursor_ = by_edge_.at(s_prev < 0 ? sc.outgoing_edge(v) : sc.incoming_edge(v));
    return;
  }

  if (sc.is_ring_vertex(v)) {
    const Point p_prev = view_->vertex(sc.ring_prev(v));
    const Point p_next = view_->vertex(sc.ring_next(v));
    members.push_back(Member{sc.incoming_edge(v), p_prev, v_pt, sc.ring_prev(v)});
    members.push_back(Member{sc.outgoing_edge(v), v_pt, p_next, sc.ring_next(v)});
  } else {
    auto [a, b] = view_->segment_record(sc.segment_of_vertex(v));
    members.push_back(Member{sc.segment_edge(v), *a, *b, sc.partner_vertex(v)});
  }
  const int event_cnt = ctx.event_entries;

  if (ctx.vclass == VertexClass::StartCritical) {
    const bool below_cursor = cursor_ && Rat(1) < cross_param(**cursor_);
    // Insert inside the tracked interval, or just past an end of it when
    // that side is complete (then the window stays complete). Past a
    // truncated end the entries are skipped; only their rank shift counts.
    bool insert_members = true;
    if (!order_.empty()) {
      const Rat t_min = cross_param(*order_.begin());
      const Rat t_max = cross_param(*order_.rbegin());
      if (Rat(1) < t_min && saturated_below_)
        insert_members = false;
      else if (t_max < 1 && saturated_above_)
        insert_members = false;
    }
    if (insert_members)
      for (const Member& m : members) insert_entry(m.edge, m.a, m.b, m.ahead);
    list_total_ += event_cnt;
    if (cursor_) {
      if (below_cursor) shift_cursor_down(event_cnt);
    } else {
      maybe_reify_cursor(k_);
    }
    return;
  }

  // EndCritical: the incident edges leave the crossing list.
  list_total_ -= event_cnt;
  std::vector<Order::iterator> present;
  for (const Member& m : members) {
    auto f = by_edge_.find(m.edge);
    if (f != by_edge_.end()) present.push_back(f->second);
  }
  auto is_member_edge = [&](std::size_t e) {
    for (const Member& m : members)
      if (m.edge == e) return true;
    return false;
  };

  if (!cursor_) {
    for (auto it : present) erase_entry(it);
    return;
  }
  if (list_total_ < k_ + 1) {
    for (auto it : present) erase_entry(it);
    cursor_.reset();
    return;
  }

  const bool cursor_is_member = is_member_edge(**cursor_);
  if (!cursor_is_member) {
    const bool below = Rat(1) < cross_param(**cursor_);
    for (auto it : present) erase_entry(it);
    if (below) shift_cursor_up(event_cnt);
    return;
  }

  // Cursor sits on one of the removed entries. Members not present in the
  // candidate window still count toward the rank arithmetic.
  int below_removed = 0;
  for (const Member& m : members) {
    if (m.edge == **cursor_) continue;
    auto f = by_edge_.find(m.edge);
    bool before;
    if (f != by_edge_.end()) {
      before = order_.key_comp()(m.edge, **cursor_);
    } else {
      EntryData tmp{m.a, m.b, m.ahead};
      const EntryData& cd = data_.at(**cursor_);
      const Rat tm = cross_param_for(tmp);
      const Rat tc = cross_param_for(cd);
      before = tm < tc;  // distinct unless both are event entries, then both at t=1
      if (tm == tc) before = true;  // conservative: treat as below; audited below
    }
    if (before) ++below_removed;
  }
  auto it_after = guarded_succ(*cursor_, "end removal");
  while (is_member_edge(*it_after)) it_after = guarded_succ(it_after, "end removal");
  for (auto it : present) erase_entry(it);
  cursor_ = it_after;
  shift_cursor_up(below_removed);
  drift_ += 1;
}

CandidateSet::Spot CandidateSet::spot_of(Order::iterator it, const RayContext& ctx) const {
  const Rat t = cross_param(*it);
  if (t == 1)
    return Spot{true, vertex_endpoint_edge(view_->scene(), ctx.target), Rat(1)};
  return Spot{false, *it, t};
}

CandidateSet::WindowQuery CandidateSet::query_window(const RayContext& ctx, long k) const {
  WindowQuery out;
  if (!cursor_) {
    // Fewer than k+1 crossings: the vertex is k-visible but no chord can
    // be bounded on both sides.
    out.visible = true;
    return out;
  }
  const Rat t_cursor = cross_param(**cursor_);
  const bool ring = view_->scene().is_ring_vertex(ctx.target);

  if (ctx.vclass == VertexClass::StartCritical) {
    out.visible = !(t_cursor < 1);
    if (!out.visible) return out;
    if (ring) {
      // List ranks equal true ranks: near/far at ranks k+2, k+3.
      auto n1 = std::next(*cursor_);
      if (n1 == order_.end()) {
        if (saturated_above_) throw AuditError("window query beyond candidate window");
        return out;
      }
      auto n2 = std::next(n1);
      if (n2 == order_.end()) {
        if (saturated_above_) throw AuditError("window query beyond candidate window");
        return out;
      }
      out.window = {spot_of(n1, ctx), spot_of(n2, ctx)};
      return out;
    }
    // Segment endpoint: its single entry occupies two true ranks.
    auto n1 = std::next(*cursor_);
    if (n1 == order_.end()) {
      if (saturated_above_) throw AuditError("window query beyond candidate window");
      return out;
    }
    Spot near_spot =
        (t_cursor == 1) ? Spot{true, vertex_endpoint_edge(view_->scene(), ctx.target), Rat(1)}
                        : spot_of(*cursor_, ctx);
    out.window = {near_spot, spot_of(n1, ctx)};
    return out;
  }

  // EndCritical: the event was removed; the list is event-less.
  out.visible = Rat(1) < t_cursor;
  if (!out.visible) return out;
  bool m_equals_k;
  std::optional<Order::iterator> pred;
  if (k == 0) {
    m_equals_k = true;  // visible with k == 0 forces m == 0
  } else {
    if (*cursor_ == order_.begin()) {
      if (saturated_below_) throw AuditError("window query below candidate window");
      throw AuditError("rank k entry missing from candidate window");
    }
    pred = std::prev(*cursor_);
    m_equals_k = cross_param(**pred) < 1;
  }
  Spot near_spot = m_equals_k
                       ? Spot{true, vertex_endpoint_edge(view_->scene(), ctx.target), Rat(1)}
                       : spot_of(*pred, ctx);
  out.window = {near_spot, spot_of(*cursor_, ctx)};
  return out;
}

std::optional<CandidateSet::BuildAnchor> CandidateSet::cursor_anchor() const {
  if (!cursor_) return std::nullopt;
  const Rat t = cross_param(**cursor_);
  if (t == 1) return BuildAnchor{Rat(1), std::nullopt};  // event entry: re-injected on build
  return BuildAnchor{t, **cursor_};
}

bool CandidateSet::debug_order_valid() const {
  std::optional<Rat> prev;
  for (std::size_t e : order_) {
    const Rat t = cross_param(e);
    if (prev && !(*prev <= t)) return false;
    prev = t;
  }
  return true;
}

namespace {

// KeyedScan over vertex directions in absolute angular order.
class VertexAngleScan {
 public:
  using key_type = Direction;
  explicit VertexAngleScan(const SceneView& view) : view_(&view) {}
  std::size_t size() const { return view_->num_vertices(); }
  std::optional<Direction> key(std::size_t v) const {
    return vec(view_->q(), view_->vertex(v));
  }
  int compare(const Direction& a, const Direction& b) const { return angular_compare(a, b); }
  std::int64_t key_slot_words() const { return kDirSlotWords; }

 protected:
  const SceneView* view_;
};

// Same, but only critical vertices carry keys. Ring classification uses a
// small rolling cache so sequential passes read each vertex once.
class CriticalAngleScan {
 public:
  using key_type = Direction;
  explicit CriticalAngleScan(const SceneView& view) : view_(&view) {}
  std::size_t size() const { return view_->num_vertices(); }
  std::optional<Direction> key(std::size_t v) const {
    const Scene& sc = view_->scene();
    const Point& q = view_->q();
    if (!sc.is_ring_vertex(v)) {
      auto [a, b] = view_->segment_record(sc.segment_of_vertex(v));
      const bool first = (v - sc.ring_vertex_count()) % 2 == 0;
      const Point& cur = first ? *a : *b;
      const Point& partner = first ? *b : *a;
      if (orient(q, cur, partner) == 0)
        throw DegeneracyError("q collinear with a segment");
      return vec(q, cur);  // segment endpoints are always critical
    }
    const Point cur = pt(v);
    const Point prev = pt(sc.ring_prev(v));
    const Point next = pt(sc.ring_next(v));
    const int sp = orient(q, cur, prev);
    const int sn = orient(q, cur, next);
    if (sp == 0 || sn == 0)
      throw DegeneracyError("collinear neighbour at vertex " + std::to_string(v));
    if ((sp < 0 && sn < 0) || (sp > 0 && sn > 0)) return vec(q, cur);
    return std::nullopt;
  }
  int compare(const Direction& a, const Direction& b) const { return angular_compare(a, b); }
  std::int64_t key_slot_words() const { return kDirSlotWords; }

 private:
  Point pt(std::size_t v) const {
    for (auto& c : cache_)
      if (c.first == v) return c.second;
    const Point p = view_->vertex(v);
    cache_[slot_] = {v, p};
    slot_ = (slot_ + 1) % cache_.size();
    return p;
  }
  const SceneView* view_;
  mutable std::array<std::pair<std::size_t, Point>, 4> cache_{
      {{SIZE_MAX, Point{}}, {SIZE_MAX, Point{}}, {SIZE_MAX, Point{}}, {SIZE_MAX, Point{}}}};
  mutable std::size_t slot_ = 0;
};

void emit_query(const RayContext& ctx, const CandidateSet::WindowQuery& wq, WindowSink& sink) {
  if (!wq.visible || !wq.window) return;
  auto to_ranked = [](const CandidateSet::Spot& s) {
    return RankedCrossing{s.at_vertex ? CrossingRecord::Kind::VertexEvent
                                      : CrossingRecord::Kind::Interior,
                          s.edge, s.t, 0, 0};
  };
  emit_window(ctx, to_ranked(wq.window->first), to_ranked(wq.window->second), sink);
}

std::optional<CandidateSet::BuildAnchor> anchor_from(const LocatedRank& loc) {
  if (!loc.at) return std::nullopt;
  if (loc.at->kind == CrossingRecord::Kind::VertexEvent)
    return CandidateSet::BuildAnchor{Rat(1), std::nullopt};
  return CandidateSet::BuildAnchor{loc.at->t, loc.at->edge};
}

constexpr std::int64_t kBatchedStateWords = 2 * kDirSlotWords + 2 * kRatSlotWords + 24;

void run_batched(const SceneView& view, std::size_t s, WorkspaceMeter& meter,
                 WindowSink& sink, bool critical_only) {
  const Scene& sc = view.scene();
  if (sc.whole_scene_visible()) {
    sink.emit(WindowRecord::whole_scene());
    return;
  }
  if (s == 0) s = 1;
  ScopedWords state(meter, kBatchedStateWords, "batched.state");

  const CriticalScan cs = scan_criticals(view);
  if (cs.count == 0) {
    sink.emit(WindowRecord::no_critical());
    return;
  }
  const long k = view.k();

  RayContext ctx = make_ray(view, *cs.first);
  const LocatedRank loc = rank_crossing(ctx, k + 1, std::nullopt, s, meter);

  CandidateSet cand(view, s, critical_only, meter);
  cand.build(ctx, anchor_from(loc), k);
  emit_query(ctx, cand.query_window(ctx, k), sink);
  std::size_t processed = 1;

  while (processed < cs.count) {
    using Entry = ScanEntry<Direction>;
    std::vector<Entry> batch;
    const std::optional<Direction> after(ctx.dir);
    if (critical_only) {
      CriticalAngleScan scan(view);
      batch = s_smallest_above(scan, after, s, meter);
    } else {
      VertexAngleScan scan(view);
      batch = s_smallest_above(scan, after, s, meter);
    }
    if (batch.empty())
      throw AuditError("angular batch came back empty with critical vertices pending");

    for (const Entry& e : batch) {
      ctx = make_ray(view, e.index);
      if (critical_only) cand.drain_events_before(ctx);
      cand.apply_vertex(ctx);
      if (is_critical(ctx.vclass)) {
        emit_query(ctx, cand.query_window(ctx, k), sink);
        if (++processed == cs.count) return;
      }
    }
    if (cand.drift() > 2 * s + 2)
      throw AuditError("cursor drift " + std::to_string(cand.drift()) +
                       " exceeded the candidate margin");
    cand.build(ctx, cand.cursor_anchor(), k);
  }
}

}  // namespace

void windows_batched_all(const SceneView& view, std::size_t s, WorkspaceMeter& meter,
                         WindowSink& sink) {
  run_batched(view, s, meter, sink, false);
}

void windows_batched_critical(const SceneView& view, std::size_t s, WorkspaceMeter& meter,
                              WindowSink& sink) {
  run_batched(view, s, meter, sink, true);
}

}  // namespace kvis
