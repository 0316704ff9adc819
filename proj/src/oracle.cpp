#include "oracle.hpp"

#include <algorithm>

#include "errors.hpp"

namespace kvis {

namespace {

struct EdgePts {
  std::size_t e;
  const Point *a, *b;
};

std::vector<EdgePts> all_edges(const Scene& s) {
  std::vector<EdgePts> out;
  out.reserve(s.num_edges());
  for (std::size_t e = 0; e < s.num_edges(); ++e)
    out.push_back(EdgePts{e, &s.pts[s.edge_src(e)], &s.pts[s.edge_dst(e)]});
  return out;
}

bool incident(const Scene& s, std::size_t e, std::size_t v) {
  return s.edge_src(e) == v || s.edge_dst(e) == v;
}

std::size_t convention_edge(const Scene& s, std::size_t v) {
  return s.is_ring_vertex(v) ? s.outgoing_edge(v) : s.segment_edge(v);
}

}  // namespace

VertexClass oracle_classify(const Scene& s, std::size_t v) {
  const Point& q = s.q;
  const Point& cur = s.pts[v];
  if (s.is_ring_vertex(v)) {
    const int sp = orient(q, cur, s.pts[s.ring_prev(v)]);
    const int sn = orient(q, cur, s.pts[s.ring_next(v)]);
    if (sp == 0 || sn == 0)
      throw DegeneracyError("oracle: collinear neighbour at vertex " + std::to_string(v));
    if (sp < 0 && sn < 0) return VertexClass::EndCritical;
    if (sp > 0 && sn > 0) return VertexClass::StartCritical;
    return VertexClass::NonCritical;
  }
  const int side = orient(q, cur, s.pts[s.partner_vertex(v)]);
  if (side == 0)
    throw DegeneracyError("oracle: q collinear with segment of vertex " + std::to_string(v));
  return side < 0 ? VertexClass::EndCritical : VertexClass::StartCritical;
}

SortedCrossings oracle_crossings(const Scene& s, std::size_t target_vertex) {
  const Point& q = s.q;
  const Direction d = vec(q, s.pts[target_vertex]);
  SortedCrossings out;
  for (const EdgePts& ep : all_edges(s)) {
    if (incident(s, ep.e, target_vertex)) continue;
    auto hit = ray_segment_intersect(q, d, *ep.a, *ep.b);
    if (!hit) continue;
    if (hit->kind != RayHit::Kind::Interior)
      throw DegeneracyError("oracle: foreign vertex on ray through vertex " +
                            std::to_string(target_vertex));
    out.interior.push_back(SortedCrossings::Hit{ep.e, hit->t});
  }
  std::sort(out.interior.begin(), out.interior.end(),
            [](const SortedCrossings::Hit& x, const SortedCrossings::Hit& y) {
              return x.t < y.t;
            });
  for (std::size_t i = 1; i < out.interior.size(); ++i)
    if (out.interior[i - 1].t == out.interior[i].t)
      throw DegeneracyError("oracle: tied crossing parameters");
  for (const auto& h : out.interior)
    if (h.t < 1) ++out.below_vertex;
  return out;
}

std::vector<WindowRecord> oracle_windows(const Scene& s) {
  std::vector<WindowRecord> out;
  if (s.whole_scene_visible()) {
    out.push_back(WindowRecord::whole_scene());
    return out;
  }

  struct Crit {
    std::size_t v;
    Direction d;
    VertexClass cls;
  };
  std::vector<Crit> crits;
  for (std::size_t v = 0; v < s.num_vertices(); ++v) {
    const VertexClass cls = oracle_classify(s, v);
    if (cls != VertexClass::NonCritical) crits.push_back(Crit{v, vec(s.q, s.pts[v]), cls});
  }
  if (crits.empty()) {
    out.push_back(WindowRecord::no_critical());
    return out;
  }
  std::sort(crits.begin(), crits.end(), [](const Crit& x, const Crit& y) {
    const int c = angular_compare(x.d, y.d);
    if (c == 0) throw DegeneracyError("oracle: critical vertices share an angle");
    return c < 0;
  });

  const long k = s.k();
  for (const Crit& cr : crits) {
    const SortedCrossings sc = oracle_crossings(s, cr.v);
    const long m = sc.below_vertex;
    if (m > k) continue;  // vertex lies after the (k+1)-th crossing
    const long total = static_cast<long>(sc.interior.size());

    // True ranks with the vertex double: interior i has rank i+1 below the
    // vertex and i+3 above it. Rank k+2 is the vertex itself when m == k.
    const bool near_is_vertex = (m == k);
    const long near_idx = k - 1;  // used only when m < k
    const long far_idx = k;
    if (far_idx >= total) continue;
    if (!near_is_vertex && near_idx >= total) continue;

    const WindowType type =
        cr.cls == VertexClass::EndCritical ? WindowType::CCW : WindowType::CW;
    const Direction prim = primitive_direction(cr.d);

    Point near_pt;
    std::size_t near_edge;
    if (near_is_vertex) {
      near_pt = s.pts[cr.v];
      near_edge = convention_edge(s, cr.v);
    } else {
      near_pt = point_on_ray(s.q, cr.d, sc.interior[near_idx].t);
      near_edge = sc.interior[near_idx].edge;
    }
    const Point far_pt = point_on_ray(s.q, cr.d, sc.interior[far_idx].t);
    const std::size_t far_edge = sc.interior[far_idx].edge;

    out.push_back(WindowRecord::endpoint(
        WindowEndpoint{prim, near_edge, type, near_pt, true, cr.v, far_pt, far_edge}));
    out.push_back(WindowRecord::endpoint(
        WindowEndpoint{prim, far_edge, type, far_pt, false, cr.v, near_pt, near_edge}));
  }
  return out;
}

PointClass classify_point(const Scene& s, const Point& p) {
  if (p == s.q) return PointClass::Degenerate;
  const long k = s.k();
  long crossings = 0;
  std::vector<long> ring_hits(s.rings.size(), 0);
  for (const EdgePts& ep : all_edges(s)) {
    const int o1 = orient(s.q, p, *ep.a);
    const int o2 = orient(s.q, p, *ep.b);
    const int o3 = orient(*ep.a, *ep.b, s.q);
    const int o4 = orient(*ep.a, *ep.b, p);
    if (o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0) {
      // Any collinearity involving the segment pq and this edge: treat as
      // degenerate unless the configurations are strictly separated.
      if (o1 * o2 > 0 || o3 * o4 > 0) continue;  // disjoint despite a graze elsewhere
      return PointClass::Degenerate;
    }
    if (o1 != o2 && o3 != o4) {
      ++crossings;
      if (s.is_ring_edge(ep.e)) ++ring_hits[s.ring_of(ep.e)];
    }
  }
  if (crossings > k) return PointClass::NotVisible;
  // The region lives in the solid the query point occupies: an odd number
  // of crossings with any ring puts p on the other side of it.
  for (long h : ring_hits)
    if (h % 2 != 0) return PointClass::NotVisible;
  return PointClass::Visible;
}

bool boundary_point_visible(const Scene& s, const Point& p) {
  const Point& q = s.q;
  const Direction d = vec(q, p);
  long count = 0;
  for (const EdgePts& ep : all_edges(s)) {
    auto hit = ray_segment_intersect(q, d, *ep.a, *ep.b);
    if (!hit || hit->t >= 1) continue;
    if (hit->kind == RayHit::Kind::Interior) {
      ++count;
      continue;
    }
    const std::size_t v =
        hit->kind == RayHit::Kind::EndpointA ? s.edge_src(ep.e) : s.edge_dst(ep.e);
    if (s.is_ring_vertex(v) && ep.e != s.outgoing_edge(v)) continue;
    count += oracle_classify(s, v) != VertexClass::NonCritical ? 2 : 1;
  }
  return count <= s.k();
}

}  // namespace kvis
