#include "scene.hpp"

#include <random>

#include "errors.hpp"

namespace kvis {

std::size_t Scene::ring_vertex_count() const {
  std::size_t n = 0;
  for (const Ring& r : rings) n += r.len;
  return n;
}

bool Scene::operator==(const Scene& o) const {
  if (kind != o.kind || n_segments != o.n_segments || k_input != o.k_input) return false;
  if (!(q == o.q)) return false;
  if (rings.size() != o.rings.size()) return false;
  for (std::size_t i = 0; i < rings.size(); ++i)
    if (rings[i].start != o.rings[i].start || rings[i].len != o.rings[i].len) return false;
  if (box.has_value() != o.box.has_value()) return false;
  if (box)
    for (int i = 0; i < 4; ++i)
      if ((*box)[i] != (*o.box)[i]) return false;
  return pts == o.pts;
}

std::size_t Scene::ring_of(std::size_t v) const {
  for (std::size_t i = 0; i < rings.size(); ++i)
    if (v >= rings[i].start && v < rings[i].start + rings[i].len) return i;
  throw std::out_of_range("not a ring vertex");
}

std::size_t Scene::ring_next(std::size_t v) const {
  const Ring& r = rings[ring_of(v)];
  return r.start + (v - r.start + 1) % r.len;
}

std::size_t Scene::ring_prev(std::size_t v) const {
  const Ring& r = rings[ring_of(v)];
  return r.start + (v - r.start + r.len - 1) % r.len;
}

std::size_t Scene::edge_src(std::size_t e) const {
  if (is_ring_edge(e)) return e;
  return ring_vertex_count() + 2 * (e - ring_vertex_count());
}

std::size_t Scene::edge_dst(std::size_t e) const {
  if (is_ring_edge(e)) return ring_next(e);
  return ring_vertex_count() + 2 * (e - ring_vertex_count()) + 1;
}

std::size_t Scene::incoming_edge(std::size_t v) const { return ring_prev(v); }
std::size_t Scene::outgoing_edge(std::size_t v) const { return v; }

std::size_t Scene::segment_of_vertex(std::size_t v) const {
  return (v - ring_vertex_count()) / 2;
}

std::size_t Scene::segment_edge(std::size_t v) const {
  return ring_vertex_count() + segment_of_vertex(v);
}

std::size_t Scene::partner_vertex(std::size_t v) const {
  const std::size_t rv = ring_vertex_count();
  const std::size_t off = v - rv;
  return rv + (off ^ 1u);
}

namespace {

Rat twice_signed_area(const Scene& s, const Ring& r) {
  Rat area(0);
  for (std::size_t i = 0; i < r.len; ++i) {
    const Point& a = s.pts[r.start + i];
    const Point& b = s.pts[r.start + (i + 1) % r.len];
    area += a.x * b.y - b.x * a.y;
  }
  return area;
}

bool point_on_segment(const Point& p, const Point& a, const Point& b) {
  if (orient(a, b, p) != 0) return false;
  const Rat dot = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
  if (sgn(dot) < 0) return false;
  const Rat len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
  return dot <= len2;
}

// Exact point-in-ring test; throws if p lies on the ring boundary.
bool point_strictly_inside_ring(const Scene& s, const Ring& r, const Point& p) {
  bool inside = false;
  for (std::size_t i = 0; i < r.len; ++i) {
    const Point& a = s.pts[r.start + i];
    const Point& b = s.pts[r.start + (i + 1) % r.len];
    if (point_on_segment(p, a, b))
      throw InvalidSceneError("query point lies on the boundary");
    if ((a.y > p.y) != (b.y > p.y)) {
      // x coordinate of the crossing with the horizontal line through p.
      const Rat xc = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (xc > p.x) inside = !inside;
    }
  }
  return inside;
}

bool segments_share_point(const Point& a, const Point& b, const Point& c, const Point& d) {
  const int o1 = orient(a, b, c);
  const int o2 = orient(a, b, d);
  const int o3 = orient(c, d, a);
  const int o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0) {
    // Covers proper crossings and T-touches.
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    if (o1 == 0 && point_on_segment(c, a, b)) return true;
    if (o2 == 0 && point_on_segment(d, a, b)) return true;
    if (o3 == 0 && point_on_segment(a, c, d)) return true;
    if (o4 == 0 && point_on_segment(b, c, d)) return true;
    return false;
  }
  if (o1 == 0 && point_on_segment(c, a, b)) return true;
  if (o2 == 0 && point_on_segment(d, a, b)) return true;
  if (o3 == 0 && point_on_segment(a, c, d)) return true;
  if (o4 == 0 && point_on_segment(b, c, d)) return true;
  return false;
}

struct EdgeCache {
  std::size_t src, dst;
  const Point *a, *b;
};

EdgeCache edge_cache(const Scene& s, std::size_t e) {
  const std::size_t src = s.edge_src(e);
  const std::size_t dst = s.edge_dst(e);
  return EdgeCache{src, dst, &s.pts[src], &s.pts[dst]};
}

void check_edge_pair(const Scene& s, std::size_t e1, std::size_t e2) {
  const EdgeCache u = edge_cache(s, e1);
  const EdgeCache v = edge_cache(s, e2);
  const bool share_vertex =
      u.src == v.src || u.src == v.dst || u.dst == v.src || u.dst == v.dst;
  if (share_vertex) {
    // Adjacent ring edges may touch only at the shared vertex.
    const Point* shared = (u.src == v.src || u.src == v.dst) ? u.a : u.b;
    const Point* u_other = (shared == u.a) ? u.b : u.a;
    const Point* v_other = (*shared == *v.a) ? v.b : v.a;
    if (orient(*shared, *u_other, *v_other) == 0) {
      const Rat dot = (u_other->x - shared->x) * (v_other->x - shared->x) +
                      (u_other->y - shared->y) * (v_other->y - shared->y);
      if (sgn(dot) > 0) throw InvalidSceneError("adjacent edges overlap");
    }
    return;
  }
  if (segments_share_point(*u.a, *u.b, *v.a, *v.b))
    throw InvalidSceneError("boundary elements intersect (edges " + std::to_string(e1) +
                            ", " + std::to_string(e2) + ")");
}

void check_vertex_pair(const Scene& s, std::size_t v1, std::size_t v2) {
  if (orient(s.q, s.pts[v1], s.pts[v2]) == 0)
    throw DegeneracyError("weak general position violated: q collinear with vertices " +
                          std::to_string(v1) + " and " + std::to_string(v2));
}

}  // namespace

void validate_scene(const Scene& s, ValidationLevel level) {
  if (s.kind == SceneKind::Segments) {
    if (!s.box) throw InvalidSceneError("segment scene has no bounding box");
    if (s.rings.size() != 1 || s.rings[0].len != 4)
      throw InvalidSceneError("segment scene must carry the box ring");
    if (s.n_segments == 0) throw InvalidSceneError("segment scene has no segments");
    if ((*s.box)[0] >= (*s.box)[2] || (*s.box)[1] >= (*s.box)[3])
      throw InvalidSceneError("bounding box is empty");
  } else {
    if (s.rings.empty()) throw InvalidSceneError("no boundary");
    if (s.kind == SceneKind::Polygon && s.rings.size() != 1)
      throw InvalidSceneError("simple polygon must have exactly one ring");
  }
  for (const Ring& r : s.rings)
    if (r.len < 3) throw InvalidSceneError("ring with fewer than 3 vertices");
  if (s.k_input < 0) throw InvalidSceneError("k must be nonnegative");

  // Orientation: outer ring (or box) ccw, holes cw.
  for (std::size_t i = 0; i < s.rings.size(); ++i) {
    const int a = sgn(twice_signed_area(s, s.rings[i]));
    if (a == 0) throw InvalidSceneError("degenerate ring (zero area)");
    if (i == 0 && a < 0) throw InvalidSceneError("outer ring must be counterclockwise");
    if (i > 0 && a > 0)
      throw InvalidSceneError("hole ring " + std::to_string(i) + " must be clockwise");
  }

  // Query point position.
  if (!point_strictly_inside_ring(s, s.rings[0], s.q))
    throw InvalidSceneError("query point is not strictly inside the outer boundary");
  for (std::size_t i = 1; i < s.rings.size(); ++i)
    if (point_strictly_inside_ring(s, s.rings[i], s.q))
      throw InvalidSceneError("query point lies inside hole " + std::to_string(i));
  if (s.kind == SceneKind::Segments) {
    const std::size_t rv = s.ring_vertex_count();
    for (std::size_t i = 0; i < s.n_segments; ++i) {
      if (point_on_segment(s.q, s.pts[rv + 2 * i], s.pts[rv + 2 * i + 1]))
        throw InvalidSceneError("query point lies on segment " + std::to_string(i));
      for (int e = 0; e < 2; ++e)
        if (!point_strictly_inside_ring(s, s.rings[0], s.pts[rv + 2 * i + e]))
          throw InvalidSceneError("segment " + std::to_string(i) +
                                  " is not strictly inside the box");
    }
  }

  const std::size_t E = s.num_edges();
  const std::size_t V = s.num_vertices();

  if (level == ValidationLevel::Exhaustive) {
    for (std::size_t i = 0; i < E; ++i)
      for (std::size_t j = i + 1; j < E; ++j) check_edge_pair(s, i, j);
    for (std::size_t i = 0; i < V; ++i)
      for (std::size_t j = i + 1; j < V; ++j) check_vertex_pair(s, i, j);
    return;
  }

  // Fast mode: all near-index pairs plus a deterministic random sample.
  const std::size_t window = 8;
  for (std::size_t i = 0; i < E; ++i)
    for (std::size_t d = 1; d <= window && i + d < E; ++d) check_edge_pair(s, i, i + d);
  for (std::size_t i = 0; i < V; ++i)
    for (std::size_t d = 1; d <= window && i + d < V; ++d) check_vertex_pair(s, i, i + d);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ (V * 1315423911ULL) ^
                      static_cast<std::uint64_t>(s.k_input));
  const std::size_t samples = 4 * (E + V);
  for (std::size_t t = 0; t < samples; ++t) {
    const std::size_t i = rng() % E;
    const std::size_t j = rng() % E;
    if (i != j) check_edge_pair(s, std::min(i, j), std::max(i, j));
    const std::size_t a = rng() % V;
    const std::size_t b = rng() % V;
    if (a != b) check_vertex_pair(s, std::min(a, b), std::max(a, b));
  }
}

}  // namespace kvis
