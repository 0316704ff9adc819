#include "generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "errors.hpp"
#include "oracle.hpp"

namespace kvis {

namespace {

constexpr double kTau = 6.283185307179586;

Point grid_pt(double x, double y) {
  return Point{Rat(static_cast<long>(std::lround(x))), Rat(static_cast<long>(std::lround(y)))};
}

Rat frac(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Point jittered_q(std::mt19937_64& rng, double x, double y) {
  std::uniform_int_distribution<int> j(-31, 31);
  return Point{Rat(static_cast<long>(std::lround(x))) + frac(j(rng), 64),
               Rat(static_cast<long>(std::lround(y))) + frac(j(rng), 64)};
}

int point_in_ring(const Scene& s, const Ring& r, const Point& p) {
  // 1 inside, 0 on boundary, -1 outside; exact.
  bool inside = false;
  for (std::size_t i = 0; i < r.len; ++i) {
    const Point& a = s.pts[r.start + i];
    const Point& b = s.pts[r.start + (i + 1) % r.len];
    if (orient(a, b, p) == 0) {
      const Rat dot = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
      const Rat len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
      if (sgn(dot) >= 0 && dot <= len2) return 0;
    }
    if ((a.y > p.y) != (b.y > p.y)) {
      const Rat xc = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (xc == p.x) return 0;
      if (xc > p.x) inside = !inside;
    }
  }
  return inside ? 1 : -1;
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return {};
  std::vector<Point> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t base = hull.size();
    for (const Point& p : pts) {
      while (hull.size() >= base + 2 &&
             orient(hull[hull.size() - 2], hull[hull.size() - 1], p) <= 0)
        hull.pop_back();
      hull.push_back(p);
    }
    hull.pop_back();
    std::reverse(pts.begin(), pts.end());
  }
  return hull;  // counterclockwise, no collinear triples
}

Scene make_convex(std::mt19937_64& rng, std::size_t n, long k) {
  // Points near a circle keep most of themselves on the hull.
  std::uniform_real_distribution<double> ang(0.0, kTau);
  std::uniform_real_distribution<double> rad(6850.0, 7000.0);
  std::vector<Point> pool;
  for (std::size_t i = 0; i < 12 * n + 64; ++i) {
    const double a = ang(rng), r = rad(rng);
    pool.push_back(grid_pt(r * std::cos(a), r * std::sin(a)));
  }
  std::vector<Point> hull = convex_hull(std::move(pool));
  if (hull.size() < n) throw GenerationError("convex hull too small");
  Scene s;
  s.kind = SceneKind::Polygon;
  const double step = static_cast<double>(hull.size()) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    s.pts.push_back(hull[static_cast<std::size_t>(i * step)]);
  s.rings.push_back(Ring{0, n});
  s.q = jittered_q(rng, 0, 0);
  s.k_input = k;
  if (point_in_ring(s, s.rings[0], s.q) != 1) throw GenerationError("q outside convex body");
  return s;
}

Scene make_star(std::mt19937_64& rng, std::size_t spikes, long k) {
  if (spikes < 6) spikes = 6;  // lean chords subtend too much arc below this
  const double sector = kTau / static_cast<double>(spikes);
  // Lean each spike across its neighbours; fewer spikes tolerate less lean.
  const double tilt = (spikes >= 8 ? 1.8 : 1.45) * sector;
  std::uniform_real_distribution<double> jig(-sector / 40.0, sector / 40.0);
  Scene s;
  s.kind = SceneKind::Polygon;
  for (std::size_t i = 0; i < spikes; ++i) {
    const double phi = sector * static_cast<double>(i) + jig(rng);
    s.pts.push_back(grid_pt(2000.0 * std::cos(phi), 3000.0 * std::sin(phi)));
    const double tp = phi + tilt + jig(rng);
    s.pts.push_back(grid_pt(9000.0 * std::cos(tp), 8000.0 * std::sin(tp)));
  }
  s.rings.push_back(Ring{0, 2 * spikes});
  s.q = jittered_q(rng, 0, 0);
  s.k_input = k;
  return s;
}

Scene make_comb(std::mt19937_64& rng, std::size_t teeth, std::size_t n, long k) {
  if (teeth < 1) teeth = 1;
  const long u = 200;
  const long W = static_cast<long>(4 * teeth + 2) * u;
  const long H = 3200;
  const long tooth_bottom = 2000;

  Scene s;
  s.kind = SceneKind::Polygon;
  std::vector<Point> verts;
  verts.push_back(Point{Rat(0), Rat(0)});
  verts.push_back(Point{Rat(W), Rat(0)});
  verts.push_back(Point{Rat(W), Rat(H)});
  // Padding goes on the ceiling runs between teeth so non-critical
  // vertices interleave the critical tooth corners in angular order.
  const std::size_t base_count = 4 + 4 * teeth;
  const std::size_t pad = n > base_count ? n - base_count : 0;
  const std::size_t gaps = teeth + 1;
  const std::size_t per_gap = pad / gaps;
  const std::size_t extra = pad % gaps;
  auto pad_run = [&](long x_hi, long x_lo, std::size_t count) {
    for (std::size_t i = 1; i <= count; ++i) {
      Rat x = Rat(x_hi) + Rat(x_lo - x_hi) *
                              frac(static_cast<long>(i), static_cast<long>(count + 1));
      verts.push_back(Point{x, Rat(H)});
    }
  };
  // Teeth hang from the ceiling; walk right to left along the top.
  long prev_x = W;
  for (std::size_t j = 0; j < teeth; ++j) {
    const long xr = W - static_cast<long>(4 * j + 1) * u - u;
    const long xl = xr - 2 * u;
    pad_run(prev_x, xr, per_gap + (j < extra ? 1 : 0));
    verts.push_back(Point{Rat(xr), Rat(H)});
    verts.push_back(Point{Rat(xr), Rat(tooth_bottom)});
    verts.push_back(Point{Rat(xl), Rat(tooth_bottom)});
    verts.push_back(Point{Rat(xl), Rat(H)});
    prev_x = xl;
  }
  pad_run(prev_x, 0, per_gap);
  verts.push_back(Point{Rat(0), Rat(H)});
  s.pts = std::move(verts);
  s.rings.push_back(Ring{0, s.pts.size()});
  std::uniform_int_distribution<long> qx(W / 3, 2 * W / 3);
  s.q = jittered_q(rng, static_cast<double>(qx(rng)), 700.0);
  s.k_input = k;
  return s;
}

Scene make_random_simple(std::mt19937_64& rng, std::size_t n, long k) {
  std::uniform_int_distribution<long> coord(-6000, 6000);
  std::vector<Point> pts;
  while (pts.size() < n) {
    Point p{Rat(coord(rng)), Rat(coord(rng))};
    bool dup = false;
    for (const Point& o : pts)
      if (o == p) dup = true;
    if (!dup) pts.push_back(p);
  }
  std::shuffle(pts.begin(), pts.end(), rng);

  auto cross_free = [&](std::size_t i, std::size_t j) {
    const Point& a = pts[i];
    const Point& b = pts[(i + 1) % pts.size()];
    const Point& c = pts[j];
    const Point& d = pts[(j + 1) % pts.size()];
    const int o1 = orient(a, b, c), o2 = orient(a, b, d);
    const int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0) return false;  // grazing: reject
    return !(o1 != o2 && o3 != o4);
  };

  // 2-opt uncrossing.
  bool changed = true;
  std::size_t rounds = 0;
  while (changed) {
    if (++rounds > 40 * n) throw GenerationError("2-opt did not converge");
    changed = false;
    for (std::size_t i = 0; i < n && !changed; ++i) {
      for (std::size_t j = i + 2; j < n && !changed; ++j) {
        if (i == 0 && j + 1 == n) continue;  // adjacent around the wrap
        if (!cross_free(i, j)) {
          std::reverse(pts.begin() + static_cast<long>(i) + 1,
                       pts.begin() + static_cast<long>(j) + 1);
          changed = true;
        }
      }
    }
  }

  Scene s;
  s.kind = SceneKind::Polygon;
  s.pts = pts;
  s.rings.push_back(Ring{0, n});
  Rat area(0);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = s.pts[i];
    const Point& b = s.pts[(i + 1) % n];
    area += a.x * b.y - b.x * a.y;
  }
  if (sgn(area) < 0) std::reverse(s.pts.begin(), s.pts.end());
  s.k_input = k;

  // Interior query point.
  for (int tries = 0; tries < 400; ++tries) {
    const Point cand = jittered_q(rng, static_cast<double>(coord(rng)) / 2.0,
                                  static_cast<double>(coord(rng)) / 2.0);
    if (point_in_ring(s, s.rings[0], cand) == 1) {
      s.q = cand;
      return s;
    }
  }
  throw GenerationError("no interior query point found");
}

Scene make_holes(std::mt19937_64& rng, std::size_t n, long k) {
  const std::size_t hole_count = n >= 14 ? 2 : 1;
  const std::size_t n_outer = std::max<std::size_t>(4, n - 4 * hole_count);
  Scene s = make_convex(rng, n_outer, k);
  s.kind = SceneKind::Holes;

  std::uniform_int_distribution<long> pos(-2800, 2800);
  std::uniform_int_distribution<long> size(500, 1100);
  for (std::size_t h = 0; h < hole_count; ++h) {
    for (int tries = 0;; ++tries) {
      if (tries > 300) throw GenerationError("hole placement failed");
      const long cx = pos(rng), cy = pos(rng), w = size(rng), v = size(rng);
      Point corners[4] = {Point{Rat(cx - w), Rat(cy - v)}, Point{Rat(cx - w), Rat(cy + v)},
                          Point{Rat(cx + w), Rat(cy + v)}, Point{Rat(cx + w), Rat(cy - v)}};
      bool ok = true;
      for (const Point& c : corners)
        if (point_in_ring(s, s.rings[0], c) != 1) ok = false;
      // Stay clear of q and previous holes.
      if (ok && s.q.x >= Rat(cx - w - 200) && s.q.x <= Rat(cx + w + 200) &&
          s.q.y >= Rat(cy - v - 200) && s.q.y <= Rat(cy + v + 200))
        ok = false;
      for (std::size_t r = 1; ok && r < s.rings.size(); ++r) {
        const Ring& other = s.rings[r];
        Rat ox0 = s.pts[other.start].x, ox1 = ox0, oy0 = s.pts[other.start].y, oy1 = oy0;
        for (std::size_t i = 0; i < other.len; ++i) {
          ox0 = std::min(ox0, s.pts[other.start + i].x);
          ox1 = std::max(ox1, s.pts[other.start + i].x);
          oy0 = std::min(oy0, s.pts[other.start + i].y);
          oy1 = std::max(oy1, s.pts[other.start + i].y);
        }
        if (!(Rat(cx + w + 100) < ox0 || ox1 < Rat(cx - w - 100) ||
              Rat(cy + v + 100) < oy0 || oy1 < Rat(cy - v - 100)))
          ok = false;
      }
      if (!ok) continue;
      // Clockwise ring.
      const std::size_t start = s.pts.size();
      for (const Point& c : corners) s.pts.push_back(c);
      s.rings.push_back(Ring{start, 4});
      break;
    }
  }
  return s;
}

Scene make_segments(std::mt19937_64& rng, std::size_t n, long k) {
  const long B = 10000;
  Scene s;
  s.kind = SceneKind::Segments;
  s.box = std::array<Rat, 4>{Rat(0), Rat(0), Rat(B), Rat(B)};
  s.pts.push_back(Point{Rat(0), Rat(0)});
  s.pts.push_back(Point{Rat(B), Rat(0)});
  s.pts.push_back(Point{Rat(B), Rat(B)});
  s.pts.push_back(Point{Rat(0), Rat(B)});
  s.rings.push_back(Ring{0, 4});
  s.n_segments = n;

  std::uniform_int_distribution<long> coord(400, B - 400);
  std::uniform_int_distribution<long> delta(-2200, 2200);
  std::vector<std::pair<Point, Point>> segs;
  for (int tries = 0; segs.size() < n; ++tries) {
    if (tries > 4000) throw GenerationError("segment placement failed");
    const long ax = coord(rng), ay = coord(rng);
    long bx = ax + delta(rng), by = ay + delta(rng);
    bx = std::clamp(bx, 400L, B - 400);
    by = std::clamp(by, 400L, B - 400);
    Point a{Rat(ax), Rat(ay)}, b{Rat(bx), Rat(by)};
    if (a == b) continue;
    bool ok = true;
    for (const auto& [c, d] : segs) {
      const int o1 = orient(a, b, c), o2 = orient(a, b, d);
      const int o3 = orient(c, d, a), o4 = orient(c, d, b);
      if (o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0 || (o1 != o2 && o3 != o4)) ok = false;
    }
    if (!ok) continue;
    segs.emplace_back(a, b);
  }
  for (const auto& [a, b] : segs) {
    s.pts.push_back(a);
    s.pts.push_back(b);
  }
  s.q = jittered_q(rng, B / 2.0, B / 2.0);
  s.k_input = k;
  return s;
}

std::size_t profile_param(const std::string& profile, const char* prefix) {
  const std::string suffix = profile.substr(std::string(prefix).size());
  if (suffix.empty()) return 0;
  return static_cast<std::size_t>(std::stoul(suffix));
}

}  // namespace

Scene random_scene(std::uint64_t seed, std::size_t n, const std::string& profile, long k) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
  std::string what;
  for (int attempt = 0; attempt < 200; ++attempt) {
    try {
      Scene s;
      if (profile == "convex") {
        s = make_convex(rng, std::max<std::size_t>(n, 3), k);
      } else if (profile.rfind("star", 0) == 0) {
        std::size_t spikes = profile_param(profile, "star");
        if (spikes == 0) spikes = std::max<std::size_t>(n / 2, 3);
        s = make_star(rng, spikes, k);
      } else if (profile.rfind("comb", 0) == 0) {
        std::size_t teeth = profile_param(profile, "comb");
        if (teeth == 0) teeth = std::max<std::size_t>((n > 4 ? (n - 4) / 4 : 1), 1);
        s = make_comb(rng, teeth, n, k);
      } else if (profile == "random-simple") {
        s = make_random_simple(rng, std::max<std::size_t>(n, 4), k);
      } else if (profile == "holes") {
        s = make_holes(rng, std::max<std::size_t>(n, 8), k);
      } else if (profile == "segments") {
        s = make_segments(rng, std::max<std::size_t>(n, 1), k);
      } else {
        throw GenerationError("unknown profile '" + profile + "'");
      }
      validate_scene(s, s.num_vertices() <= 192 ? ValidationLevel::Exhaustive
                                                : ValidationLevel::Fast);
      return s;
    } catch (const GenerationError& e) {
      what = e.what();
      if (std::string(e.what()).rfind("unknown profile", 0) == 0) throw;
    } catch (const InvalidSceneError& e) {
      what = e.what();
    } catch (const DegeneracyError& e) {
      what = e.what();
    }
  }
  throw GenerationError("profile '" + profile + "' failed after 200 attempts: " + what);
}

}  // namespace kvis
