#include "geom.hpp"

#include "errors.hpp"

namespace kvis {

Direction vec(const Point& from, const Point& to) {
  return Direction{to.x - from.x, to.y - from.y};
}

int orient(const Point& a, const Point& b, const Point& c) {
  const Rat cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return sgn(cross);
}

int sign_cross(const Direction& u, const Direction& v) {
  const Rat cross = u.dx * v.dy - u.dy * v.dx;
  return sgn(cross);
}

bool same_direction(const Direction& u, const Direction& v) {
  if (sign_cross(u, v) != 0) return false;
  const Rat dot = u.dx * v.dx + u.dy * v.dy;
  return sgn(dot) > 0;
}

namespace {

// Half-plane class relative to a base direction: 0 = base itself,
// 1 = strictly ccw of base within (0, pi), 2 = opposite, 3 = (pi, 2pi).
int half_class(const Direction& base, const Direction& d) {
  const int cr = sign_cross(base, d);
  if (cr > 0) return 1;
  if (cr < 0) return 3;
  const Rat dot = base.dx * d.dx + base.dy * d.dy;
  return sgn(dot) > 0 ? 0 : 2;
}

}  // namespace

int angular_compare_from(const Direction& base, const Direction& a, const Direction& b) {
  const int ca = half_class(base, a);
  const int cb = half_class(base, b);
  if (ca != cb) return ca < cb ? -1 : 1;
  if (ca == 0 || ca == 2) return 0;  // same ray through q: positive multiples
  const int cr = sign_cross(a, b);
  if (cr > 0) return -1;  // a reached first going ccw
  if (cr < 0) return 1;
  return 0;
}

int angular_compare(const Direction& a, const Direction& b) {
  static const Direction kXAxis{Rat(1), Rat(0)};
  return angular_compare_from(kXAxis, a, b);
}

std::optional<RayHit> ray_segment_intersect(const Point& q, const Direction& d,
                                            const Point& a, const Point& b) {
  const Direction qa = vec(q, a);
  const Direction qb = vec(q, b);
  const int side_a = sign_cross(d, qa);  // >0: a left of ray line
  const int side_b = sign_cross(d, qb);

  if (side_a == 0 && side_b == 0)
    throw DegeneracyError("segment lies on the ray's supporting line");

  if (side_a == 0 || side_b == 0) {
    // One endpoint on the supporting line; hit only if it is on the ray side.
    const Direction& on_line = (side_a == 0) ? qa : qb;
    const Rat dot = d.dx * on_line.dx + d.dy * on_line.dy;
    if (sgn(dot) <= 0) return std::nullopt;  // behind q (or at q)
    // t from whichever coordinate of d is nonzero.
    const Rat t = (d.dx != 0) ? Rat(on_line.dx / d.dx) : Rat(on_line.dy / d.dy);
    if (sgn(t) <= 0) return std::nullopt;
    return RayHit{t, side_a == 0 ? RayHit::Kind::EndpointA : RayHit::Kind::EndpointB};
  }

  if (side_a == side_b) return std::nullopt;  // both endpoints strictly one side

  // q + t*d = a + u*(b-a); denominators nonzero because sides differ.
  const Direction ab = vec(a, b);
  const Rat denom = d.dx * ab.dy - d.dy * ab.dx;
  const Rat t = (qa.dx * ab.dy - qa.dy * ab.dx) / denom;
  if (sgn(t) <= 0) return std::nullopt;
  return RayHit{t, RayHit::Kind::Interior};
}

Direction primitive_direction(const Direction& d) {
  mpz_class m;
  mpz_lcm(m.get_mpz_t(), d.dx.get_den().get_mpz_t(), d.dy.get_den().get_mpz_t());
  mpz_class ix(d.dx.get_num() * (m / d.dx.get_den()));
  mpz_class iy(d.dy.get_num() * (m / d.dy.get_den()));
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), ix.get_mpz_t(), iy.get_mpz_t());
  if (g != 0) {
    ix /= g;
    iy /= g;
  }
  return Direction{Rat(ix), Rat(iy)};
}

Rat param_on_segment(const Point& a, const Point& b, const Point& p) {
  if (a.x != b.x) return (p.x - a.x) / (b.x - a.x);
  return (p.y - a.y) / (b.y - a.y);
}

Point point_on_ray(const Point& q, const Direction& d, const Rat& t) {
  return Point{q.x + t * d.dx, q.y + t * d.dy};
}

}  // namespace kvis
