#pragma once

#include <optional>

#include "rational.hpp"

namespace kvis {

struct Point {
  Rat x, y;
  bool operator==(const Point& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Point& o) const { return !(*this == o); }
};

// A nonzero vector, compared by counterclockwise angle from the positive
// x axis. The angle itself is never computed.
struct Direction {
  Rat dx, dy;
};

// Position along a ray q + t*d, t >= 0. Orders by distance from q.
struct RayParam {
  Rat t;
};

Point operator-(const Point& a, const Point& b) = delete;  // use vec()

// Vector from a to b as a Direction (caller guarantees a != b).
Direction vec(const Point& from, const Point& to);

// Sign of the cross product (b-a) x (c-a): +1 ccw turn, -1 cw, 0 collinear.
int orient(const Point& a, const Point& b, const Point& c);

int sign_cross(const Direction& u, const Direction& v);
bool same_direction(const Direction& u, const Direction& v);

// Total preorder on directions by ccw angle in [0, 2pi) from +x.
// Returns -1/0/+1; 0 iff the directions are positive multiples.
int angular_compare(const Direction& a, const Direction& b);

// Same order but measured from `base` (base itself has angle 0).
int angular_compare_from(const Direction& base, const Direction& a, const Direction& b);

struct RayHit {
  enum class Kind { Interior, EndpointA, EndpointB };
  Rat t;
  Kind kind;
};

// Intersection of ray (q, d) with segment ab, exact. Reports whether the
// hit is in the segment interior or at an endpoint. Throws DegeneracyError
// if the segment lies on the ray's supporting line. Hits at t <= 0 are
// not reported (the ray is open at q).
std::optional<RayHit> ray_segment_intersect(const Point& q, const Direction& d,
                                            const Point& a, const Point& b);

// Smallest integer direction with the same orientation; used for output
// and for exact window-endpoint equality.
Direction primitive_direction(const Direction& d);

// p = a + u*(b-a) for p known to be on segment ab; returns u in [0,1].
Rat param_on_segment(const Point& a, const Point& b, const Point& p);

Point point_on_ray(const Point& q, const Direction& d, const Rat& t);

}  // namespace kvis
