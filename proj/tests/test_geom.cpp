#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>

#include "doctest.h"
#include "errors.hpp"
#include "geom.hpp"

using namespace kvis;

namespace {

Point P(int x, int y) { return Point{Rat(x), Rat(y)}; }

// Hand-expanded determinant, kept separate from orient() on purpose.
int det_sign(const Point& a, const Point& b, const Point& c) {
  const Rat d = b.x * c.y - b.x * a.y - a.x * c.y - c.x * b.y + c.x * a.y + a.x * b.y;
  return sgn(d);
}

Rat rand_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 9);
  return Rat(num(rng), den(rng));
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(*rat_parse("12") == Rat(12));
  CHECK(*rat_parse("-3.25") == Rat(-13, 4));
  CHECK(*rat_parse("7/3") == Rat(7, 3));
  CHECK(*rat_parse("-1/2") == Rat(-1, 2));
  CHECK(*rat_parse("0.5") == Rat(1, 2));
  CHECK(!rat_parse("1/0"));
  CHECK(!rat_parse("a"));
  CHECK(!rat_parse("1.2.3"));
  CHECK(rat_to_string(Rat(-13, 4)) == "-13/4");
  CHECK(rat_to_string(Rat(4)) == "4");
}

TEST_CASE("orient basic") {
  CHECK(orient(P(0, 0), P(1, 0), P(0, 1)) == 1);
  CHECK(orient(P(0, 0), P(1, 0), P(2, 0)) == 0);
  CHECK(orient(P(0, 0), P(0, 1), P(1, 1)) == det_sign(P(0, 0), P(0, 1), P(1, 1)));
  CHECK(orient(P(0, 0), P(0, 1), P(1, 1)) == -1);
}

TEST_CASE("orient antisymmetry and translation invariance") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const Point a{rand_rat(rng), rand_rat(rng)};
    const Point b{rand_rat(rng), rand_rat(rng)};
    const Point c{rand_rat(rng), rand_rat(rng)};
    const int o = orient(a, b, c);
    CHECK(o == det_sign(a, b, c));
    CHECK(orient(b, a, c) == -o);
    CHECK(orient(a, c, b) == -o);
    const Rat tx = rand_rat(rng), ty = rand_rat(rng);
    auto mv = [&](const Point& p) { return Point{p.x + tx, p.y + ty}; };
    CHECK(orient(mv(a), mv(b), mv(c)) == o);
  }
}

TEST_CASE("angular_compare basics") {
  CHECK(angular_compare(Direction{Rat(1), Rat(0)}, Direction{Rat(0), Rat(1)}) == -1);
  CHECK(angular_compare(Direction{Rat(-1), Rat(-1)}, Direction{Rat(1), Rat(0)}) == 1);
  CHECK(angular_compare(Direction{Rat(2), Rat(2)}, Direction{Rat(1), Rat(1)}) == 0);
  // Axis directions in ccw order.
  CHECK(angular_compare(Direction{Rat(0), Rat(1)}, Direction{Rat(-1), Rat(0)}) == -1);
  CHECK(angular_compare(Direction{Rat(-1), Rat(0)}, Direction{Rat(0), Rat(-1)}) == -1);
  CHECK(angular_compare(Direction{Rat(0), Rat(-1)}, Direction{Rat(1), Rat(-1)}) == -1);
}

TEST_CASE("angular order is cyclic under rotation") {
  std::mt19937_64 rng(11);
  std::vector<Direction> dirs;
  for (int i = 0; i < 40; ++i) {
    Rat dx = rand_rat(rng), dy = rand_rat(rng);
    if (dx == 0 && dy == 0) dx = 1;
    dirs.push_back(Direction{dx, dy});
  }
  auto by_angle = [](const Direction& a, const Direction& b) {
    return angular_compare(a, b) < 0;
  };
  std::sort(dirs.begin(), dirs.end(), by_angle);
  // Rotate everything by 90 degrees: (x,y) -> (-y,x); cyclic order is
  // preserved, so the sorted sequence is a rotation of the rotated sort.
  std::vector<Direction> rot;
  for (const Direction& d : dirs) rot.push_back(Direction{-d.dy, d.dx});
  std::vector<Direction> rot_sorted = rot;
  std::sort(rot_sorted.begin(), rot_sorted.end(), by_angle);
  auto same = [](const Direction& a, const Direction& b) {
    return a.dx == b.dx && a.dy == b.dy;
  };
  std::size_t shift = 0;
  while (shift < rot.size() && !same(rot_sorted[shift], rot[0])) ++shift;
  REQUIRE(shift < rot.size());
  for (std::size_t i = 0; i < rot.size(); ++i)
    CHECK(same(rot_sorted[(shift + i) % rot.size()], rot[i]));
}

TEST_CASE("ray_segment_intersect examples") {
  auto hit = ray_segment_intersect(P(0, 0), Direction{Rat(1), Rat(0)}, P(2, -1), P(2, 1));
  REQUIRE(hit.has_value());
  CHECK(hit->t == Rat(2));
  CHECK(hit->kind == RayHit::Kind::Interior);

  CHECK(!ray_segment_intersect(P(0, 0), Direction{Rat(1), Rat(0)}, P(-1, 1), P(-1, 2)));

  auto ep = ray_segment_intersect(P(0, 0), Direction{Rat(1), Rat(1)}, P(2, 2), P(3, 1));
  REQUIRE(ep.has_value());
  CHECK(ep->t == Rat(2));
  CHECK(ep->kind == RayHit::Kind::EndpointA);

  CHECK_THROWS_AS(
      ray_segment_intersect(P(0, 0), Direction{Rat(1), Rat(0)}, P(2, 0), P(3, 0)),
      DegeneracyError);
}

TEST_CASE("ray_segment_intersect against exhaustive small-integer check") {
  // Brute force on a small integer grid: solve the 2x2 system with
  // rationals directly and compare existence and parameter.
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> c(-10, 10);
  int checked = 0;
  for (int i = 0; i < 4000; ++i) {
    const Point q = P(c(rng), c(rng));
    const Direction d{Rat(c(rng)), Rat(c(rng))};
    if (d.dx == 0 && d.dy == 0) continue;
    const Point a = P(c(rng), c(rng));
    const Point b = P(c(rng), c(rng));
    if (a == b) continue;
    const Rat denom = d.dx * (b.y - a.y) - d.dy * (b.x - a.x);
    const int side_a = sign_cross(d, vec(q, a));
    const int side_b = sign_cross(d, vec(q, b));
    if (side_a == 0 && side_b == 0) continue;  // collinear support: throws
    std::optional<Rat> expect;
    if (denom != 0) {
      const Rat t = ((a.x - q.x) * (b.y - a.y) - (a.y - q.y) * (b.x - a.x)) / denom;
      const Rat u = ((a.x - q.x) * d.dy - (a.y - q.y) * d.dx) / denom;
      if (t > 0 && u >= 0 && u <= 1) expect = t;
    }
    auto got = ray_segment_intersect(q, d, a, b);
    CHECK(got.has_value() == expect.has_value());
    if (got && expect) CHECK(got->t == *expect);
    ++checked;
  }
  CHECK(checked > 3000);
}

TEST_CASE("primitive_direction") {
  const Direction d{*rat_parse("3/2"), *rat_parse("-9/4")};
  const Direction p = primitive_direction(d);
  CHECK(p.dx == Rat(2));
  CHECK(p.dy == Rat(-3));
  CHECK(same_direction(d, p));
}

TEST_CASE("param_on_segment and point_on_ray") {
  const Point a = P(1, 1), b = P(5, 3);
  const Point mid = P(3, 2);
  CHECK(param_on_segment(a, b, mid) == Rat(1, 2));
  const Point p = point_on_ray(P(0, 0), Direction{Rat(2), Rat(1)}, Rat(3, 2));
  CHECK(p == Point{Rat(3), Rat(3, 2)});
}
