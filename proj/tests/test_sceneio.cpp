#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "generator.hpp"
#include "sceneio.hpp"

using namespace kvis;

namespace {
const std::vector<std::string> kFixtures = {"poly_fig1", "poly_fig2", "poly_star8",
                                            "comb16",    "convex32",  "holes1",
                                            "seg_layers"};
std::string fixture_path(const std::string& name) {
  return std::string(KVIS_FIXTURE_DIR) + "/" + name;
}
}  // namespace

TEST_CASE("round-trip parse(print(scene)) == scene on all fixtures") {
  for (const std::string& f : kFixtures) {
    const Scene s = load_scene_file(fixture_path(f));
    const Scene again = parse_scene(print_scene(s));
    CHECK(again == s);
    // Printing is canonical, so a second round is byte-identical.
    CHECK(print_scene(again) == print_scene(s));
  }
}

TEST_CASE("round-trip on generated scenes of every kind") {
  for (const char* profile : {"star8", "holes", "segments", "random-simple"}) {
    const Scene s = random_scene(11, 20, profile, 2);
    CHECK(parse_scene(print_scene(s)) == s);
  }
}

TEST_CASE("decimal input parses exactly") {
  const Scene s = parse_scene(
      "kvis 1\npolygon 3\n0 0\n4 0\n0.5 2.25\nquery 1.5 0.25\nk 1\n");
  CHECK(s.pts[2] == Point{Rat(1, 2), Rat(9, 4)});
  CHECK(s.q == Point{Rat(3, 2), Rat(1, 4)});
  CHECK(s.k_input == 1);
  CHECK(s.k() == 0);  // odd k rounds down
}

TEST_CASE("parse errors carry line numbers") {
  auto expect_line = [](const std::string& text, std::size_t line) {
    try {
      parse_scene(text);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == line);
    }
  };
  expect_line("nonsense\n", 1);
  expect_line("kvis 1\npolygon x\n", 2);
  expect_line("kvis 1\npolygon 3\n0 0\n1 0\n1 bad\n", 5);
  expect_line("kvis 1\npolygon 3\n0 0\n1 0\n0 1\nquery 0.2\n", 6);
  expect_line("kvis 1\nsegments 1 box 0 0 10 10\n1 1 2 2\nquery 5 5\nk -\n", 5);
}

TEST_CASE("validation rejects broken scenes") {
  // q outside.
  Scene s = parse_scene("kvis 1\npolygon 3\n0 0\n4 0\n0 4\nquery 5 5\nk 0\n");
  CHECK_THROWS_AS(validate_scene(s, ValidationLevel::Exhaustive), InvalidSceneError);
  // self-intersecting bowtie.
  s = parse_scene("kvis 1\npolygon 4\n0 0\n4 4\n4 0\n0 4\nquery 2 1\nk 0\n");
  CHECK_THROWS_AS(validate_scene(s, ValidationLevel::Exhaustive), InvalidSceneError);
  // clockwise outer ring.
  s = parse_scene("kvis 1\npolygon 3\n0 0\n0 4\n4 0\nquery 1 1\nk 0\n");
  CHECK_THROWS_AS(validate_scene(s, ValidationLevel::Exhaustive), InvalidSceneError);
  // weak general position: q on a line through two vertices.
  s = parse_scene("kvis 1\npolygon 4\n-2 -2\n2 -2\n2 2\n-2 2\nquery 0 0\nk 0\n");
  CHECK_THROWS_AS(validate_scene(s, ValidationLevel::Exhaustive), DegeneracyError);
  // hole must be clockwise.
  s = parse_scene(
      "kvis 1\nholes 1\npolygon 4\n0 0\n10 0\n10 10\n0 10\npolygon 4\n4 4\n6 4\n6 6\n4 "
      "6\nquery 1 2\nk 0\n");
  CHECK_THROWS_AS(validate_scene(s, ValidationLevel::Exhaustive), InvalidSceneError);
}

TEST_CASE("fixtures validate exhaustively") {
  for (const std::string& f : kFixtures) {
    const Scene s = load_scene_file(fixture_path(f));
    CHECK_NOTHROW(validate_scene(s, ValidationLevel::Exhaustive));
  }
}

TEST_CASE("result formatting is exact and deterministic") {
  WindowEndpoint ep;
  ep.dir = Direction{Rat(3), Rat(-2)};
  ep.edge = 7;
  ep.type = WindowType::CCW;
  ep.at = Point{Rat(1, 3), Rat(5)};
  ep.near = true;
  const std::string text = format_window_records({WindowRecord::endpoint(ep)});
  CHECK(text == "W theta_dir=3/-2 j=7 type=CCW at=1/3 5\n");

  BoundaryRecord arc{BoundaryRecord::Kind::Arc, 2, Point{Rat(0), Rat(0)},
                     Point{Rat(1), Rat(1, 2)}, WindowType::CCW};
  CHECK(format_boundary_records({arc}) == "ARC e=2 from=0,0 to=1,1/2\n");

  CounterReport counters;
  counters.reads = 42;
  counters.peak_words = 9;
  CHECK(format_stats(counters, 3) == "STATS reads=42 peak_words=9 windows=3\n");
}

TEST_CASE("scene equality is exact") {
  Scene a = parse_scene("kvis 1\npolygon 3\n0 0\n4 0\n0 4\nquery 1 1\nk 0\n");
  Scene b = a;
  CHECK(a == b);
  b.pts[1].x += Rat(1, 1000000);
  CHECK(!(a == b));
}
