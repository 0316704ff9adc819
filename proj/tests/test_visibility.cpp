#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "errors.hpp"
#include "generator.hpp"
#include "oracle.hpp"
#include "runner.hpp"
#include "sceneio.hpp"
#include "visibility.hpp"

using namespace kvis;

namespace {

std::string fixture(const std::string& name) {
  return std::string(KVIS_FIXTURE_DIR) + "/" + name;
}

struct EndpointKey {
  std::string dir, at;
  std::size_t edge;
  int type;
  bool near;
  auto operator<=>(const EndpointKey&) const = default;
};

std::multiset<EndpointKey> endpoint_set(const std::vector<WindowRecord>& recs) {
  std::multiset<EndpointKey> out;
  for (const auto& r : recs) {
    if (r.kind != WindowRecord::Kind::Endpoint) continue;
    const WindowEndpoint& e = *r.ep;
    out.insert(EndpointKey{rat_to_string(e.dir.dx) + "/" + rat_to_string(e.dir.dy),
                           rat_to_string(e.at.x) + "," + rat_to_string(e.at.y), e.edge,
                           e.type == WindowType::CCW ? 0 : 1, e.near});
  }
  return out;
}

std::vector<WindowRecord> run_constant(const Scene& s, WorkspaceMeter& meter) {
  SceneView view(s);
  RecordingSink<WindowRecord> sink;
  windows_constant(view, meter, sink);
  return sink.records();
}

void check_against_oracle(const Scene& s, const char* tag) {
  WorkspaceMeter meter;
  const auto got = run_constant(s, meter);
  const auto want = oracle_windows(s);
  CHECK_MESSAGE(endpoint_set(got) == endpoint_set(want), tag);
}

}  // namespace

TEST_CASE("classify_vertex matches the oracle on fixtures") {
  for (const char* f : {"poly_fig1", "poly_fig2", "poly_star8", "comb16", "convex32"}) {
    const Scene s = load_scene_file(fixture(f));
    SceneView view(s);
    for (std::size_t v = 0; v < s.num_vertices(); ++v)
      CHECK(classify_vertex(view, v) == oracle_classify(s, v));
  }
}

TEST_CASE("classify_vertex flags collinear neighbours as degenerate") {
  const Scene s = parse_scene(
      "kvis 1\npolygon 4\n0 0\n4 0\n4 4\n0 4\nquery 2 193/97\nk 0\n");
  // q is on the vertical line through vertices 1know nothing: craft q collinear with
  // vertex 0 and its neighbour 1 (the bottom edge): q=(2, 0) would be on the
  // boundary; instead check the dedicated error on an explicit construction.
  Scene bad = s;
  bad.q = Point{Rat(2), Rat(0)};  // on the line through v0 and v1
  SceneView view(bad);
  CHECK_THROWS_AS(classify_vertex(view, 0), DegeneracyError);
}

TEST_CASE("crossings_scan on the square: vertex ray sees the vertex and the far edge") {
  const Scene s = parse_scene(
      "kvis 1\npolygon 4\n0 0\n4 0\n4 4\n0 4\nquery 193/97 199/101\nk 0\n");
  SceneView view(s);
  const RayContext ctx = make_ray(view, 0);
  std::vector<CrossingRecord> recs;
  crossings_scan(ctx, [&](const CrossingRecord& r) { recs.push_back(r); });
  // The two endpoint hits at the corner merge into one single-rank vertex
  // record; beyond the corner the ray has left the polygon.
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].kind == CrossingRecord::Kind::VertexEvent);
  CHECK(recs[0].rank_span == 1);
  CHECK(recs[0].t == Rat(1));
}

TEST_CASE("crossings_scan matches oracle crossing multiset on poly_fig1") {
  const Scene s = load_scene_file(fixture("poly_fig1"));
  SceneView view(s);
  for (std::size_t v : {2UL, 4UL, 7UL, 8UL, 0UL}) {
    const RayContext ctx = make_ray(view, v);
    std::vector<Rat> got;
    int events = 0;
    crossings_scan(ctx, [&](const CrossingRecord& r) {
      if (r.kind == CrossingRecord::Kind::Interior)
        got.push_back(r.t);
      else
        ++events;
    });
    CHECK(events == 1);
    std::sort(got.begin(), got.end());
    const SortedCrossings want = oracle_crossings(s, v);
    REQUIRE(got.size() == want.interior.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want.interior[i].t);
  }
}

TEST_CASE("chain_find_edge walks to the crossing edge") {
  const Scene s = load_scene_file(fixture("poly_fig1"));
  SceneView view(s);
  // Ray through the end-critical vertex 2; the chain containing edge 9
  // (top-left run) crosses it somewhere.
  const RayContext ctx = make_ray(view, 2);
  const SortedCrossings sc = oracle_crossings(s, 2);
  for (const auto& hit : sc.interior) {
    // Starting anywhere on the hit edge's chain finds the same crossing.
    const ChainFind f = chain_find_edge(view, ctx, hit.edge);
    CHECK(f.state == ChainFind::State::Interior);
    CHECK(f.edge == hit.edge);
    CHECK(f.t == hit.t);
  }
  // A chain entirely on one side reports a miss: the bottom-right chain
  // relative to a ray pointing up-left.
  const RayContext up = make_ray(view, 11);
  ChainFind miss = chain_find_edge(view, up, 5);
  CHECK(miss.state != ChainFind::State::Interior);
}

TEST_CASE("rank_crossing with and without hints equals oracle ranks") {
  for (const char* f : {"poly_fig1", "poly_fig2", "poly_star8"}) {
    const Scene s = load_scene_file(fixture(f));
    SceneView view(s);
    WorkspaceMeter meter;
    for (std::size_t v = 0; v < s.num_vertices(); ++v) {
      if (oracle_classify(s, v) == VertexClass::NonCritical) continue;
      const RayContext ctx = make_ray(view, v);
      const SortedCrossings sc = oracle_crossings(s, v);
      const long m = sc.below_vertex;
      const long total = static_cast<long>(sc.interior.size());
      for (long r = 1; r <= total + 3; ++r) {
        const LocatedRank lr = rank_crossing(ctx, r, std::nullopt, 1, meter);
        CHECK(lr.m == m);
        // Expected crossing at true rank r.
        if (r <= m) {
          REQUIRE(lr.at.has_value());
          CHECK(lr.at->kind == CrossingRecord::Kind::Interior);
          CHECK(lr.at->t == sc.interior[r - 1].t);
        } else if (r <= m + 2) {
          REQUIRE(lr.at.has_value());
          CHECK(lr.at->kind == CrossingRecord::Kind::VertexEvent);
        } else if (r - 2 <= total) {
          REQUIRE(lr.at.has_value());
          CHECK(lr.at->kind == CrossingRecord::Kind::Interior);
          CHECK(lr.at->t == sc.interior[r - 3].t);
        } else {
          CHECK(!lr.at.has_value());
        }
      }
    }
  }
}

TEST_CASE("windows_constant equals oracle on every fixture and several k") {
  for (const char* f :
       {"poly_fig1", "poly_fig2", "poly_star8", "comb16", "convex32", "holes1",
        "seg_layers"}) {
    Scene s = load_scene_file(fixture(f));
    for (long k : {0L, 2L, 4L, 6L}) {
      s.k_input = k;
      check_against_oracle(s, f);
    }
  }
}

TEST_CASE("windows_constant equals oracle on random scenes") {
  int scenes = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    for (const char* profile : {"random-simple", "star8", "comb8", "holes", "segments"}) {
      Scene s = random_scene(seed, 10 + (seed % 24), profile, 0);
      for (long k : {0L, 2L, 4L}) {
        s.k_input = k;
        check_against_oracle(s, profile);
        ++scenes;
      }
    }
  }
  CHECK(scenes == 600);
}

TEST_CASE("window invariants: collinearity, incidence, ordering, count") {
  for (const char* f : {"poly_fig1", "poly_fig2", "poly_star8", "comb16", "seg_layers"}) {
    Scene s = load_scene_file(fixture(f));
    for (long k : {0L, 2L, 4L}) {
      s.k_input = k;
      WorkspaceMeter meter;
      const auto recs = run_constant(s, meter);
      std::size_t endpoints = 0;
      for (const auto& r : recs) {
        if (r.kind != WindowRecord::Kind::Endpoint) continue;
        ++endpoints;
        const WindowEndpoint& e = *r.ep;
        // Endpoint, its mate and q are collinear.
        CHECK(orient(s.q, e.at, e.mate) == 0);
        // The endpoint lies on its claimed edge.
        const Point a = s.pts[s.edge_src(e.edge)];
        const Point b = s.pts[s.edge_dst(e.edge)];
        CHECK(orient(a, b, e.at) == 0);
        const Rat u = param_on_segment(a, b, e.at);
        CHECK(u >= 0);
        CHECK(u <= 1);
        if (e.near) {
          // near strictly closer to q than far, on the outgoing ray.
          const Direction d = e.dir;
          const Rat tn = (d.dx != 0) ? (e.at.x - s.q.x) / d.dx : (e.at.y - s.q.y) / d.dy;
          const Rat tf =
              (d.dx != 0) ? (e.mate.x - s.q.x) / d.dx : (e.mate.y - s.q.y) / d.dy;
          CHECK(tn > 0);
          CHECK(tn < tf);
        }
        // Type matches the source vertex class.
        const VertexClass cls = oracle_classify(s, e.source_vertex);
        CHECK((e.type == WindowType::CCW) == (cls == VertexClass::EndCritical));
      }
      // At most one window per critical vertex.
      CHECK(endpoints / 2 <= scene_critical_count(s));
    }
  }
}

TEST_CASE("strict-mode workspace of windows_constant is a fixed constant") {
  std::set<std::int64_t> peaks;
  for (const std::size_t teeth : {8UL}) {
    for (const std::size_t n : {128UL, 256UL, 512UL, 1024UL, 2048UL, 4096UL}) {
      Scene s = random_scene(5, n, "comb" + std::to_string(teeth), 4);
      WorkspaceMeter meter(kBudgetConstantWords, true);
      run_constant(s, meter);
      peaks.insert(meter.peak_words());
      CHECK(meter.peak_words() <= kBudgetConstantWords);
    }
  }
  CHECK(peaks.size() == 1);  // identical peak across all n
}

TEST_CASE("read bound: windows_constant reads <= a*(k+c+1)*n") {
  for (const std::size_t n : {128UL, 512UL, 2048UL}) {
    for (const long k : {0L, 4L, 8L}) {
      Scene s = random_scene(5, n, "comb8", k);
      SceneView view(s);
      WorkspaceMeter meter;
      RecordingSink<WindowRecord> sink;
      windows_constant(view, meter, sink);
      const std::uint64_t c = scene_critical_count(s);
      const std::uint64_t bound =
          16ULL * (static_cast<std::uint64_t>(k) + c + 1) * s.num_records();
      CHECK(view.reads() <= bound);
    }
  }
}

TEST_CASE("k-visibility monotonicity via point sampling") {
  const Scene base = load_scene_file(fixture("poly_star8"));
  Scene s0 = base, s2 = base;
  s0.k_input = 0;
  s2.k_input = 2;
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<long> c(-9000, 9000);
  int tested = 0;
  for (int i = 0; i < 4000 && tested < 800; ++i) {
    const Point p{Rat(c(rng)), Rat(c(rng))};
    const PointClass a = classify_point(s0, p);
    const PointClass b = classify_point(s2, p);
    if (a == PointClass::Degenerate || b == PointClass::Degenerate) continue;
    ++tested;
    if (a == PointClass::Visible) CHECK(b == PointClass::Visible);
  }
  CHECK(tested >= 800);
}
