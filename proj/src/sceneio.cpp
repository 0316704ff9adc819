#include "sceneio.hpp"

#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace kvis {

namespace {

struct LineReader {
  std::istringstream in;
  std::size_t lineno = 0;
  explicit LineReader(const std::string& text) : in(text) {}

  std::vector<std::string> next_tokens() {
    std::string line;
    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream ls(line);
      std::vector<std::string> toks;
      std::string t;
      while (ls >> t) toks.push_back(t);
      if (!toks.empty()) return toks;
    }
    throw ParseError(lineno + 1, "unexpected end of input");
  }
};

Rat parse_rat_or_throw(const std::string& tok, std::size_t line) {
  auto r = rat_parse(tok);
  if (!r) throw ParseError(line, "bad number '" + tok + "'");
  return *r;
}

long parse_long(const std::string& tok, std::size_t line) {
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "bad integer '" + tok + "'");
  }
}

void read_polygon_block(LineReader& lr, Scene& s, std::size_t expect_count) {
  const Ring ring{s.pts.size(), expect_count};
  for (std::size_t i = 0; i < expect_count; ++i) {
    auto toks = lr.next_tokens();
    if (toks.size() != 2) throw ParseError(lr.lineno, "expected '<x> <y>'");
    s.pts.push_back(Point{parse_rat_or_throw(toks[0], lr.lineno),
                          parse_rat_or_throw(toks[1], lr.lineno)});
  }
  s.rings.push_back(ring);
}

void read_tail(LineReader& lr, Scene& s) {
  auto toks = lr.next_tokens();
  if (toks.size() != 3 || toks[0] != "query")
    throw ParseError(lr.lineno, "expected 'query <x> <y>'");
  s.q = Point{parse_rat_or_throw(toks[1], lr.lineno), parse_rat_or_throw(toks[2], lr.lineno)};
  toks = lr.next_tokens();
  if (toks.size() != 2 || toks[0] != "k") throw ParseError(lr.lineno, "expected 'k <int>'");
  s.k_input = parse_long(toks[1], lr.lineno);
}

}  // namespace

Scene parse_scene(const std::string& text) {
  LineReader lr(text);
  auto toks = lr.next_tokens();
  if (toks.size() != 2 || toks[0] != "kvis" || toks[1] != "1")
    throw ParseError(lr.lineno, "expected header 'kvis 1'");

  Scene s;
  toks = lr.next_tokens();
  if (toks[0] == "polygon") {
    if (toks.size() != 2) throw ParseError(lr.lineno, "expected 'polygon <n>'");
    s.kind = SceneKind::Polygon;
    const long n = parse_long(toks[1], lr.lineno);
    if (n < 3) throw ParseError(lr.lineno, "polygon needs at least 3 vertices");
    read_polygon_block(lr, s, static_cast<std::size_t>(n));
  } else if (toks[0] == "holes") {
    if (toks.size() != 2) throw ParseError(lr.lineno, "expected 'holes <h>'");
    s.kind = SceneKind::Holes;
    const long h = parse_long(toks[1], lr.lineno);
    if (h < 0) throw ParseError(lr.lineno, "negative hole count");
    for (long i = 0; i <= h; ++i) {
      auto p = lr.next_tokens();
      if (p.size() != 2 || p[0] != "polygon")
        throw ParseError(lr.lineno, "expected 'polygon <n>' for component " +
                                        std::to_string(i));
      const long n = parse_long(p[1], lr.lineno);
      if (n < 3) throw ParseError(lr.lineno, "ring needs at least 3 vertices");
      read_polygon_block(lr, s, static_cast<std::size_t>(n));
    }
  } else if (toks[0] == "segments") {
    if (toks.size() != 7 || toks[2] != "box")
      throw ParseError(lr.lineno, "expected 'segments <n> box <x0> <y0> <x1> <y1>'");
    s.kind = SceneKind::Segments;
    const long n = parse_long(toks[1], lr.lineno);
    if (n < 1) throw ParseError(lr.lineno, "need at least one segment");
    std::array<Rat, 4> box;
    for (int i = 0; i < 4; ++i) box[i] = parse_rat_or_throw(toks[3 + i], lr.lineno);
    s.box = box;
    // Box ring, counterclockwise.
    s.pts.push_back(Point{box[0], box[1]});
    s.pts.push_back(Point{box[2], box[1]});
    s.pts.push_back(Point{box[2], box[3]});
    s.pts.push_back(Point{box[0], box[3]});
    s.rings.push_back(Ring{0, 4});
    s.n_segments = static_cast<std::size_t>(n);
    for (long i = 0; i < n; ++i) {
      auto t = lr.next_tokens();
      if (t.size() != 4) throw ParseError(lr.lineno, "expected '<ax> <ay> <bx> <by>'");
      s.pts.push_back(Point{parse_rat_or_throw(t[0], lr.lineno),
                            parse_rat_or_throw(t[1], lr.lineno)});
      s.pts.push_back(Point{parse_rat_or_throw(t[2], lr.lineno),
                            parse_rat_or_throw(t[3], lr.lineno)});
    }
  } else {
    throw ParseError(lr.lineno, "expected 'polygon', 'holes' or 'segments'");
  }
  read_tail(lr, s);
  return s;
}

Scene load_scene_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidSceneError("cannot open scene file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str());
}

namespace {

std::string pt_str(const Point& p) { return rat_to_string(p.x) + " " + rat_to_string(p.y); }

}  // namespace

std::string print_scene(const Scene& s) {
  std::ostringstream out;
  out << "kvis 1\n";
  switch (s.kind) {
    case SceneKind::Polygon:
      out << "polygon " << s.rings[0].len << "\n";
      for (std::size_t i = 0; i < s.rings[0].len; ++i) out << pt_str(s.pts[i]) << "\n";
      break;
    case SceneKind::Holes:
      out << "holes " << s.rings.size() - 1 << "\n";
      for (const Ring& r : s.rings) {
        out << "polygon " << r.len << "\n";
        for (std::size_t i = 0; i < r.len; ++i) out << pt_str(s.pts[r.start + i]) << "\n";
      }
      break;
    case SceneKind::Segments: {
      const auto& b = *s.box;
      out << "segments " << s.n_segments << " box " << rat_to_string(b[0]) << " "
          << rat_to_string(b[1]) << " " << rat_to_string(b[2]) << " " << rat_to_string(b[3])
          << "\n";
      const std::size_t rv = s.ring_vertex_count();
      for (std::size_t i = 0; i < s.n_segments; ++i)
        out << pt_str(s.pts[rv + 2 * i]) << " " << pt_str(s.pts[rv + 2 * i + 1]) << "\n";
      break;
    }
  }
  out << "query " << pt_str(s.q) << "\n";
  out << "k " << s.k_input << "\n";
  return out.str();
}

namespace {

const char* type_str(WindowType t) { return t == WindowType::CCW ? "CCW" : "CW"; }

std::string xy_comma(const Point& p) {
  return rat_to_string(p.x) + "," + rat_to_string(p.y);
}

}  // namespace

std::string format_window_records(const std::vector<WindowRecord>& records) {
  std::ostringstream out;
  for (const WindowRecord& r : records) {
    switch (r.kind) {
      case WindowRecord::Kind::WholeSceneVisible:
        out << "MARK whole_scene_visible\n";
        break;
      case WindowRecord::Kind::NoCriticalVertices:
        out << "MARK no_critical_vertices\n";
        break;
      case WindowRecord::Kind::Endpoint: {
        const WindowEndpoint& ep = *r.ep;
        out << "W theta_dir=" << rat_to_string(ep.dir.dx) << "/" << rat_to_string(ep.dir.dy)
            << " j=" << ep.edge << " type=" << type_str(ep.type) << " at="
            << rat_to_string(ep.at.x) << " " << rat_to_string(ep.at.y) << "\n";
        break;
      }
    }
  }
  return out.str();
}

std::string format_boundary_records(const std::vector<BoundaryRecord>& records) {
  std::ostringstream out;
  for (const BoundaryRecord& r : records) {
    switch (r.kind) {
      case BoundaryRecord::Kind::WholeSceneVisible:
        out << "MARK whole_scene_visible\n";
        break;
      case BoundaryRecord::Kind::Arc:
        out << "ARC e=" << r.edge << " from=" << xy_comma(r.from) << " to=" << xy_comma(r.to)
            << "\n";
        break;
      case BoundaryRecord::Kind::Chord:
        out << "CHORD e=" << r.edge << " type=" << type_str(r.type)
            << " from=" << xy_comma(r.from) << " to=" << xy_comma(r.to) << "\n";
        break;
    }
  }
  return out.str();
}

std::string format_stats(const CounterReport& counters, std::uint64_t windows) {
  std::ostringstream out;
  out << "STATS reads=" << counters.reads << " peak_words=" << counters.peak_words
      << " windows=" << windows << "\n";
  return out.str();
}

}  // namespace kvis
