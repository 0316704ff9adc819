#include "svg.hpp"

#include <algorithm>
#include <sstream>

namespace kvis {

namespace {

struct Box {
  double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
};

Box scene_box(const Scene& s) {
  Box b;
  bool first = true;
  for (const Point& p : s.pts) {
    const double x = rat_to_double(p.x), y = rat_to_double(p.y);
    if (first) {
      b = Box{x, y, x, y};
      first = false;
    }
    b.x0 = std::min(b.x0, x);
    b.y0 = std::min(b.y0, y);
    b.x1 = std::max(b.x1, x);
    b.y1 = std::max(b.y1, y);
  }
  const double pad = 0.05 * std::max(b.x1 - b.x0, b.y1 - b.y0) + 1.0;
  b.x0 -= pad;
  b.y0 -= pad;
  b.x1 += pad;
  b.y1 += pad;
  return b;
}

void line(std::ostringstream& out, const Point& a, const Point& b, const char* style) {
  out << "<line x1=\"" << rat_to_double(a.x) << "\" y1=\"" << rat_to_double(a.y)
      << "\" x2=\"" << rat_to_double(b.x) << "\" y2=\"" << rat_to_double(b.y) << "\" "
      << style << "/>\n";
}

}  // namespace

std::string render_svg(const Scene& scene, const RunResult& result) {
  const Box b = scene_box(scene);
  std::ostringstream out;
  const double w = b.x1 - b.x0, h = b.y1 - b.y0;
  const double stroke = std::max(w, h) / 400.0;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << b.x0
      << " " << -b.y1 << " " << w << " " << h << "\">\n";
  out << "<g transform=\"scale(1,-1)\">\n";

  std::ostringstream thin, thick, dash;
  thin << "stroke=\"#444\" stroke-width=\"" << stroke << "\" fill=\"none\"";
  thick << "stroke=\"#c22\" stroke-width=\"" << 2.5 * stroke << "\" fill=\"none\"";
  dash << "stroke=\"#22c\" stroke-width=\"" << 1.5 * stroke << "\" stroke-dasharray=\""
       << 4 * stroke << "," << 3 * stroke << "\" fill=\"none\"";

  const Scene& s = scene;
  for (std::size_t e = 0; e < s.num_edges(); ++e)
    line(out, s.pts[s.edge_src(e)], s.pts[s.edge_dst(e)], thin.str().c_str());

  for (const BoundaryRecord& r : result.boundary) {
    if (r.kind == BoundaryRecord::Kind::Arc) line(out, r.from, r.to, thick.str().c_str());
    if (r.kind == BoundaryRecord::Kind::Chord) line(out, r.from, r.to, thick.str().c_str());
  }
  for (const WindowRecord& r : result.windows) {
    if (r.kind != WindowRecord::Kind::Endpoint || !r.ep->near) continue;
    line(out, r.ep->at, r.ep->mate, dash.str().c_str());
  }

  out << "<circle cx=\"" << rat_to_double(s.q.x) << "\" cy=\"" << rat_to_double(s.q.y)
      << "\" r=\"" << 3 * stroke << "\" fill=\"#000\"/>\n";
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace kvis
