#include "tilequot/render.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace tilequot {

namespace {

struct Pt {
  double x, y;
};

Pt to_pt(const Vec2& v) { return {v.x.to_double(), v.y.to_double()}; }

const char* face_fill(std::size_t n) {
  switch (n) {
    case 3: return "#f6e3a1";
    case 4: return "#a9d6e5";
    case 6: return "#f4b183";
    case 8: return "#c5e0b4";
    case 12: return "#d9c2e9";
    default: return "#dddddd";
  }
}

// Evenly spaced hues, fixed saturation and lightness.
std::string vertex_color(int label, int classes) {
  const double h = 6.0 * label / std::max(classes, 1), s = 0.7, l = 0.42;
  const double c = (1 - std::fabs(2 * l - 1)) * s, x = c * (1 - std::fabs(std::fmod(h, 2.0) - 1)), m = l - c / 2;
  double rgb[3] = {0, 0, 0};
  const int sector = static_cast<int>(h) % 6;
  const int order[6][3] = {{0, 1, 2}, {1, 0, 2}, {2, 0, 1}, {2, 1, 0}, {1, 2, 0}, {0, 2, 1}};
  rgb[order[sector][0]] = c;
  rgb[order[sector][1]] = x;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround((rgb[0] + m) * 255)),
                static_cast<int>(std::lround((rgb[1] + m) * 255)), static_cast<int>(std::lround((rgb[2] + m) * 255)));
  return buf;
}

class Canvas {
 public:
  void polygon(const std::vector<Pt>& pts, const std::string& style) { items_.push_back({Kind::Poly, pts, style, 0}); grow(pts); }
  void line(Pt a, Pt b, const std::string& style) { items_.push_back({Kind::Line, {a, b}, style, 0}); grow({a, b}); }
  void disk(Pt c, double r, const std::string& style) { items_.push_back({Kind::Disk, {c}, style, r}); grow({c}); }

  std::string str() const {
    const double scale = 40, pad = 0.5;
    const double w = (maxx_ - minx_ + 2 * pad) * scale, h = (maxy_ - miny_ + 2 * pad) * scale;
    auto X = [&](double x) { return (x - minx_ + pad) * scale; };
    auto Y = [&](double y) { return (maxy_ - y + pad) * scale; };
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
    for (const auto& it : items_) {
      switch (it.kind) {
        case Kind::Poly:
          os << "<polygon points=\"";
          for (const auto& p : it.pts) os << X(p.x) << ',' << Y(p.y) << ' ';
          os << "\" " << it.style << "/>\n";
          break;
        case Kind::Line:
          os << "<line x1=\"" << X(it.pts[0].x) << "\" y1=\"" << Y(it.pts[0].y) << "\" x2=\"" << X(it.pts[1].x)
             << "\" y2=\"" << Y(it.pts[1].y) << "\" " << it.style << "/>\n";
          break;
        case Kind::Disk:
          os << "<circle cx=\"" << X(it.pts[0].x) << "\" cy=\"" << Y(it.pts[0].y) << "\" r=\"" << it.r * scale << "\" "
             << it.style << "/>\n";
          break;
      }
    }
    os << "</svg>\n";
    return os.str();
  }

 private:
  enum class Kind { Poly, Line, Disk };
  struct Item {
    Kind kind;
    std::vector<Pt> pts;
    std::string style;
    double r;
  };
  void grow(const std::vector<Pt>& pts) {
    for (const auto& p : pts) {
      minx_ = std::min(minx_, p.x);
      maxx_ = std::max(maxx_, p.x);
      miny_ = std::min(miny_, p.y);
      maxy_ = std::max(maxy_, p.y);
    }
  }
  std::vector<Item> items_;
  double minx_ = std::numeric_limits<double>::max(), maxx_ = std::numeric_limits<double>::lowest();
  double miny_ = std::numeric_limits<double>::max(), maxy_ = std::numeric_limits<double>::lowest();
};

Vec2 default_center(const PeriodicTiling& t) {
  auto centers = half_turn_centers(t);
  if (centers.empty()) throw TilingError("G undefined: no half-turn symmetry");
  std::size_t best = 0, best_count = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < centers.size(); ++i) {
    auto n = orbit_count(t, GroupTag::G, centers[i]).size();
    if (n < best_count) best = i, best_count = n;
  }
  return centers[best];
}

// Orbit label for each motif vertex.
std::vector<int> motif_labels(const RenderSpec& spec) {
  const auto& t = *spec.tiling;
  OrbitPartition p;
  switch (spec.color_by) {
    case ColorBy::H: p = orbit_count(t, GroupTag::H); break;
    case ColorBy::G: p = orbit_count(t, GroupTag::G, spec.center ? *spec.center : default_center(t)); break;
    case ColorBy::Full: p = orbit_count(t, GroupTag::Full); break;
    case ColorBy::Aut: throw std::invalid_argument("AUT colouring needs a quotient");
  }
  std::vector<int> label(t.vertex_count());
  for (std::size_t b = 0; b < p.blocks.size(); ++b)
    for (int v : p.blocks[b]) label[v] = static_cast<int>(b);
  return label;
}

int distinct(const std::vector<int>& labels) { return static_cast<int>(std::set<int>(labels.begin(), labels.end()).size()); }

RenderResult render_patch(const RenderSpec& spec) {
  const auto& t = *spec.tiling;
  if (spec.x1 < spec.x0 || spec.y1 < spec.y0) throw std::invalid_argument("empty patch extent");
  auto label = motif_labels(spec);
  const int classes = distinct(label);
  Canvas c;
  RenderResult res;
  for (auto i = spec.x0; i <= spec.x1; ++i)
    for (auto j = spec.y0; j <= spec.y1; ++j)
      for (const auto& face : t.faces) {
        std::vector<Pt> pts;
        for (const auto& corner : face) pts.push_back(to_pt(t.position(corner.vertex, corner.shift + Shift{i, j})));
        c.polygon(pts, std::string("fill=\"") + face_fill(face.size()) + "\" stroke=\"#333\" stroke-width=\"1\"");
      }
  for (auto i = spec.x0; i <= spec.x1; ++i)
    for (auto j = spec.y0; j <= spec.y1; ++j)
      for (int v = 0; v < t.vertex_count(); ++v) {
        c.disk(to_pt(t.position(v, {i, j})), 0.12, "fill=\"" + vertex_color(label[v], classes) + "\" stroke=\"#000\"");
        ++res.vertex_disks;
      }
  res.svg = c.str();
  res.color_classes = classes;
  return res;
}

RenderResult render_quotient(const RenderSpec& spec) {
  const auto& t = *spec.tiling;
  const Sublattice& s = *spec.quotient;
  ToroidalMap x = make_quotient(t, s, false);
  std::vector<int> label(x.num_vertices());
  if (spec.color_by == ColorBy::Aut) {
    auto fs = build_flags(x);
    label = vertex_orbit_labels(fs, automorphism_group(fs));
  } else {
    auto motif = motif_labels(spec);
    for (int v = 0; v < x.num_vertices(); ++v) label[v] = motif[v / s.index];
  }
  const int classes = distinct(label);
  Canvas c;
  RenderResult res;
  for (std::size_t f = 0; f < t.faces.size(); ++f)
    for (std::int64_t r = 0; r < s.index; ++r) {
      std::vector<Pt> pts;
      for (const auto& corner : t.faces[f]) pts.push_back(to_pt(t.position(corner.vertex, corner.shift + s.representative(r))));
      c.polygon(pts, std::string("fill=\"") + face_fill(t.faces[f].size()) + "\" stroke=\"#333\" stroke-width=\"1\"");
    }
  // fundamental parallelogram; opposite sides carry the same marking
  const Vec2 o = t.lattice_vector({0, 0}), a = t.lattice_vector(s.m.col0()), b = t.lattice_vector(s.m.col1());
  const std::string dash_a = "stroke=\"#c00\" stroke-width=\"3\" fill=\"none\"";
  const std::string dash_b = "stroke=\"#00c\" stroke-width=\"3\" stroke-dasharray=\"8,4\" fill=\"none\"";
  c.line(to_pt(o), to_pt(a), dash_a);
  c.line(to_pt(b), to_pt(a + b), dash_a);
  c.line(to_pt(o), to_pt(b), dash_b);
  c.line(to_pt(a), to_pt(a + b), dash_b);
  for (int v = 0; v < t.vertex_count(); ++v)
    for (std::int64_t r = 0; r < s.index; ++r) {
      int q = x.vertex_of(v, s.representative(r));
      c.disk(to_pt(t.position(v, s.representative(r))), 0.12, "fill=\"" + vertex_color(label[q], classes) + "\" stroke=\"#000\"");
      ++res.vertex_disks;
    }
  res.svg = c.str();
  res.color_classes = classes;
  return res;
}

}  // namespace

ColorBy parse_color_by(const std::string& s) {
  std::string u;
  for (char ch : s) u += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (u == "H") return ColorBy::H;
  if (u == "G") return ColorBy::G;
  if (u == "FULL") return ColorBy::Full;
  if (u == "AUT") return ColorBy::Aut;
  throw std::invalid_argument("colour-by must be H, G, FULL or AUT");
}

RenderResult render_svg_string(const RenderSpec& spec) {
  if (!spec.tiling) throw std::invalid_argument("render target missing");
  return spec.quotient ? render_quotient(spec) : render_patch(spec);
}

RenderResult render_svg(const RenderSpec& spec) {
  auto res = render_svg_string(spec);
  std::ofstream out(spec.output);
  if (!out) throw std::runtime_error("cannot write " + spec.output.string());
  out << res.svg;
  if (!out) throw std::runtime_error("write failed: " + spec.output.string());
  return res;
}

}  // namespace tilequot
