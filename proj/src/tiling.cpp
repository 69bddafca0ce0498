#include "tilequot/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace tilequot {

using nlohmann::json;

Vec2 PeriodicTiling::lattice_vector(Shift s) const {
  return QNum(static_cast<long>(s.x)) * alpha + QNum(static_cast<long>(s.y)) * beta;
}

Vec2 PeriodicTiling::position(int v, Shift s) const { return vertices[v].pos + lattice_vector(s); }

std::pair<QNum, QNum> PeriodicTiling::lattice_coords(const Vec2& p) const {
  return {p.cross(beta) * inv_cross, alpha.cross(p) * inv_cross};
}

int PeriodicTiling::index_of_id(int id) const {
  for (int i = 0; i < vertex_count(); ++i)
    if (vertices[i].id == id) return i;
  return -1;
}

std::pair<int, Shift> Symmetry::map_vertex(int v, Shift s) const {
  auto [w, k] = motif_perm[v];
  return {w, k + linear.apply(s)};
}

namespace {

std::string vertex_label(const PeriodicTiling& t, int v) { return std::to_string(t.vertices[v].id); }

// ---- parsing ---------------------------------------------------------------

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw TilingError(where + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; }))
      throw TilingError(where + ": unknown field '" + it.key() + "'");
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw TilingError(where + ": missing field '" + key + "'");
  return *it;
}

QNum parse_qnum(const json& j, const std::string& where) {
  if (!j.is_array()) throw TilingError(where + ": expected a 4-element coefficient array");
  std::vector<std::string> parts;
  for (const auto& e : j) {
    if (e.is_string()) parts.push_back(e.get<std::string>());
    else if (e.is_number_integer()) parts.push_back(std::to_string(e.get<long long>()));
    else throw TilingError(where + ": coefficients must be \"p/q\" strings");
  }
  try {
    return QNum::from_strings(parts);
  } catch (const std::invalid_argument& e) {
    throw TilingError(where + ": " + e.what());
  }
}

Vec2 parse_vec(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw TilingError(where + ": expected [x, y]");
  return {parse_qnum(j[0], where + ".x"), parse_qnum(j[1], where + ".y")};
}

std::vector<std::int64_t> parse_ints(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n)
    throw TilingError(where + ": expected " + std::to_string(n) + " integers");
  std::vector<std::int64_t> out;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw TilingError(where + ": expected integers");
    out.push_back(e.get<std::int64_t>());
  }
  return out;
}

json qnum_json(const QNum& v) {
  auto s = v.to_strings();
  return json::array({s[0], s[1], s[2], s[3]});
}

json vec_json(const Vec2& v) { return json::array({qnum_json(v.x), qnum_json(v.y)}); }

// Reduces a generating set of translations to a basis. Returns the basis and
// the integer coordinates of each generator in it.
struct ReducedBasis {
  Vec2 alpha, beta;
  std::vector<Shift> generator_coords;
};

ReducedBasis reduce_generators(const std::vector<Vec2>& gens) {
  std::size_t n = gens.size();
  std::size_t i0 = n, j0 = n;
  for (std::size_t i = 0; i < n && i0 == n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!gens[i].cross(gens[j]).is_zero()) {
        i0 = i;
        j0 = j;
        break;
      }
  if (i0 == n) throw TilingError("basis: translation vectors are linearly dependent");
  const Vec2& u = gens[i0];
  const Vec2& v = gens[j0];
  QNum inv = u.cross(v).inverse();
  std::vector<std::pair<Rational, Rational>> rc;
  mpz_class den = 1;
  for (const auto& g : gens) {
    QNum r = g.cross(v) * inv, s = u.cross(g) * inv;
    if (!r.is_rational() || !s.is_rational())
      throw TilingError("basis: translation vectors do not generate a lattice");
    rc.emplace_back(r.a(), s.a());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.a().get_den_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), s.a().get_den_mpz_t());
  }
  std::vector<Shift> cols;
  for (auto& [r, s] : rc) {
    Rational x = r * den, y = s * den;
    cols.push_back({x.get_num().get_si(), y.get_num().get_si()});
  }
  IntMat2 h = hnf_of_generators(cols);
  Rational dq(den, 1);
  QNum inv_den(Rational(1) / dq);
  ReducedBasis out;
  out.alpha = inv_den * (QNum(static_cast<long>(h.m00)) * u + QNum(static_cast<long>(h.m10)) * v);
  out.beta = inv_den * (QNum(static_cast<long>(h.m01)) * u + QNum(static_cast<long>(h.m11)) * v);
  // coordinates: h * c = col, h upper triangular
  for (const auto& c : cols) {
    std::int64_t cy = c.y / h.m11;
    std::int64_t cx = (c.x - cy * h.m01) / h.m00;
    out.generator_coords.push_back({cx, cy});
  }
  return out;
}

// ---- geometry helpers ------------------------------------------------------

// cos and sin of 2*pi/n for the supported polygons
std::optional<std::pair<QNum, QNum>> turn(int n) {
  Rational half(1, 2);
  switch (n) {
    case 3: return std::make_pair(QNum(-half), QNum(0, 0, half));
    case 4: return std::make_pair(QNum(0), QNum(1));
    case 6: return std::make_pair(QNum(half), QNum(0, 0, half));
    case 8: return std::make_pair(QNum(0, half), QNum(0, half));
    case 12: return std::make_pair(QNum(0, 0, half), QNum(half));
    default: return std::nullopt;
  }
}

Vec2 rotate(const Vec2& v, const std::pair<QNum, QNum>& cs) {
  return {cs.first * v.x - cs.second * v.y, cs.second * v.x + cs.first * v.y};
}

QNum face_area2(const PeriodicTiling& t, const std::vector<Corner>& f) {
  QNum a = 0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    Vec2 p = t.position(f[j].vertex, f[j].shift);
    Vec2 q = t.position(f[(j + 1) % f.size()].vertex, f[(j + 1) % f.size()].shift);
    a += p.cross(q);
  }
  return a;
}

bool is_integral(const QNum& v) { return v.is_integer(); }

std::int64_t to_int(const QNum& v) { return v.a().get_num().get_si(); }

using EdgeKey = std::tuple<int, int, std::int64_t, std::int64_t>;

std::map<EdgeKey, int> edge_index(const PeriodicTiling& t) {
  std::map<EdgeKey, int> idx;
  for (int e = 0; e < static_cast<int>(t.edges.size()); ++e) {
    const auto& ed = t.edges[e];
    idx[{ed.tail, ed.head, ed.shift.x, ed.shift.y}] = e;
    idx[{ed.head, ed.tail, -ed.shift.x, -ed.shift.y}] = e;
  }
  return idx;
}

}  // namespace

// ---- loading -----------------------------------------------------------------

PeriodicTiling parse_tiling(const json& j) {
  reject_unknown(j, {"name", "expected_k", "basis", "vertices", "edges", "faces"}, "tiling");
  PeriodicTiling t;
  const json& name = require(j, "name", "tiling");
  if (!name.is_string()) throw TilingError("name: expected a string");
  t.name = name.get<std::string>();
  if (auto it = j.find("expected_k"); it != j.end()) {
    if (!it->is_number_integer() || it->get<int>() < 1) throw TilingError("expected_k: expected a positive integer");
    t.expected_k = it->get<int>();
  }
  const json& basis = require(j, "basis", "tiling");
  if (!basis.is_array() || basis.size() < 2) throw TilingError("basis: expected at least 2 vectors");
  std::vector<Vec2> gens;
  for (std::size_t i = 0; i < basis.size(); ++i) gens.push_back(parse_vec(basis[i], "basis[" + std::to_string(i) + "]"));
  const std::size_t ngen = gens.size();
  ReducedBasis rb;
  if (ngen == 2) {
    rb.alpha = gens[0];
    rb.beta = gens[1];
    rb.generator_coords = {{1, 0}, {0, 1}};
  } else {
    rb = reduce_generators(gens);
  }
  t.alpha = rb.alpha;
  t.beta = rb.beta;
  auto to_shift = [&](const json& js, const std::string& where) {
    auto v = parse_ints(js, ngen, where);
    Shift s;
    for (std::size_t i = 0; i < ngen; ++i) {
      s.x += v[i] * rb.generator_coords[i].x;
      s.y += v[i] * rb.generator_coords[i].y;
    }
    return s;
  };

  const json& verts = require(j, "vertices", "tiling");
  if (!verts.is_array() || verts.empty()) throw TilingError("vertices: expected a nonempty array");
  std::map<int, int> by_id;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    std::string where = "vertices[" + std::to_string(i) + "]";
    reject_unknown(verts[i], {"id", "pos"}, where);
    const json& id = require(verts[i], "id", where);
    if (!id.is_number_integer()) throw TilingError(where + ".id: expected an integer");
    MotifVertex mv{id.get<int>(), parse_vec(require(verts[i], "pos", where), where + ".pos")};
    if (!by_id.emplace(mv.id, static_cast<int>(i)).second)
      throw TilingError(where + ": duplicate vertex id " + std::to_string(mv.id));
    t.vertices.push_back(std::move(mv));
  }
  auto vref = [&](const json& js, const std::string& where) {
    if (!js.is_number_integer()) throw TilingError(where + ": expected a vertex id");
    auto it = by_id.find(js.get<int>());
    if (it == by_id.end()) throw TilingError(where + ": unknown vertex id " + std::to_string(js.get<int>()));
    return it->second;
  };

  const json& edges = require(j, "edges", "tiling");
  if (!edges.is_array()) throw TilingError("edges: expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::string where = "edges[" + std::to_string(i) + "]";
    reject_unknown(edges[i], {"tail", "head", "shift"}, where);
    MotifEdge e;
    e.tail = vref(require(edges[i], "tail", where), where + ".tail");
    e.head = vref(require(edges[i], "head", where), where + ".head");
    e.shift = to_shift(require(edges[i], "shift", where), where + ".shift");
    t.edges.push_back(e);
  }

  const json& faces = require(j, "faces", "tiling");
  if (!faces.is_array()) throw TilingError("faces: expected an array");
  for (std::size_t i = 0; i < faces.size(); ++i) {
    std::string where = "faces[" + std::to_string(i) + "]";
    if (!faces[i].is_array()) throw TilingError(where + ": expected an array of corners");
    std::vector<Corner> f;
    for (std::size_t k = 0; k < faces[i].size(); ++k) {
      const json& c = faces[i][k];
      std::string cw = where + "[" + std::to_string(k) + "]";
      if (!c.is_array() || c.size() != 2) throw TilingError(cw + ": expected [vertex id, shift]");
      f.push_back({vref(c[0], cw), to_shift(c[1], cw)});
    }
    t.faces.push_back(std::move(f));
  }
  validate_tiling(t);
  return t;
}

PeriodicTiling load_tiling(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TilingError("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw TilingError(path.string() + ": parse error: " + e.what());
  }
  return parse_tiling(j);
}

json tiling_to_json(const PeriodicTiling& t) {
  json j;
  j["name"] = t.name;
  if (t.expected_k) j["expected_k"] = *t.expected_k;
  j["basis"] = json::array({vec_json(t.alpha), vec_json(t.beta)});
  j["vertices"] = json::array();
  for (const auto& v : t.vertices) j["vertices"].push_back({{"id", v.id}, {"pos", vec_json(v.pos)}});
  j["edges"] = json::array();
  for (const auto& e : t.edges)
    j["edges"].push_back({{"tail", t.vertices[e.tail].id},
                          {"head", t.vertices[e.head].id},
                          {"shift", json::array({e.shift.x, e.shift.y})}});
  j["faces"] = json::array();
  for (const auto& f : t.faces) {
    json jf = json::array();
    for (const auto& c : f) jf.push_back(json::array({t.vertices[c.vertex].id, json::array({c.shift.x, c.shift.y})}));
    j["faces"].push_back(jf);
  }
  return j;
}

// ---- validation ----------------------------------------------------------------

namespace {

void check_primitive(const PeriodicTiling& t);

}  // namespace

void validate_tiling(PeriodicTiling& t) {
  QNum cr = t.alpha.cross(t.beta);
  if (cr.is_zero()) throw TilingError("basis vectors are linearly dependent");
  t.inv_cross = cr.inverse();
  const int nv = t.vertex_count();

  t.coords.clear();
  for (const auto& v : t.vertices) t.coords.push_back(t.lattice_coords(v.pos));
  for (int v = 0; v < nv; ++v)
    for (int w = v + 1; w < nv; ++w) {
      QNum dx = t.coords[v].first - t.coords[w].first, dy = t.coords[v].second - t.coords[w].second;
      if (is_integral(dx) && is_integral(dy))
        throw TilingError("overlapping vertices " + vertex_label(t, v) + " and " + vertex_label(t, w));
    }

  if (t.edges.empty()) throw TilingError("tiling has no edges");
  QNum len2;
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    const auto& ed = t.edges[e];
    QNum l = (t.position(ed.head, ed.shift) - t.position(ed.tail, {})).norm2();
    if (l.is_zero()) throw TilingError("edge " + std::to_string(e) + " has zero length");
    if (e == 0) len2 = l;
    else if (l != len2) throw TilingError("edge lengths differ (edge " + std::to_string(e) + ")");
  }
  auto eidx = edge_index(t);
  if (eidx.size() != 2 * t.edges.size()) throw TilingError("duplicate edge in motif");

  // Each directed edge must be used by exactly one face side.
  std::vector<std::array<int, 2>> used(t.edges.size(), {0, 0});
  std::vector<std::array<std::pair<int, int>, 2>> side_of(t.edges.size());
  t.face_sides.assign(t.faces.size(), {});
  for (std::size_t f = 0; f < t.faces.size(); ++f) {
    const auto& face = t.faces[f];
    const int n = static_cast<int>(face.size());
    std::string where = "face " + std::to_string(f);
    if (n < 3) throw TilingError(where + " has fewer than 3 corners");
    auto cs = turn(n);
    if (!cs) throw TilingError(where + ": unsupported polygon with " + std::to_string(n) + " sides");
    for (int j = 0; j < n; ++j) {
      const Corner& a = face[j];
      const Corner& b = face[(j + 1) % n];
      Shift rel = b.shift - a.shift;
      auto it = eidx.find({a.vertex, b.vertex, rel.x, rel.y});
      if (it == eidx.end())
        throw TilingError(where + " does not close: no edge from corner " + std::to_string(j) + " to corner " +
                          std::to_string((j + 1) % n));
      int e = it->second;
      const auto& ed = t.edges[e];
      int dir = (ed.tail == a.vertex && ed.head == b.vertex && ed.shift == rel) ? 0 : 1;
      if (++used[e][dir] > 1) throw TilingError("edge " + std::to_string(e) + " lies on more than two faces");
      side_of[e][dir] = {static_cast<int>(f), j};
      t.face_sides[f].emplace_back(e, dir == 1);
    }
    for (int j = 0; j < n; ++j) {
      Vec2 p0 = t.position(face[j].vertex, face[j].shift);
      Vec2 p1 = t.position(face[(j + 1) % n].vertex, face[(j + 1) % n].shift);
      Vec2 p2 = t.position(face[(j + 2) % n].vertex, face[(j + 2) % n].shift);
      if (rotate(p1 - p0, *cs) != p2 - p1)
        throw TilingError(where + " is not a regular counterclockwise polygon");
    }
  }
  for (std::size_t e = 0; e < t.edges.size(); ++e)
    if (used[e][0] != 1 || used[e][1] != 1)
      throw TilingError("edge " + std::to_string(e) + " does not lie on exactly two faces");

  // Stars: darts sorted by angle, faces to the left.
  t.star.assign(nv, {});
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    const auto& ed = t.edges[e];
    for (int dir = 0; dir < 2; ++dir) {
      Dart d;
      d.edge = static_cast<int>(e);
      d.reversed = dir == 1;
      int from = dir == 0 ? ed.tail : ed.head;
      d.to = dir == 0 ? ed.head : ed.tail;
      d.shift = dir == 0 ? ed.shift : -ed.shift;
      auto [f, j] = side_of[e][dir];
      d.face = f;
      d.side = j;
      d.face_shift = -t.faces[f][j].shift;
      t.star[from].push_back(d);
    }
  }
  for (int v = 0; v < nv; ++v) {
    auto& st = t.star[v];
    if (st.size() < 3) throw TilingError("vertex " + vertex_label(t, v) + " has degree below 3");
    const Vec2 o = t.vertices[v].pos;
    std::vector<Vec2> dirs;
    for (const auto& d : st) dirs.push_back(t.position(d.to, d.shift) - o);
    std::vector<int> order(st.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return angle_less(dirs[a], dirs[b]); });
    std::vector<Dart> sorted;
    for (int i : order) sorted.push_back(st[i]);
    st = std::move(sorted);
    Rational angle_sum = 0;
    for (std::size_t i = 0; i < st.size(); ++i) {
      const Dart& d = st[i];
      const Dart& next = st[(i + 1) % st.size()];
      const auto& face = t.faces[d.face];
      const int n = static_cast<int>(face.size());
      const Corner& prev = face[(d.side + n - 1) % n];
      Shift back = prev.shift - face[d.side].shift;
      if (next.to != prev.vertex || next.shift != back)
        throw TilingError("faces do not close up around vertex " + vertex_label(t, v));
      Rational corner(n - 2, n);
      corner.canonicalize();
      angle_sum += corner;
    }
    if (angle_sum != 2) throw TilingError("angles around vertex " + vertex_label(t, v) + " do not sum to 360 degrees");
  }

  QNum area2 = 0;
  for (const auto& f : t.faces) area2 += face_area2(t, f);
  QNum cell = cr;
  if (qnum_sign(cell) < 0) cell = -cell;
  if (area2 != QNum(2) * cell) throw TilingError("faces do not cover the fundamental cell exactly once");

  check_primitive(t);
}

// ---- vertex figures ----------------------------------------------------------------

std::vector<int> vertex_figure(const PeriodicTiling& t, int v) {
  std::vector<int> seq;
  for (const auto& d : t.star[v]) seq.push_back(static_cast<int>(t.faces[d.face].size()));
  std::vector<int> best;
  const std::size_t n = seq.size();
  for (int refl = 0; refl < 2; ++refl) {
    std::vector<int> s = seq;
    if (refl) std::reverse(s.begin(), s.end());
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<int> c(s.begin() + static_cast<long>(r), s.end());
      c.insert(c.end(), s.begin(), s.begin() + static_cast<long>(r));
      if (best.empty() || c < best) best = c;
    }
  }
  return best;
}

std::string vertex_figure_name(const std::vector<int>& fig) {
  std::ostringstream os;
  for (std::size_t i = 0; i < fig.size();) {
    std::size_t j = i;
    while (j < fig.size() && fig[j] == fig[i]) ++j;
    if (i) os << ".";
    os << fig[i];
    if (j - i > 1) os << "^" << (j - i);
    i = j;
  }
  return os.str();
}

// ---- symmetries ----------------------------------------------------------------

namespace {

QMat2 basis_matrix(const PeriodicTiling& t) { return {t.alpha.x, t.beta.x, t.alpha.y, t.beta.y}; }

QMat2 int_to_q(const IntMat2& u) {
  return {QNum(static_cast<long>(u.m00)), QNum(static_cast<long>(u.m01)), QNum(static_cast<long>(u.m10)),
          QNum(static_cast<long>(u.m11))};
}

// Finds the motif vertex and cell at exact position p, if any.
std::optional<std::pair<int, Shift>> locate(const PeriodicTiling& t, const Vec2& p,
                                            const std::vector<std::pair<double, double>>& approx) {
  auto [cx, cy] = t.lattice_coords(p);
  double dx = cx.to_double(), dy = cy.to_double();
  for (int w = 0; w < t.vertex_count(); ++w) {
    double ex = dx - approx[w].first, ey = dy - approx[w].second;
    if (std::abs(ex - std::round(ex)) > 1e-6 || std::abs(ey - std::round(ey)) > 1e-6) continue;
    QNum sx = cx - t.coords[w].first, sy = cy - t.coords[w].second;
    if (is_integral(sx) && is_integral(sy)) return std::make_pair(w, Shift{to_int(sx), to_int(sy)});
  }
  return std::nullopt;
}

std::vector<std::pair<double, double>> approx_coords(const PeriodicTiling& t) {
  std::vector<std::pair<double, double>> out;
  for (const auto& c : t.coords) out.emplace_back(c.first.to_double(), c.second.to_double());
  return out;
}

// Builds the affine map with integer linear part U and the given offset, or
// nullopt if it does not preserve vertices and edges.
std::optional<Symmetry> try_affine(const PeriodicTiling& t, const IntMat2& U, const QMat2& L, const Vec2& offset,
                                   const std::vector<std::pair<double, double>>& approx,
                                   const std::map<EdgeKey, int>& eidx) {
  Symmetry s;
  s.linear = U;
  s.geometric_linear = L;
  s.offset = offset;
  std::vector<bool> hit(t.vertex_count(), false);
  for (int v = 0; v < t.vertex_count(); ++v) {
    auto img = locate(t, s.apply(t.vertices[v].pos), approx);
    if (!img || hit[img->first]) return std::nullopt;
    hit[img->first] = true;
    s.motif_perm.push_back(*img);
  }
  for (const auto& e : t.edges) {
    auto [a, ka] = s.map_vertex(e.tail, {});
    auto [b, kb] = s.map_vertex(e.head, e.shift);
    Shift rel = kb - ka;
    if (!eidx.count({a, b, rel.x, rel.y})) return std::nullopt;
  }
  return s;
}

QMat2 geometric(const PeriodicTiling& t, const IntMat2& U) {
  QMat2 B = basis_matrix(t);
  return B * int_to_q(U) * B.inverse();
}

void check_primitive(const PeriodicTiling& t) {
  auto approx = approx_coords(t);
  auto eidx = edge_index(t);
  auto fig0 = vertex_figure(t, 0);
  for (int w = 1; w < t.vertex_count(); ++w) {
    if (vertex_figure(t, w) != fig0) continue;
    Vec2 off = t.vertices[w].pos - t.vertices[0].pos;
    if (try_affine(t, IntMat2::identity(), QMat2::identity(), off, approx, eidx))
      throw TilingError("basis is not primitive: translation taking vertex " + vertex_label(t, 0) + " to vertex " +
                        vertex_label(t, w) + " preserves the tiling");
  }
}

}  // namespace

std::optional<Symmetry> try_symmetry(const PeriodicTiling& t, const IntMat2& U, int v0, int w, Shift cell) {
  QMat2 L = geometric(t, U);
  Vec2 off = t.position(w, cell) - L.apply(t.vertices[v0].pos);
  return try_affine(t, U, L, off, approx_coords(t), edge_index(t));
}

std::vector<IntMat2> lattice_isometries(const PeriodicTiling& t) {
  QNum g11 = t.alpha.norm2(), g12 = t.alpha.dot(t.beta), g22 = t.beta.norm2();
  double a = g11.to_double(), b = g12.to_double(), c = g22.to_double();
  double lmin = (a + c) / 2 - std::sqrt(((a - c) / 2) * ((a - c) / 2) + b * b);
  double radius = std::sqrt(std::max(a, c) / lmin) + 1;
  auto r = static_cast<std::int64_t>(std::ceil(radius));
  auto form = [&](std::int64_t x, std::int64_t y) {
    return QNum(static_cast<long>(x * x)) * g11 + QNum(static_cast<long>(2 * x * y)) * g12 +
           QNum(static_cast<long>(y * y)) * g22;
  };
  auto bilinear = [&](Shift p, Shift q) {
    return QNum(static_cast<long>(p.x * q.x)) * g11 + QNum(static_cast<long>(p.x * q.y + p.y * q.x)) * g12 +
           QNum(static_cast<long>(p.y * q.y)) * g22;
  };
  std::vector<Shift> ca, cb;
  for (std::int64_t x = -r; x <= r; ++x)
    for (std::int64_t y = -r; y <= r; ++y) {
      double approx_norm = a * x * x + 2 * b * x * y + c * y * y;
      if (std::abs(approx_norm - a) < 1e-6 && form(x, y) == g11) ca.push_back({x, y});
      if (std::abs(approx_norm - c) < 1e-6 && form(x, y) == g22) cb.push_back({x, y});
    }
  std::vector<IntMat2> out;
  for (Shift p : ca)
    for (Shift q : cb) {
      IntMat2 u{p.x, q.x, p.y, q.y};
      if (std::abs(u.det()) != 1) continue;
      if (bilinear(p, q) == g12) out.push_back(u);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Symmetry> full_symmetries(const PeriodicTiling& t) {
  auto approx = approx_coords(t);
  auto eidx = edge_index(t);
  auto fig0 = vertex_figure(t, 0);
  std::vector<int> targets;
  for (int w = 0; w < t.vertex_count(); ++w)
    if (vertex_figure(t, w) == fig0) targets.push_back(w);
  std::vector<Symmetry> out;
  auto isos = lattice_isometries(t);
  // identity first
  std::stable_partition(isos.begin(), isos.end(), [](const IntMat2& u) { return u == IntMat2::identity(); });
  for (const auto& U : isos) {
    QMat2 L = geometric(t, U);
    Vec2 base = L.apply(t.vertices[0].pos);
    for (int w : targets) {
      auto s = try_affine(t, U, L, t.vertices[w].pos - base, approx, eidx);
      if (s) {
        out.push_back(std::move(*s));
        break;
      }
    }
  }
  return out;
}

Symmetry compose(const PeriodicTiling& t, const Symmetry& g, const Symmetry& h) {
  (void)t;
  Symmetry r;
  r.linear = g.linear * h.linear;
  r.geometric_linear = g.geometric_linear * h.geometric_linear;
  r.offset = g.geometric_linear.apply(h.offset) + g.offset;
  for (const auto& [w, k] : h.motif_perm) r.motif_perm.push_back(g.map_vertex(w, k));
  return r;
}

Symmetry translation(const PeriodicTiling& t, Shift s) {
  Symmetry r;
  r.offset = t.lattice_vector(s);
  r.geometric_linear = QMat2::identity();
  for (int v = 0; v < t.vertex_count(); ++v) r.motif_perm.push_back({v, s});
  return r;
}

Symmetry half_turn(const PeriodicTiling& t, const Vec2& center) {
  IntMat2 U{-1, 0, 0, -1};
  QMat2 L{-1, 0, 0, -1};
  auto s = try_affine(t, U, L, QNum(2) * center, approx_coords(t), edge_index(t));
  if (!s) throw TilingError("not a half-turn center");
  return *s;
}

std::vector<Vec2> half_turn_centers(const PeriodicTiling& t) {
  auto syms = full_symmetries(t);
  IntMat2 minus{-1, 0, 0, -1};
  for (const auto& s : syms) {
    if (s.linear != minus) continue;
    std::vector<Vec2> out;
    QNum half(Rational(1, 2));
    for (std::int64_t i = 0; i < 2; ++i)
      for (std::int64_t j = 0; j < 2; ++j) out.push_back(half * (s.offset + t.lattice_vector({i, j})));
    return out;
  }
  return {};
}

// ---- orbits --------------------------------------------------------------------------

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

OrbitPartition blocks_of(UnionFind& uf, int n, GroupTag tag) {
  std::map<int, std::vector<int>> m;
  for (int v = 0; v < n; ++v) m[uf.find(v)].push_back(v);
  OrbitPartition out;
  out.group = tag;
  for (auto& [_, b] : m) out.blocks.push_back(b);
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

}  // namespace

OrbitPartition orbit_count(const PeriodicTiling& t, GroupTag tag, const std::optional<Vec2>& center) {
  const int n = t.vertex_count();
  UnionFind uf(n);
  if (tag == GroupTag::G) {
    if (!center) throw TilingError("group G needs a half-turn center");
    Symmetry h = half_turn(t, *center);
    for (int v = 0; v < n; ++v) uf.unite(v, h.motif_perm[v].first);
  } else if (tag == GroupTag::Full) {
    for (const auto& s : full_symmetries(t))
      for (int v = 0; v < n; ++v) uf.unite(v, s.motif_perm[v].first);
  }
  return blocks_of(uf, n, tag);
}

int homogeneity_check(const PeriodicTiling& t) {
  auto full = orbit_count(t, GroupTag::Full);
  std::vector<int> block(t.vertex_count());
  for (std::size_t b = 0; b < full.blocks.size(); ++b)
    for (int v : full.blocks[b]) block[v] = static_cast<int>(b);
  std::vector<std::vector<int>> figs;
  for (int v = 0; v < t.vertex_count(); ++v) figs.push_back(vertex_figure(t, v));
  for (int v = 0; v < t.vertex_count(); ++v)
    for (int w = v + 1; w < t.vertex_count(); ++w)
      if (figs[v] == figs[w] && block[v] != block[w])
        throw TilingError("homogeneity violated: vertices " + vertex_label(t, v) + ", " + vertex_label(t, w) +
                          " congruent but in distinct orbits");
  int k = static_cast<int>(full.size());
  if (t.expected_k && *t.expected_k != k)
    throw TilingError("expected_k mismatch: file says " + std::to_string(*t.expected_k) + ", computed " +
                      std::to_string(k));
  return k;
}

}  // namespace tilequot
