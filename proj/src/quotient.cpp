#include "tilequot/quotient.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tilequot {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<int> labels_of(UnionFind& uf, int* count) {
  const int n = static_cast<int>(uf.parent.size());
  std::vector<int> label(n), root(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    int r = uf.find(i);
    if (root[r] < 0) root[r] = next++;
    label[i] = root[r];
  }
  *count = next;
  return label;
}

// Permutation of quotient vertices induced by the symmetry g followed by the
// translation `shift`.
std::vector<int> vertex_permutation(const ToroidalMap& x, const Symmetry& g, Shift shift) {
  const auto& t = *x.tiling;
  const std::int64_t n = x.lattice.index;
  std::vector<int> perm(x.num_vertices());
  for (int v = 0; v < t.vertex_count(); ++v)
    for (std::int64_t r = 0; r < n; ++r) {
      auto [w, k] = g.map_vertex(v, x.lattice.representative(r));
      perm[v * n + r] = x.vertex_of(w, k + shift);
    }
  return perm;
}

std::string polyhedral_defect(const ToroidalMap& x) {
  std::set<std::pair<int, int>> seen;
  for (int e = 0; e < x.num_edges(); ++e) {
    auto [a, b] = x.edge_ends[e];
    if (a == b) return "vertex " + std::to_string(a) + " (loop)";
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second)
      return "vertex " + std::to_string(std::min(a, b)) + " (double edge to " + std::to_string(std::max(a, b)) + ")";
  }
  std::vector<std::vector<int>> face_vertices(x.num_faces());
  std::vector<std::vector<int>> faces_at(x.num_vertices());
  for (int f = 0; f < x.num_faces(); ++f) {
    auto& fv = face_vertices[f];
    for (const auto& side : x.map.faces[f]) fv.push_back(side.vertex);
    std::sort(fv.begin(), fv.end());
    if (std::adjacent_find(fv.begin(), fv.end()) != fv.end()) return "face " + std::to_string(f) + " (repeated vertex)";
    for (int v : fv) faces_at[v].push_back(f);
  }
  std::set<std::pair<int, int>> face_edges;  // (face, edge)
  for (int f = 0; f < x.num_faces(); ++f)
    for (const auto& side : x.map.faces[f]) face_edges.insert({f, side.edge});
  std::set<std::pair<int, int>> checked;
  for (int v = 0; v < x.num_vertices(); ++v) {
    const auto& fs = faces_at[v];
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = i + 1; j < fs.size(); ++j) {
        int f = std::min(fs[i], fs[j]), g = std::max(fs[i], fs[j]);
        if (!checked.insert({f, g}).second) continue;
        std::vector<int> common;
        std::set_intersection(face_vertices[f].begin(), face_vertices[f].end(), face_vertices[g].begin(),
                              face_vertices[g].end(), std::back_inserter(common));
        if (common.size() > 2) return "face " + std::to_string(f) + " (meets face " + std::to_string(g) + " in " + std::to_string(common.size()) + " vertices)";
        if (common.size() == 2) {
          bool joined = false;
          for (const auto& side : x.map.faces[f]) {
            auto [a, b] = x.edge_ends[side.edge];
            if (std::minmax(a, b) == std::minmax(common[0], common[1]) && face_edges.count({g, side.edge})) joined = true;
          }
          if (!joined) return "face " + std::to_string(f) + " (meets face " + std::to_string(g) + " in two vertices but no edge)";
        }
      }
  }
  return {};
}

}  // namespace

Sublattice Sublattice::from_matrix(const IntMat2& any) {
  Sublattice s;
  s.m = hnf(any);
  s.index = s.m.det();
  return s;
}

Sublattice Sublattice::parse(const std::string& text) {
  std::vector<std::int64_t> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad matrix entry '" + item + "'");
    }
  }
  if (v.size() != 4) throw std::invalid_argument("matrix needs four entries a,b,c,d");
  return from_matrix({v[0], v[1], v[2], v[3]});
}

std::int64_t Sublattice::residue(Shift s) const {
  const std::int64_t a = m.m00, b = m.m01, d = m.m11;
  std::int64_t y = floor_mod(s.y, d);
  std::int64_t k = (s.y - y) / d;
  std::int64_t x = floor_mod(s.x - k * b, a);
  return y * a + x;
}

Shift Sublattice::representative(std::int64_t r) const { return {r % m.m00, r / m.m00}; }

int ToroidalMap::vertex_of(int v, Shift s) const { return static_cast<int>(v * lattice.index + lattice.residue(s)); }
int ToroidalMap::edge_of(int e, Shift s) const { return static_cast<int>(e * lattice.index + lattice.residue(s)); }
int ToroidalMap::face_of(int f, Shift s) const { return static_cast<int>(f * lattice.index + lattice.residue(s)); }

ToroidalMap make_quotient(const PeriodicTiling& t, const Sublattice& s, bool strict) {
  if (s.index < 1 || s.m != hnf(s.m)) throw std::invalid_argument("sublattice is not in Hermite normal form");
  ToroidalMap x;
  x.tiling = &t;
  x.lattice = s;
  x.strict = strict;
  const std::int64_t n = s.index;
  x.map.num_vertices = static_cast<int>(t.vertex_count() * n);
  x.map.num_edges = static_cast<int>(t.edges.size() * n);
  x.edge_ends.resize(x.map.num_edges);
  for (std::size_t e = 0; e < t.edges.size(); ++e)
    for (std::int64_t r = 0; r < n; ++r) {
      Shift c = s.representative(r);
      x.edge_ends[e * n + r] = {x.vertex_of(t.edges[e].tail, c), x.vertex_of(t.edges[e].head, c + t.edges[e].shift)};
    }
  x.map.faces.resize(t.faces.size() * n);
  for (std::size_t f = 0; f < t.faces.size(); ++f) {
    const auto& corners = t.faces[f];
    const std::size_t k = corners.size();
    for (std::int64_t r = 0; r < n; ++r) {
      Shift c = s.representative(r);
      auto& out = x.map.faces[f * n + r];
      for (std::size_t j = 0; j < k; ++j) {
        auto [e, reversed] = t.face_sides[f][j];
        Shift cell = reversed ? corners[(j + 1) % k].shift : corners[j].shift;
        out.push_back({x.vertex_of(corners[j].vertex, c + corners[j].shift), x.edge_of(e, c + cell)});
      }
    }
  }
  if (x.euler_characteristic() != 0) throw std::logic_error("quotient is not a torus");
  x.defect = polyhedral_defect(x);
  x.polyhedral = x.defect.empty();
  if (strict && !x.polyhedral) throw QuotientError("quotient not polyhedral at " + x.defect);
  return x;
}

FlagSystem build_flags(const ToroidalMap& x) {
  if (x.strict && !x.polyhedral) throw QuotientError("quotient not polyhedral at " + x.defect);
  return flags_from_faces(x.map, x.polyhedral);
}

bool NormalizerReport::only_half_turn() const {
  return std::all_of(preserving.begin(), preserving.end(), [](const IntMat2& u) {
    return u == IntMat2::identity() || u == IntMat2{-1, 0, 0, -1};
  });
}

NormalizerReport normalizer(const PeriodicTiling& t, const Sublattice& s) {
  return normalizer(t, s, full_symmetries(t));
}

NormalizerReport normalizer(const PeriodicTiling& t, const Sublattice& s, const std::vector<Symmetry>& full) {
  NormalizerReport rep;
  ToroidalMap x = make_quotient(t, s, false);
  std::vector<const Symmetry*> kept;
  for (const auto& g : full) {
    const IntMat2& u = g.linear;
    if (s.contains(u.apply(s.m.col0())) && s.contains(u.apply(s.m.col1()))) {
      rep.preserving.push_back(u);
      kept.push_back(&g);
    } else {
      rep.excluded.push_back(u);
    }
  }
  rep.order = s.index * static_cast<std::int64_t>(kept.size());
  // Elements are translation-after-representative; distinct (U, residue)
  // pairs give distinct cosets of Gamma.
  UnionFind uf(x.num_vertices());
  for (const Symmetry* g : kept)
    for (std::int64_t r = 0; r < s.index; ++r) {
      auto perm = vertex_permutation(x, *g, s.representative(r));
      for (int v = 0; v < x.num_vertices(); ++v) uf.unite(v, perm[v]);
      rep.elements.push_back(std::move(perm));
    }
  rep.orbit_labels = labels_of(uf, &rep.vertex_orbits);
  return rep;
}

int induced_orbits(const PeriodicTiling& t, const Sublattice& s, const Vec2& center) {
  const Symmetry h = half_turn(t, center);
  const Symmetry id = translation(t, {});
  ToroidalMap x = make_quotient(t, s, false);
  UnionFind uf(x.num_vertices());
  for (const auto& perm : {vertex_permutation(x, id, {1, 0}), vertex_permutation(x, id, {0, 1}), vertex_permutation(x, h, {})})
    for (int v = 0; v < x.num_vertices(); ++v) uf.unite(v, perm[v]);
  int count = 0;
  labels_of(uf, &count);
  const int plane = static_cast<int>(orbit_count(t, GroupTag::G, center).size());
  if (count != plane)
    throw std::logic_error("internal consistency: " + std::to_string(count) + " orbits on the quotient, " +
                           std::to_string(plane) + " on the tiling");
  return count;
}

}  // namespace tilequot
