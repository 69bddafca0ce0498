#include "tilequot/map_aut.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tilequot {

namespace {

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

// Local invariant of a flag: degree of its vertex and size of its face.
std::vector<long> flag_labels(const FlagSystem& fs) {
  std::vector<long> deg(fs.num_vertices, 0), size(fs.num_faces, 0);
  for (std::size_t f = 0; f < fs.size(); ++f) {
    ++deg[fs.vertex[f]];
    ++size[fs.face[f]];
  }
  std::vector<long> label(fs.size());
  for (std::size_t f = 0; f < fs.size(); ++f) label[f] = deg[fs.vertex[f]] * 100000 + size[fs.face[f]];
  return label;
}

struct Traversal {
  int base = 0;
  std::vector<std::array<int, 3>> steps;  // (flag, parent, generator)
};

Traversal spanning_order(const FlagSystem& fs, int base) {
  Traversal tr;
  tr.base = base;
  std::vector<char> seen(fs.size(), 0);
  seen[base] = 1;
  std::vector<int> queue{base};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    int f = queue[h];
    for (int i = 0; i < 3; ++i) {
      int g = fs.s[f][i];
      if (!seen[g]) {
        seen[g] = 1;
        queue.push_back(g);
        tr.steps.push_back({g, f, i});
      }
    }
  }
  return tr;
}

// Extends base -> target to a flag map from a into b; nullopt when the
// extension is not a well-defined isomorphism.
std::optional<std::vector<int>> propagate(const FlagSystem& a, const FlagSystem& b, const Traversal& tr,
                                          const std::vector<long>& la, const std::vector<long>& lb,
                                          int target) {
  std::vector<int> img(a.size(), -1);
  img[tr.base] = target;
  for (const auto& [f, p, i] : tr.steps) {
    int im = b.s[img[p]][i];
    if (la[f] != lb[im]) return std::nullopt;
    img[f] = im;
  }
  if (tr.steps.size() + 1 != a.size()) return std::nullopt;
  for (std::size_t f = 0; f < a.size(); ++f)
    for (int i = 0; i < 3; ++i)
      if (img[a.s[f][i]] != b.s[img[f]][i]) return std::nullopt;
  std::vector<char> hit(b.size(), 0);
  for (int x : img) {
    if (hit[x]) return std::nullopt;
    hit[x] = 1;
  }
  return img;
}

int rarest_label_flag(const std::vector<long>& label) {
  std::map<long, int> count;
  for (long l : label) ++count[l];
  int best = 0;
  for (std::size_t f = 1; f < label.size(); ++f)
    if (count[label[f]] < count[label[best]]) best = static_cast<int>(f);
  return best;
}

}  // namespace

FlagSystem flags_from_faces(const OrientedMap& m, bool polyhedral) {
  FlagSystem fs;
  fs.num_vertices = m.num_vertices;
  fs.num_edges = m.num_edges;
  fs.num_faces = static_cast<int>(m.faces.size());
  fs.polyhedral = polyhedral;

  std::vector<int> offset(m.faces.size() + 1, 0);
  for (std::size_t f = 0; f < m.faces.size(); ++f) offset[f + 1] = offset[f] + 2 * static_cast<int>(m.faces[f].size());
  const int n = offset.back();
  fs.s.resize(n);
  fs.vertex.resize(n);
  fs.edge.resize(n);
  fs.face.resize(n);

  std::vector<std::vector<std::pair<int, int>>> sides_of_edge(m.num_edges);
  for (std::size_t f = 0; f < m.faces.size(); ++f) {
    const auto& face = m.faces[f];
    const int k = static_cast<int>(face.size());
    for (int j = 0; j < k; ++j) {
      const int id = offset[f] + 2 * j;
      const auto& side = face[j];
      if (side.edge < 0 || side.edge >= m.num_edges) throw std::invalid_argument("face side names an unknown edge");
      sides_of_edge[side.edge].emplace_back(static_cast<int>(f), j);
      for (int e = 0; e < 2; ++e) {
        fs.vertex[id + e] = e == 0 ? side.vertex : face[(j + 1) % k].vertex;
        fs.edge[id + e] = side.edge;
        fs.face[id + e] = static_cast<int>(f);
        fs.s[id + e][0] = id + 1 - e;
      }
      fs.s[id][1] = offset[f] + 2 * ((j + k - 1) % k) + 1;
      fs.s[id + 1][1] = offset[f] + 2 * ((j + 1) % k);
    }
  }
  for (int e = 0; e < m.num_edges; ++e) {
    const auto& sides = sides_of_edge[e];
    if (sides.size() != 2) throw std::invalid_argument("edge " + std::to_string(e) + " lies on " + std::to_string(sides.size()) + " face sides");
    const int p = offset[sides[0].first] + 2 * sides[0].second;
    const int q = offset[sides[1].first] + 2 * sides[1].second;
    if (fs.vertex[p] != fs.vertex[q + 1] || fs.vertex[p + 1] != fs.vertex[q])
      throw std::invalid_argument("edge " + std::to_string(e) + " is traversed the same way by both sides");
    fs.s[p][2] = q + 1;
    fs.s[p + 1][2] = q;
    fs.s[q][2] = p + 1;
    fs.s[q + 1][2] = p;
  }
  return fs;
}

std::string check_flag_system(const FlagSystem& fs) {
  const int n = static_cast<int>(fs.size());
  if (n != 4 * fs.num_edges) return "flag count " + std::to_string(n) + " is not 4E";
  for (int f = 0; f < n; ++f) {
    for (int i = 0; i < 3; ++i) {
      int g = fs.s[f][i];
      if (g < 0 || g >= n) return "s" + std::to_string(i) + " out of range at flag " + std::to_string(f);
      if (g == f) return "s" + std::to_string(i) + " fixes flag " + std::to_string(f);
      if (fs.s[g][i] != f) return "s" + std::to_string(i) + " is not an involution at flag " + std::to_string(f);
    }
    if (fs.s[fs.s[f][0]][2] != fs.s[fs.s[f][2]][0]) return "s0 and s2 do not commute at flag " + std::to_string(f);
    const int a = fs.s[f][0], b = fs.s[f][1], c = fs.s[f][2];
    if (fs.edge[a] != fs.edge[f] || fs.face[a] != fs.face[f]) return "s0 changes more than the vertex at flag " + std::to_string(f);
    if (fs.vertex[b] != fs.vertex[f] || fs.face[b] != fs.face[f]) return "s1 changes more than the edge at flag " + std::to_string(f);
    if (fs.vertex[c] != fs.vertex[f] || fs.edge[c] != fs.edge[f]) return "s2 changes more than the face at flag " + std::to_string(f);
  }
  if (n > 0 && spanning_order(fs, 0).steps.size() + 1 != fs.size()) return "flag graph is disconnected";
  return {};
}

std::vector<MapAutomorphism> automorphism_group(const FlagSystem& fs) {
  if (fs.size() == 0) return {};
  const auto label = flag_labels(fs);
  const int base = rarest_label_flag(label);
  const auto tr = spanning_order(fs, base);

  std::vector<MapAutomorphism> out;
  for (std::size_t g = 0; g < fs.size(); ++g) {
    if (label[g] != label[base]) continue;
    if (auto img = propagate(fs, fs, tr, label, label, static_cast<int>(g))) out.push_back(std::move(*img));
  }
  // identity first
  auto it = std::find_if(out.begin(), out.end(), [&](const MapAutomorphism& a) { return a[base] == base; });
  if (it == out.end()) throw std::logic_error("automorphism search lost the identity");
  std::rotate(out.begin(), it, it + 1);
  if (fs.polyhedral && fs.size() % out.size() != 0) throw std::logic_error("automorphism group order does not divide the flag count");
  return out;
}

OrbitCounts orbit_counts(const FlagSystem& fs, const std::vector<MapAutomorphism>& aut) {
  UnionFind v(fs.num_vertices), e(fs.num_edges), f(fs.num_faces);
  for (const auto& a : aut)
    for (std::size_t x = 0; x < fs.size(); ++x) {
      v.unite(fs.vertex[x], fs.vertex[a[x]]);
      e.unite(fs.edge[x], fs.edge[a[x]]);
      f.unite(fs.face[x], fs.face[a[x]]);
    }
  auto roots = [](UnionFind& uf) {
    int c = 0;
    for (int i = 0; i < static_cast<int>(uf.parent.size()); ++i) c += uf.find(i) == i;
    return c;
  };
  return {roots(v), roots(e), roots(f)};
}

int vertex_orbit_count(const FlagSystem& fs, const std::vector<MapAutomorphism>& aut) {
  return orbit_counts(fs, aut).vertices;
}

std::vector<int> vertex_orbit_labels(const FlagSystem& fs, const std::vector<MapAutomorphism>& aut) {
  UnionFind v(fs.num_vertices);
  for (const auto& a : aut)
    for (std::size_t x = 0; x < fs.size(); ++x) v.unite(fs.vertex[x], fs.vertex[a[x]]);
  std::vector<int> label(fs.num_vertices, -1), root_label(fs.num_vertices, -1);
  int next = 0;
  for (int i = 0; i < fs.num_vertices; ++i) {
    int r = v.find(i);
    if (root_label[r] < 0) root_label[r] = next++;
    label[i] = root_label[r];
  }
  return label;
}

std::optional<std::vector<int>> is_isomorphic(const FlagSystem& a, const FlagSystem& b) {
  if (a.size() != b.size() || a.num_vertices != b.num_vertices || a.num_edges != b.num_edges ||
      a.num_faces != b.num_faces)
    return std::nullopt;
  if (a.size() == 0) return std::vector<int>{};
  const auto la = flag_labels(a), lb = flag_labels(b);
  auto sa = la, sb = lb;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return std::nullopt;
  const int base = rarest_label_flag(la);
  const auto tr = spanning_order(a, base);
  for (std::size_t g = 0; g < b.size(); ++g) {
    if (lb[g] != la[base]) continue;
    if (auto img = propagate(a, b, tr, la, lb, static_cast<int>(g))) return img;
  }
  return std::nullopt;
}

void write_flags(std::ostream& os, const FlagSystem& fs) {
  for (std::size_t f = 0; f < fs.size(); ++f)
    os << f << ' ' << fs.s[f][0] << ' ' << fs.s[f][1] << ' ' << fs.s[f][2] << '\n';
}

}  // namespace tilequot
