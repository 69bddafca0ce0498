#pragma once

// Independent oracles and generators shared by the unit and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "json.hpp"

#include "tilequot/catalog.hpp"
#include "tilequot/map_aut.hpp"
#include "tilequot/quotient.hpp"

namespace support {

using namespace tilequot;

inline nlohmann::json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

inline std::filesystem::path fixture_path(const std::string& name) { return data_dir() / "fixtures" / (name + ".json"); }
inline std::filesystem::path catalog_path(int i) { return data_dir() / "catalog" / ("K" + std::to_string(i) + ".json"); }

// Sublattices of index n by brute force: every integer matrix with entries
// in a box whose determinant is +-n, grouped by the lattice they span.
// Two matrices span the same lattice iff each contains the other's columns,
// tested by exact rational solving.
inline std::size_t brute_sublattice_count(std::int64_t n) {
  auto contains = [](const std::array<std::int64_t, 4>& m, std::int64_t x, std::int64_t y) {
    const std::int64_t det = m[0] * m[3] - m[1] * m[2];
    const std::int64_t u = m[3] * x - m[1] * y, v = -m[2] * x + m[0] * y;
    return u % det == 0 && v % det == 0;
  };
  std::vector<std::array<std::int64_t, 4>> reps;
  // Every index-n lattice has a basis with entries in [0, n], so the box suffices.
  for (std::int64_t a = 0; a <= n; ++a)
    for (std::int64_t b = 0; b <= n; ++b)
      for (std::int64_t c = 0; c <= n; ++c)
        for (std::int64_t d = 0; d <= n; ++d) {
          std::array<std::int64_t, 4> m{a, b, c, d};
          std::int64_t det = a * d - b * c;
          if (det != n && det != -n) continue;
          bool seen = std::any_of(reps.begin(), reps.end(), [&](const auto& r) {
            return contains(r, m[0], m[2]) && contains(r, m[1], m[3]);
          });
          if (!seen) reps.push_back(m);
        }
  return reps.size();
}

inline std::int64_t brute_sigma(std::int64_t n) {
  std::int64_t s = 0;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) s += d;
  return s;
}

// Automorphisms of a polyhedral map counted as vertex permutations that
// preserve the edge set and the set of face boundary cycles. Exponential;
// only for maps with a handful of vertices.
inline std::size_t brute_vertex_aut_count(const OrientedMap& m) {
  std::set<std::pair<int, int>> edges;
  std::set<std::vector<int>> faces;
  auto canon = [](std::vector<int> cyc) {
    std::vector<int> best;
    for (int dir = 0; dir < 2; ++dir) {
      for (std::size_t r = 0; r < cyc.size(); ++r) {
        std::rotate(cyc.begin(), cyc.begin() + 1, cyc.end());
        if (best.empty() || cyc < best) best = cyc;
      }
      std::reverse(cyc.begin(), cyc.end());
    }
    return best;
  };
  std::vector<std::vector<int>> cycles;
  for (const auto& f : m.faces) {
    std::vector<int> cyc;
    for (const auto& s : f) cyc.push_back(s.vertex);
    for (std::size_t j = 0; j < cyc.size(); ++j) {
      int a = cyc[j], b = cyc[(j + 1) % cyc.size()];
      edges.insert(std::minmax(a, b));
    }
    faces.insert(canon(cyc));
    cycles.push_back(cyc);
  }
  std::vector<int> p(m.num_vertices);
  std::iota(p.begin(), p.end(), 0);
  std::size_t count = 0;
  do {
    bool ok = true;
    for (auto [a, b] : edges)
      if (!edges.count(std::minmax(p[a], p[b]))) {
        ok = false;
        break;
      }
    if (!ok) continue;
    for (const auto& cyc : cycles) {
      std::vector<int> img;
      for (int v : cyc) img.push_back(p[v]);
      if (!faces.count(canon(img))) {
        ok = false;
        break;
      }
    }
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

// Flag-map extension with no pruning, tried from one base flag to every
// possible image.
inline bool naive_isomorphic(const FlagSystem& a, const FlagSystem& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t target = 0; target < b.size(); ++target) {
    std::vector<int> img(a.size(), -1);
    img[0] = static_cast<int>(target);
    std::vector<int> stack{0};
    bool ok = true;
    while (!stack.empty() && ok) {
      int f = stack.back();
      stack.pop_back();
      for (int i = 0; i < 3 && ok; ++i) {
        int g = a.s[f][i], want = b.s[img[f]][i];
        if (img[g] < 0) {
          img[g] = want;
          stack.push_back(g);
        } else if (img[g] != want) {
          ok = false;
        }
      }
    }
    if (!ok || std::count(img.begin(), img.end(), -1)) continue;
    if (std::set<int>(img.begin(), img.end()).size() == img.size()) return true;
  }
  return false;
}

inline bool is_flag_isomorphism(const FlagSystem& a, const FlagSystem& b, const std::vector<int>& w) {
  if (w.size() != a.size()) return false;
  for (std::size_t f = 0; f < a.size(); ++f)
    for (int i = 0; i < 3; ++i)
      if (w[a.s[f][i]] != b.s[w[f]][i]) return false;
  return std::set<int>(w.begin(), w.end()).size() == w.size();
}

// Copy of fs with flags renamed by a random permutation; returns the renaming.
inline std::pair<FlagSystem, std::vector<int>> shuffle_flags(const FlagSystem& fs, std::mt19937_64& rng) {
  std::vector<int> p(fs.size());
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  FlagSystem out = fs;
  for (std::size_t f = 0; f < fs.size(); ++f) {
    for (int i = 0; i < 3; ++i) out.s[p[f]][i] = p[fs.s[f][i]];
    out.vertex[p[f]] = fs.vertex[f];
    out.edge[p[f]] = fs.edge[f];
    out.face[p[f]] = fs.face[f];
  }
  return {out, p};
}

inline void shuffle_array(nlohmann::json& a, std::mt19937_64& rng) {
  auto& v = a.get_ref<nlohmann::json::array_t&>();
  std::shuffle(v.begin(), v.end(), rng);
}

// Same tiling with vertex ids renamed, lists shuffled, some edges reversed
// and face boundaries rotated.
inline nlohmann::json relabel_tiling(nlohmann::json j, std::mt19937_64& rng) {
  std::vector<int> ids;
  for (const auto& v : j["vertices"]) ids.push_back(v["id"]);
  std::vector<int> fresh = ids;
  for (auto& x : fresh) x = x * 7 + 100;
  std::shuffle(fresh.begin(), fresh.end(), rng);
  std::map<int, int> rename;
  for (std::size_t i = 0; i < ids.size(); ++i) rename[ids[i]] = fresh[i];
  for (auto& v : j["vertices"]) v["id"] = rename[v["id"]];
  shuffle_array(j["vertices"], rng);
  std::uniform_int_distribution<int> coin(0, 1);
  for (auto& e : j["edges"]) {
    e["tail"] = rename[e["tail"]];
    e["head"] = rename[e["head"]];
    if (coin(rng)) {
      auto t = e["tail"];
      e["tail"] = e["head"];
      e["head"] = t;
      for (auto& c : e["shift"]) c = -c.get<long>();
    }
  }
  shuffle_array(j["edges"], rng);
  for (auto& f : j["faces"]) {
    for (auto& c : f) c[0] = rename[c[0]];
    std::uniform_int_distribution<std::size_t> rot(0, f.size() - 1);
    auto& corners = f.get_ref<nlohmann::json::array_t&>();
    std::rotate(corners.begin(), corners.begin() + rot(rng), corners.end());
  }
  shuffle_array(j["faces"], rng);
  return j;
}

// Stacked triangulation of the sphere; vertex insertions chosen so that no
// nontrivial symmetry survives (checked against brute_vertex_aut_count).
inline OrientedMap asymmetric_sphere() {
  std::vector<std::array<int, 3>> tri = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
  int next = 4;
  auto insert = [&](std::size_t f) {
    auto [a, b, c] = tri[f];
    tri[f] = {a, b, next};
    tri.push_back({b, c, next});
    tri.push_back({c, a, next});
    ++next;
  };
  for (std::size_t f : {0, 0, 0, 1}) insert(f);
  OrientedMap m;
  m.num_vertices = next;
  std::map<std::pair<int, int>, int> edge_id;
  for (const auto& t : tri) {
    std::vector<FaceSide> face;
    for (int j = 0; j < 3; ++j) {
      auto key = std::minmax(t[j], t[(j + 1) % 3]);
      auto [it, fresh] = edge_id.emplace(key, static_cast<int>(edge_id.size()));
      face.push_back({t[j], it->second});
    }
    m.faces.push_back(face);
  }
  m.num_edges = static_cast<int>(edge_id.size());
  return m;
}

}  // namespace support
