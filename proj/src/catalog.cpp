#include "tilequot/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "tilequot/census.hpp"

#ifndef TILEQUOT_DATA_DIR
#define TILEQUOT_DATA_DIR "."
#endif

namespace tilequot {

const std::vector<BoundPart>& bound_parts() {
  static const std::vector<BoundPart> parts = {
      {{1, 2, 4, 8, 9, 14, 20, 24, 26, 31, 32, 33}, {6, false}},
      {{6, 7}, {4, true}},
      {{3, 30}, {5, false}},
      {{5, 21, 25, 29, 34, 40, 43, 47}, {7, false}},
      {{22, 35, 39, 41, 42, 44}, {8, false}},
      {{18, 52, 53, 56}, {9, false}},
      {{13, 54}, {10, false}},
      {{37, 60}, {11, false}},
      {{19, 65}, {12, false}},
      {{15, 16, 17, 48}, {13, false}},
      {{11, 12, 28}, {15, false}},
      {{10, 38}, {16, false}},
      {{27, 46}, {18, false}},
      {{45}, {19, false}},
      {{23, 57}, {21, false}},
      {{36, 63}, {22, false}},
      {{49}, {24, false}},
      {{51}, {25, false}},
      {{58}, {26, false}},
      {{55}, {27, false}},
      {{64}, {28, false}},
      {{50}, {30, false}},
      {{59, 61, 62}, {33, false}},
  };
  return parts;
}

BoundEntry bound_for(int i) {
  for (const auto& p : bound_parts())
    if (std::find(p.indices.begin(), p.indices.end(), i) != p.indices.end()) return p.entry;
  throw std::out_of_range("no tiling K" + std::to_string(i) + " in the table (1..65)");
}

int class_for(int i) {
  if (i < 1 || i > 65) throw std::out_of_range("no tiling K" + std::to_string(i) + " in the table (1..65)");
  if (i <= 33) return 4;
  if (i <= 48) return 5;
  if (i <= 58) return 6;
  return 7;
}

std::string bounds_csv() {
  std::ostringstream os;
  os << "i,k,bound,equality\n";
  for (int i = 1; i <= 65; ++i) {
    auto e = bound_for(i);
    os << i << ',' << class_for(i) << ',' << e.bound << ',' << (e.equality ? "true" : "false") << '\n';
  }
  return os.str();
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("TILEQUOT_DATA_DIR"); env && *env) return env;
  return TILEQUOT_DATA_DIR;
}

std::vector<std::string> fixture_names() {
  return {"square", "triangular", "hexagonal", "snub_square", "elongated_triangular", "two_uniform_36_346"};
}

PeriodicTiling load_fixture(const std::string& name) { return load_tiling(data_dir() / "fixtures" / (name + ".json")); }

std::vector<PeriodicTiling> fixtures() {
  std::vector<PeriodicTiling> out;
  for (const auto& n : fixture_names()) out.push_back(load_fixture(n));
  return out;
}

std::vector<std::pair<int, std::filesystem::path>> catalog_files(const std::filesystem::path& dir) {
  std::vector<std::pair<int, std::filesystem::path>> out;
  if (!std::filesystem::is_directory(dir)) return out;
  static const std::regex pattern(R"(K([0-9]+)\.json)");
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (std::regex_match(name, m, pattern)) out.emplace_back(std::stoi(m[1]), entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

CatalogEntry ingest_json(int i, const nlohmann::json& j, const std::filesystem::path& origin) {
  BoundEntry want;
  int want_k = 0;
  try {
    want = bound_for(i);
    want_k = class_for(i);
  } catch (const std::out_of_range& e) {
    throw CatalogError("index", e.what());
  }
  PeriodicTiling t;
  try {
    t = parse_tiling(j);
  } catch (const TilingError& e) {
    throw CatalogError("validation", e.what());
  }
  int k = 0;
  try {
    k = homogeneity_check(t);
  } catch (const TilingError& e) {
    throw CatalogError("homogeneity", e.what());
  }
  if (k != want_k)
    throw CatalogError("homogeneity", "k = " + std::to_string(k) + " but K" + std::to_string(i) + " is " +
                                          std::to_string(want_k) + "-vertex-homogeneous");
  int bound = 0;
  try {
    bound = theorem_bound(t);
  } catch (const TilingError& e) {
    throw CatalogError("bound", e.what());
  }
  if (bound != want.bound)
    throw CatalogError("bound", "half-turn orbit count " + std::to_string(bound) + " but the table gives " +
                                    std::to_string(want.bound) + " for K" + std::to_string(i));
  CatalogEntry out;
  out.index = i;
  out.file = origin;
  out.k = k;
  out.bound = bound;
  out.equality = want.equality;
  out.motif = t.vertex_count();
  out.status = "accepted";
  return out;
}

CatalogEntry ingest_transcription(int i, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("validation", "cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw CatalogError("validation", path.string() + ": " + e.what());
  }
  return ingest_json(i, j, path);
}

}  // namespace tilequot
