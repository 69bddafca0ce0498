#pragma once

// Doubly periodic edge-to-edge tilings by regular polygons: file format,
// validation, wallpaper symmetries and vertex orbits.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "tilequot/exactnum.hpp"

namespace tilequot {

/// Raised for malformed files and for tilings that fail validation.
class TilingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MotifVertex {
  int id = 0;  // external id from the file
  Vec2 pos;
};

/// Segment from vertex `tail` in cell (0,0) to vertex `head` in cell `shift`.
/// Vertex references are motif indices, not file ids.
struct MotifEdge {
  int tail = 0, head = 0;
  Shift shift;
};

struct Corner {
  int vertex = 0;
  Shift shift;
};

/// An edge leaving a motif vertex in cell (0,0).
struct Dart {
  int edge = 0;
  bool reversed = false;
  int to = 0;
  Shift shift;     // cell of the far endpoint
  int face = 0;    // face to the left of the dart
  int side = 0;    // index of the face side that runs along this dart
  Shift face_shift;  // translate of `face` that lies to the left
};

struct PeriodicTiling {
  std::string name;
  Vec2 alpha, beta;
  std::vector<MotifVertex> vertices;
  std::vector<MotifEdge> edges;
  std::vector<std::vector<Corner>> faces;  // counterclockwise
  std::optional<int> expected_k;

  // Filled in by validation.
  std::vector<std::vector<Dart>> star;  // darts around each vertex, counterclockwise from +x
  std::vector<std::vector<std::pair<int, bool>>> face_sides;  // (edge, reversed) for side j of each face
  std::vector<std::pair<QNum, QNum>> coords;  // lattice coordinates of each motif vertex
  QNum inv_cross;  // 1 / cross(alpha, beta)

  Vec2 position(int v, Shift s) const;
  Vec2 lattice_vector(Shift s) const;
  /// Coordinates of p in the (alpha, beta) basis.
  std::pair<QNum, QNum> lattice_coords(const Vec2& p) const;
  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int index_of_id(int id) const;
};

/// Parses and validates. Throws TilingError naming the offending element.
PeriodicTiling parse_tiling(const nlohmann::json& j);
PeriodicTiling load_tiling(const std::filesystem::path& path);
nlohmann::json tiling_to_json(const PeriodicTiling& t);

/// Runs every structural and geometric check; called by the loaders.
void validate_tiling(PeriodicTiling& t);

/// Face sizes around v, counterclockwise, in canonical form (lexicographic
/// minimum over rotations and reflections).
std::vector<int> vertex_figure(const PeriodicTiling& t, int v);
/// e.g. "3^4.6"
std::string vertex_figure_name(const std::vector<int>& fig);

/// Isometry x -> L x + offset preserving the tiling. `linear` is L in the
/// (alpha, beta) basis; vertex v goes to motif vertex perm[v].first in cell
/// perm[v].second.
struct Symmetry {
  IntMat2 linear;
  QMat2 geometric_linear;
  Vec2 offset;
  std::vector<std::pair<int, Shift>> motif_perm;

  Vec2 apply(const Vec2& p) const { return geometric_linear.apply(p) + offset; }
  /// Image of vertex instance (v, s).
  std::pair<int, Shift> map_vertex(int v, Shift s) const;
};

/// Tries to build the symmetry with linear part U sending vertex v0 to the
/// instance (w, cell). Returns nullopt when the map does not preserve the tiling.
std::optional<Symmetry> try_symmetry(const PeriodicTiling& t, const IntMat2& U, int v0, int w, Shift cell = {});

/// Integer matrices U with U^T Gram U = Gram.
std::vector<IntMat2> lattice_isometries(const PeriodicTiling& t);

/// One symmetry per point-group element; with the lattice translations these
/// generate the full symmetry group. The identity comes first.
std::vector<Symmetry> full_symmetries(const PeriodicTiling& t);

Symmetry compose(const PeriodicTiling& t, const Symmetry& g, const Symmetry& h);  // g after h
Symmetry translation(const PeriodicTiling& t, Shift s);
Symmetry half_turn(const PeriodicTiling& t, const Vec2& center);  // throws if not a symmetry

/// Centres of half-turn symmetries, one per class modulo the lattice.
std::vector<Vec2> half_turn_centers(const PeriodicTiling& t);

enum class GroupTag { H, G, Full };

struct OrbitPartition {
  std::vector<std::vector<int>> blocks;  // sorted motif indices, blocks sorted
  GroupTag group = GroupTag::H;
  std::size_t size() const { return blocks.size(); }
};

/// center is required for GroupTag::G; throws TilingError
/// ("not a half-turn center") when it is not one.
OrbitPartition orbit_count(const PeriodicTiling& t, GroupTag tag, const std::optional<Vec2>& center = {});

/// Returns k; throws TilingError on a homogeneity violation or a mismatch
/// with expected_k.
int homogeneity_check(const PeriodicTiling& t);

}  // namespace tilequot
