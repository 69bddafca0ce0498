#pragma once

// Flag systems of finite maps and their automorphism groups.

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tilequot {

/// Side j of a face starts at `vertex` and runs along `edge`.
struct FaceSide {
  int vertex = 0;
  int edge = 0;
};

/// A map given by its oriented face boundaries. Every edge must occur on
/// exactly two sides, traversed in opposite directions.
struct OrientedMap {
  int num_vertices = 0;
  int num_edges = 0;
  std::vector<std::vector<FaceSide>> faces;
};

/// Flags are (face, side, end): end 0 is the corner where the side starts.
/// s[i] changes only the dimension-i element.
struct FlagSystem {
  std::vector<std::array<int, 3>> s;
  std::vector<int> vertex, edge, face;
  int num_vertices = 0, num_edges = 0, num_faces = 0;
  bool polyhedral = true;

  std::size_t size() const { return s.size(); }
};

/// Throws std::invalid_argument if the sides do not pair up.
FlagSystem flags_from_faces(const OrientedMap& m, bool polyhedral = true);

/// Involutions, s0 s2 = s2 s0, connectivity, 4E flags. Returns an empty
/// string when valid, otherwise a description of the first problem.
std::string check_flag_system(const FlagSystem& fs);

/// A flag permutation commuting with s0, s1, s2.
using MapAutomorphism = std::vector<int>;

/// The full group, including orientation-reversing elements. Identity first,
/// remaining elements ordered by the image of the base flag.
std::vector<MapAutomorphism> automorphism_group(const FlagSystem& fs);

struct OrbitCounts {
  int vertices = 0, edges = 0, faces = 0;
};

OrbitCounts orbit_counts(const FlagSystem& fs, const std::vector<MapAutomorphism>& aut);
int vertex_orbit_count(const FlagSystem& fs, const std::vector<MapAutomorphism>& aut);
/// Vertex orbits as a label per vertex (labels are 0..m-1 by first occurrence).
std::vector<int> vertex_orbit_labels(const FlagSystem& fs, const std::vector<MapAutomorphism>& aut);

/// Witness w maps flags of a to flags of b with w[s_i f] = s_i w[f].
std::optional<std::vector<int>> is_isomorphic(const FlagSystem& a, const FlagSystem& b);

/// One line per flag: "id s0 s1 s2".
void write_flags(std::ostream& os, const FlagSystem& fs);

}  // namespace tilequot
