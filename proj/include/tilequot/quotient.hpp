#pragma once

// Toroidal quotients K / Gamma of a periodic tiling by a translation
// sublattice, and the normalizer description of their automorphisms.

#include <cstdint>
#include <string>
#include <vector>

#include "tilequot/map_aut.hpp"
#include "tilequot/tiling.hpp"

namespace tilequot {

struct Sublattice {
  IntMat2 m;  // HNF, columns are generators in the (alpha, beta) basis
  std::int64_t index = 1;

  /// Normalizes any nonsingular matrix. Throws std::invalid_argument.
  static Sublattice from_matrix(const IntMat2& any);
  /// "a,b,c,d": columns (a,c) and (b,d).
  static Sublattice parse(const std::string& text);

  /// Residue class of s in Z^2 / Lambda, in [0, index).
  std::int64_t residue(Shift s) const;
  Shift representative(std::int64_t r) const;
  bool contains(Shift s) const { return lattice_contains(m, s); }
};

class QuotientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quotient vertex ids are motif_vertex * index + residue; edges and faces
/// are numbered the same way.
struct ToroidalMap {
  const PeriodicTiling* tiling = nullptr;
  Sublattice lattice;
  bool strict = true;
  bool polyhedral = true;
  std::string defect;  // first polyhedrality failure
  OrientedMap map;
  std::vector<std::array<int, 2>> edge_ends;

  int num_vertices() const { return map.num_vertices; }
  int num_edges() const { return map.num_edges; }
  int num_faces() const { return static_cast<int>(map.faces.size()); }
  int euler_characteristic() const { return num_vertices() - num_edges() + num_faces(); }

  // The covering projection.
  int vertex_of(int v, Shift s) const;
  int edge_of(int e, Shift s) const;
  int face_of(int f, Shift s) const;
};

/// Strict mode throws QuotientError("quotient not polyhedral at ...") when
/// the quotient is not a polyhedral map. `t` must outlive the result.
ToroidalMap make_quotient(const PeriodicTiling& t, const Sublattice& s, bool strict = true);

FlagSystem build_flags(const ToroidalMap& x);

struct NormalizerReport {
  std::vector<IntMat2> preserving;  // point-group elements U with U Lambda = Lambda
  std::vector<IntMat2> excluded;
  std::int64_t order = 0;           // of Nor(Gamma) / Gamma
  std::vector<std::vector<int>> elements;  // as permutations of quotient vertices
  std::vector<int> orbit_labels;
  int vertex_orbits = 0;

  /// True when only the identity and possibly -I survive.
  bool only_half_turn() const;
};

NormalizerReport normalizer(const PeriodicTiling& t, const Sublattice& s);
NormalizerReport normalizer(const PeriodicTiling& t, const Sublattice& s, const std::vector<Symmetry>& full);

/// Orbits of quotient vertices under the group generated by translations and
/// the half turn about center, modulo Gamma. Throws std::logic_error if the
/// count differs from orbit_count(t, G, center).
int induced_orbits(const PeriodicTiling& t, const Sublattice& s, const Vec2& center);

}  // namespace tilequot
