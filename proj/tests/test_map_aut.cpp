#include <random>
#include <sstream>

#include "doctest.h"
#include "support.hpp"

using namespace tilequot;

namespace {

FlagSystem quotient_flags(const PeriodicTiling& t, IntMat2 m) {
  return build_flags(make_quotient(t, Sublattice::from_matrix(m), false));
}

}  // namespace

TEST_SUITE("map_aut") {

TEST_CASE("flag counts are 4E") {
  auto sq = load_fixture("square");
  auto tri = load_fixture("triangular");
  CHECK(quotient_flags(sq, IntMat2::diag(2, 2)).size() == 32);
  CHECK(quotient_flags(sq, IntMat2::diag(3, 3)).size() == 72);
  auto x = make_quotient(tri, Sublattice::from_matrix(IntMat2::diag(2, 2)), false);
  CHECK(x.num_vertices() == 4);
  CHECK(x.num_edges() == 12);
  CHECK(x.num_faces() == 8);
  CHECK(build_flags(x).size() == 48);
}

TEST_CASE("flag systems of quotients are well formed") {
  for (const auto& t : fixtures())
    for (std::int64_t n = 1; n <= 6; ++n)
      for (const auto& h : sublattices_of_index(n)) {
        auto fs = quotient_flags(t, h);
        CHECK(check_flag_system(fs) == "");
      }
}

TEST_CASE("strict quotients refuse to build flags when degenerate") {
  auto sq = load_fixture("square");
  CHECK_THROWS_AS(build_flags(make_quotient(sq, Sublattice::from_matrix(IntMat2::identity()), true)), QuotientError);
  OrientedMap broken;
  broken.num_vertices = 1;
  broken.num_edges = 1;
  broken.faces = {{{0, 0}}};
  CHECK_THROWS_AS(flags_from_faces(broken), std::invalid_argument);
}

TEST_CASE("regular square maps have 8 n^2 automorphisms") {
  auto sq = load_fixture("square");
  for (std::int64_t n = 2; n <= 5; ++n) {
    auto fs = quotient_flags(sq, IntMat2::diag(n, n));
    auto aut = automorphism_group(fs);
    CHECK(aut.size() == static_cast<std::size_t>(8 * n * n));
    CHECK(vertex_orbit_count(fs, aut) == 1);
    auto oc = orbit_counts(fs, aut);
    CHECK(oc.edges == 1);
    CHECK(oc.faces == 1);
  }
}

TEST_CASE("automorphisms commute with the involutions and act freely") {
  auto k1 = load_tiling(support::catalog_path(1));
  auto fs = quotient_flags(k1, IntMat2::diag(3, 2));
  auto aut = automorphism_group(fs);
  REQUIRE(!aut.empty());
  for (std::size_t f = 0; f < fs.size(); ++f) CHECK(aut[0][f] == static_cast<int>(f));
  for (const auto& a : aut) {
    CHECK(support::is_flag_isomorphism(fs, fs, a));
    if (&a != &aut[0])
      for (std::size_t f = 0; f < fs.size(); ++f) CHECK(a[f] != static_cast<int>(f));
  }
  CHECK(fs.size() % aut.size() == 0);
}

TEST_CASE("an asymmetric map has only the identity") {
  auto m = support::asymmetric_sphere();
  REQUIRE(support::brute_vertex_aut_count(m) == 1);
  auto fs = flags_from_faces(m);
  CHECK(check_flag_system(fs) == "");
  CHECK(automorphism_group(fs).size() == 1);
  CHECK(vertex_orbit_count(fs, automorphism_group(fs)) == m.num_vertices);
}

TEST_CASE("automorphism counts agree with a vertex-permutation brute force") {
  // small polyhedral quotients only; the oracle is factorial in V
  int checked = 0;
  for (const auto& t : fixtures())
    for (std::int64_t n = 1; n <= 9; ++n)
      for (const auto& h : sublattices_of_index(n)) {
        auto x = make_quotient(t, Sublattice::from_matrix(h), false);
        if (!x.polyhedral || x.num_vertices() > 9) continue;
        auto fs = build_flags(x);
        CHECK(automorphism_group(fs).size() == support::brute_vertex_aut_count(x.map));
        ++checked;
      }
  CHECK(checked > 5);
}

TEST_CASE("isomorphism testing") {
  auto sq = load_fixture("square");
  auto tri = load_fixture("triangular");
  auto a = quotient_flags(sq, IntMat2::diag(2, 2));
  auto w = is_isomorphic(a, a);
  REQUIRE(w);
  CHECK(support::is_flag_isomorphism(a, a, *w));

  auto b = quotient_flags(sq, {4, 0, 0, 1});
  CHECK(is_isomorphic(a, b).has_value() == support::naive_isomorphic(a, b));
  CHECK_FALSE(is_isomorphic(a, quotient_flags(tri, IntMat2::diag(2, 2))));

  // diag(1,4) and diag(4,1) are mirror images under the diagonal reflection
  auto c = quotient_flags(sq, {1, 0, 0, 4});
  auto wc = is_isomorphic(b, c);
  CHECK(wc.has_value() == support::naive_isomorphic(b, c));
  CHECK(wc.has_value());
}

TEST_CASE("isomorphism is an equivalence on a shuffled pool") {
  std::mt19937_64 rng(99);
  std::vector<FlagSystem> pool;
  for (const char* name : {"square", "triangular", "snub_square"})
    for (const auto& h : sublattices_of_index(4)) pool.push_back(quotient_flags(load_fixture(name), h));
  for (const auto& fs : pool) {
    auto [copy, p] = support::shuffle_flags(fs, rng);
    auto w = is_isomorphic(fs, copy);
    REQUIRE(w);
    CHECK(support::is_flag_isomorphism(fs, copy, *w));
    // symmetric via the inverse witness
    std::vector<int> inv(w->size());
    for (std::size_t f = 0; f < w->size(); ++f) inv[(*w)[f]] = static_cast<int>(f);
    CHECK(support::is_flag_isomorphism(copy, fs, inv));
    // transitive via composition
    auto [copy2, p2] = support::shuffle_flags(copy, rng);
    auto w2 = is_isomorphic(copy, copy2);
    REQUIRE(w2);
    std::vector<int> comp(w->size());
    for (std::size_t f = 0; f < w->size(); ++f) comp[f] = (*w2)[(*w)[f]];
    CHECK(support::is_flag_isomorphism(fs, copy2, comp));
  }
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = 0; j < pool.size(); ++j) {
      bool ij = is_isomorphic(pool[i], pool[j]).has_value();
      CHECK(ij == is_isomorphic(pool[j], pool[i]).has_value());
      if (pool[i].size() <= 96) CHECK(ij == support::naive_isomorphic(pool[i], pool[j]));
    }
}

TEST_CASE("text export has one line per flag") {
  auto fs = quotient_flags(load_fixture("square"), IntMat2::diag(2, 2));
  std::ostringstream os;
  write_flags(os, fs);
  std::istringstream in(os.str());
  int id, a, b, c, lines = 0;
  while (in >> id >> a >> b >> c) {
    CHECK(id == lines);
    CHECK(a == fs.s[id][0]);
    CHECK(b == fs.s[id][1]);
    CHECK(c == fs.s[id][2]);
    ++lines;
  }
  CHECK(lines == 32);
}

}
