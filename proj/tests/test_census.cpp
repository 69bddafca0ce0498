#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "tilequot/census.hpp"

using namespace tilequot;

TEST_SUITE("census") {

TEST_CASE("theorem bound") {
  CHECK(theorem_bound(load_fixture("square")) == 1);
  CHECK(theorem_bound(load_fixture("hexagonal")) == 1);
  CHECK(theorem_bound(load_fixture("two_uniform_36_346")) == 4);
  CHECK(theorem_bound(load_tiling(support::catalog_path(1))) == 6);
}

TEST_CASE("square census: one row per sublattice, every polyhedral row vertex-transitive") {
  auto sq = load_fixture("square");
  CensusOptions opt;
  opt.max_index = 20;
  auto c = run_census(sq, opt);
  std::int64_t want = 0;
  for (int n = 1; n <= 20; ++n) want += support::brute_sigma(n);
  CHECK(c.rows.size() == static_cast<std::size_t>(want));
  CHECK(c.ok());
  int polyhedral = 0;
  for (const auto& r : c.rows) {
    if (!r.polyhedral) {
      CHECK_FALSE(r.m);
      continue;
    }
    ++polyhedral;
    CHECK(r.m == 1);
    if (r.index <= 10) CHECK(r.m_nor == r.m);
  }
  CHECK(polyhedral > 100);
}

TEST_CASE("lax census fills every row and the oracles still agree") {
  CensusOptions opt;
  opt.max_index = 8;
  opt.strict = false;
  for (const auto& t : fixtures()) {
    auto c = run_census(t, opt);
    CHECK(c.disagreements == 0);
    for (const auto& r : c.rows) {
      CHECK(r.m);
      CHECK(r.m_nor == r.m);
      CHECK(r.aut_order == r.nor_order);
    }
  }
}

TEST_CASE("CSV output is stable across runs and thread counts") {
  auto k1 = load_tiling(support::catalog_path(1));
  CensusOptions opt;
  opt.max_index = 9;
  opt.jobs = 1;
  auto a = census_csv(run_census(k1, opt));
  opt.jobs = 3;
  auto b = census_csv(run_census(k1, opt));
  CHECK(a == b);
  std::istringstream in(a);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "sublattice_hnf,index,polyhedral,m,m_nor,bound,aut_order");
  CHECK(first.rfind("\"[[1,0],[0,1]]\",1,", 0) == 0);
  auto j = census_json(run_census(k1, opt));
  CHECK(j["bound"] == 6);
  CHECK(j["rows"].size() == 1 + 3 + 4 + 7 + 6 + 12 + 8 + 15 + 13);
}

TEST_CASE("cross-check threshold limits the normalizer oracle") {
  CensusOptions opt;
  opt.max_index = 6;
  opt.cross_check = 3;
  auto c = run_census(load_fixture("snub_square"), opt);
  for (const auto& r : c.rows) {
    if (!r.polyhedral) continue;
    CHECK(r.m_nor.has_value() == (r.index <= 3));
  }
}

TEST_CASE("sharpness order puts coprime diagonals first") {
  auto order = sharpness_order(35);
  REQUIRE(order.size() == 48);
  std::set<IntMat2> head(order.begin(), order.begin() + 2);
  CHECK(head == std::set<IntMat2>{IntMat2::diag(5, 7), IntMat2::diag(7, 5)});
  auto six = sharpness_order(6);
  CHECK(std::set<IntMat2>(six.begin(), six.begin() + 2) == std::set<IntMat2>{IntMat2::diag(2, 3), IntMat2::diag(3, 2)});
}

TEST_CASE("sharpness search") {
  auto sq = load_fixture("square");
  auto r = sharpness_search(sq, 1, 10);
  REQUIRE(r.found);
  CHECK(r.m == 1);
  // the first polyhedral quotient, by brute scan
  std::int64_t first = 0;
  for (std::int64_t n = 1; n <= 10 && !first; ++n)
    for (const auto& h : sublattices_of_index(n))
      if (make_quotient(sq, Sublattice::from_matrix(h), false).polyhedral) first = n;
  CHECK(r.found->index == first);
  // axis mirrors survive every diagonal sublattice of the square tiling
  CHECK_FALSE(r.nor_is_g);

  auto k1 = load_tiling(support::catalog_path(1));
  auto s = sharpness_search(k1, 6, 35);
  REQUIRE(s.found);
  CHECK(s.m == 6);

  auto none = sharpness_search(sq, 2, 6);
  CHECK_FALSE(none.found);
  CHECK(none.searched_up_to == 6);
}

TEST_CASE("verification of the shipped transcriptions") {
  VerifyOptions opt;
  opt.census_max_index = 12;
  opt.sharpness_max_index = 40;
  for (int i : {1, 6, 7}) {
    CAPTURE(i);
    auto rep = verify_catalog_entry(i, load_tiling(support::catalog_path(i)), opt);
    CHECK(rep.ok);
    REQUIRE(rep.sharp);
    CHECK(rep.sharp->found);
  }
  // K1 checked against the wrong table entry fails loudly
  auto wrong = verify_catalog_entry(3, load_tiling(support::catalog_path(1)), opt);
  CHECK_FALSE(wrong.ok);
  bool mentions = false;
  for (const auto& l : wrong.lines) mentions |= l.find("exceeds the published bound 5") != std::string::npos;
  CHECK(mentions);
}

}
