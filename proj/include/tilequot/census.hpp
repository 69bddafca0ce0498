#pragma once

// Sweeps over sublattices: vertex-orbit counts of quotients against the
// half-turn orbit bound, and searches for quotients attaining it.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "tilequot/quotient.hpp"

namespace tilequot {

/// Minimum over half-turn centers of the G-orbit count. Throws TilingError
/// ("G undefined: no half-turn symmetry") when there is no center.
int theorem_bound(const PeriodicTiling& t);

struct CensusRow {
  IntMat2 hnf;
  std::int64_t index = 0;
  bool polyhedral = false;
  std::optional<int> m;      // flag oracle
  std::optional<int> m_nor;  // normalizer oracle
  std::optional<int> bound;
  std::optional<std::int64_t> aut_order;
  std::optional<std::int64_t> nor_order;

  bool violation() const { return polyhedral && m && bound && *m > *bound; }
  bool disagreement() const {
    return (m && m_nor && *m != *m_nor) || (aut_order && nor_order && *aut_order != *nor_order);
  }
};

struct CensusOptions {
  int max_index = 10;
  bool strict = true;
  int cross_check = 10;  // both oracles up to this index
  unsigned jobs = 0;     // 0: hardware concurrency
};

struct CensusResult {
  std::vector<CensusRow> rows;
  std::optional<int> bound;
  int violations = 0;
  int disagreements = 0;

  bool ok() const { return violations == 0 && disagreements == 0; }
};

CensusResult run_census(const PeriodicTiling& t, const CensusOptions& opt);

std::string census_csv(const CensusResult& c);
nlohmann::json census_json(const CensusResult& c);

struct SharpnessResult {
  std::optional<Sublattice> found;
  int m = 0;
  std::int64_t aut_order = 0;
  bool nor_is_g = false;  // Nor(Gamma) is translations plus at most the half turn
  std::vector<IntMat2> preserving;
  int searched_up_to = 0;
  int tried = 0;
};

/// Sublattices in the order the sharpness search visits them for one index:
/// diag(p, q) with p != q coprime and both at least 2 first, then the rest in
/// HNF order.
std::vector<IntMat2> sharpness_order(std::int64_t n);

SharpnessResult sharpness_search(const PeriodicTiling& t, int bound, int max_index);

struct VerifyOptions {
  int census_max_index = 20;
  int sharpness_max_index = 100;
  int cross_check = 10;
};

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> lines;
  std::optional<SharpnessResult> sharp;

  void fail(const std::string& s) {
    ok = false;
    lines.push_back("FAIL " + s);
  }
  void pass(const std::string& s) { lines.push_back("ok   " + s); }
};

VerifyReport verify_catalog_entry(int i, const PeriodicTiling& t, const VerifyOptions& opt = {});

}  // namespace tilequot
