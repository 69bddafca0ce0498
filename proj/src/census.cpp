#include "tilequot/census.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "tilequot/catalog.hpp"

namespace tilequot {

int theorem_bound(const PeriodicTiling& t) {
  auto centers = half_turn_centers(t);
  if (centers.empty()) throw TilingError("G undefined: no half-turn symmetry");
  int best = t.vertex_count();
  for (const auto& c : centers) best = std::min(best, static_cast<int>(orbit_count(t, GroupTag::G, c).size()));
  return best;
}

namespace {

CensusRow census_row(const PeriodicTiling& t, const std::vector<Symmetry>& full, const IntMat2& h,
                     const CensusOptions& opt, std::optional<int> bound) {
  CensusRow row;
  row.hnf = h;
  row.index = h.det();
  row.bound = bound;
  auto s = Sublattice::from_matrix(h);
  auto x = make_quotient(t, s, false);
  row.polyhedral = x.polyhedral;
  if (opt.strict && !x.polyhedral) return row;
  auto fs = build_flags(x);
  auto aut = automorphism_group(fs);
  row.m = vertex_orbit_count(fs, aut);
  row.aut_order = static_cast<std::int64_t>(aut.size());
  if (row.index <= opt.cross_check) {
    auto nr = normalizer(t, s, full);
    row.m_nor = nr.vertex_orbits;
    row.nor_order = nr.order;
  }
  return row;
}

template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& body) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  for (unsigned w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      try {
        for (std::size_t i; (i = next++) < n;) body(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::string opt_str(const auto& v) { return v ? std::to_string(*v) : std::string(); }

}  // namespace

CensusResult run_census(const PeriodicTiling& t, const CensusOptions& opt) {
  CensusResult res;
  try {
    res.bound = theorem_bound(t);
  } catch (const TilingError&) {
    res.bound.reset();
  }
  std::vector<IntMat2> work;
  for (int n = 1; n <= opt.max_index; ++n)
    for (const auto& h : sublattices_of_index(n)) work.push_back(h);
  const auto full = full_symmetries(t);
  res.rows.resize(work.size());
  parallel_for(work.size(), opt.jobs, [&](std::size_t i) { res.rows[i] = census_row(t, full, work[i], opt, res.bound); });
  for (const auto& r : res.rows) {
    res.violations += r.violation();
    res.disagreements += r.disagreement();
  }
  return res;
}

std::string census_csv(const CensusResult& c) {
  std::ostringstream os;
  os << "sublattice_hnf,index,polyhedral,m,m_nor,bound,aut_order\n";
  for (const auto& r : c.rows)
    os << '"' << to_string(r.hnf) << "\"," << r.index << ',' << (r.polyhedral ? "true" : "false") << ','
       << opt_str(r.m) << ',' << opt_str(r.m_nor) << ',' << opt_str(r.bound) << ',' << opt_str(r.aut_order) << '\n';
  return os.str();
}

nlohmann::json census_json(const CensusResult& c) {
  auto opt_json = [](const auto& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : c.rows)
    rows.push_back({{"sublattice_hnf", {{r.hnf.m00, r.hnf.m01}, {r.hnf.m10, r.hnf.m11}}},
                    {"index", r.index},
                    {"polyhedral", r.polyhedral},
                    {"m", opt_json(r.m)},
                    {"m_nor", opt_json(r.m_nor)},
                    {"bound", opt_json(r.bound)},
                    {"aut_order", opt_json(r.aut_order)}});
  return {{"bound", opt_json(c.bound)}, {"violations", c.violations}, {"disagreements", c.disagreements}, {"rows", rows}};
}

std::vector<IntMat2> sharpness_order(std::int64_t n) {
  std::vector<IntMat2> first, rest;
  for (const auto& h : sublattices_of_index(n)) {
    bool diag = h.m01 == 0;
    if (diag && h.m00 != h.m11 && h.m00 >= 2 && h.m11 >= 2 && std::gcd(h.m00, h.m11) == 1)
      first.push_back(h);
    else
      rest.push_back(h);
  }
  first.insert(first.end(), rest.begin(), rest.end());
  return first;
}

SharpnessResult sharpness_search(const PeriodicTiling& t, int bound, int max_index) {
  SharpnessResult res;
  const auto full = full_symmetries(t);
  for (int n = 1; n <= max_index; ++n) {
    res.searched_up_to = n;
    for (const auto& h : sharpness_order(n)) {
      auto s = Sublattice::from_matrix(h);
      auto x = make_quotient(t, s, false);
      if (!x.polyhedral) continue;
      ++res.tried;
      auto fs = build_flags(x);
      auto aut = automorphism_group(fs);
      int m = vertex_orbit_count(fs, aut);
      if (m != bound) continue;
      auto nr = normalizer(t, s, full);
      res.found = s;
      res.m = m;
      res.aut_order = static_cast<std::int64_t>(aut.size());
      res.nor_is_g = nr.only_half_turn();
      res.preserving = nr.preserving;
      return res;
    }
  }
  return res;
}

VerifyReport verify_catalog_entry(int i, const PeriodicTiling& t, const VerifyOptions& opt) {
  VerifyReport rep;
  BoundEntry want;
  int want_k = 0;
  try {
    want = bound_for(i);
    want_k = class_for(i);
  } catch (const std::out_of_range&) {
    rep.fail("no table entry for K" + std::to_string(i));
    return rep;
  }

  int k = 0;
  try {
    k = homogeneity_check(t);
  } catch (const TilingError& e) {
    rep.fail(std::string("homogeneity: ") + e.what());
    return rep;
  }
  if (k == want_k)
    rep.pass("homogeneity k = " + std::to_string(k));
  else
    rep.fail("homogeneity k = " + std::to_string(k) + ", table class is " + std::to_string(want_k));

  int bound = 0;
  try {
    bound = theorem_bound(t);
  } catch (const TilingError& e) {
    rep.fail(e.what());
    return rep;
  }
  if (bound == want.bound)
    rep.pass("bound " + std::to_string(bound) + " verified");
  else if (bound < want.bound)
    rep.fail("half-turn orbit count " + std::to_string(bound) + " undercuts the published bound " + std::to_string(want.bound));
  else
    rep.fail("half-turn orbit count " + std::to_string(bound) + " exceeds the published bound " + std::to_string(want.bound));

  CensusOptions copt;
  copt.max_index = opt.census_max_index;
  copt.cross_check = opt.cross_check;
  auto census = run_census(t, copt);
  int polyhedral = 0;
  std::optional<CensusRow> below;
  for (const auto& r : census.rows) {
    if (!r.polyhedral) continue;
    ++polyhedral;
    if (want.equality && r.m && *r.m != want.bound && !below) below = r;
  }
  const std::string range = "up to index " + std::to_string(opt.census_max_index);
  if (census.violations)
    rep.fail(std::to_string(census.violations) + " census rows exceed the bound " + range);
  else
    rep.pass("m <= " + std::to_string(bound) + " on " + std::to_string(polyhedral) + " polyhedral quotients " + range);
  if (census.disagreements) rep.fail(std::to_string(census.disagreements) + " rows where the two oracles disagree");
  if (want.equality) {
    if (below)
      rep.fail("equality fails: m = " + std::to_string(*below->m) + " at " + to_string(below->hnf));
    else
      rep.pass("m = " + std::to_string(want.bound) + " on every polyhedral quotient " + range);
  }

  auto sharp = sharpness_search(t, bound, opt.sharpness_max_index);
  if (sharp.found)
    rep.pass("sharp sublattice " + to_string(sharp.found->m) + " (index " + std::to_string(sharp.found->index) +
             ", |Aut| = " + std::to_string(sharp.aut_order) + (sharp.nor_is_g ? ", Nor = G" : ", Nor larger than G") + ")");
  else
    rep.fail("sharpness: not found up to index " + std::to_string(opt.sharpness_max_index));
  rep.sharp = std::move(sharp);
  return rep;
}

}  // namespace tilequot
