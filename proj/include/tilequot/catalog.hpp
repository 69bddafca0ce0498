#pragma once

// Bound table for the 65 four- to seven-vertex-homogeneous tilings, shipped
// fixture tilings, and the gate for hand transcriptions.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "tilequot/tiling.hpp"

namespace tilequot {

struct BoundEntry {
  int bound = 0;
  bool equality = false;  // m equals the bound for every quotient
};

struct BoundPart {
  std::vector<int> indices;
  BoundEntry entry;
};

/// The 23 classes of the table, in order.
const std::vector<BoundPart>& bound_parts();

/// Throws std::out_of_range outside 1..65.
BoundEntry bound_for(int i);
/// Homogeneity class k of K_i.
int class_for(int i);

/// Columns i,k,bound,equality.
std::string bounds_csv();

/// Root holding fixtures/ and catalog/. TILEQUOT_DATA_DIR overrides the
/// build-time default.
std::filesystem::path data_dir();

std::vector<std::string> fixture_names();
std::vector<PeriodicTiling> fixtures();
PeriodicTiling load_fixture(const std::string& name);

/// K<i>.json files under dir, sorted by i.
std::vector<std::pair<int, std::filesystem::path>> catalog_files(const std::filesystem::path& dir);

struct CatalogEntry {
  int index = 0;
  std::filesystem::path file;
  int k = 0;
  int bound = 0;
  bool equality = false;
  int motif = 0;
  std::string status;
};

class CatalogError : public std::runtime_error {
 public:
  CatalogError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// validate -> homogeneity -> bound. Throws CatalogError naming the stage
/// that rejected the file.
CatalogEntry ingest_transcription(int i, const std::filesystem::path& path);
CatalogEntry ingest_json(int i, const nlohmann::json& j, const std::filesystem::path& origin = {});

}  // namespace tilequot
