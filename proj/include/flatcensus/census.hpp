#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatcensus/curve_type.hpp"
#include "flatcensus/rational.hpp"
#include "flatcensus/tiling.hpp"

namespace flatcensus {

enum class Mode { naive, pruned };

// Structural restriction on the horizontal cylinder decomposition.
enum class StructureFilter { none, one_cylinder, one_cylinder_h1 };

struct CensusSpec {
  int g = 0;
  int n = 0;
  int max_area = 0;
  Mode mode = Mode::pruned;
  StructureFilter filter = StructureFilter::none;
  std::optional<std::string> h_type_filter;  // keep only this horizontal type
};

struct BucketKey {
  int area;
  std::string h_type, v_type;
  auto operator<=>(const BucketKey&) const = default;
};

// Exact automorphism-weighted counts: each isomorphism class contributes
// 1/#Aut to its (area, hType, vType) bucket.
struct CountTable {
  CensusSpec spec;
  std::map<BucketKey, Rat> buckets;

  void add(const BucketKey& k, const Rat& w);
  void merge(const CountTable& other);
  // Weighted count of surfaces with area <= L whose types match h and v;
  // nullopt is a wildcard.
  Rat s_value(const std::optional<std::string>& h, const std::optional<std::string>& v,
              int L) const;
  Rat total(int L) const;
  // total(L) / L^(12g-12+4n), exact.
  Rat mgn_estimate(int L) const;
  std::string to_csv() const;
};

std::vector<std::pair<BucketKey, Rat>> parse_census_csv(const std::string& text);

struct ShardInfo {
  std::string id;
  uint64_t checksum = 0;
};

struct CensusResult {
  CountTable table;
  std::vector<ShardInfo> shards;
  uint64_t nodes = 0;
};

struct ResourceCap : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using SurfaceObserver = std::function<void(const MarkedTiling&)>;

struct CensusOptions {
  int workers = 1;
  uint64_t max_nodes = 0;      // 0 = unlimited; exceeding throws ResourceCap
  std::string checkpoint_dir;  // empty = no checkpointing
  SurfaceObserver observer;    // non-null forces sequential execution
};

// Enumerates labeled surfaces area by area and accumulates exact weights.
// naive: every pair of fixed-point-free matchings, filtered afterwards.
// pruned: canonical horizontal structures with orbit-size weighting and a
// pruned DFS over vertical gluings; bit-identical totals by construction.
CensusResult run_census(const CensusSpec& spec, const CensusOptions& opts = {});

std::string manifest_json(const CensusResult& r);

std::string mode_name(Mode m);
std::string filter_name(StructureFilter f);

// Type keys of the two weight-1 single-curve classes on a closed genus-2
// surface: a nonseparating loop and a separating splitter.
std::string nonseparating_weight1_key();
std::string separating_weight1_key();

}  // namespace flatcensus
