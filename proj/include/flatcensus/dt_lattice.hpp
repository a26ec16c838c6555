#pragma once

#include <array>
#include <string>
#include <vector>

#include "flatcensus/rational.hpp"

namespace flatcensus {

// A pants decomposition as its trivalent graph: one region (pair of pants)
// per vertex, three slots each holding a curve index or kLeg (a marked end).
// A curve fills exactly two slots; a curve may fill two slots of one region.
constexpr int kLeg = -1;

struct PantsDecomposition {
  int g = 0, n = 0;
  std::vector<std::array<int, 3>> regions;

  int n_curves() const { return 3 * g - 3 + n; }
  int n_regions() const { return static_cast<int>(regions.size()); }
};

// Throws std::invalid_argument on any structural violation.
void validate(const PantsDecomposition& pd);

struct DTPoint {
  std::vector<Int> m;  // intersection numbers, m >= 0
  std::vector<Int> t;  // twisting numbers
};

// Membership in the integral-multicurve semigroup: m >= 0, t_i >= 0 whenever
// m_i = 0, and every region's slot sum of m is even (a curve on two slots of
// one region counts twice).
bool semigroup_contains(const DTPoint& p, const PantsDecomposition& pd);

// #I_L = #{m all positive & parity-feasible, sum <= L; 0 <= t_i < m_i}
//      = sum over admissible m of prod m_i.
Int count_IL(const PantsDecomposition& pd, long L);

// 2^(GF(2) rank of the region parity system); equals 2^(2g-3+n).
Int semigroup_index(const PantsDecomposition& pd);

// Leb of A1 = {sum x_i <= 1, 0 <= y_i < x_i} in R^(2Np): 1/(2*Np)!.
Rat leb_A1(int np);

// (count_IL / L^(2Np), leb_A1 / index) — trend vs predicted limit.
std::pair<Rat, Rat> volume_limit_check(const PantsDecomposition& pd, long L);

PantsDecomposition pants_from_json(const std::string& text);
std::string pants_to_json(const PantsDecomposition& pd);

// All isomorphism classes of pants graphs for (g,n); small cases only.
std::vector<PantsDecomposition> all_pants_graphs(int g, int n);

// First graph in the canonical enumeration order; deterministic.
PantsDecomposition standard_pants(int g, int n);

// CSV rows "L,count,ratio,limit" for each requested L.
std::string dt_count_csv(const PantsDecomposition& pd, const std::vector<long>& ls);

}  // namespace flatcensus
