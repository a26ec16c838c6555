#include "flatcensus/dt_lattice.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include <json.hpp>

namespace flatcensus {

namespace {

// Region parity rows over GF(2): a curve filling two slots of one region
// contributes an even sum there, i.e. a zero bit.
std::vector<uint64_t> parity_rows(const PantsDecomposition& pd) {
  std::vector<uint64_t> rows(pd.regions.size(), 0);
  for (size_t r = 0; r < pd.regions.size(); ++r)
    for (int slot : pd.regions[r])
      if (slot != kLeg) rows[r] ^= uint64_t(1) << slot;
  return rows;
}

int gf2_rank(std::vector<uint64_t> rows) {
  int rank = 0;
  for (int bit = 63; bit >= 0; --bit) {
    size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot] >> bit & 1)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (size_t r = 0; r < rows.size(); ++r)
      if (r != size_t(rank) && (rows[r] >> bit & 1)) rows[r] ^= rows[rank];
    ++rank;
  }
  return rank;
}

bool region_sums_even(const PantsDecomposition& pd, const std::vector<long>& m) {
  for (const auto& reg : pd.regions) {
    long s = 0;
    for (int slot : reg)
      if (slot != kLeg) s += m[slot];
    if (s % 2 != 0) return false;
  }
  return true;
}

void count_rec(const PantsDecomposition& pd, std::vector<long>& m, size_t i, long budget,
               Int& acc) {
  if (i == m.size()) {
    if (!region_sums_even(pd, m)) return;
    Int prod = 1;
    for (long v : m) prod *= v;
    acc += prod;
    return;
  }
  long slack = budget - long(m.size() - i - 1);  // each later curve needs >= 1
  for (long v = 1; v <= slack; ++v) {
    m[i] = v;
    count_rec(pd, m, i + 1, budget - v, acc);
  }
  m[i] = 0;
}

}  // namespace

void validate(const PantsDecomposition& pd) {
  if (pd.g < 0 || pd.n < 0) throw std::invalid_argument("negative genus or marking count");
  if (2 - 2 * pd.g - pd.n >= 0)
    throw std::invalid_argument("pants decomposition needs 2 - 2g - n < 0");
  int np = pd.n_curves();
  if (np < 1) throw std::invalid_argument("no curves: (g,n) has no pants decomposition");
  if (pd.n_regions() != 2 * pd.g - 2 + pd.n)
    throw std::invalid_argument("wrong number of regions");
  std::vector<int> uses(np, 0);
  int legs = 0;
  for (const auto& reg : pd.regions)
    for (int slot : reg) {
      if (slot == kLeg) {
        ++legs;
        continue;
      }
      if (slot < 0 || slot >= np) throw std::invalid_argument("curve index out of range");
      ++uses[slot];
    }
  if (legs != pd.n) throw std::invalid_argument("leg count differs from n");
  for (int c = 0; c < np; ++c)
    if (uses[c] != 2) throw std::invalid_argument("every curve must fill exactly two slots");
  // connectivity of the region graph through shared curves
  std::vector<int> comp(pd.regions.size(), -1);
  std::vector<std::vector<int>> regions_of(np);
  for (size_t r = 0; r < pd.regions.size(); ++r)
    for (int slot : pd.regions[r])
      if (slot != kLeg) regions_of[slot].push_back(int(r));
  std::vector<int> stack = {0};
  comp[0] = 0;
  while (!stack.empty()) {
    int r = stack.back();
    stack.pop_back();
    for (int slot : pd.regions[r])
      if (slot != kLeg)
        for (int r2 : regions_of[slot])
          if (comp[r2] < 0) {
            comp[r2] = 0;
            stack.push_back(r2);
          }
  }
  if (std::count(comp.begin(), comp.end(), -1) != 0)
    throw std::invalid_argument("pants graph is disconnected");
}

bool semigroup_contains(const DTPoint& p, const PantsDecomposition& pd) {
  size_t np = size_t(pd.n_curves());
  if (p.m.size() != np || p.t.size() != np)
    throw std::invalid_argument("coordinate length mismatch");
  for (size_t i = 0; i < np; ++i) {
    if (p.m[i] < 0) return false;
    if (p.m[i] == 0 && p.t[i] < 0) return false;
  }
  for (const auto& reg : pd.regions) {
    Int s = 0;
    for (int slot : reg)
      if (slot != kLeg) s += p.m[slot];
    if (s % 2 != 0) return false;
  }
  return true;
}

Int count_IL(const PantsDecomposition& pd, long L) {
  validate(pd);
  if (L < 0) throw std::invalid_argument("negative L");
  std::vector<long> m(pd.n_curves(), 0);
  Int acc = 0;
  if (L >= pd.n_curves()) count_rec(pd, m, 0, L, acc);
  return acc;
}

Int semigroup_index(const PantsDecomposition& pd) {
  validate(pd);
  return pow2(unsigned(gf2_rank(parity_rows(pd))));
}

Rat leb_A1(int np) {
  if (np < 1) throw std::invalid_argument("need at least one curve");
  return make_rat(Int(1), factorial(unsigned(2 * np)));
}

std::pair<Rat, Rat> volume_limit_check(const PantsDecomposition& pd, long L) {
  if (L < 1) throw std::invalid_argument("need L >= 1");
  Int den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(L),
                static_cast<unsigned long>(2 * pd.n_curves()));
  Rat ratio = make_rat(count_IL(pd, L), den);
  Rat limit = leb_A1(pd.n_curves()) / Rat(semigroup_index(pd));
  return {ratio, limit};
}

PantsDecomposition pants_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad pants JSON: ") + e.what());
  }
  PantsDecomposition pd;
  try {
    pd.g = j.at("g").get<int>();
    pd.n = j.at("n").get<int>();
    for (const auto& reg : j.at("regions")) {
      if (!reg.is_array() || reg.size() != 3)
        throw std::invalid_argument("each region needs exactly three slots");
      std::array<int, 3> slots;
      for (int k = 0; k < 3; ++k) slots[k] = reg[k].get<int>();
      pd.regions.push_back(slots);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad pants JSON: ") + e.what());
  }
  validate(pd);
  return pd;
}

std::string pants_to_json(const PantsDecomposition& pd) {
  nlohmann::ordered_json j;
  j["g"] = pd.g;
  j["n"] = pd.n;
  auto regions = nlohmann::ordered_json::array();
  for (const auto& reg : pd.regions) regions.push_back({reg[0], reg[1], reg[2]});
  j["regions"] = std::move(regions);
  return j.dump(2) + "\n";
}

namespace {

struct GraphShape {
  int r = 0;
  std::vector<int> loops;           // 0/1 per vertex
  std::vector<std::vector<int>> e;  // symmetric multiplicities

  std::vector<int> key() const {
    std::vector<int> k = loops;
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) k.push_back(e[i][j]);
    return k;
  }

  GraphShape relabeled(const std::vector<int>& perm) const {
    GraphShape out;
    out.r = r;
    out.loops.assign(r, 0);
    out.e.assign(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i) out.loops[perm[i]] = loops[i];
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) out.e[perm[i]][perm[j]] = e[i][j];
    return out;
  }

  bool connected() const {
    std::vector<int> seen(r, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < r; ++j)
        if (e[i][j] > 0 && !seen[j]) {
          seen[j] = 1;
          stack.push_back(j);
        }
    }
    return std::count(seen.begin(), seen.end(), 0) == 0;
  }
};

bool is_canonical(const GraphShape& s) {
  std::vector<int> perm(s.r);
  std::iota(perm.begin(), perm.end(), 0);
  auto mine = s.key();
  do {
    if (s.relabeled(perm).key() < mine) return false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

PantsDecomposition shape_to_pants(const GraphShape& s, int g, int n) {
  PantsDecomposition pd;
  pd.g = g;
  pd.n = n;
  std::vector<std::vector<int>> slots(s.r);
  int curve = 0;
  for (int i = 0; i < s.r; ++i)
    if (s.loops[i]) {
      slots[i].push_back(curve);
      slots[i].push_back(curve);
      ++curve;
    }
  for (int i = 0; i < s.r; ++i)
    for (int j = i + 1; j < s.r; ++j)
      for (int k = 0; k < s.e[i][j]; ++k) {
        slots[i].push_back(curve);
        slots[j].push_back(curve);
        ++curve;
      }
  for (int i = 0; i < s.r; ++i) {
    while (slots[i].size() < 3) slots[i].push_back(kLeg);
    pd.regions.push_back({slots[i][0], slots[i][1], slots[i][2]});
  }
  return pd;
}

void enumerate_shapes(GraphShape& s, int i, int j, std::vector<int>& deg, int edges_left,
                      std::vector<GraphShape>& out) {
  if (i == s.r) {
    if (edges_left != 0 || !s.connected() || !is_canonical(s)) return;
    out.push_back(s);
    return;
  }
  if (j == s.r) {
    enumerate_shapes(s, i + 1, i + 2, deg, edges_left, out);
    return;
  }
  int cap = std::min({3 - deg[i], 3 - deg[j], edges_left});
  for (int k = 0; k <= cap; ++k) {
    s.e[i][j] = s.e[j][i] = k;
    deg[i] += k;
    deg[j] += k;
    enumerate_shapes(s, i, j + 1, deg, edges_left - k, out);
    deg[i] -= k;
    deg[j] -= k;
    s.e[i][j] = s.e[j][i] = 0;
  }
}

}  // namespace

std::vector<PantsDecomposition> all_pants_graphs(int g, int n) {
  if (g < 0 || n < 0 || 2 - 2 * g - n >= 0 || 3 * g - 3 + n < 1)
    throw std::invalid_argument("no pants decompositions for this (g,n)");
  int r = 2 * g - 2 + n;
  if (r > 8) throw std::invalid_argument("pants graph enumeration capped at 8 regions");
  int np = 3 * g - 3 + n;
  std::vector<PantsDecomposition> out;
  // choose loop pattern, then multiplicities of pair edges
  for (uint32_t lm = 0; lm < (uint32_t(1) << r); ++lm) {
    GraphShape s;
    s.r = r;
    s.loops.assign(r, 0);
    s.e.assign(r, std::vector<int>(r, 0));
    std::vector<int> deg(r, 0);
    int loop_edges = 0;
    for (int i = 0; i < r; ++i)
      if (lm >> i & 1) {
        s.loops[i] = 1;
        deg[i] = 2;
        ++loop_edges;
      }
    if (loop_edges > np) continue;
    std::vector<GraphShape> shapes;
    if (r == 1) {
      if (loop_edges == np && s.connected() && is_canonical(s)) shapes.push_back(s);
    } else {
      enumerate_shapes(s, 0, 1, deg, np - loop_edges, shapes);
    }
    for (const auto& sh : shapes) {
      PantsDecomposition pd = shape_to_pants(sh, g, n);
      validate(pd);
      out.push_back(std::move(pd));
    }
  }
  return out;
}

PantsDecomposition standard_pants(int g, int n) { return all_pants_graphs(g, n).front(); }

std::string dt_count_csv(const PantsDecomposition& pd, const std::vector<long>& ls) {
  std::string s = "L,count,ratio,limit\n";
  for (long L : ls) {
    auto [ratio, limit] = volume_limit_check(pd, L);
    char buf[64];
    s += std::to_string(L) + "," + count_IL(pd, L).get_str() + ",";
    std::snprintf(buf, sizeof buf, "%.15g", ratio.get_d());
    s += buf;
    s += ",";
    std::snprintf(buf, sizeof buf, "%.15g", limit.get_d());
    s += buf;
    s += "\n";
  }
  return s;
}

}  // namespace flatcensus
