#include "flatcensus/curve_type.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace flatcensus {

namespace {

struct DSU {
  std::vector<int> parent, size;
  explicit DSU(int n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

// The two corner identifications induced by gluing slots a and b.
// kind 0 = vertical sides (E/W, h_partner), kind 1 = horizontal sides (N/S).
std::array<std::pair<Corner, Corner>, 2> corner_pairs_of_gluing(int kind, Slot a, Slot b) {
  int i = slot_square(a), j = slot_square(b);
  bool a_first = !(a & 1), b_first = !(b & 1);  // E or N
  if (kind == 0) {
    if (a_first && !b_first)  // E-W
      return {{{corner_id(i, kSE), corner_id(j, kSW)}, {corner_id(i, kNE), corner_id(j, kNW)}}};
    if (!a_first && b_first)  // W-E
      return {{{corner_id(j, kSE), corner_id(i, kSW)}, {corner_id(j, kNE), corner_id(i, kNW)}}};
    if (a_first)  // E-E
      return {{{corner_id(i, kSE), corner_id(j, kNE)}, {corner_id(i, kNE), corner_id(j, kSE)}}};
    // W-W
    return {{{corner_id(i, kSW), corner_id(j, kNW)}, {corner_id(i, kNW), corner_id(j, kSW)}}};
  }
  if (a_first && !b_first)  // N-S
    return {{{corner_id(i, kNW), corner_id(j, kSW)}, {corner_id(i, kNE), corner_id(j, kSE)}}};
  if (!a_first && b_first)  // S-N
    return {{{corner_id(j, kNW), corner_id(i, kSW)}, {corner_id(j, kNE), corner_id(i, kSE)}}};
  if (a_first)  // N-N
    return {{{corner_id(i, kNW), corner_id(j, kNE)}, {corner_id(i, kNE), corner_id(j, kNW)}}};
  // S-S
  return {{{corner_id(i, kSW), corner_id(j, kSE)}, {corner_id(i, kSE), corner_id(j, kSW)}}};
}

}  // namespace

CutResult cut_along(const MarkedTiling& mt, Direction dir) {
  CylinderDecomposition orig = decompose(mt, dir);
  MarkedTiling R = subdivide2(mt);
  CylinderDecomposition ref = decompose(R, dir);
  const GluingTable& rt = R.table;

  // Match refined cylinders to original ones via square correspondence.
  std::vector<int> ref_cyl_of_square(rt.n_squares, -1);
  for (int k = 0; k < static_cast<int>(ref.cylinders.size()); ++k)
    for (int ri : ref.cylinders[k].row_stack)
      for (auto& [sq, sign] : ref.rows[ri].states) ref_cyl_of_square[sq] = k;

  int n_cyl = static_cast<int>(orig.cylinders.size());
  if (static_cast<int>(ref.cylinders.size()) != n_cyl)
    throw std::logic_error("refinement changed the cylinder count");
  std::vector<int> ref_of_orig(n_cyl, -1);
  for (int k = 0; k < n_cyl; ++k) {
    const Cylinder& c = orig.cylinders[k];
    int sq0 = orig.rows[c.row_stack[0]].states[0].first;
    int rk = ref_cyl_of_square[4 * sq0];
    const Cylinder& rc = ref.cylinders[rk];
    if (rc.circumference != 2 * c.circumference || rc.height != 2 * c.height)
      throw std::logic_error("refined cylinder does not double the original");
    ref_of_orig[k] = rk;
  }

  // Remove the gluings along each cylinder's core circle (mid-height grid
  // circle of the refined cylinder).
  const auto& cross_partner =
      dir == Direction::horizontal ? rt.v_partner : rt.h_partner;
  int cross_kind = dir == Direction::horizontal ? 1 : 0;
  std::vector<char> slot_cut(2 * rt.n_squares, 0);
  CutResult out;
  out.curve_weights.resize(n_cyl);
  out.core_squares.resize(n_cyl);
  std::vector<std::pair<int, int>> side_squares(n_cyl);  // (right, left) sample squares
  for (int k = 0; k < n_cyl; ++k) {
    const Cylinder& rc = ref.cylinders[ref_of_orig[k]];
    int mid = orig.cylinders[k].height - 1;  // middle of 2h-1 interior circles
    const GridCircle& gc = ref.circles[rc.interior_circles[mid]];
    for (Slot s : gc.slots) {
      slot_cut[s] = 1;
      slot_cut[cross_partner[s]] = 1;
      out.core_squares[k].push_back(slot_square(s) / 4);
    }
    out.curve_weights[k] = orig.cylinders[k].height;
    side_squares[k] = {slot_square(gc.slots[0]), slot_square(cross_partner[gc.slots[0]])};
  }

  // Components of the cut complex.
  DSU comp(rt.n_squares);
  for (int s = 0; s < 2 * rt.n_squares; ++s) {
    Slot hp = rt.h_partner[s];
    if (!(cross_kind == 0 && slot_cut[s])) comp.unite(slot_square(s), slot_square(hp));
    Slot vp = rt.v_partner[s];
    if (!(cross_kind == 1 && slot_cut[s])) comp.unite(slot_square(s), slot_square(vp));
  }

  std::map<int, int> comp_index;
  for (int q = 0; q < rt.n_squares; ++q) {
    int r = comp.find(q);
    if (!comp_index.count(r)) {
      int idx = static_cast<int>(comp_index.size());
      comp_index[r] = idx;
    }
  }
  int n_comp = static_cast<int>(comp_index.size());
  auto comp_of = [&](int sq) { return comp_index.at(comp.find(sq)); };

  // Euler characteristic pieces per component.
  std::vector<int> F(n_comp, 0), E(n_comp, 0), V(n_comp, 0), B(n_comp, 0), M(n_comp, 0);
  for (int q = 0; q < rt.n_squares; ++q) F[comp_of(q)]++;

  DSU corners(4 * rt.n_squares);
  for (int s = 0; s < 2 * rt.n_squares; ++s) {
    Slot hp = rt.h_partner[s];
    if (hp > s && !(cross_kind == 0 && slot_cut[s])) {
      E[comp_of(slot_square(s))]++;
      for (auto& [c1, c2] : corner_pairs_of_gluing(0, s, hp)) corners.unite(c1, c2);
    }
    Slot vp = rt.v_partner[s];
    if (vp > s && !(cross_kind == 1 && slot_cut[s])) {
      E[comp_of(slot_square(s))]++;
      for (auto& [c1, c2] : corner_pairs_of_gluing(1, s, vp)) corners.unite(c1, c2);
    }
    if (slot_cut[s]) E[comp_of(slot_square(s))]++;  // free boundary edge
  }
  std::set<int> corner_roots_seen;
  for (Corner c = 0; c < 4 * rt.n_squares; ++c) {
    int r = corners.find(c);
    if (corner_roots_seen.insert(r).second) V[comp_of(corner_square(c))]++;
  }
  for (int id : R.marked) M[comp_of(corner_square(id))]++;

  out.curve_sides.resize(n_cyl);
  for (int k = 0; k < n_cyl; ++k) {
    int right = comp_of(side_squares[k].first);
    int left = comp_of(side_squares[k].second);
    B[right]++;
    B[left]++;
    out.curve_sides[k] = {right, left};
  }

  out.components.resize(n_comp);
  for (int c = 0; c < n_comp; ++c) {
    int chi = V[c] - E[c] + F[c];
    int two_g = 2 - chi - B[c];
    if (two_g < 0 || two_g % 2 != 0)
      throw std::logic_error("cut component with inconsistent Euler data");
    out.components[c] = {two_g / 2, M[c], B[c]};
  }
  return out;
}

CutResult cut_along(const MarkedTiling& mt, const CurveSystem& cs) {
  CurveSystem expect = core_multicurve(mt, cs.dir);
  if (expect.weights != cs.weights || expect.circumferences != cs.circumferences)
    throw std::invalid_argument("curve system does not match the core multicurve");
  return cut_along(mt, cs.dir);
}

DualGraph dual_graph(const CutResult& cut) {
  DualGraph g;
  for (const CutComponent& c : cut.components) g.vertices.emplace_back(c.genus, c.n_marked);
  for (size_t k = 0; k < cut.curve_sides.size(); ++k)
    g.edges.push_back({cut.curve_sides[k].first, cut.curve_sides[k].second,
                       cut.curve_weights[k]});
  return g;
}

DualGraph normalize(const DualGraph& g0) {
  DualGraph g = g0;
  while (true) {
    int nv = static_cast<int>(g.vertices.size());
    std::vector<int> degree(nv, 0);
    std::vector<std::vector<int>> incident(nv);
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
      degree[g.edges[e].u]++;
      degree[g.edges[e].v]++;
      incident[g.edges[e].u].push_back(e);
      if (g.edges[e].v != g.edges[e].u) incident[g.edges[e].v].push_back(e);
    }
    int target = -1;
    for (int v = 0; v < nv && target == -1; ++v) {
      if (g.vertices[v] != std::pair<int, int>(0, 0) || degree[v] != 2) continue;
      if (incident[v].size() == 1)
        throw AnnulusViolation("loop at an unmarked annulus vertex");
      target = v;
    }
    if (target == -1) return g;
    int e1 = incident[target][0], e2 = incident[target][1];
    int a = g.edges[e1].u == target ? g.edges[e1].v : g.edges[e1].u;
    int b = g.edges[e2].u == target ? g.edges[e2].v : g.edges[e2].u;
    DualGraph h;
    std::vector<int> remap(nv, -1);
    for (int v = 0; v < nv; ++v) {
      if (v == target) continue;
      remap[v] = static_cast<int>(h.vertices.size());
      h.vertices.push_back(g.vertices[v]);
    }
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
      if (e == e1 || e == e2) continue;
      h.edges.push_back({remap[g.edges[e].u], remap[g.edges[e].v], g.edges[e].w});
    }
    h.edges.push_back({remap[a], remap[b], g.edges[e1].w + g.edges[e2].w});
    g = std::move(h);
  }
}

namespace {

std::string serialize_graph(const DualGraph& g, const std::vector<int>& perm) {
  std::ostringstream os;
  int nv = static_cast<int>(g.vertices.size());
  std::vector<int> pos(nv);
  for (int v = 0; v < nv; ++v) pos[perm[v]] = v;  // perm[k] = original vertex at slot k
  for (int k = 0; k < nv; ++k) {
    if (k) os << '+';
    os << 'v' << g.vertices[perm[k]].first << '.' << g.vertices[perm[k]].second;
  }
  os << '|';
  std::vector<std::tuple<int, int, int>> edges;
  for (const auto& e : g.edges) {
    int u = pos[e.u], v = pos[e.v];
    edges.emplace_back(std::min(u, v), std::max(u, v), e.w);
  }
  std::sort(edges.begin(), edges.end());
  for (size_t i = 0; i < edges.size(); ++i) {
    if (i) os << '+';
    os << 'e' << std::get<0>(edges[i]) << '-' << std::get<1>(edges[i]) << 'w'
       << std::get<2>(edges[i]);
  }
  return os.str();
}

}  // namespace

TopType top_type(const DualGraph& normalized) {
  int nv = static_cast<int>(normalized.vertices.size());
  if (nv > 10) throw std::invalid_argument("top_type capped at 10 vertices");
  std::vector<int> perm(nv);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string s = serialize_graph(normalized, perm);
    if (best.empty() || s < best) best = std::move(s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return TopType{best};
}

std::string type_to_string(const TopType& t) { return t.key; }

TopType multicurve_type(const MarkedTiling& mt, Direction dir) {
  return top_type(normalize(dual_graph(cut_along(mt, dir))));
}

bool is_separating(const MarkedTiling& mt, Direction dir) {
  CutResult cut = cut_along(mt, dir);
  if (cut.curve_sides.size() != 1)
    throw std::invalid_argument("is_separating requires a single-curve system");
  return cut.components.size() == 2;
}

}  // namespace flatcensus
