#include "flatcensus/tiling.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace flatcensus {

namespace {

bool involution_ok(const std::vector<Slot>& p, int n_slots, const char* kind,
                   std::vector<std::string>* issues) {
  bool ok = true;
  if (static_cast<int>(p.size()) != n_slots) {
    if (issues) issues->push_back(std::string(kind) + ": wrong slot count");
    return false;
  }
  for (int s = 0; s < n_slots; ++s) {
    if (p[s] < 0 || p[s] >= n_slots) {
      if (issues) issues->push_back(std::string(kind) + ": slot " + std::to_string(s) + " unpaired or out of range");
      ok = false;
      continue;
    }
    if (p[s] == s) {
      if (issues) issues->push_back(std::string(kind) + ": fixed slot " + std::to_string(s));
      ok = false;
      continue;
    }
    if (p[p[s]] != s) {
      if (issues) issues->push_back(std::string(kind) + ": pairing at slot " + std::to_string(s) + " not an involution");
      ok = false;
    }
  }
  return ok;
}

struct DSU {
  std::vector<int> parent, size;
  explicit DSU(int n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    return true;
  }
};

void require_valid(const GluingTable& t) {
  Diagnostics d = validate_table(t);
  if (!d.ok) {
    std::string msg = "invalid gluing table";
    for (const auto& i : d.issues) msg += "; " + i;
    throw std::invalid_argument(msg);
  }
}

}  // namespace

Diagnostics validate_table(const GluingTable& t) {
  Diagnostics d;
  if (t.n_squares <= 0) {
    d.ok = false;
    d.connected = false;
    d.issues.push_back("n_squares must be positive");
    return d;
  }
  int n_slots = 2 * t.n_squares;
  bool h_ok = involution_ok(t.h_partner, n_slots, "h_pairs", &d.issues);
  bool v_ok = involution_ok(t.v_partner, n_slots, "v_pairs", &d.issues);
  d.ok = h_ok && v_ok;
  if (d.ok) {
    d.connected = is_connected(t);
    if (!d.connected) d.issues.push_back("surface is disconnected");
  } else {
    d.connected = false;
  }
  return d;
}

bool is_connected(const GluingTable& t) {
  DSU dsu(t.n_squares);
  for (int s = 0; s < 2 * t.n_squares; ++s) {
    dsu.unite(slot_square(s), slot_square(t.h_partner[s]));
    dsu.unite(slot_square(s), slot_square(t.v_partner[s]));
  }
  return dsu.size[dsu.find(0)] == t.n_squares;
}

Corner ccw_next(const GluingTable& t, Corner c) {
  int i = corner_square(c);
  Slot p;
  switch (corner_type(c)) {
    case kSW:  // cross W_i at its bottom end
      p = t.h_partner[west_slot(i)];
      return (p & 1) ? corner_id(slot_square(p), kNW)   // W-W: bottom -> top
                     : corner_id(slot_square(p), kSE);  // W-E: bottom -> bottom
    case kSE:  // cross S_i at its east end
      p = t.v_partner[south_slot(i)];
      return (p & 1) ? corner_id(slot_square(p), kSW)   // S-S: east -> west
                     : corner_id(slot_square(p), kNE);  // S-N: east -> east
    case kNE:  // cross E_i at its top end
      p = t.h_partner[east_slot(i)];
      return (p & 1) ? corner_id(slot_square(p), kNW)   // E-W: top -> top
                     : corner_id(slot_square(p), kSE);  // E-E: top -> bottom
    case kNW:  // cross N_i at its west end
      p = t.v_partner[north_slot(i)];
      return (p & 1) ? corner_id(slot_square(p), kSW)   // N-S: west -> west
                     : corner_id(slot_square(p), kNE);  // N-N: west -> east
  }
  throw std::logic_error("unreachable corner type");
}

ConeData corner_orbits(const GluingTable& t) {
  require_valid(t);
  int nc = 4 * t.n_squares;
  ConeData cone;
  cone.class_of_corner.assign(nc, -1);
  for (Corner c0 = 0; c0 < nc; ++c0) {
    if (cone.class_of_corner[c0] != -1) continue;
    int cls = cone.num_classes();
    std::vector<Corner> cycle;
    Corner c = c0;
    do {
      cone.class_of_corner[c] = cls;
      cycle.push_back(c);
      c = ccw_next(t, c);
    } while (c != c0);
    cone.class_ids.push_back(*std::min_element(cycle.begin(), cycle.end()));
    cone.classes.push_back(std::move(cycle));
  }
  return cone;
}

int ConeData::class_of_id(int vertex_id) const {
  for (int k = 0; k < num_classes(); ++k)
    if (class_ids[k] == vertex_id) return k;
  throw std::invalid_argument("no vertex class with id " + std::to_string(vertex_id));
}

int genus(const GluingTable& t) {
  require_valid(t);
  if (!is_connected(t)) throw std::invalid_argument("genus of disconnected table");
  ConeData cone = corner_orbits(t);
  int chi_num = 2 - cone.num_classes() + t.n_squares;  // 2 - V + N, with E = 2N, F = N
  if (chi_num % 2 != 0) throw std::logic_error("odd genus numerator");
  int g = chi_num / 2;
  if (g < 0) throw std::logic_error("negative genus");
  return g;
}

MarkedTiling::MarkedTiling(GluingTable t, std::vector<int> marked_ids) {
  require_valid(t);
  if (!is_connected(t)) throw std::invalid_argument("marked tiling must be connected");
  table = std::move(t);
  cone = corner_orbits(table);
  marked = std::move(marked_ids);
  std::sort(marked.begin(), marked.end());
  if (std::adjacent_find(marked.begin(), marked.end()) != marked.end())
    throw std::invalid_argument("duplicate marked vertex id");
  for (int id : marked) cone.class_of_id(id);  // throws on unknown id
  for (int k = 0; k < cone.num_classes(); ++k) {
    if (cone.angle_halfpi(k) == 2 &&
        !std::binary_search(marked.begin(), marked.end(), cone.class_ids[k]))
      throw std::invalid_argument("angle-pi vertex class must be marked");
  }
  int chi_num = 2 - cone.num_classes() + table.n_squares;
  genus = chi_num / 2;
  if (2 - 2 * genus - n_marked() >= 0)
    throw std::invalid_argument("marked tiling requires 2 - 2g - n < 0");
}

bool MarkedTiling::is_marked_class(int cls) const {
  return std::binary_search(marked.begin(), marked.end(), cone.class_ids[cls]);
}

std::vector<MarkedTiling> mark_assignments(const GluingTable& t, int n) {
  require_valid(t);
  if (!is_connected(t)) throw std::invalid_argument("mark_assignments on disconnected table");
  ConeData cone = corner_orbits(t);
  int g = (2 - cone.num_classes() + t.n_squares) / 2;
  std::vector<MarkedTiling> out;
  if (2 - 2 * g - n >= 0) return out;

  std::vector<int> forced, optional;
  for (int k = 0; k < cone.num_classes(); ++k) {
    if (cone.angle_halfpi(k) == 2)
      forced.push_back(cone.class_ids[k]);
    else
      optional.push_back(cone.class_ids[k]);
  }
  int extra = n - static_cast<int>(forced.size());
  if (extra < 0 || extra > static_cast<int>(optional.size())) return out;

  std::vector<int> pick(optional.size(), 0);
  std::fill(pick.begin(), pick.begin() + extra, 1);
  std::sort(pick.begin(), pick.end(), std::greater<int>());
  // iterate all subsets of `optional` of size `extra` in a stable order
  std::vector<int> idx(extra);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<int> marked = forced;
    for (int j : idx) marked.push_back(optional[j]);
    out.emplace_back(t, std::move(marked));
    // next combination
    int i = extra - 1;
    while (i >= 0 && idx[i] == static_cast<int>(optional.size()) - extra + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < extra; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

GluingTable relabel(const GluingTable& t, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != t.n_squares)
    throw std::invalid_argument("relabel: permutation size mismatch");
  GluingTable out;
  out.n_squares = t.n_squares;
  out.h_partner.assign(2 * t.n_squares, -1);
  out.v_partner.assign(2 * t.n_squares, -1);
  auto map_slot = [&perm](Slot s) { return 2 * perm[slot_square(s)] + (s & 1); };
  for (int s = 0; s < 2 * t.n_squares; ++s) {
    out.h_partner[map_slot(s)] = map_slot(t.h_partner[s]);
    out.v_partner[map_slot(s)] = map_slot(t.v_partner[s]);
  }
  return out;
}

GluingTable frame_flip(const GluingTable& t) {
  GluingTable out;
  out.n_squares = t.n_squares;
  out.h_partner.assign(2 * t.n_squares, -1);
  out.v_partner.assign(2 * t.n_squares, -1);
  for (int s = 0; s < 2 * t.n_squares; ++s) {
    out.h_partner[s] = t.h_partner[s ^ 1] ^ 1;
    out.v_partner[s] = t.v_partner[s ^ 1] ^ 1;
  }
  return out;
}

GluingTable rotate90(const GluingTable& t) {
  GluingTable out;
  out.n_squares = t.n_squares;
  out.h_partner = t.v_partner;  // new E_i = old N_i, new W_i = old S_i: codes align
  out.v_partner.assign(2 * t.n_squares, -1);
  for (int i = 0; i < t.n_squares; ++i) {
    out.v_partner[north_slot(i)] = t.h_partner[west_slot(i)] ^ 1;  // new N_i = old W_i
    out.v_partner[south_slot(i)] = t.h_partner[east_slot(i)] ^ 1;  // new S_i = old E_i
  }
  return out;
}

GluingTable flip_squares(const GluingTable& t, uint32_t mask) {
  if (t.n_squares > 31) throw std::invalid_argument("flip_squares capped at 31 squares");
  GluingTable out;
  out.n_squares = t.n_squares;
  out.h_partner.assign(2 * t.n_squares, -1);
  out.v_partner.assign(2 * t.n_squares, -1);
  auto map_slot = [mask](Slot s) -> Slot { return s ^ static_cast<Slot>((mask >> slot_square(s)) & 1u); };
  for (int s = 0; s < 2 * t.n_squares; ++s) {
    out.h_partner[map_slot(s)] = map_slot(t.h_partner[s]);
    out.v_partner[map_slot(s)] = map_slot(t.v_partner[s]);
  }
  return out;
}

namespace {

// Image of an old corner under the clockwise square rotation used by rotate90.
Corner rotate90_corner(Corner c) {
  static constexpr CornerType image[4] = {kNW, kSW, kSE, kNE};  // SW,SE,NE,NW
  return corner_id(corner_square(c), image[corner_type(c)]);
}

Corner flip_corner(Corner c) { return c ^ 2; }  // SW<->NE, SE<->NW

std::vector<int> map_marked(const MarkedTiling& src, const GluingTable& dst_table,
                            Corner (*corner_map)(Corner)) {
  ConeData dst_cone = corner_orbits(dst_table);
  std::vector<int> out;
  for (int id : src.marked) {
    int cls = dst_cone.class_of_corner[corner_map(id)];
    out.push_back(dst_cone.class_ids[cls]);
  }
  return out;
}

}  // namespace

MarkedTiling frame_flip(const MarkedTiling& mt) {
  GluingTable t = frame_flip(mt.table);
  return MarkedTiling(t, map_marked(mt, t, flip_corner));
}

MarkedTiling flip_squares(const MarkedTiling& mt, uint32_t mask) {
  GluingTable t = flip_squares(mt.table, mask);
  ConeData cone = corner_orbits(t);
  std::vector<int> marked;
  for (int id : mt.marked) {
    Corner c = ((mask >> corner_square(id)) & 1u) ? flip_corner(id) : id;
    marked.push_back(cone.class_ids[cone.class_of_corner[c]]);
  }
  return MarkedTiling(t, std::move(marked));
}

MarkedTiling rotate90(const MarkedTiling& mt) {
  GluingTable t = rotate90(mt.table);
  return MarkedTiling(t, map_marked(mt, t, rotate90_corner));
}

MarkedTiling relabel(const MarkedTiling& mt, std::span<const int> perm, int sign) {
  const MarkedTiling* src = &mt;
  MarkedTiling flipped;
  if (sign == -1) {
    flipped = frame_flip(mt);
    src = &flipped;
  } else if (sign != 1) {
    throw std::invalid_argument("sign must be +1 or -1");
  }
  GluingTable t = relabel(src->table, perm);
  ConeData cone = corner_orbits(t);
  std::vector<int> marked;
  for (int id : src->marked) {
    Corner image = corner_id(perm[corner_square(id)], corner_type(id));
    marked.push_back(cone.class_ids[cone.class_of_corner[image]]);
  }
  return MarkedTiling(t, std::move(marked));
}

namespace {

GluingTable subdivide_table(const GluingTable& t) {
  // sub-square of square i at column c (0 = west), row r (0 = south): 4i+2r+c
  auto sub = [](int i, int c, int r) { return 4 * i + 2 * r + c; };
  GluingTable out;
  out.n_squares = 4 * t.n_squares;
  out.h_partner.assign(2 * out.n_squares, -1);
  out.v_partner.assign(2 * out.n_squares, -1);
  auto pair_h = [&out](Slot a, Slot b) { out.h_partner[a] = b; out.h_partner[b] = a; };
  auto pair_v = [&out](Slot a, Slot b) { out.v_partner[a] = b; out.v_partner[b] = a; };

  for (int i = 0; i < t.n_squares; ++i) {
    for (int r = 0; r < 2; ++r) pair_h(east_slot(sub(i, 0, r)), west_slot(sub(i, 1, r)));
    for (int c = 0; c < 2; ++c) pair_v(north_slot(sub(i, c, 0)), south_slot(sub(i, c, 1)));
  }
  // halves of an old side, indexed 0/1 = (bottom,top) for E/W, (west,east) for N/S
  auto h_half = [&sub](Slot old_slot, int half) {
    int i = slot_square(old_slot);
    return (old_slot & 1) ? west_slot(sub(i, 0, half)) : east_slot(sub(i, 1, half));
  };
  auto v_half = [&sub](Slot old_slot, int half) {
    int i = slot_square(old_slot);
    return (old_slot & 1) ? south_slot(sub(i, half, 0)) : north_slot(sub(i, half, 1));
  };
  for (int s = 0; s < 2 * t.n_squares; ++s) {
    Slot p = t.h_partner[s];
    if (p > s) {
      bool translation = (s & 1) != (p & 1);  // E-W
      for (int half = 0; half < 2; ++half)
        pair_h(h_half(s, half), h_half(p, translation ? half : 1 - half));
    }
    p = t.v_partner[s];
    if (p > s) {
      bool translation = (s & 1) != (p & 1);  // N-S
      for (int half = 0; half < 2; ++half)
        pair_v(v_half(s, half), v_half(p, translation ? half : 1 - half));
    }
  }
  return out;
}

Corner subdivide_corner(Corner c) {
  int i = corner_square(c);
  auto sub = [&](int col, int row) { return 4 * i + 2 * row + col; };
  switch (corner_type(c)) {
    case kSW: return corner_id(sub(0, 0), kSW);
    case kSE: return corner_id(sub(1, 0), kSE);
    case kNE: return corner_id(sub(1, 1), kNE);
    case kNW: return corner_id(sub(0, 1), kNW);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

GluingTable subdivide2(const GluingTable& t) {
  require_valid(t);
  return subdivide_table(t);
}

MarkedTiling subdivide2(const MarkedTiling& mt) {
  GluingTable t = subdivide_table(mt.table);
  return MarkedTiling(t, map_marked(mt, t, subdivide_corner));
}

std::string serialize(const MarkedTiling& mt) {
  std::ostringstream os;
  os << mt.table.n_squares << ";h";
  for (int s = 0; s < 2 * mt.table.n_squares; ++s)
    if (mt.table.h_partner[s] > s) os << ' ' << s << ',' << mt.table.h_partner[s];
  os << ";v";
  for (int s = 0; s < 2 * mt.table.n_squares; ++s)
    if (mt.table.v_partner[s] > s) os << ' ' << s << ',' << mt.table.v_partner[s];
  os << ";m";
  for (int id : mt.marked) os << ' ' << id;
  return os.str();
}

namespace {

// Image of slot s under per-square flips followed by the relabeling.
Slot map_slot_fp(std::span<const int> perm, uint32_t flips, Slot s) {
  int sq = slot_square(s);
  return 2 * perm[sq] + ((s & 1) ^ static_cast<int>((flips >> sq) & 1u));
}

Corner map_corner_fp(std::span<const int> perm, uint32_t flips, Corner c) {
  if ((flips >> corner_square(c)) & 1u) c = flip_corner(c);
  return corner_id(perm[corner_square(c)], corner_type(c));
}

// Applies (perm, flips) to a marked tiling cheaply: no revalidation, marked
// set recomputed from corner images. Used by orbit scans.
std::string serialize_image(const MarkedTiling& mt, std::span<const int> perm, uint32_t flips) {
  const GluingTable& t = mt.table;
  int n = t.n_squares;
  GluingTable img;
  img.n_squares = n;
  img.h_partner.assign(2 * n, -1);
  img.v_partner.assign(2 * n, -1);
  for (int s = 0; s < 2 * n; ++s) {
    img.h_partner[map_slot_fp(perm, flips, s)] = map_slot_fp(perm, flips, t.h_partner[s]);
    img.v_partner[map_slot_fp(perm, flips, s)] = map_slot_fp(perm, flips, t.v_partner[s]);
  }
  ConeData cone = corner_orbits(img);
  std::vector<int> marked;
  for (int id : mt.marked) {
    Corner c = map_corner_fp(perm, flips, id);
    marked.push_back(cone.class_ids[cone.class_of_corner[c]]);
  }
  std::sort(marked.begin(), marked.end());
  MarkedTiling tmp;
  tmp.table = std::move(img);
  tmp.marked = std::move(marked);
  return serialize(tmp);
}

bool table_equal_under(const GluingTable& t, const GluingTable& target,
                       std::span<const int> perm, uint32_t flips) {
  for (int s = 0; s < 2 * t.n_squares; ++s) {
    Slot m = map_slot_fp(perm, flips, s);
    if (target.h_partner[m] != map_slot_fp(perm, flips, t.h_partner[s])) return false;
    if (target.v_partner[m] != map_slot_fp(perm, flips, t.v_partner[s])) return false;
  }
  return true;
}

bool marked_equal_under(const MarkedTiling& mt, const MarkedTiling& target,
                        std::span<const int> perm, uint32_t flips) {
  const ConeData& cone = target.cone;
  std::vector<int> image;
  for (int id : mt.marked) {
    Corner c = map_corner_fp(perm, flips, id);
    image.push_back(cone.class_ids[cone.class_of_corner[c]]);
  }
  std::sort(image.begin(), image.end());
  return image == target.marked;
}

// All (relabeling, per-square flips) pairs carrying `src` onto `dst` (tables
// only); propagation from each of the 2N candidate images of square 0, then
// marked sets are checked by the caller. Assumes connected valid tables of
// equal size. The flip bit of a newly reached square is forced by the parity
// mismatch of the matched partner slots, so each seed yields at most one
// candidate and the scan stays polynomial.
std::vector<AutElement> table_isomorphisms(const GluingTable& src, const GluingTable& dst) {
  std::vector<AutElement> result;
  int n = src.n_squares;
  for (int j0 = 0; j0 < n; ++j0) {
    for (int f0 = 0; f0 < 2; ++f0) {
      std::vector<int> perm(n, -1), inv(n, -1);
      uint32_t flips = f0 ? (1u << 0) : 0u;
      perm[0] = j0;
      inv[j0] = 0;
      std::vector<int> queue = {0};
      bool ok = true;
      for (size_t q = 0; ok && q < queue.size(); ++q) {
        int i = queue[q];
        int j = perm[i];
        int fi = static_cast<int>((flips >> i) & 1u);
        for (int b = 0; ok && b < 2; ++b) {
          for (int kind = 0; kind < 2; ++kind) {
            const auto& ps = kind ? src.v_partner : src.h_partner;
            const auto& pd = kind ? dst.v_partner : dst.h_partner;
            Slot p_src = ps[2 * i + b];
            Slot p_dst = pd[2 * j + (b ^ fi)];
            int si = slot_square(p_src), di = slot_square(p_dst);
            int fs = (p_src & 1) ^ (p_dst & 1);
            if (perm[si] == -1 && inv[di] == -1) {
              perm[si] = di;
              inv[di] = si;
              flips |= static_cast<uint32_t>(fs) << si;
              queue.push_back(si);
            } else if (perm[si] != di ||
                       static_cast<int>((flips >> si) & 1u) != fs) {
              ok = false;
              break;
            }
          }
        }
      }
      if (ok && std::find(perm.begin(), perm.end(), -1) == perm.end() &&
          table_equal_under(src, dst, perm, flips))
        result.push_back({std::move(perm), flips});
    }
  }
  return result;
}

}  // namespace

bool AutGroup::has_flip() const {
  return std::any_of(elements.begin(), elements.end(),
                     [](const AutElement& e) { return e.flips != 0; });
}

AutGroup automorphisms(const MarkedTiling& mt) {
  AutGroup g;
  for (auto& e : table_isomorphisms(mt.table, mt.table))
    if (marked_equal_under(mt, mt, e.perm, e.flips)) g.elements.push_back(std::move(e));
  return g;
}

AutGroup automorphisms_brute(const MarkedTiling& mt) {
  int n = mt.table.n_squares;
  if (n > 8) throw std::invalid_argument("automorphisms_brute capped at 8 squares");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  AutGroup g;
  do {
    for (uint32_t flips = 0; flips < (1u << n); ++flips) {
      if (table_equal_under(mt.table, mt.table, perm, flips) &&
          marked_equal_under(mt, mt, perm, flips))
        g.elements.push_back({perm, flips});
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return g;
}

std::string canonical_form(const MarkedTiling& mt) {
  const GluingTable& t = mt.table;
  int n = t.n_squares;
  if (n > 31) throw std::invalid_argument("canonical_form capped at 31 squares");
  // Rooted breadth-first code: from each (root square, root flip) seed, label
  // squares in first-visit order and pick each new square's flip so that the
  // partner slot closing it has an east/north image. The resulting relabeled
  // table depends only on the isomorphism class and the seed, so the minimum
  // over all 2N seeds is a complete orbit invariant.
  std::string best;
  for (int root = 0; root < n; ++root) {
    for (int f0 = 0; f0 < 2; ++f0) {
      std::vector<int> label(n, -1), order(n, -1);
      uint32_t flips = f0 ? (1u << root) : 0u;
      label[root] = 0;
      order[0] = root;
      int next = 1;
      for (int l = 0; l < n; ++l) {
        int i = order[l];
        int fi = static_cast<int>((flips >> i) & 1u);
        for (int kind = 0; kind < 2; ++kind) {
          const auto& p = kind ? t.v_partner : t.h_partner;
          for (int b = 0; b < 2; ++b) {
            Slot q = p[2 * i + (b ^ fi)];
            int sq = slot_square(q);
            if (label[sq] == -1) {
              label[sq] = next;
              order[next] = sq;
              if (q & 1) flips |= 1u << sq;
              ++next;
            }
          }
        }
      }
      std::string s = serialize_image(mt, label, flips);
      if (best.empty() || s < best) best = std::move(s);
    }
  }
  return best;
}

}  // namespace flatcensus
