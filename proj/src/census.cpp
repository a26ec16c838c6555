#include "flatcensus/census.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cassert>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace flatcensus {

namespace {

constexpr int kMaxSquares = 16;  // hard enumeration cap (corner masks fit in 64 bits)
constexpr int kPackCap = 8;      // matchings packed in nibbles of a u64

using SlotArr = std::array<int8_t, 2 * kMaxSquares>;

// ------------------------------------------------------------ fast checks --

// ccw_next specialized to raw partner arrays; hot path of the naive mode.
int ccw_fast(const int8_t* h, const int8_t* v, int c) {
  int i = c >> 2, t = c & 3, p;
  switch (t) {
    case kSW: p = h[west_slot(i)]; break;
    case kSE: p = v[south_slot(i)]; break;
    case kNE: p = h[east_slot(i)]; break;
    default:  p = v[north_slot(i)]; break;
  }
  int j = p >> 1;
  if (t == kSW || t == kNE)  // crossed a vertical side
    return (p & 1) ? corner_id(j, kNW) : corner_id(j, kSE);
  return (p & 1) ? corner_id(j, kSW) : corner_id(j, kNE);
}

struct CornerStats {
  int V = 0;
  int pi = 0;
};

CornerStats corner_stats(int n, const int8_t* h, const int8_t* v) {
  CornerStats st;
  uint64_t seen = 0;
  const int total = 4 * n;
  for (int c = 0; c < total; ++c) {
    if (seen >> c & 1) continue;
    int size = 0, x = c;
    do {
      seen |= uint64_t(1) << x;
      ++size;
      x = ccw_fast(h, v, x);
    } while (x != c);
    ++st.V;
    if (size == 2) ++st.pi;
  }
  return st;
}

bool connected_fast(int n, const int8_t* h, const int8_t* v) {
  std::array<int8_t, kMaxSquares> par;
  for (int i = 0; i < n; ++i) par[i] = int8_t(i);
  auto find = [&](int x) {
    while (par[x] != x) x = par[x];
    return x;
  };
  int comps = n;
  for (int s = 0; s < 2 * n && comps > 1; ++s) {
    for (const int8_t* tab : {h, v}) {
      int a = find(s >> 1), b = find(tab[s] >> 1);
      if (a != b) {
        par[a] = int8_t(b);
        --comps;
      }
    }
  }
  return comps == 1;
}

// All cycles of x -> h[x]^1 (directed mid-line rows) have equal length.
bool equal_rows(int n, const int8_t* h) {
  uint32_t seen = 0;
  int len0 = -1;
  for (int s = 0; s < 2 * n; ++s) {
    if (seen >> s & 1) continue;
    int len = 0, x = s;
    do {
      seen |= uint32_t(1) << x;
      ++len;
      x = h[x] ^ 1;
    } while (x != s);
    if (len0 < 0) len0 = len;
    else if (len != len0) return false;
  }
  return true;
}

// ------------------------------------------------------------ enumeration --

template <class F>
void for_matchings(int two_n, SlotArr& p, F&& f) {
  int a = -1;
  for (int s = 0; s < two_n; ++s)
    if (p[s] < 0) {
      a = s;
      break;
    }
  if (a < 0) {
    f();
    return;
  }
  for (int b = a + 1; b < two_n; ++b) {
    if (p[b] >= 0) continue;
    p[a] = int8_t(b);
    p[b] = int8_t(a);
    for_matchings(two_n, p, f);
    p[a] = p[b] = -1;
  }
}

uint64_t pack_matching(const int8_t* p, int two_n) {
  uint64_t key = 0;
  for (int s = two_n - 1; s >= 0; --s) key = key << 4 | uint64_t(p[s]);
  return key;
}

void unpack_matching(uint64_t key, int two_n, int8_t* p) {
  for (int s = 0; s < two_n; ++s) {
    p[s] = int8_t(key & 0xf);
    key >>= 4;
  }
}

std::vector<uint64_t> all_matchings_packed(int n) {
  std::vector<uint64_t> out;
  SlotArr p;
  p.fill(-1);
  for_matchings(2 * n, p, [&] { out.push_back(pack_matching(p.data(), 2 * n)); });
  std::sort(out.begin(), out.end());
  return out;
}

// --------------------------------------------------------------- metering --

struct EffortMeter {
  std::atomic<uint64_t> nodes{0};
  uint64_t cap = 0;

  void bump(uint64_t k) {
    uint64_t v = nodes.fetch_add(k, std::memory_order_relaxed) + k;
    if (cap && v > cap) throw ResourceCap("enumeration node budget exceeded");
  }
};

// ------------------------------------------------------------- processing --

Rat labeled_weight(int n) {
  return make_rat(Int(1), pow2(unsigned(n)) * factorial(unsigned(n)));
}

bool passes_filter(const MarkedTiling& mt, const CensusSpec& spec) {
  if (spec.filter == StructureFilter::none) return true;
  auto d = decompose(mt, Direction::horizontal);
  if (d.cylinders.size() != 1) return false;
  return spec.filter == StructureFilter::one_cylinder || d.cylinders[0].height == 1;
}

void process_table(const GluingTable& t, const CensusSpec& spec, const Rat& w,
                   CountTable& out, const SurfaceObserver& obs) {
  for (const MarkedTiling& mt : mark_assignments(t, spec.n)) {
    if (!passes_filter(mt, spec)) continue;
    TopType ht = multicurve_type(mt, Direction::horizontal);
    if (spec.h_type_filter && ht.key != *spec.h_type_filter) continue;
    TopType vt = multicurve_type(mt, Direction::vertical);
    out.add({t.n_squares, ht.key, vt.key}, w);
    if (obs) obs(mt);
  }
}

GluingTable to_table(int n, const int8_t* h, const int8_t* v) {
  GluingTable t;
  t.n_squares = n;
  t.h_partner.assign(h, h + 2 * n);
  t.v_partner.assign(v, v + 2 * n);
  return t;
}

// ------------------------------------------------------------- naive mode --

CountTable run_naive_shard(const CensusSpec& spec, int N,
                           const std::vector<uint64_t>& hs, size_t lo, size_t hi,
                           EffortMeter& meter, const SurfaceObserver& obs) {
  CountTable out{spec, {}};
  const Rat w = labeled_weight(N);
  SlotArr h, v;
  uint64_t local = 0;
  for (size_t hx = lo; hx < hi; ++hx) {
    unpack_matching(hs[hx], 2 * N, h.data());
    v.fill(-1);
    for_matchings(2 * N, v, [&] {
      if (++local == 1024) {
        meter.bump(local);
        local = 0;
      }
      if (!connected_fast(N, h.data(), v.data())) return;
      CornerStats st = corner_stats(N, h.data(), v.data());
      assert((N - st.V) % 2 == 0);
      int g = (2 - st.V + N) / 2;
      if (g != spec.g || st.pi > spec.n) return;
      process_table(to_table(N, h.data(), v.data()), spec, w, out, obs);
    });
  }
  meter.bump(local);
  return out;
}

// --------------------------------------------------- horizontal canonicals --

struct HRep {
  std::vector<Slot> h;
  Int stab;  // order of the stabilizer in the relabeling x per-square-flip group
};

void relabel_h8(const int8_t* h, int two_n, const int* perm, int8_t* out) {
  for (int s = 0; s < two_n; ++s) {
    int ns = 2 * perm[s >> 1] + (s & 1);
    int q = h[s];
    out[ns] = int8_t(2 * perm[q >> 1] + (q & 1));
  }
}

void flip1_h8(const int8_t* h, int two_n, int sq, int8_t* out) {
  auto map1 = [sq](int s) { return (s >> 1) == sq ? (s ^ 1) : s; };
  for (int s = 0; s < two_n; ++s) out[map1(s)] = int8_t(map1(h[s]));
}

// General path: one representative per orbit of the relabeling x
// per-square-flip group, weight from orbit-stabilizer. Orbits are closed off
// under a generating set (adjacent transpositions plus single-square flips),
// so the cost is near-linear in the number of matchings instead of the group
// order.
std::vector<HRep> h_reps_orbits(int N, bool one_cyl) {
  if (N > kPackCap)
    throw std::invalid_argument("pruned census without the one-row filter is capped at area 8");
  auto packed = all_matchings_packed(N);
  const Int group_order = pow2(unsigned(N)) * factorial(unsigned(N));
  auto index_of = [&packed](uint64_t key) {
    auto it = std::lower_bound(packed.begin(), packed.end(), key);
    assert(it != packed.end() && *it == key);
    return static_cast<size_t>(it - packed.begin());
  };
  std::vector<char> visited(packed.size(), 0);
  std::vector<HRep> reps;
  SlotArr h, img;
  std::vector<size_t> stack;
  std::vector<int> tperm(N);
  for (size_t idx = 0; idx < packed.size(); ++idx) {
    if (visited[idx]) continue;
    uint64_t orbit_size = 0;
    visited[idx] = 1;
    stack.assign(1, idx);
    while (!stack.empty()) {
      size_t cur = stack.back();
      stack.pop_back();
      ++orbit_size;
      unpack_matching(packed[cur], 2 * N, h.data());
      auto visit = [&](uint64_t key) {
        size_t k = index_of(key);
        if (!visited[k]) {
          visited[k] = 1;
          stack.push_back(k);
        }
      };
      for (int k = 0; k + 1 < N; ++k) {
        std::iota(tperm.begin(), tperm.end(), 0);
        std::swap(tperm[k], tperm[k + 1]);
        relabel_h8(h.data(), 2 * N, tperm.data(), img.data());
        visit(pack_matching(img.data(), 2 * N));
      }
      for (int k = 0; k < N; ++k) {
        flip1_h8(h.data(), 2 * N, k, img.data());
        visit(pack_matching(img.data(), 2 * N));
      }
    }
    unpack_matching(packed[idx], 2 * N, h.data());
    if (one_cyl && !equal_rows(N, h.data())) continue;
    HRep rep;
    rep.h.assign(h.begin(), h.begin() + 2 * N);
    assert(group_order % Int(static_cast<unsigned long>(orbit_size)) == 0);
    rep.stab = group_order / Int(static_cast<unsigned long>(orbit_size));
    reps.push_back(std::move(rep));
  }
  return reps;
}

// One-row path: per-square flips straighten any direction reversal along the
// band, so every one-row horizontal structure is equivalent to the standard
// ring E_k -> W_{k+1 mod N}. Its stabilizer is dihedral of order 2N (rotations
// keep every frame, reflections half-turn every square). Works for any N.
std::vector<HRep> h_reps_onerow(int N) {
  HRep rep;
  rep.h.assign(2 * N, -1);
  for (int k = 0; k < N; ++k) {
    Slot a = east_slot(k), b = west_slot((k + 1) % N);
    rep.h[a] = b;
    rep.h[b] = a;
  }
  rep.stab = Int(2 * N);
  std::vector<HRep> reps;
  reps.push_back(std::move(rep));
  return reps;
}

std::vector<HRep> h_reps(int N, const CensusSpec& spec) {
  if (spec.filter == StructureFilter::one_cylinder_h1) return h_reps_onerow(N);
  return h_reps_orbits(N, spec.filter == StructureFilter::one_cylinder);
}

// ------------------------------------------------------------ pruned DFS --

// DFS over vertical gluings on a fixed horizontal structure. Maintains
// undoable union-find state over corners (future vertex classes) and squares
// (connectivity), pruning on the vertex-count target V = N + 2 - 2g, the
// angle-pi budget n, the total cone order 4g - 4 and component closure.
struct PrunedDfs {
  const CensusSpec& spec;
  CountTable& out;
  const SurfaceObserver& obs;
  EffortMeter& meter;
  int N, V_target, order_target;
  Rat weight;
  std::vector<Slot> hvec;
  SlotArr h, v;

  std::array<int8_t, 4 * kMaxSquares> cpar, csz, copen;
  std::array<int8_t, kMaxSquares> spar, ssz, sopen;
  int C_cur = 0, closed_pi = 0, closed_order = 0, remaining = 0;
  uint64_t local = 0;

  struct Undo {
    int8_t cu_small[2], cu_big[2];
    int8_t res_root[4];
    uint8_t res_closed;
    int8_t su_small, su_big;
    int8_t sroot;
  };

  PrunedDfs(const CensusSpec& s, CountTable& o, const SurfaceObserver& ob,
            EffortMeter& m, int n_squares, const HRep& rep)
      : spec(s), out(o), obs(ob), meter(m), N(n_squares) {
    V_target = N + 2 - 2 * spec.g;
    order_target = 4 * spec.g - 4;
    weight = make_rat(Int(1), rep.stab);
    hvec = rep.h;
    h.fill(-1);
    v.fill(-1);
    std::copy(rep.h.begin(), rep.h.end(), h.begin());
    for (int c = 0; c < 4 * N; ++c) {
      cpar[c] = int8_t(c);
      csz[c] = 1;
      copen[c] = 1;
    }
    C_cur = 4 * N;
    for (int i = 0; i < N; ++i) {
      spar[i] = int8_t(i);
      ssz[i] = 1;
      sopen[i] = 2;
    }
    remaining = N;
    for (Slot a = 0; a < 2 * N; ++a) {
      Slot b = h[a];
      if (b < a) continue;
      for (auto [c1, c2] : h_corner_pairs(a, b)) cunion(c1, c2);
      sunion(a >> 1, b >> 1);
    }
  }

  static std::array<std::pair<Corner, Corner>, 2> h_corner_pairs(Slot a, Slot b) {
    int i = a >> 1, j = b >> 1;
    bool ae = !(a & 1), be = !(b & 1);
    if (ae && !be)
      return {{{corner_id(i, kSE), corner_id(j, kSW)}, {corner_id(i, kNE), corner_id(j, kNW)}}};
    if (!ae && be)
      return {{{corner_id(j, kSE), corner_id(i, kSW)}, {corner_id(j, kNE), corner_id(i, kNW)}}};
    if (ae && be)
      return {{{corner_id(i, kSE), corner_id(j, kNE)}, {corner_id(i, kNE), corner_id(j, kSE)}}};
    return {{{corner_id(i, kSW), corner_id(j, kNW)}, {corner_id(i, kNW), corner_id(j, kSW)}}};
  }

  static std::array<std::pair<Corner, Corner>, 2> v_corner_pairs(Slot a, Slot b) {
    int i = a >> 1, j = b >> 1;
    bool an = !(a & 1), bn = !(b & 1);
    if (an && !bn)
      return {{{corner_id(i, kNW), corner_id(j, kSW)}, {corner_id(i, kNE), corner_id(j, kSE)}}};
    if (!an && bn)
      return {{{corner_id(j, kNW), corner_id(i, kSW)}, {corner_id(j, kNE), corner_id(i, kSE)}}};
    if (an && bn)
      return {{{corner_id(i, kNW), corner_id(j, kNE)}, {corner_id(i, kNE), corner_id(j, kNW)}}};
    return {{{corner_id(i, kSW), corner_id(j, kSE)}, {corner_id(i, kSE), corner_id(j, kSW)}}};
  }

  int cfind(int x) const {
    while (cpar[x] != x) x = cpar[x];
    return x;
  }
  int sfind(int x) const {
    while (spar[x] != x) x = spar[x];
    return x;
  }

  // plain union during init (no undo)
  void cunion(int a, int b) {
    int ra = cfind(a), rb = cfind(b);
    if (ra == rb) return;
    if (csz[ra] > csz[rb]) std::swap(ra, rb);
    cpar[ra] = int8_t(rb);
    csz[rb] = int8_t(csz[rb] + csz[ra]);
    copen[rb] = int8_t(copen[rb] + copen[ra]);
    --C_cur;
  }
  void sunion(int a, int b) {
    int ra = sfind(a), rb = sfind(b);
    if (ra == rb) return;
    if (ssz[ra] > ssz[rb]) std::swap(ra, rb);
    spar[ra] = int8_t(rb);
    ssz[rb] = int8_t(ssz[rb] + ssz[ra]);
    sopen[rb] = int8_t(sopen[rb] + sopen[ra]);
  }

  // Applies gluing (a,b); fills rec; returns false if a prune fires.
  bool apply(Slot a, Slot b, Undo& rec) {
    if (++local == 1024) {
      meter.bump(local);
      local = 0;
    }
    auto pairs = v_corner_pairs(a, b);
    for (int k = 0; k < 2; ++k) {
      int ra = cfind(pairs[k].first), rb = cfind(pairs[k].second);
      if (ra == rb) {
        rec.cu_small[k] = rec.cu_big[k] = -1;
        continue;
      }
      if (csz[ra] > csz[rb]) std::swap(ra, rb);
      cpar[ra] = int8_t(rb);
      csz[rb] = int8_t(csz[rb] + csz[ra]);
      copen[rb] = int8_t(copen[rb] + copen[ra]);
      --C_cur;
      rec.cu_small[k] = int8_t(ra);
      rec.cu_big[k] = int8_t(rb);
    }
    const Corner adj[4] = {
        (a & 1) ? corner_id(a >> 1, kSW) : corner_id(a >> 1, kNW),
        (a & 1) ? corner_id(a >> 1, kSE) : corner_id(a >> 1, kNE),
        (b & 1) ? corner_id(b >> 1, kSW) : corner_id(b >> 1, kNW),
        (b & 1) ? corner_id(b >> 1, kSE) : corner_id(b >> 1, kNE)};
    rec.res_closed = 0;
    for (int t = 0; t < 4; ++t) {
      int r = cfind(adj[t]);
      copen[r] = int8_t(copen[r] - 1);
      rec.res_root[t] = int8_t(r);
      if (copen[r] == 0) {
        rec.res_closed |= uint8_t(1) << t;
        assert(csz[r] % 2 == 0);
        if (csz[r] == 2) ++closed_pi;
        closed_order += csz[r] / 2 - 2;
      }
    }
    {
      int ra = sfind(a >> 1), rb = sfind(b >> 1);
      if (ra == rb) {
        rec.su_small = rec.su_big = -1;
      } else {
        if (ssz[ra] > ssz[rb]) std::swap(ra, rb);
        spar[ra] = int8_t(rb);
        ssz[rb] = int8_t(ssz[rb] + ssz[ra]);
        sopen[rb] = int8_t(sopen[rb] + sopen[ra]);
        rec.su_small = int8_t(ra);
        rec.su_big = int8_t(rb);
      }
      int r = sfind(a >> 1);
      sopen[r] = int8_t(sopen[r] - 2);
      rec.sroot = int8_t(r);
      --remaining;
      if (sopen[r] == 0 && ssz[r] < N) return false;
    }
    if (closed_pi > spec.n) return false;
    if (closed_order - (spec.n - closed_pi) > order_target) return false;
    if (C_cur < V_target || C_cur - 2 * remaining > V_target) return false;
    return true;
  }

  void undo(const Undo& rec) {
    ++remaining;
    sopen[rec.sroot] = int8_t(sopen[rec.sroot] + 2);
    if (rec.su_small >= 0) {
      ssz[rec.su_big] = int8_t(ssz[rec.su_big] - ssz[rec.su_small]);
      sopen[rec.su_big] = int8_t(sopen[rec.su_big] - sopen[rec.su_small]);
      spar[rec.su_small] = rec.su_small;
    }
    for (int t = 3; t >= 0; --t) {
      int r = rec.res_root[t];
      if (rec.res_closed >> t & 1) {
        closed_order -= csz[r] / 2 - 2;
        if (csz[r] == 2) --closed_pi;
      }
      copen[r] = int8_t(copen[r] + 1);
    }
    for (int k = 1; k >= 0; --k) {
      if (rec.cu_small[k] < 0) continue;
      int ra = rec.cu_small[k], rb = rec.cu_big[k];
      csz[rb] = int8_t(csz[rb] - csz[ra]);
      copen[rb] = int8_t(copen[rb] - copen[ra]);
      cpar[ra] = int8_t(ra);
      ++C_cur;
    }
  }

  void complete() {
    assert(C_cur == V_target);
    assert(ssz[sfind(0)] == N);
    process_table(to_table(N, h.data(), v.data()), spec, weight, out, obs);
  }

  void dfs(int hint) {
    int a = -1;
    for (int s = hint; s < 2 * N; ++s)
      if (v[s] < 0) {
        a = s;
        break;
      }
    if (a < 0) {
      complete();
      return;
    }
    Undo rec;
    for (int b = a + 1; b < 2 * N; ++b) {
      if (v[b] >= 0) continue;
      v[a] = int8_t(b);
      v[b] = int8_t(a);
      if (apply(a, b, rec)) dfs(a + 1);
      undo(rec);
      v[a] = v[b] = -1;
    }
  }

  void run_shard(int first_partner) {
    Undo rec;
    v[0] = int8_t(first_partner);
    v[first_partner] = 0;
    if (apply(0, first_partner, rec)) dfs(1);
    undo(rec);
    v[0] = v[first_partner] = -1;
    meter.bump(local);
    local = 0;
  }
};

CountTable run_pruned_shard(const CensusSpec& spec, int N, const HRep& rep, int c,
                            EffortMeter& meter, const SurfaceObserver& obs) {
  CountTable out{spec, {}};
  PrunedDfs dfs(spec, out, obs, meter, N, rep);
  dfs.run_shard(c);
  return out;
}

// ------------------------------------------------------------ checkpoints --

std::string sanitize_id(const std::string& id) {
  std::string s = id;
  for (char& c : s)
    if (c == ':') c = '_';
  return s;
}

bool load_checkpoint(const std::filesystem::path& path, const CensusSpec& spec,
                     CountTable& table) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  auto trailer = text.rfind("#fnv ");
  if (trailer == std::string::npos || text.back() != '\n') return false;
  std::string body = text.substr(0, trailer);
  std::string hex = text.substr(trailer + 5);
  while (!hex.empty() && (hex.back() == '\n' || hex.back() == '\r')) hex.pop_back();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(body)));
  if (hex != buf) return false;
  try {
    table = CountTable{spec, {}};
    for (auto& [k, w] : parse_census_csv(body)) table.add(k, w);
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

void write_checkpoint(const std::filesystem::path& path, const CountTable& table) {
  std::string body = table.to_csv();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(body)));
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << body << "#fnv " << buf << "\n";
  }
  std::filesystem::rename(tmp, path);
}

struct Task {
  std::string id;
  std::function<CountTable()> fn;
};

}  // namespace

// -------------------------------------------------------------- CountTable --

void CountTable::add(const BucketKey& k, const Rat& w) { buckets[k] += w; }

void CountTable::merge(const CountTable& other) {
  for (const auto& [k, w] : other.buckets) add(k, w);
}

Rat CountTable::s_value(const std::optional<std::string>& h,
                        const std::optional<std::string>& v, int L) const {
  Rat total = 0;
  for (const auto& [k, w] : buckets) {
    if (k.area > L) continue;
    if (h && k.h_type != *h) continue;
    if (v && k.v_type != *v) continue;
    total += w;
  }
  return total;
}

Rat CountTable::total(int L) const { return s_value(std::nullopt, std::nullopt, L); }

Rat CountTable::mgn_estimate(int L) const {
  if (L <= 0) throw std::invalid_argument("mgn_estimate needs L >= 1");
  int e = 12 * spec.g - 12 + 4 * spec.n;
  if (e <= 0) throw std::invalid_argument("mgn_estimate needs 2 - 2g - n < 0");
  Int den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(L), static_cast<unsigned long>(e));
  return make_rat(Int(total(L).get_num()), Int(total(L).get_den()) * den);
}

std::string CountTable::to_csv() const {
  std::string s = "area,h_type,v_type,count_num,count_den\n";
  for (const auto& [k, w] : buckets) {
    s += std::to_string(k.area);
    s += ',';
    s += k.h_type;
    s += ',';
    s += k.v_type;
    s += ',';
    s += w.get_num().get_str();
    s += ',';
    s += w.get_den().get_str();
    s += '\n';
  }
  return s;
}

std::vector<std::pair<BucketKey, Rat>> parse_census_csv(const std::string& text) {
  std::vector<std::pair<BucketKey, Rat>> rows;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (first) {
      first = false;
      if (line == "area,h_type,v_type,count_num,count_den") continue;
    }
    std::array<std::string, 5> f;
    size_t pos = 0;
    for (int i = 0; i < 5; ++i) {
      size_t next = i == 4 ? line.size() : line.find(',', pos);
      if (next == std::string::npos) throw std::invalid_argument("bad census row: " + line);
      f[i] = line.substr(pos, next - pos);
      pos = next + 1;
    }
    BucketKey k{std::stoi(f[0]), f[1], f[2]};
    rows.emplace_back(k, make_rat(Int(f[3]), Int(f[4])));
  }
  return rows;
}

// -------------------------------------------------------------- run_census --

CensusResult run_census(const CensusSpec& spec, const CensusOptions& opts) {
  if (spec.g < 0 || spec.n < 0) throw std::invalid_argument("negative genus or marking count");
  if (2 - 2 * spec.g - spec.n >= 0)
    throw std::invalid_argument("census needs 2 - 2g - n < 0");
  if (spec.max_area < 1 || spec.max_area > kMaxSquares)
    throw std::invalid_argument("area cap out of range (1..16)");
  if (spec.mode == Mode::naive && spec.max_area > kPackCap)
    throw std::invalid_argument("naive census capped at area 8");

  EffortMeter meter;
  meter.cap = opts.max_nodes;
  const SurfaceObserver& obs = opts.observer;

  std::vector<Task> tasks;
  for (int N = 1; N <= spec.max_area; ++N) {
    if (spec.mode == Mode::naive) {
      auto hs = std::make_shared<std::vector<uint64_t>>(all_matchings_packed(N));
      const size_t chunk = 512;
      for (size_t lo = 0; lo < hs->size(); lo += chunk) {
        size_t hi = std::min(lo + chunk, hs->size());
        Task t;
        t.id = "a" + std::to_string(N) + ":m" + std::to_string(lo) + "-" + std::to_string(hi);
        t.fn = [&spec, N, hs, lo, hi, &meter, &obs] {
          return run_naive_shard(spec, N, *hs, lo, hi, meter, obs);
        };
        tasks.push_back(std::move(t));
      }
    } else {
      auto reps = std::make_shared<std::vector<HRep>>(h_reps(N, spec));
      for (size_t r = 0; r < reps->size(); ++r)
        for (int c = 1; c < 2 * N; ++c) {
          Task t;
          t.id = "a" + std::to_string(N) + ":h" + std::to_string(r) + ":c" + std::to_string(c);
          t.fn = [&spec, N, reps, r, c, &meter, &obs] {
            return run_pruned_shard(spec, N, (*reps)[r], c, meter, obs);
          };
          tasks.push_back(std::move(t));
        }
    }
  }

  std::filesystem::path ckdir;
  if (!opts.checkpoint_dir.empty()) {
    ckdir = opts.checkpoint_dir;
    std::filesystem::create_directories(ckdir);
  }

  auto exec = [&](const Task& t) {
    if (!ckdir.empty()) {
      auto path = ckdir / (sanitize_id(t.id) + ".csv");
      CountTable table{spec, {}};
      if (load_checkpoint(path, spec, table)) return table;
      table = t.fn();
      write_checkpoint(path, table);
      return table;
    }
    return t.fn();
  };

  std::vector<CountTable> results(tasks.size());
  int W = std::max(1, opts.workers);
  if (obs) W = 1;
  if (W == 1 || tasks.size() <= 1) {
    for (size_t i = 0; i < tasks.size(); ++i) results[i] = exec(tasks[i]);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errs(W);
    std::vector<std::thread> pool;
    for (int w = 0; w < W; ++w)
      pool.emplace_back([&, w] {
        try {
          for (size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
            results[i] = exec(tasks[i]);
        } catch (...) {
          errs[w] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
  }

  CensusResult res;
  res.table.spec = spec;
  for (size_t i = 0; i < tasks.size(); ++i) {
    res.table.merge(results[i]);
    res.shards.push_back({tasks[i].id, fnv1a64(results[i].to_csv())});
  }
  res.nodes = meter.nodes.load();
  return res;
}

std::string mode_name(Mode m) { return m == Mode::naive ? "naive" : "pruned"; }

std::string filter_name(StructureFilter f) {
  switch (f) {
    case StructureFilter::none: return "none";
    case StructureFilter::one_cylinder: return "one-cylinder";
    default: return "one-cylinder-h1";
  }
}

std::string manifest_json(const CensusResult& r) {
  nlohmann::ordered_json j;
  j["g"] = r.table.spec.g;
  j["n"] = r.table.spec.n;
  j["max_area"] = r.table.spec.max_area;
  j["mode"] = mode_name(r.table.spec.mode);
  j["filter"] = filter_name(r.table.spec.filter);
  if (r.table.spec.h_type_filter) j["h_type"] = *r.table.spec.h_type_filter;
  j["buckets"] = r.table.buckets.size();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(r.table.to_csv())));
  j["table_fnv64"] = buf;
  auto shards = nlohmann::ordered_json::array();
  for (const auto& s : r.shards) {
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(s.checksum));
    shards.push_back({{"id", s.id}, {"fnv64", buf}});
  }
  j["shards"] = std::move(shards);
  return j.dump(2) + "\n";
}

std::string nonseparating_weight1_key() {
  DualGraph g;
  g.vertices = {{1, 0}};
  g.edges = {{0, 0, 1}};
  return top_type(normalize(g)).key;
}

std::string separating_weight1_key() {
  DualGraph g;
  g.vertices = {{1, 0}, {1, 0}};
  g.edges = {{0, 1, 1}};
  return top_type(normalize(g)).key;
}

}  // namespace flatcensus
