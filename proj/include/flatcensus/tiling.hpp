#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace flatcensus {

// Square-tiled half-translation surface built from N unit squares.
//
// Slot codes (per square i):
//   vertical sides,   h_partner: E_i = 2i, W_i = 2i+1
//   horizontal sides, v_partner: N_i = 2i, S_i = 2i+1
// Corner codes: 4i+0 = SW, 4i+1 = SE, 4i+2 = NE, 4i+3 = NW.
//
// A gluing pairs two distinct slots of the same kind. E-W and N-S pairs are
// translations; E-E, W-W, N-N, S-S pairs are half-turns. A slot glued to
// itself (a fold) is invalid.
//
// The frame of each square is only defined up to a half-turn: rotating one
// square's chart by pi (swapping its E/W and N/S slots simultaneously)
// re-encodes the same surface. Two tables therefore describe the same
// surface iff they differ by a relabeling of squares combined with an
// arbitrary subset of per-square half-turns; automorphism groups, canonical
// forms and census weights are all taken over that group of order 2^N * N!.

using Slot = int;
using Corner = int;

enum CornerType { kSW = 0, kSE = 1, kNE = 2, kNW = 3 };

constexpr Slot east_slot(int i) { return 2 * i; }
constexpr Slot west_slot(int i) { return 2 * i + 1; }
constexpr Slot north_slot(int i) { return 2 * i; }
constexpr Slot south_slot(int i) { return 2 * i + 1; }
constexpr int slot_square(Slot s) { return s >> 1; }

constexpr Corner corner_id(int i, CornerType t) { return 4 * i + t; }
constexpr int corner_square(Corner c) { return c >> 2; }
constexpr CornerType corner_type(Corner c) { return static_cast<CornerType>(c & 3); }

struct GluingTable {
  int n_squares = 0;
  std::vector<Slot> h_partner;  // size 2N, involution without fixed points
  std::vector<Slot> v_partner;  // size 2N, involution without fixed points

  bool operator==(const GluingTable&) const = default;
};

struct Diagnostics {
  bool ok = true;
  bool connected = true;
  std::vector<std::string> issues;
};

struct ConeData {
  // classes[k] lists the corners of vertex class k in counterclockwise walk
  // order; angle of class k is classes[k].size() * pi/2.
  std::vector<std::vector<Corner>> classes;
  std::vector<int> class_of_corner;  // corner -> class index
  std::vector<int> class_ids;        // class index -> vertex id (minimal corner)

  int num_classes() const { return static_cast<int>(classes.size()); }
  int angle_halfpi(int cls) const { return static_cast<int>(classes[cls].size()); }
  int class_of_id(int vertex_id) const;  // throws if no class has this id
};

struct MarkedTiling {
  GluingTable table;
  std::vector<int> marked;  // sorted vertex ids (minimal corner of each class)
  ConeData cone;            // cached at construction
  int genus = -1;

  MarkedTiling() = default;
  // Validates: table valid & connected, marked ids are existing classes,
  // every angle-pi class is marked, 2 - 2g - n < 0.
  MarkedTiling(GluingTable t, std::vector<int> marked_ids);

  int n_marked() const { return static_cast<int>(marked.size()); }
  bool is_marked_class(int cls) const;
};

struct AutElement {
  std::vector<int> perm;  // square relabeling
  uint32_t flips = 0;     // bit i set: square i's frame is half-turned first
};

struct AutGroup {
  std::vector<AutElement> elements;
  size_t order() const { return elements.size(); }
  bool has_flip() const;  // any element with a nonempty flip set
};

// Structural validation; never throws. Reports fixed slots, malformed
// involutions, out-of-range entries and disconnectedness.
Diagnostics validate_table(const GluingTable& t);

// Counterclockwise walk around the vertex at a corner; one step per quadrant.
// Cycles of this permutation are exactly the vertex classes.
Corner ccw_next(const GluingTable& t, Corner c);

ConeData corner_orbits(const GluingTable& t);  // throws on invalid table

bool is_connected(const GluingTable& t);

// genus of the closed surface: (2 - V + N)/2. Throws if disconnected/invalid.
int genus(const GluingTable& t);

// All markings of exactly n vertex classes that contain every angle-pi class,
// on a connected valid table; empty when infeasible or when 2-2g-n >= 0.
std::vector<MarkedTiling> mark_assignments(const GluingTable& t, int n);

GluingTable relabel(const GluingTable& t, std::span<const int> perm);
MarkedTiling relabel(const MarkedTiling& mt, std::span<const int> perm, int sign);

GluingTable frame_flip(const GluingTable& t);
MarkedTiling frame_flip(const MarkedTiling& mt);

// Half-turn the frame of every square whose bit is set in mask.
// flip_squares(t, all-ones) == frame_flip(t).
GluingTable flip_squares(const GluingTable& t, uint32_t mask);
MarkedTiling flip_squares(const MarkedTiling& mt, uint32_t mask);

// Quarter-turn frame change: new E <- old N, new N <- old W, new W <- old S,
// new S <- old E. Applying it twice equals frame_flip.
GluingTable rotate90(const GluingTable& t);
MarkedTiling rotate90(const MarkedTiling& mt);

// 2x2 refinement; sub-square of square i at column c, row r gets id 4i+2r+c.
GluingTable subdivide2(const GluingTable& t);
MarkedTiling subdivide2(const MarkedTiling& mt);

// Full automorphism group over (relabeling, per-square flips);
// propagation-based, linear in the group order times N.
AutGroup automorphisms(const MarkedTiling& mt);
// Exhaustive oracle over all N! x 2^N candidates; small N only.
AutGroup automorphisms_brute(const MarkedTiling& mt);

// Orbit invariant over the relabeling x per-square-flip group: equal exactly
// on isomorphic marked tilings. Computed as the minimum over 2N rooted
// breadth-first codes, so it stays polynomial in N.
std::string canonical_form(const MarkedTiling& mt);

// Injective serialization of the labeled object (no orbit minimization).
std::string serialize(const MarkedTiling& mt);

}  // namespace flatcensus
