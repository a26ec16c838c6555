#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "flatcensus/tiling.hpp"

namespace flatcensus {

enum class Direction { horizontal, vertical };

// A row is the straight-line orbit through square mid-lines, recorded as a
// directed cycle of (square, sign) states. Sign -1 means the square is
// traversed against its own frame (after an odd number of half-turn gluings).
// Each geometric mid-circle has two directed traversals; one is kept.
struct Row {
  std::vector<std::pair<int, int>> states;
  int length() const { return static_cast<int>(states.size()); }
};

// A grid circle: the straight-continuation closed walk along unit edges
// parallel to the rows. Regular circles (all vertices of angle 2pi, none
// marked) lie in cylinder interiors; the rest bound cylinders.
struct GridCircle {
  std::vector<Slot> slots;     // canonical-state slots, one per edge, in walk order
  std::vector<int> vclasses;   // vertex classes visited (one per step)
  bool regular = false;
  int row_right = -1;          // row alongside the walk's right side (regular circles)
  int row_left = -1;
};

struct Cylinder {
  Direction dir;
  int circumference = 0;
  int height = 0;
  std::vector<int> row_stack;         // row indices, boundary-to-boundary order
  std::vector<int> interior_circles;  // circle indices between consecutive rows
};

struct CylinderDecomposition {
  Direction dir;
  std::vector<Row> rows;
  std::vector<int> row_of_square;
  std::vector<GridCircle> circles;
  std::vector<Cylinder> cylinders;
};

// One weighted curve per cylinder: the core circle with weight = height.
struct CurveSystem {
  Direction dir;
  std::vector<int> weights;         // per cylinder
  std::vector<int> circumferences;  // per cylinder
};

std::vector<Row> rows(const MarkedTiling& mt, Direction dir);

// Full decomposition: rows merged across regular grid circles into cylinders.
// Throws AnnulusViolation if a component is not a row stack (every valid
// marked tiling with 2-2g-n < 0 decomposes cleanly; malformed inputs do not).
CylinderDecomposition decompose(const MarkedTiling& mt, Direction dir);

CurveSystem core_multicurve(const MarkedTiling& mt, Direction dir);

struct AnnulusViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace flatcensus
