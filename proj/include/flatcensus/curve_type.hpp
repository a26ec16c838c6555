#pragma once

#include <string>
#include <vector>

#include "flatcensus/foliation.hpp"
#include "flatcensus/tiling.hpp"

namespace flatcensus {

struct CutComponent {
  int genus = 0;
  int n_marked = 0;
  int n_boundary = 0;
};

struct CutResult {
  std::vector<CutComponent> components;
  // Per curve (= cylinder of the decomposition, same order): the components
  // on the two sides of its core circle, and the curve weight (height).
  std::vector<std::pair<int, int>> curve_sides;
  std::vector<int> curve_weights;
  // Core circles as sequences of original squares visited (refined walk).
  std::vector<std::vector<int>> core_squares;
};

struct DualGraph {
  // vertex: (genus, marked points); edge: (u, v, weight), loops allowed.
  std::vector<std::pair<int, int>> vertices;
  struct Edge { int u, v, w; };
  std::vector<Edge> edges;
};

struct TopType {
  std::string key;  // canonical, comparable byte sequence
  bool operator==(const TopType&) const = default;
  bool operator<(const TopType& o) const { return key < o.key; }
};

// Cuts the surface along the core circles of all cylinders in the given
// direction. Cores are materialized on the subdivide2 refinement, where every
// cylinder has even height, so each cut runs along grid edges.
CutResult cut_along(const MarkedTiling& mt, Direction dir);

// Validates that cs describes mt's core multicurve, then cuts.
CutResult cut_along(const MarkedTiling& mt, const CurveSystem& cs);

DualGraph dual_graph(const CutResult& cut);

// Contracts every unmarked annulus vertex (genus 0, no marked points, exactly
// two distinct edge ends), summing the weights of its two edges. A loop at
// such a vertex is a model violation and throws.
DualGraph normalize(const DualGraph& g);

// Canonical key of the normalized graph: lexicographically minimal
// serialization over all vertex orderings.
TopType top_type(const DualGraph& normalized);

// Human-readable, CSV-safe rendering, e.g. "v1.0|e0-0w1".
std::string type_to_string(const TopType& t);

// Convenience: full pipeline for one direction.
TopType multicurve_type(const MarkedTiling& mt, Direction dir);

// Single-component system only: does cutting disconnect the surface?
bool is_separating(const MarkedTiling& mt, Direction dir);

}  // namespace flatcensus
