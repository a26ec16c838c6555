#include "flatcensus/foliation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace flatcensus {

namespace {

// Row state encoding: 2*square + (0 for traversal along the square frame,
// 1 against it). For horizontal rows, + exits through E and - through W;
// for vertical, + exits through N and - through S. In both cases an
// odd partner slot re-enters with + and an even one with -.
int row_next(const GluingTable& t, Direction dir, int state) {
  const auto& partner = dir == Direction::horizontal ? t.h_partner : t.v_partner;
  Slot p = partner[state];  // exit slot id equals the state id
  return 2 * slot_square(p) + ((p & 1) ? 0 : 1);
}

std::vector<Row> trace_rows(const GluingTable& t, Direction dir, std::vector<int>* row_of_square) {
  int n_states = 2 * t.n_squares;
  std::vector<int> visited(n_states, 0);
  std::vector<Row> out;
  if (row_of_square) row_of_square->assign(t.n_squares, -1);
  for (int s0 = 0; s0 < n_states; ++s0) {
    if (visited[s0]) continue;
    Row row;
    int s = s0;
    do {
      visited[s] = 1;
      visited[s ^ 1] = 1;  // reversed traversal of the same circle
      row.states.emplace_back(s >> 1, (s & 1) ? -1 : 1);
      if (row_of_square) (*row_of_square)[s >> 1] = static_cast<int>(out.size());
      s = row_next(t, dir, s);
    } while (s != s0);
    out.push_back(std::move(row));
  }
  return out;
}

// Grid-circle state encoding for the horizontal direction: canonical directed
// edges are (N_i eastward) = slot 2i and (S_i westward) = slot 2i+1; the
// square owning the slot lies on the walk's right. For the vertical direction:
// (E_i downward) = 2i and (W_i upward) = 2i+1. The reverse traversal of a
// state is the partner slot.
struct GridStep {
  int next_state;
  int vclass;  // vertex class at the step's endpoint
};

GridStep grid_next(const GluingTable& t, const ConeData& cone, Direction dir, int state) {
  int i = slot_square(state);
  Corner c0;
  if (dir == Direction::horizontal)
    c0 = (state & 1) ? corner_id(i, kSW) : corner_id(i, kNE);
  else
    c0 = (state & 1) ? corner_id(i, kNW) : corner_id(i, kSE);
  Corner c1 = ccw_next(t, c0);
  int j = corner_square(c1);
  int next;
  if (dir == Direction::horizontal) {
    switch (corner_type(c1)) {
      case kNW: next = north_slot(j); break;
      case kSE: next = south_slot(j); break;
      default: throw std::logic_error("horizontal grid walk left the horizontal grid");
    }
  } else {
    switch (corner_type(c1)) {
      case kNE: next = east_slot(j); break;
      case kSW: next = west_slot(j); break;
      default: throw std::logic_error("vertical grid walk left the vertical grid");
    }
  }
  return {next, cone.class_of_corner[c0]};
}

}  // namespace

std::vector<Row> rows(const MarkedTiling& mt, Direction dir) {
  return trace_rows(mt.table, dir, nullptr);
}

CylinderDecomposition decompose(const MarkedTiling& mt, Direction dir) {
  const GluingTable& t = mt.table;
  const ConeData& cone = mt.cone;
  const auto& cross_partner = dir == Direction::horizontal ? t.v_partner : t.h_partner;

  CylinderDecomposition d;
  d.dir = dir;
  d.rows = trace_rows(t, dir, &d.row_of_square);

  // Trace all grid circles (each geometric circle once; the partner slot of a
  // state is its reverse traversal).
  int n_states = 2 * t.n_squares;
  std::vector<int> visited(n_states, 0);
  for (int s0 = 0; s0 < n_states; ++s0) {
    if (visited[s0]) continue;
    GridCircle gc;
    bool regular = true;
    int s = s0;
    do {
      visited[s] = 1;
      visited[cross_partner[s]] = 1;
      gc.slots.push_back(s);
      GridStep step = grid_next(t, cone, dir, s);
      gc.vclasses.push_back(step.vclass);
      if (cone.angle_halfpi(step.vclass) != 4 || mt.is_marked_class(step.vclass))
        regular = false;
      s = step.next_state;
    } while (s != s0);
    gc.regular = regular;
    if (regular) {
      gc.row_right = d.row_of_square[slot_square(gc.slots[0])];
      gc.row_left = d.row_of_square[slot_square(cross_partner[gc.slots[0]])];
      for (Slot e : gc.slots) {
        if (d.row_of_square[slot_square(e)] != gc.row_right ||
            d.row_of_square[slot_square(cross_partner[e])] != gc.row_left)
          throw AnnulusViolation("regular grid circle with inconsistent side rows");
      }
      if (gc.row_right == gc.row_left)
        throw AnnulusViolation("regular grid circle bounded by one row on both sides");
    }
    d.circles.push_back(std::move(gc));
  }

  // Merge rows across regular circles.
  int n_rows = static_cast<int>(d.rows.size());
  std::vector<int> comp(n_rows);
  std::iota(comp.begin(), comp.end(), 0);
  std::vector<std::vector<int>> adj(n_rows);  // interior circle ids per row
  for (int ci = 0; ci < static_cast<int>(d.circles.size()); ++ci) {
    const GridCircle& gc = d.circles[ci];
    if (!gc.regular) continue;
    adj[gc.row_right].push_back(ci);
    adj[gc.row_left].push_back(ci);
  }
  for (auto& a : adj)
    if (a.size() > 2) throw AnnulusViolation("row adjacent to more than two regular circles");

  std::vector<int> row_seen(n_rows, 0);
  for (int r0 = 0; r0 < n_rows; ++r0) {
    if (row_seen[r0] || adj[r0].size() == 2) continue;  // start at a stack end
    Cylinder cyl;
    cyl.dir = dir;
    int r = r0, via = -1;
    while (true) {
      row_seen[r] = 1;
      cyl.row_stack.push_back(r);
      int next_circle = -1;
      for (int ci : adj[r])
        if (ci != via) next_circle = ci;
      if (next_circle == -1) break;
      const GridCircle& gc = d.circles[next_circle];
      cyl.interior_circles.push_back(next_circle);
      via = next_circle;
      r = (gc.row_right == r) ? gc.row_left : gc.row_right;
      if (row_seen[r]) throw AnnulusViolation("cylinder rows close into a torus");
    }
    cyl.height = static_cast<int>(cyl.row_stack.size());
    cyl.circumference = d.rows[cyl.row_stack[0]].length();
    for (int ri : cyl.row_stack)
      if (d.rows[ri].length() != cyl.circumference)
        throw AnnulusViolation("rows of one cylinder differ in length");
    d.cylinders.push_back(std::move(cyl));
  }
  for (int r = 0; r < n_rows; ++r)
    if (!row_seen[r]) throw AnnulusViolation("cylinder rows close into a torus");

  // Deterministic order: by smallest square in the cylinder.
  std::vector<int> key(d.cylinders.size());
  for (size_t k = 0; k < d.cylinders.size(); ++k) {
    int m = t.n_squares;
    for (int ri : d.cylinders[k].row_stack)
      for (auto& [sq, sign] : d.rows[ri].states) m = std::min(m, sq);
    key[k] = m;
  }
  std::vector<int> order(d.cylinders.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&key](int a, int b) { return key[a] < key[b]; });
  std::vector<Cylinder> sorted;
  for (int k : order) sorted.push_back(std::move(d.cylinders[k]));
  d.cylinders = std::move(sorted);

  int area = 0;
  for (const Cylinder& c : d.cylinders) area += c.circumference * c.height;
  if (area != t.n_squares) throw std::logic_error("cylinder areas do not sum to N");
  return d;
}

CurveSystem core_multicurve(const MarkedTiling& mt, Direction dir) {
  CylinderDecomposition d = decompose(mt, dir);
  CurveSystem cs;
  cs.dir = dir;
  for (const Cylinder& c : d.cylinders) {
    cs.weights.push_back(c.height);
    cs.circumferences.push_back(c.circumference);
  }
  return cs;
}

}  // namespace flatcensus
