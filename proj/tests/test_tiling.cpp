#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "flatcensus/tiling.hpp"

using namespace flatcensus;
using namespace flatcensus::fixtures;

TEST_CASE("validate_table accepts the fixtures") {
  for (const auto& t : {t1(), p2(), g4(), v2()}) {
    auto d = validate_table(t);
    CHECK(d.ok);
    CHECK(d.connected);
    CHECK(d.issues.empty());
  }
}

TEST_CASE("validate_table flags structural violations") {
  GluingTable fold{1, {0, 1}, {1, 0}};  // E0 glued to itself
  CHECK_FALSE(validate_table(fold).ok);

  GluingTable not_involution{2, {2, 0, 1, 3}, {1, 0, 3, 2}};
  CHECK_FALSE(validate_table(not_involution).ok);

  GluingTable out_of_range{1, {5, 0}, {1, 0}};
  CHECK_FALSE(validate_table(out_of_range).ok);

  GluingTable wrong_size{2, {1, 0}, {1, 0, 3, 2}};
  CHECK_FALSE(validate_table(wrong_size).ok);

  GluingTable disconnected{2, {1, 0, 3, 2}, {1, 0, 3, 2}};
  auto d = validate_table(disconnected);
  CHECK(d.ok);
  CHECK_FALSE(d.connected);
}

TEST_CASE("corner orbits: torus has one 2pi vertex") {
  auto cone = corner_orbits(t1());
  REQUIRE(cone.num_classes() == 1);
  CHECK(cone.angle_halfpi(0) == 4);
  CHECK(cone.class_ids[0] == 0);
}

TEST_CASE("corner orbits: pillowcase has four pi vertices") {
  auto cone = corner_orbits(p2());
  REQUIRE(cone.num_classes() == 4);
  std::set<std::set<Corner>> classes;
  for (const auto& cls : cone.classes) {
    CHECK(cls.size() == 2);
    classes.insert(std::set<Corner>(cls.begin(), cls.end()));
  }
  std::set<std::set<Corner>> expected = {{0, 5}, {1, 4}, {2, 7}, {3, 6}};
  CHECK(classes == expected);
  CHECK(cone.class_ids == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("corner orbits: g4 has two 4pi vertices, frozen walk") {
  auto cone = corner_orbits(g4());
  REQUIRE(cone.num_classes() == 2);
  CHECK(cone.angle_halfpi(0) == 8);
  CHECK(cone.angle_halfpi(1) == 8);
  // ccw walk from SW0 crosses W0->SE3, S3->NE2, E2->NW3, N3->SW2, ...
  CHECK(cone.classes[0] == std::vector<Corner>{0, 13, 10, 15, 8, 5, 2, 7});
}

TEST_CASE("genus of the fixtures") {
  CHECK(genus(t1()) == 1);
  CHECK(genus(p2()) == 0);
  CHECK(genus(g4()) == 2);
  CHECK(genus(v2()) == 1);
}

TEST_CASE("order sum matches Gauss-Bonnet on fixtures") {
  for (const auto& t : {t1(), p2(), g4(), v2()}) {
    auto cone = corner_orbits(t);
    int sum = 0;
    for (int k = 0; k < cone.num_classes(); ++k) sum += cone.angle_halfpi(k) / 2 - 2;
    CHECK(sum == 4 * genus(t) - 4);
  }
}

TEST_CASE("mark_assignments") {
  CHECK(mark_assignments(t1(), 1).size() == 1);
  CHECK(mark_assignments(t1(), 0).empty());   // 2-2g-n = 0
  CHECK(mark_assignments(p2(), 4).size() == 1);
  CHECK(mark_assignments(p2(), 3).empty());   // pi classes force all four
  CHECK(mark_assignments(g4(), 0).size() == 1);
  CHECK(mark_assignments(g4(), 1).size() == 2);
  CHECK(mark_assignments(v2(), 1).size() == 2);  // either 2pi vertex
}

TEST_CASE("MarkedTiling construction rules") {
  CHECK_THROWS_AS(MarkedTiling(t1(), {}), std::invalid_argument);       // chi >= 0
  CHECK_THROWS_AS(MarkedTiling(t1(), {1}), std::invalid_argument);      // no such class
  CHECK_THROWS_AS(MarkedTiling(p2(), {0, 1}), std::invalid_argument);   // pi not marked
  CHECK_THROWS_AS(MarkedTiling(GluingTable{2, {1, 0, 3, 2}, {1, 0, 3, 2}}, {0}),
                  std::invalid_argument);  // disconnected
  CHECK(MarkedTiling(g4(), {}).genus == 2);
}

TEST_CASE("relabel keeps structure") {
  auto t = g4();
  std::vector<int> perm = {2, 0, 3, 1};
  auto r = relabel(t, perm);
  CHECK(validate_table(r).ok);
  CHECK(genus(r) == 2);
  auto cone = corner_orbits(r);
  CHECK(cone.num_classes() == 2);
  std::vector<int> inv(4);
  for (int i = 0; i < 4; ++i) inv[perm[i]] = i;
  CHECK(relabel(r, inv) == t);
}

TEST_CASE("frame_flip is an involution and preserves invariants") {
  for (const auto& t : {t1(), p2(), g4(), v2()}) {
    auto f = frame_flip(t);
    CHECK(validate_table(f).ok);
    CHECK(frame_flip(f) == t);
    CHECK(genus(f) == genus(t));
    CHECK(corner_orbits(f).num_classes() == corner_orbits(t).num_classes());
  }
}

TEST_CASE("rotate90 relations") {
  CHECK(rotate90(t1()) == t1());
  for (const auto& t : {t1(), p2(), g4(), v2()}) {
    CHECK(rotate90(rotate90(t)) == frame_flip(t));
    CHECK(genus(rotate90(t)) == genus(t));
  }
  auto mt = g4m();
  auto r2 = rotate90(rotate90(mt));
  CHECK(r2.table == frame_flip(mt).table);
  CHECK(r2.marked == frame_flip(mt).marked);
}

TEST_CASE("subdivide2 refines cleanly") {
  auto s = subdivide2(t1());
  CHECK(s.n_squares == 4);
  CHECK(validate_table(s).ok);
  CHECK(genus(s) == 1);
  auto cone = corner_orbits(s);
  CHECK(cone.num_classes() == 4);
  for (int k = 0; k < 4; ++k) CHECK(cone.angle_halfpi(k) == 4);

  auto sg = subdivide2(g4());
  CHECK(sg.n_squares == 16);
  CHECK(genus(sg) == 2);
  auto cg = corner_orbits(sg);
  CHECK(cg.num_classes() == 14);  // 2 original + 8 edge + 4 face points
  int eights = 0;
  for (int k = 0; k < cg.num_classes(); ++k)
    if (cg.angle_halfpi(k) == 8) ++eights;
  CHECK(eights == 2);

  auto mv = subdivide2(v2m());
  CHECK(mv.genus == 1);
  CHECK(mv.n_marked() == 1);
}

TEST_CASE("automorphisms match the brute-force oracle") {
  CHECK(automorphisms(t1m()).order() == 2);
  CHECK(automorphisms(p2m()).order() == 4);
  for (const auto& mt : {t1m(), p2m(), g4m(), v2m()}) {
    auto fast = automorphisms(mt);
    auto brute = automorphisms_brute(mt);
    CHECK(fast.order() == brute.order());
    CHECK(fast.has_flip() == brute.has_flip());
  }
}

TEST_CASE("g4 automorphism group is even (hyperelliptic)") {
  auto aut = automorphisms(g4m());
  CHECK(aut.order() % 2 == 0);
  CHECK(aut.has_flip());
}

TEST_CASE("flip_squares generates the frame changes") {
  for (const auto& t : {t1(), p2(), g4(), v2()}) {
    uint32_t all = (1u << t.n_squares) - 1;
    CHECK(flip_squares(t, all) == frame_flip(t));
    CHECK(flip_squares(t, 0) == t);
    for (uint32_t m = 0; m <= all; ++m) {
      auto f = flip_squares(t, m);
      CHECK(validate_table(f).ok);
      CHECK(flip_squares(f, m) == t);
      CHECK(genus(f) == genus(t));
      CHECK(corner_orbits(f).num_classes() == corner_orbits(t).num_classes());
    }
  }
  auto mv = flip_squares(v2m(), 1);
  CHECK(mv.genus == v2m().genus);
  CHECK(mv.n_marked() == v2m().n_marked());
}

TEST_CASE("canonical_form is an orbit invariant") {
  auto mt = g4m();
  auto base = canonical_form(mt);
  for (std::vector<int> perm : {std::vector<int>{1, 2, 3, 0}, {3, 1, 0, 2}, {2, 0, 3, 1}}) {
    CHECK(canonical_form(relabel(mt, perm, 1)) == base);
    CHECK(canonical_form(relabel(mt, perm, -1)) == base);
  }
  CHECK(canonical_form(frame_flip(mt)) == base);
  for (const auto& m : {t1m(), p2m(), g4m(), v2m()}) {
    auto ref = canonical_form(m);
    for (uint32_t mask = 0; mask < (1u << m.table.n_squares); ++mask)
      CHECK(canonical_form(flip_squares(m, mask)) == ref);
  }
  // the square pillowcase admits a quarter-turn symmetry up to frame changes
  CHECK(canonical_form(p2m()) == canonical_form(rotate90(p2m())));
  CHECK(canonical_form(t1m()) != canonical_form(p2m()));
}

TEST_CASE("serialize distinguishes labeled objects") {
  CHECK(serialize(t1m()) != serialize(p2m()));
  CHECK(serialize(g4m()) != serialize(v2m()));
}
