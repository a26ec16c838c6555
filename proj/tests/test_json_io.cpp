#include <doctest.h>

#include <stdexcept>

#include "fixtures.hpp"
#include "flatcensus/json_io.hpp"

using namespace flatcensus;
using namespace flatcensus::fixtures;

TEST_CASE("tiling json round trip") {
  for (const auto& mt : {t1m(), p2m(), g4m(), v2m()}) {
    auto back = tiling_from_json(tiling_to_json(mt));
    CHECK(back.table == mt.table);
    CHECK(back.marked == mt.marked);
  }
}

TEST_CASE("tiling_from_json accepts the documented schema") {
  auto mt = tiling_from_json(R"({"n_squares":2,"h_pairs":[[0,3],[2,1]],
                                 "v_pairs":[[0,2],[1,3]],"marked":[0,1,2,3]})");
  CHECK(mt.table == p2());
  CHECK(mt.n_marked() == 4);

  auto unmarked = tiling_from_json(
      R"({"n_squares":4,"h_pairs":[[0,3],[2,5],[4,7],[6,1]],
          "v_pairs":[[0,3],[2,1],[4,7],[6,5]]})");
  CHECK(unmarked.marked.empty());
  CHECK(unmarked.genus == 2);
}

TEST_CASE("tiling_from_json rejects malformed input") {
  CHECK_THROWS_AS(tiling_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(tiling_from_json("{}"), std::invalid_argument);
  CHECK_THROWS_AS(tiling_from_json(R"({"n_squares":1,"h_pairs":[[0,0]],"v_pairs":[[0,1]]})"),
                  std::invalid_argument);  // fold
  CHECK_THROWS_AS(tiling_from_json(R"({"n_squares":1,"h_pairs":[[0,1]],"v_pairs":[[0,1]]})"),
                  std::invalid_argument);  // torus needs a marked point
  CHECK_THROWS_AS(tiling_from_json(R"({"n_squares":1,"h_pairs":[[0,1]],
                                       "v_pairs":[[0,1]],"marked":[7]})"),
                  std::invalid_argument);  // no such vertex id
  CHECK_THROWS_AS(
      tiling_from_json(R"({"n_squares":2,"h_pairs":[[0,1]],"v_pairs":[[0,1],[2,3]]})"),
      std::invalid_argument);  // wrong pair count
}

TEST_CASE("table_from_json skips marking validation") {
  auto t = table_from_json(R"({"n_squares":1,"h_pairs":[[0,1]],"v_pairs":[[0,1]]})");
  CHECK(t == t1());
}
