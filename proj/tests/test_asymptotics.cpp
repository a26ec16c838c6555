#include <doctest.h>

#include "flatcensus/asymptotics.hpp"

using namespace flatcensus;

using P = AsymConstant::Provenance;

TEST_CASE("genus-2 single-curve frequencies") {
  auto sep = freq_genus2(true);
  auto non = freq_genus2(false);
  CHECK(sep.rational == Rat(1, 27648));
  CHECK(non.rational == Rat(1, 576));
  CHECK(sep.pi_power == 0);
  CHECK(sep.provenance == P::exact);
  CHECK(sep.rational / non.rational == Rat(1, 48));
}

TEST_CASE("genus-0 frequencies and ratios") {
  CHECK(freq_genus0(5, 2).rational == Rat(1, 8));  // 1/(2*0!*1!*4)
  CHECK(ratio_genus0(8, 3, 2) == Rat(4));          // binom(4,1)/binom(4,0)
  CHECK(ratio_genus0(8, 2, 3) == Rat(1, 4));
  CHECK(freq_genus0(6, 2).rational == freq_genus0(6, 4).rational);  // formula symmetry
  CHECK(freq_genus0(9, 3).rational == freq_genus0(9, 6).rational);
  for (int n = 4; n <= 9; ++n)
    for (int i = 2; i + 2 <= n; ++i)
      CHECK(freq_genus0(n, i).rational / freq_genus0(n, 2).rational == ratio_genus0(n, i, 2));
  CHECK_THROWS_AS(freq_genus0(6, 1), std::invalid_argument);
  CHECK_THROWS_AS(freq_genus0(6, 5), std::invalid_argument);
  CHECK_THROWS_AS(freq_genus0(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(ratio_genus0(6, 1, 2), std::invalid_argument);
}

TEST_CASE("genus-split frequencies and ratios") {
  CHECK(ratio_genusg(5, 2, 2) == Rat(1));
  CHECK(ratio_genusg(5, 2, 1) ==
        make_rat(binomial(5, 2) * binomial(11, 4), binomial(5, 1) * binomial(11, 1)));
  for (int g = 2; g <= 6; ++g)
    for (int i = 1; i <= g - 1; ++i) {
      CHECK(freq_genusg_split(g, i).rational == freq_genusg_split(g, g - i).rational);
      CHECK(freq_genusg_split(g, i).rational / freq_genusg_split(g, 1).rational ==
            ratio_genusg(g, i, 1));
    }
  // formula evaluation (interpretation domain starts at 2 < 2i < g)
  CHECK(freq_genusg_split(2, 1).rational == Rat(1, 55296));
  CHECK_THROWS_AS(freq_genusg_split(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(freq_genusg_split(1, 1), std::invalid_argument);
}

TEST_CASE("one-sided counting constants") {
  CHECK(thm12_constant(freq_genus2(false), 2, 0).rational == Rat(1, 1152));
  CHECK(thm12_constant(freq_genus2(true), 2, 0).rational == Rat(1, 55296));
  AsymConstant zero{Rat(0), 0, P::exact};
  CHECK(thm12_constant(zero, 2, 0).rational == 0);
  CHECK(thm12_constant(freq_genus2(true), 2, 0).provenance == P::exact);
  AsymConstant emp{Rat(1), 0, P::empirical};
  CHECK_THROWS_AS(thm12_constant(emp, 2, 0), std::invalid_argument);
}

TEST_CASE("pair counting constants stay symbolic in b") {
  auto sep = freq_genus2(true);
  auto non = freq_genus2(false);
  auto ss = thm11_constant(sep, sep, 2, 0);
  auto nn = thm11_constant(non, non, 2, 0);
  CHECK(ss.provenance == P::symbolic_in_b);
  CHECK(ss.rational / nn.rational == Rat(1, 2304));  // b cancels
  CHECK(thm11_constant(sep, non, 2, 0).rational == thm11_constant(non, sep, 2, 0).rational);

  // coefficient times 2^(2g-3+n) times b recovers c1*c2
  for (auto [g, n] : std::vector<std::pair<int, int>>{{2, 0}, {1, 1}, {0, 4}, {3, 2}}) {
    auto c = thm11_constant(sep, non, g, n);
    CHECK(c.rational * Rat(pow2(2 * g - 3 + n)) == sep.rational * non.rational);
    // Theorem 1.4 normalization: substituting m = b/2^(2g-3+n) matches
    auto c14 = thm14_constant(sep, non, g, n);
    CHECK(c14.rational == c.rational / Rat(pow2(2 * g - 3 + n)));
  }
}

TEST_CASE("epsilon, r, nu tables for 3g-3+n <= 6") {
  struct Row {
    int g, n, eps;
  };
  // every hyperbolic (g,n) with 3g-3+n <= 6
  std::vector<Row> rows = {{0, 4, 4}, {0, 5, 1}, {0, 6, 1}, {0, 7, 1}, {0, 8, 1}, {0, 9, 1},
                           {1, 1, 2}, {1, 2, 2}, {1, 3, 1}, {1, 4, 1}, {1, 5, 1}, {1, 6, 1},
                           {2, 0, 2}, {2, 1, 1}, {2, 2, 1}, {2, 3, 1}, {3, 0, 1}};
  for (auto [g, n, eps] : rows) {
    CHECK(epsilon(g, n) == eps);
    CHECK(r_const(g, n).rational == Rat(1, pow2(2 * g - 3 + n)));
    CHECK(nu_scaling(g, n).rational == Rat(pow2(2 * g - 3 + n)));
    CHECK(r_const(g, n).rational * nu_scaling(g, n).rational == 1);
  }
  CHECK(r_const(2, 0).rational == Rat(1, 2));
  CHECK(r_const(1, 1).rational == 1);
  CHECK(nu_scaling(0, 4).rational == 2);
  CHECK_THROWS_AS(epsilon(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(epsilon(0, 2), std::invalid_argument);
}

TEST_CASE("empirical b estimate from census data") {
  CountTable ct;
  ct.spec.g = 1;
  ct.spec.n = 1;
  ct.add({1, "x", "x"}, Rat(1, 2));
  auto b = b_empirical(ct, 1);
  CHECK(b.provenance == P::empirical);
  CHECK(b.rational == Rat(1, 2));  // (1/2)/1^4 times 2^(2g-3+n) = 2^0
}

TEST_CASE("prediction csv rows") {
  auto row = predict_csv_row("freq-sep", freq_genus2(true));
  CHECK(row == "freq-sep,1,27648,0,exact\n");
  CHECK(provenance_name(P::symbolic_in_b) == "symbolic-in-b");
  CHECK(provenance_name(P::empirical) == "empirical");
}

TEST_CASE("compare reports") {
  CountTable ct;
  ct.spec.g = 1;
  ct.spec.n = 1;
  ct.spec.max_area = 2;
  ct.add({1, "a", "a"}, Rat(1, 2));
  ct.add({2, "a", "a"}, Rat(3));

  auto rep = compare_report(ct, "s", std::nullopt, std::nullopt, Rat(1, 2));
  // (1,1): normalization exponent 6g-6+2n = 2
  CHECK(rep.find("1,s,1,2,1,2,") != std::string::npos);   // L=1: (1/2)/1 vs 1/2
  CHECK(rep.find("2,s,7,8,1,2,") != std::string::npos);   // L=2: (7/2)/4 = 7/8

  CountTable empty;
  empty.spec.g = 1;
  empty.spec.n = 1;  // max_area 0: nothing counted, nothing reported
  CHECK(compare_report(empty, "s", std::nullopt, std::nullopt, Rat(1, 2)).empty());

  ct.add({2, "b", "a"}, Rat(1, 4));
  auto ratio = compare_ratio_report(ct, "b-over-a", "b", "a", Rat(1, 14));
  CHECK(ratio.find("1,b-over-a,0,1,1,14,") != std::string::npos);  // numerator empty at L=1
  CHECK(ratio.find("2,b-over-a,1,14,1,14,") != std::string::npos);

  // rows with an empty denominator marginal are skipped entirely
  auto swapped = compare_ratio_report(ct, "a-over-b", "a", "b", Rat(14));
  CHECK(swapped.find("1,a-over-b") == std::string::npos);
  CHECK(swapped.find("2,a-over-b,14,1,14,1,") != std::string::npos);
}

TEST_CASE("constants reject non-hyperbolic types") {
  CHECK_THROWS_AS(r_const(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(nu_scaling(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(thm12_constant(freq_genus2(true), 0, 1), std::invalid_argument);
}
