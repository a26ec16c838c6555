#pragma once

#include <optional>
#include <string>

#include "flatcensus/census.hpp"
#include "flatcensus/rational.hpp"

namespace flatcensus {

// A closed-form constant: rational * pi^pi_power. Constants divided by the
// (unknown rational multiple of pi^(6g-6+2n)) normalization b carry the
// symbolic_in_b tag: the stored value is the coefficient of 1/b.
struct AsymConstant {
  Rat rational;
  int pi_power = 0;
  enum class Provenance { exact, empirical, symbolic_in_b } provenance = Provenance::exact;
};

// Genus-2 weight-1 single-curve frequencies: 1/27648 (separating),
// 1/576 (nonseparating).
AsymConstant freq_genus2(bool separating);

// Genus 0: a weight-1 curve splitting n marked points into i and n-i.
// Evaluates the closed form on its natural domain 2 <= i <= n-2; the
// frequency interpretation is asserted for 2 < 2i < n (the boundary cases
// i = n/2 pick up symmetric-split corrections).
AsymConstant freq_genus0(int n, int i);
Rat ratio_genus0(int n, int i, int j);  // binom(n-4,i-2)/binom(n-4,j-2)

// Closed genus g split into genus i and g-i pieces; formula domain
// 1 <= i <= g-1, interpretation domain 2 < 2i < g (cf. 1/27648 vs the
// i=1 evaluation 1/55296 at g=2).
AsymConstant freq_genusg_split(int g, int i);
Rat ratio_genusg(int g, int i, int j);

// One-sided counting constant: c / 2^(2g-3+n).
AsymConstant thm12_constant(const AsymConstant& c, int g, int n);

// Pair counting constant: c1*c2 / (2^(2g-3+n) * b), coefficient of 1/b.
AsymConstant thm11_constant(const AsymConstant& c1, const AsymConstant& c2, int g, int n);

// Same constant against the area normalization m = b / 2^(2g-3+n):
// c1*c2 / 2^(4g-6+2n), coefficient of 1/m.
AsymConstant thm14_constant(const AsymConstant& c1, const AsymConstant& c2, int g, int n);

// Order of the finite subgroup acting trivially on curve classes.
int epsilon(int g, int n);

AsymConstant r_const(int g, int n);    // 1/2^(2g-3+n)
AsymConstant nu_scaling(int g, int n);  // 2^(2g-3+n)

// Empirical b estimate from census data: 2^(2g-3+n) * total(L)/L^(12g-12+4n).
AsymConstant b_empirical(const CountTable& ct, int L);

std::string provenance_name(AsymConstant::Provenance p);

// One named-constant row: name,num,den,pi_power,provenance.
std::string predict_csv_row(const std::string& name, const AsymConstant& c);

// Convergence rows "L,quantity,empirical_num,empirical_den,predicted_num,
// predicted_den,ratio" for a marginal s(h,v,L)/L^(6g-6+2n) vs a prediction.
std::string compare_report(const CountTable& ct, const std::string& quantity,
                           const std::optional<std::string>& h_type,
                           const std::optional<std::string>& v_type, const Rat& predicted);

// Ratio rows "L,quantity,empirical_num,empirical_den,predicted_num,
// predicted_den,ratio" for s(h1,*,L)/s(h2,*,L) vs a prediction (b-free).
std::string compare_ratio_report(const CountTable& ct, const std::string& quantity,
                                 const std::string& h1, const std::string& h2,
                                 const Rat& predicted);

}  // namespace flatcensus
