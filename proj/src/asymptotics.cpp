#include "flatcensus/asymptotics.hpp"

#include <cstdio>

namespace flatcensus {

namespace {

void require_hyperbolic(int g, int n) {
  if (g < 0 || n < 0 || 2 - 2 * g - n >= 0)
    throw std::invalid_argument("needs 2 - 2g - n < 0");
}

Int pow2_signed(int e) {
  if (e < 0) throw std::invalid_argument("negative power of two");
  return pow2(unsigned(e));
}

std::string csv_rat(const Rat& q) {
  return q.get_num().get_str() + "," + q.get_den().get_str();
}

std::string float15(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

}  // namespace

AsymConstant freq_genus2(bool separating) {
  return {make_rat(1, separating ? 27648 : 576), 0, AsymConstant::Provenance::exact};
}

AsymConstant freq_genus0(int n, int i) {
  if (!(n >= 4 && 2 <= i && i <= n - 2))
    throw std::invalid_argument("freq_genus0 needs n >= 4 and 2 <= i <= n-2");
  Int den = pow2_signed(n - 4) * factorial(unsigned(i - 2)) * factorial(unsigned(n - i - 2)) *
            Int(2 * n - 6);
  return {make_rat(Int(1), den), 0, AsymConstant::Provenance::exact};
}

Rat ratio_genus0(int n, int i, int j) {
  if (!(n >= 4 && 2 <= i && i <= n - 2 && 2 <= j && j <= n - 2))
    throw std::invalid_argument("ratio_genus0 needs n >= 4 and 2 <= i,j <= n-2");
  return make_rat(binomial(n - 4, i - 2), binomial(n - 4, j - 2));
}

AsymConstant freq_genusg_split(int g, int i) {
  if (!(g >= 2 && 1 <= i && i <= g - 1))
    throw std::invalid_argument("freq_genusg_split needs g >= 2 and 1 <= i <= g-1");
  Int den = pow2_signed(3 * g - 2);
  Int p24;
  mpz_ui_pow_ui(p24.get_mpz_t(), 24, unsigned(g));
  den *= p24;
  den *= factorial(unsigned(i)) * factorial(unsigned(g - i));
  den *= factorial(unsigned(3 * i - 2)) * factorial(unsigned(3 * (g - i) - 2));
  den *= Int(6 * g - 6);
  return {make_rat(Int(1), den), 0, AsymConstant::Provenance::exact};
}

Rat ratio_genusg(int g, int i, int j) {
  if (!(g >= 2 && 1 <= i && i <= g - 1 && 1 <= j && j <= g - 1))
    throw std::invalid_argument("ratio_genusg needs g >= 2 and 1 <= i,j <= g-1");
  Int num = binomial(g, i) * binomial(3 * g - 4, 3 * i - 2);
  Int den = binomial(g, j) * binomial(3 * g - 4, 3 * j - 2);
  return make_rat(num, den);
}

AsymConstant thm12_constant(const AsymConstant& c, int g, int n) {
  require_hyperbolic(g, n);
  if (c.provenance != AsymConstant::Provenance::exact)
    throw std::invalid_argument("thm12_constant needs an exact c");
  return {make_rat(c.rational.get_num(), c.rational.get_den() * pow2_signed(2 * g - 3 + n)),
          c.pi_power, AsymConstant::Provenance::exact};
}

AsymConstant thm11_constant(const AsymConstant& c1, const AsymConstant& c2, int g, int n) {
  require_hyperbolic(g, n);
  if (c1.provenance != AsymConstant::Provenance::exact ||
      c2.provenance != AsymConstant::Provenance::exact)
    throw std::invalid_argument("thm11_constant needs exact c1, c2");
  Rat prod = c1.rational * c2.rational;
  return {make_rat(prod.get_num(), prod.get_den() * pow2_signed(2 * g - 3 + n)),
          c1.pi_power + c2.pi_power, AsymConstant::Provenance::symbolic_in_b};
}

AsymConstant thm14_constant(const AsymConstant& c1, const AsymConstant& c2, int g, int n) {
  require_hyperbolic(g, n);
  if (c1.provenance != AsymConstant::Provenance::exact ||
      c2.provenance != AsymConstant::Provenance::exact)
    throw std::invalid_argument("thm14_constant needs exact c1, c2");
  Rat prod = c1.rational * c2.rational;
  return {make_rat(prod.get_num(), prod.get_den() * pow2_signed(4 * g - 6 + 2 * n)),
          c1.pi_power + c2.pi_power, AsymConstant::Provenance::symbolic_in_b};
}

int epsilon(int g, int n) {
  require_hyperbolic(g, n);
  if (g == 0 && n == 4) return 4;
  if ((g == 1 && (n == 1 || n == 2)) || (g == 2 && n == 0)) return 2;
  return 1;
}

AsymConstant r_const(int g, int n) {
  require_hyperbolic(g, n);
  return {make_rat(Int(1), pow2_signed(2 * g - 3 + n)), 0, AsymConstant::Provenance::exact};
}

AsymConstant nu_scaling(int g, int n) {
  require_hyperbolic(g, n);
  return {make_rat(pow2_signed(2 * g - 3 + n), Int(1)), 0, AsymConstant::Provenance::exact};
}

AsymConstant b_empirical(const CountTable& ct, int L) {
  int g = ct.spec.g, n = ct.spec.n;
  require_hyperbolic(g, n);
  Rat est = ct.mgn_estimate(L) * Rat(pow2_signed(2 * g - 3 + n));
  return {est, 0, AsymConstant::Provenance::empirical};
}

std::string provenance_name(AsymConstant::Provenance p) {
  switch (p) {
    case AsymConstant::Provenance::exact: return "exact";
    case AsymConstant::Provenance::empirical: return "empirical";
    default: return "symbolic-in-b";
  }
}

std::string predict_csv_row(const std::string& name, const AsymConstant& c) {
  return name + "," + csv_rat(c.rational) + "," + std::to_string(c.pi_power) + "," +
         provenance_name(c.provenance) + "\n";
}

std::string compare_report(const CountTable& ct, const std::string& quantity,
                           const std::optional<std::string>& h_type,
                           const std::optional<std::string>& v_type, const Rat& predicted) {
  int e = 6 * ct.spec.g - 6 + 2 * ct.spec.n;
  std::string out;
  for (int L = 1; L <= ct.spec.max_area; ++L) {
    Rat s = ct.s_value(h_type, v_type, L);
    Int den;
    mpz_ui_pow_ui(den.get_mpz_t(), unsigned(L), unsigned(e));
    Rat emp = make_rat(s.get_num(), s.get_den() * den);
    double ratio = predicted == 0 ? 0.0 : Rat(emp / predicted).get_d();
    out += std::to_string(L) + "," + quantity + "," + csv_rat(emp) + "," + csv_rat(predicted) +
           "," + float15(ratio) + "\n";
  }
  return out;
}

std::string compare_ratio_report(const CountTable& ct, const std::string& quantity,
                                 const std::string& h1, const std::string& h2,
                                 const Rat& predicted) {
  std::string out;
  for (int L = 1; L <= ct.spec.max_area; ++L) {
    Rat a = ct.s_value(h1, std::nullopt, L);
    Rat b = ct.s_value(h2, std::nullopt, L);
    if (b == 0) continue;
    Rat emp = a / b;
    double ratio = predicted == 0 ? 0.0 : Rat(emp / predicted).get_d();
    out += std::to_string(L) + "," + quantity + "," + csv_rat(emp) + "," + csv_rat(predicted) +
           "," + float15(ratio) + "\n";
  }
  return out;
}

}  // namespace flatcensus
