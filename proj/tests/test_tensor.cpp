#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bogotool/grid.hpp"
#include "bogotool/tensor.hpp"

using namespace bogotool;

namespace {

SymTensor diag(double a, double b) {
  SymTensor t(2);
  t(0, 0) = a;
  t(1, 1) = b;
  return t;
}

}  // namespace

TEST_CASE("stress and associated field, frozen values") {
  // p = 1.5, delta = 0, P = diag(1, -1): |P| = sqrt(2),
  // S = 2^(-1/4) P, F = 2^(-1/8) P
  StressModel m{NFunctionPD(1.5, 0.0)};
  const SymTensor P = diag(1.0, -1.0);
  const SymTensor S = stress(m, P);
  const SymTensor F = f_assoc(m, P);
  CHECK(S(0, 0) == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-12));
  CHECK(S(1, 1) == doctest::Approx(-std::pow(2.0, -0.25)).epsilon(1e-12));
  CHECK(F(0, 0) == doctest::Approx(std::pow(2.0, -0.125)).epsilon(1e-12));
  CHECK(stress(m, diag(0.0, 0.0))(0, 0) == 0.0);
}

TEST_CASE("only the symmetric part enters") {
  StressModel m{NFunctionPD(1.8, 0.2)};
  SymTensor P(2);
  P(0, 1) = 1.0;  // skew plus symmetric mix
  P(1, 0) = 3.0;
  SymTensor Ps = sym_part(P);
  const SymTensor a = stress(m, P), b = stress(m, Ps);
  for (int c = 0; c < 4; ++c) CHECK(a.a[c] == doctest::Approx(b.a[c]));
}

TEST_CASE("p = 2, delta = 0 collapses every quantity") {
  StressModel m{NFunctionPD(2.0, 0.0)};
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  for (int s = 0; s < 500; ++s) {
    SymTensor P(2), Q(2);
    for (int c = 0; c < 4; ++c) {
      P.a[c] = gauss(rng);
      Q.a[c] = gauss(rng);
    }
    const HammerQuantities q = hammer_quantities(m, P, Q);
    CHECK(std::abs(q.monotone - q.f_diff2) <=
          1e-12 * (1.0 + std::abs(q.monotone)));
  }
}

TEST_CASE("equivalence ratios are pinched for generic parameters") {
  StressModel m{NFunctionPD(1.5, 0.1)};
  calibrate(m, 5000, 7);
  REQUIRE(m.gamma0_est.has_value());
  REQUIRE(m.gamma1_est.has_value());
  CHECK(*m.gamma0_est > 0.0);
  CHECK(*m.gamma1_est >= *m.gamma0_est);
  CHECK(std::isfinite(*m.gamma1_est));
}

TEST_CASE("difference quotient equivalences on a smooth velocity field") {
  StressModel m{NFunctionPD(1.5, 0.1)};
  const UniformGrid g = make_cell_grid(2, 0.0, 1.0, 32);
  const auto u = make_vector_field(g, [](const std::vector<double>& x) {
    return std::vector<double>{std::sin(2 * M_PI * x[0]) * x[1],
                               x[0] * x[0] - std::cos(2 * M_PI * x[1])};
  });
  const auto Du = sym_gradient(u, Stencil::OneSided);
  const auto r = diffquot_equiv(m, Du, g.spacing, 0, +1);
  CHECK(r.points > 0);
  CHECK(r.min12 > 0.0);
  CHECK(r.min13 > 0.0);
  CHECK(r.min23 > 0.0);
  CHECK(std::isfinite(r.max12));
  CHECK(std::isfinite(r.max13));
  CHECK(std::isfinite(r.max23));
  CHECK(r.min12 <= r.max12);
}
