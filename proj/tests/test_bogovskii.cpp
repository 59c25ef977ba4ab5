#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bogotool/bogovskii.hpp"

using namespace bogotool;

TEST_CASE("mollifier integrates to one") {
  for (int n : {1, 2}) {
    const Mollifier rho = make_mollifier(n);
    const UniformGrid g = make_cell_grid(n, -0.25, 0.5, 200);
    double sum = 0.0;
    for (std::size_t i = 0; i < g.num_points(); ++i)
      sum += rho(g.point(i)) * g.cell_volume();
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(rho.grad_sup > 0.0);
    CHECK(rho.hess_sup > rho.grad_sup);
  }
}

TEST_CASE("one dimensional operator reproduces the antiderivative") {
  const int N = 256;
  Cube Q{{0.0}, 1.0};
  const UniformGrid g = make_cell_grid(1, -0.5, 1.0, N);
  const auto f = make_scalar_field(g, [](const std::vector<double>& x) {
    return std::sin(2.0 * M_PI * (x[0] + 0.5));
  });
  const BogovskiiSolution sol = bogovskii_apply(f, Q, 16);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    const double x = g.point(i)[0];
    const double anti = (1.0 - std::cos(2.0 * M_PI * (x + 0.5))) / (2.0 * M_PI);
    worst = std::max(worst, std::abs(sol.v.at(i) - anti));
  }
  CHECK(worst <= 5e-3);
}

TEST_CASE("mean-zero precondition") {
  Cube Q{{0.0, 0.0}, 1.0};
  const UniformGrid g = make_cell_grid(2, -0.5, 1.0, 8);
  UniformGridField f(g, 0);
  for (auto& v : f.values) v = 1.0;
  CHECK_THROWS(bogovskii_apply(f, Q, 16));
  const BogovskiiSolution sol = bogovskii_apply(f, Q, 16, true);
  for (double v : sol.v.values) CHECK(v == 0.0);  // projection kills constants
}

TEST_CASE("divergence residual shrinks under refinement") {
  Cube Q{{0.0, 0.0}, 1.0};
  auto data = [](const std::vector<double>& x) {
    return std::sin(2.0 * M_PI * (x[0] + 0.5)) * std::sin(2.0 * M_PI * (x[1] + 0.5));
  };
  double prev = 0.0;
  for (int N : {16, 32}) {
    const UniformGrid g = make_cell_grid(2, -0.5, 1.0, N);
    const BogovskiiSolution sol =
        bogovskii_apply(make_scalar_field(g, data), Q, 16, true);
    const DivResidual r = divergence_residual(sol);
    if (prev > 0) CHECK(r.l2_rel < prev / 1.4);
    prev = r.l2_rel;
  }
}

TEST_CASE("estimate ratios are finite and weight-stable") {
  Cube Q{{0.0, 0.0}, 1.0};
  const UniformGrid g = make_cell_grid(2, -0.5, 1.0, 32);
  const auto f = make_scalar_field(g, [](const std::vector<double>& x) {
    return std::sin(2.0 * M_PI * (x[0] + 0.5)) * std::sin(2.0 * M_PI * (x[1] + 0.5));
  });
  const BogovskiiSolution sol = bogovskii_apply(f, Q, 16, true);
  const double r0 = gradient_bound_ratio(sol, 1.5);
  CHECK(r0 > 0.0);
  CHECK(std::isfinite(r0));
  const Weight w = make_weight("power:0.25");
  const double rw = gradient_bound_ratio(sol, 1.5, &w);
  CHECK(std::isfinite(rw));
  const double dq = diffquot_bound_ratio(sol, 1.5, nullptr, 2 * g.spacing);
  CHECK(std::isfinite(dq));
  const auto [oii, oiii] = orlicz_bound_ratios(sol, NFunctionPD(1.5, 0.1),
                                               2 * g.spacing);
  CHECK(std::isfinite(oii));
  CHECK(std::isfinite(oiii));
}

TEST_CASE("second difference bound for the mollifier") {
  const Mollifier rho = make_mollifier(2);
  CHECK(second_difference_bound_check(rho, 10000, 3) <= 1.0 + 1e-6);
}
