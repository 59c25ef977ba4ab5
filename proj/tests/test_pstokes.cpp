#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bogotool/pstokes.hpp"

using namespace bogotool;

namespace {

UniformGridField random_state(const UniformGrid& g, int margin,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  UniformGridField psi(g, 0);
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    const auto idx = g.unflat(i);
    bool inner = true;
    for (int a = 0; a < 2; ++a)
      if (idx[a] < margin || idx[a] >= g.dims[a] - margin) inner = false;
    psi.at(i) = inner ? 0.01 * gauss(rng) : 0.0;
  }
  return psi;
}

}  // namespace

TEST_CASE("zero data gives the zero minimizer") {
  const UniformGrid g = make_cell_grid(2, 0.0, 1.0, 16);
  PStokesProblem prob{StressModel{NFunctionPD(1.5, 0.1)}, make_forcing(g, "zero")};
  CHECK(discrete_energy(prob, UniformGridField(g, 0)) == 0.0);
  const PStokesSolution sol = solve(prob, 1e-10, 100);
  CHECK(sol.converged);
  for (double v : sol.u.values) CHECK(v == 0.0);
}

TEST_CASE("energy gradient matches finite differences") {
  const UniformGrid g = make_cell_grid(2, 0.0, 1.0, 16);
  PStokesProblem prob{StressModel{NFunctionPD(1.5, 0.1)},
                      make_forcing(g, "vortex")};
  const UniformGridField psi = random_state(g, prob.margin, 17);
  const UniformGridField grad = energy_gradient(prob, psi);
  std::mt19937_64 rng(23);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < 5; ++t) {
    UniformGridField dir = random_state(g, prob.margin, rng());
    double gd = 0.0;
    for (std::size_t i = 0; i < grad.values.size(); ++i)
      gd += grad.values[i] * dir.values[i];
    const double e = 1e-6;
    UniformGridField a = psi, b = psi;
    for (std::size_t i = 0; i < psi.values.size(); ++i) {
      a.values[i] += e * dir.values[i];
      b.values[i] -= e * dir.values[i];
    }
    const double fd = (discrete_energy(prob, a) - discrete_energy(prob, b)) / (2 * e);
    CHECK(std::abs(gd - fd) <= 1e-6 * std::abs(gd));
  }
  CHECK_THROWS(energy_gradient(
      PStokesProblem{StressModel{NFunctionPD(1.5, 0.0)}, make_forcing(g, "zero")},
      UniformGridField(g, 0)));
}

TEST_CASE("p = 2 descent path matches the linear solve") {
  const UniformGrid g = make_cell_grid(2, 0.0, 1.0, 16);
  PStokesProblem prob{StressModel{NFunctionPD(2.0, 0.0)},
                      make_forcing(g, "vortex")};
  const PStokesSolution lin = solve_linear(prob, 1e-14);
  REQUIRE(lin.converged);
  const PStokesSolution nl = solve(prob, 1e-12, 5000);
  REQUIRE(nl.converged);
  CHECK(h1_rel_error(nl.u, lin.u) <= 1e-8);
  CHECK(weak_residual(lin, prob, 5, 1) <= 1e-8);
}

TEST_CASE("nonlinear solve produces a certified weak solution") {
  const UniformGrid g = make_cell_grid(2, 0.0, 1.0, 24);
  PStokesProblem prob{StressModel{NFunctionPD(1.5, 0.1)},
                      make_forcing(g, "vortex")};
  const PStokesSolution sol = solve(prob, 1e-8, 10000);
  REQUIRE(sol.converged);
  const auto div = divergence(sol.u, Stencil::ZeroExtension);
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    const auto idx = g.unflat(i);
    bool interior = true;
    for (int a = 0; a < 2; ++a)
      if (idx[a] == 0 || idx[a] == g.dims[a] - 1) interior = false;
    if (interior) CHECK(std::abs(div.at(i)) <= 1e-10);
  }
  CHECK(weak_residual(sol, prob, 10, 3) <= 1e-6);
  CHECK(apriori_ratio(sol, prob) > 0.0);
}

TEST_CASE("cutoff construction") {
  const UniformGrid g = make_cell_grid(2, 0.0, 1.0, 64);
  const Cube Q{{0.5, 0.5}, 0.5};
  const CutoffSpec cut = make_cutoff(Q, g, 2);
  double center_val = 0.0;
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    const double v = cut.xi.at(i);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    const auto x = g.point(i);
    const double dx = std::abs(x[0] - 0.5), dy = std::abs(x[1] - 0.5);
    if (dx <= 0.125 && dy <= 0.125) CHECK(v == doctest::Approx(1.0));
    if (dx > 0.1875 || dy > 0.1875) CHECK(v == doctest::Approx(0.0));
    if (dx < g.spacing && dy < g.spacing) center_val = v;
  }
  CHECK(center_val == doctest::Approx(1.0));
  CHECK(cut.norm1_inf > 0.0);
  CHECK(cut.norm2_inf > cut.norm1_inf);
  CHECK_THROWS(make_cutoff(Q, g, 64));  // band far thinner than demanded
}

TEST_CASE("cutoff curvature norm scales like the inverse square side") {
  const UniformGrid g = make_cell_grid(2, 0.0, 1.0, 128);
  const CutoffSpec half = make_cutoff(Cube{{0.5, 0.5}, 0.25}, g, 1);
  const CutoffSpec full = make_cutoff(Cube{{0.5, 0.5}, 0.5}, g, 1);
  const double scale = half.norm2_inf / full.norm2_inf;
  CHECK(scale == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("regularity check rejects oversized difference steps") {
  const UniformGrid g = make_cell_grid(2, 0.0, 1.0, 16);
  PStokesProblem prob{StressModel{NFunctionPD(1.5, 0.1)},
                      make_forcing(g, "vortex")};
  const PStokesSolution sol = solve(prob, 1e-6, 5000);
  const CutoffSpec cut = make_cutoff(Cube{{0.5, 0.5}, 0.5}, g, 1);
  const double bad[] = {0.25};
  CHECK_THROWS(interior_regularity_check(sol, prob, cut, bad));
  const double ok[] = {g.spacing};
  const RegularityReport r = interior_regularity_check(sol, prob, cut, ok);
  CHECK(r.lhs >= 0.0);
  CHECK(r.rhs > 0.0);
}
