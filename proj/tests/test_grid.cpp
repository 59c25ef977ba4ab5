#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "bogotool/grid.hpp"
#include "bogotool/nfunc.hpp"

using namespace bogotool;

namespace {

UniformGridField bump(const UniformGrid& g) {
  return make_scalar_field(g, [](const std::vector<double>& x) {
    const double dx = x[0] - 0.5, dy = x[1] - 0.5;
    const double r2 = dx * dx + dy * dy;
    return r2 < 0.09 ? std::exp(-1.0 / (1.0 - r2 / 0.09)) : 0.0;
  });
}

}  // namespace

TEST_CASE("difference quotient of a linear function is exact") {
  const UniformGrid g = make_cell_grid(2, 0.0, 1.0, 32);
  const auto f = make_scalar_field(
      g, [](const std::vector<double>& x) { return 3.0 * x[0] - 2.0 * x[1]; });
  const auto d = diff_quot(f, 0, g.spacing, +1);
  // interior only: the zero extension breaks linearity at the edge
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    const auto idx = g.unflat(i);
    if (idx[0] >= g.dims[0] - 1) continue;
    CHECK(d.at(i) == doctest::Approx(3.0).epsilon(1e-12));
  }
  CHECK_THROWS(diff_quot(f, 0, 1.5 * g.spacing, +1));
}

TEST_CASE("delta shift is h times the quotient") {
  const UniformGrid g = make_cell_grid(2, 0.0, 1.0, 16);
  const auto f = bump(g);
  const double h = 2 * g.spacing;
  const auto d = diff_quot(f, 1, h, -1);
  const auto s = delta_shift(f, 1, h, -1);
  for (std::size_t i = 0; i < g.num_points(); ++i)
    CHECK(s.at(i) == doctest::Approx(h * d.at(i)).epsilon(1e-14));
}

TEST_CASE("discrete product rule and commutation identities") {
  const UniformGrid g = make_cell_grid(2, 0.0, 1.0, 32);
  const auto F = bump(g);
  const auto G = make_scalar_field(g, [](const std::vector<double>& x) {
    return std::sin(2 * M_PI * x[0]) + x[1];
  });
  CHECK(product_rule_check(F, G, 0, g.spacing, +1) <= 1e-10);
  CHECK(commute_check(F, 0, 2 * g.spacing, +1) <= 1e-12);
}

TEST_CASE("summation by parts for compactly supported fields") {
  const UniformGrid g = make_cell_grid(2, 0.0, 1.0, 32);
  const auto F = bump(g);
  const auto G = bump(g);
  CHECK(partial_integration_check(F, G, g.spacing, 0) <= 1e-10);
}

TEST_CASE("modular difference quotient inequality on a smooth function") {
  NFunctionPD nf(1.5, 0.1);
  const UniformGrid g = make_cell_grid(2, 0.0, 1.0, 64);
  const auto F = make_scalar_field(g, [](const std::vector<double>& x) {
    return std::sin(2 * M_PI * x[0]) * std::cos(2 * M_PI * x[1]);
  });
  const auto dF = make_scalar_field(g, [](const std::vector<double>& x) {
    return 2 * M_PI * std::cos(2 * M_PI * x[0]) * std::cos(2 * M_PI * x[1]);
  });
  const auto c = modular_dq_inequality(nf, F, dF, 0, g.spacing, 2 * g.spacing, +1);
  CHECK(c.pass);
  CHECK(c.lhs <= c.rhs * (1.0 + 1e-3));
}

TEST_CASE("stream function fields are exactly solenoidal") {
  const UniformGrid g = make_cell_grid(2, 0.0, 1.0, 32);
  const auto psi = bump(g);
  const auto u = curl2d(psi, Stencil::ZeroExtension);
  const auto div = divergence(u, Stencil::ZeroExtension);
  for (std::size_t i = 0; i < g.num_points(); ++i)
    CHECK(std::abs(div.at(i)) <= 1e-14);
}

TEST_CASE("binary round trip") {
  const UniformGrid g = make_cell_grid(2, -0.5, 1.0, 8);
  const auto f = make_vector_field(g, [](const std::vector<double>& x) {
    return std::vector<double>{x[0], x[0] * x[1]};
  });
  const std::string path = "roundtrip_test.bin";
  write_binary(f, path);
  const auto back = read_binary(path);
  std::remove(path.c_str());
  REQUIRE(back.values.size() == f.values.size());
  CHECK(back.grid.spacing == doctest::Approx(g.spacing).epsilon(1e-15));
  for (std::size_t i = 0; i < f.values.size(); ++i)
    CHECK(back.values[i] == f.values[i]);
}

TEST_CASE("lp norm of a constant") {
  const UniformGrid g = make_cell_grid(2, 0.0, 2.0, 16);
  UniformGridField f(g, 0);
  for (auto& v : f.values) v = 3.0;
  // |3|_{L^p} over a square of area 4
  CHECK(norm_p(f, 1.5) == doctest::Approx(3.0 * std::pow(4.0, 1 / 1.5)).epsilon(1e-12));
}
