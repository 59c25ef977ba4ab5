#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bogotool/czop.hpp"

using namespace bogotool;

TEST_CASE("planar Riesz kernel satisfies every kernel condition") {
  const KernelDescriptor K = make_kernel("riesz-1", 2);
  const DomainOracle dom = make_ball(2, {0.0, 0.0}, 1.0);
  const CzCheckReport r = cz_check(K, dom, 512, 8, 1);
  CHECK(r.homogeneity_dev <= 1e-12);
  CHECK(r.mean_zero_dev <= 1e-10);
  // frozen: circle L2 size squared of cos(theta) is pi
  CHECK(r.kappa2 * r.kappa2 == doctest::Approx(M_PI).epsilon(1e-10));
  CHECK(sk_check(K, dom, 2000, 2) < 20.0);
}

TEST_CASE("the non-cancelling kernel fails the mean-zero condition") {
  const KernelDescriptor K = make_kernel("nocancel", 2);
  const DomainOracle dom = make_ball(2, {0.0, 0.0}, 1.0);
  const CzCheckReport r = cz_check(K, dom, 512, 8, 1);
  CHECK(r.homogeneity_dev <= 1e-12);
  CHECK(r.mean_zero_dev == doctest::Approx(2.0 * M_PI).epsilon(1e-10));
}

TEST_CASE("surrogate divergence kernel in three dimensions") {
  const KernelDescriptor K = make_kernel("bogovskii-jij-surrogate", 3);
  const DomainOracle dom = make_ball(3, {0.0, 0.0, 0.0}, 1.0);
  const CzCheckReport r = cz_check(K, dom, 64, 4, 1);
  CHECK(r.homogeneity_dev <= 1e-10);
  CHECK(std::isfinite(r.kappa2));
}

TEST_CASE("truncated apply agrees with the multi-level pass") {
  const KernelDescriptor K = make_kernel("riesz-1", 2);
  const UniformGrid g = make_cell_grid(2, -0.5, 1.0, 16);
  const auto fam = make_test_family(g, 1, 9);
  const double eps[] = {0.25, 0.125};
  const auto multi = truncated_apply_multi(K, eps, fam[0]);
  const auto single = truncated_apply(K, 0.125, fam[0]);
  REQUIRE(multi.size() == 2);
  for (std::size_t i = 0; i < single.values.size(); ++i)
    CHECK(multi[1].values[i] == doctest::Approx(single.values[i]).epsilon(1e-13));
}

TEST_CASE("principal value sequence stabilizes for smooth data") {
  const KernelDescriptor K = make_kernel("riesz-1", 2);
  const UniformGrid g = make_cell_grid(2, -0.5, 1.0, 32);
  const auto fam = make_test_family(g, 1, 4);
  const double eps[] = {0.25, 0.125, 0.0625};
  const PvReport r = pv_apply(K, fam[0], eps);
  REQUIRE(r.l2_diffs.size() == 2);
  CHECK(r.l2_diffs[1] < r.l2_diffs[0]);
}

TEST_CASE("maximal operator dominates the function") {
  const UniformGrid g = make_cell_grid(2, -0.5, 1.0, 16);
  const auto fam = make_test_family(g, 1, 3);
  const auto M = maximal_op(fam[0]);
  for (std::size_t i = 0; i < M.values.size(); ++i)
    CHECK(M.at(i) >= std::abs(fam[0].at(i)) - 1e-14);
}

TEST_CASE("constant weights have unit Muckenhoupt characteristic") {
  const UniformGrid g = make_cell_grid(2, -0.5, 1.0, 16);
  const Weight w = make_weight("const:3");
  CHECK(ap_constant(w, 2.0, g) == doctest::Approx(1.0).epsilon(1e-13));
  const Weight pw = make_weight("power:0.5");
  CHECK(ap_constant(pw, 2.0, g) > 1.0);
}
