#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bogotool/grid.hpp"
#include "bogotool/nfunc.hpp"
#include "bogotool/util.hpp"

using namespace bogotool;

TEST_CASE("closed form matches quadrature of the defining integral") {
  NFunctionPD nf(1.5, 1.0);
  // frozen oracle: adaptive quadrature of (1 + s)^(-1/2) s on [0, 1]
  CHECK(phi_eval(nf, 1.0) == doctest::Approx(0.3905242917512699).epsilon(1e-12));
  const double quad = adaptive_simpson(
      [&](double s) { return std::pow(nf.delta + s, nf.p - 2.0) * s; }, 0.0,
      1.0, 1e-13);
  CHECK(phi_eval(nf, 1.0) == doctest::Approx(quad).epsilon(1e-10));
}

TEST_CASE("derivatives") {
  NFunctionPD nf(1.7, 0.3);
  const double t = 0.8, e = 1e-6;
  const double fd = (phi_eval(nf, t + e) - phi_eval(nf, t - e)) / (2 * e);
  CHECK(phi_prime(nf, t) == doctest::Approx(fd).epsilon(1e-8));
  const double fd2 = (phi_prime(nf, t + e) - phi_prime(nf, t - e)) / (2 * e);
  CHECK(phi_second(nf, t) == doctest::Approx(fd2).epsilon(1e-8));
  CHECK(phi_second_times(nf, 0.0) == 0.0);
  CHECK_THROWS(phi_second(NFunctionPD(1.5, 0.0), 0.0));
}

TEST_CASE("shifted function collapses to a delta shift") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double p = 1.1 + 1.9 * U(rng), d = 2.0 * U(rng);
    const double a = 2.0 * U(rng), t = 0.001 + 10.0 * U(rng);
    const ShiftedNFunction sf(NFunctionPD(p, d), a);
    const double lhs = shifted_eval(sf, t);
    const double rhs = phi_eval(NFunctionPD(p, d + a), t);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("conjugate, frozen value and Fenchel-Young equality") {
  // p = 1.5, delta = 0: phi(t) = (2/3) t^(3/2), phi*(s) = s^3 / 3
  CHECK(conjugate_eval(NFunctionPD(1.5, 0.0), 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  NFunctionPD nf(1.4, 0.2);
  for (double t : {0.01, 0.5, 3.0, 40.0}) {
    const double s = phi_prime(nf, t);
    CHECK(phi_eval(nf, t) + conjugate_eval(nf, s) ==
          doctest::Approx(t * s).epsilon(1e-6));
    CHECK(phi_prime_inverse(nf, s) == doctest::Approx(t).epsilon(1e-7));
  }
}

TEST_CASE("doubling estimate, frozen quadratic value") {
  CHECK(delta2_estimate(NFunctionPD(2.0, 0.0)) == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(delta2_estimate(NFunctionPD(1.5, 0.0)) > 1.0);
}

TEST_CASE("modular and Luxemburg norm of a constant field") {
  NFunctionPD nf(1.5, 0.1);
  const UniformGrid g = make_cell_grid(2, 0.0, 1.0, 16);
  UniformGridField f(g, 0);
  for (auto& v : f.values) v = 2.0;
  CHECK(modular(nf, f).value == doctest::Approx(phi_eval(nf, 2.0)).epsilon(1e-12));
  const double lam = luxemburg_norm(nf, f);
  UniformGridField scaled = f;
  for (auto& v : scaled.values) v /= lam;
  CHECK(modular(nf, scaled).value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("young inequalities with computed constants") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> logu(-3.0, 3.0);
  std::vector<std::pair<double, double>> pts(2000);
  for (auto& st : pts)
    st = {std::pow(10.0, logu(rng)), std::pow(10.0, logu(rng))};
  // p = 2, delta = 0, eps = 1: ts <= t^2/2 + s^2/2 exactly, c_eps1 = 1
  const YoungReport r2 = young_check(NFunctionPD(2.0, 0.0), 1.0, pts);
  CHECK(r2.pass1);
  CHECK(r2.pass2);
  CHECK(r2.c_eps1 == doctest::Approx(1.0).epsilon(1e-6));
  const YoungReport r = young_check(NFunctionPD(1.5, 0.1), 0.1, pts);
  CHECK(r.pass1);
  CHECK(r.pass2);
}
