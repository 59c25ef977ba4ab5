#include "bogotool/bogovskii.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "bogotool/util.hpp"

namespace bogotool {

namespace {

constexpr double kBumpRadius = 0.2;

// unnormalized bump and its radial derivatives
double bump(double r) {
  const double s = (r / kBumpRadius) * (r / kBumpRadius);
  if (s >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - s));
}

double bump_d1(double r) {
  const double R2 = kBumpRadius * kBumpRadius;
  const double s = r * r / R2;
  if (s >= 1.0) return 0.0;
  const double om = 1.0 - s;
  const double uprime = -2.0 * r / (R2 * om * om);
  return bump(r) * uprime;
}

double bump_d2(double r) {
  const double R2 = kBumpRadius * kBumpRadius;
  const double s = r * r / R2;
  if (s >= 1.0) return 0.0;
  const double om = 1.0 - s;
  const double uprime = -2.0 * r / (R2 * om * om);
  const double usecond =
      -2.0 / (R2 * om * om) - 8.0 * r * r / (R2 * R2 * om * om * om);
  return bump(r) * (uprime * uprime + usecond);
}

double sphere_area(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return 2.0 * M_PI;
    case 3: return 4.0 * M_PI;
    default: throw std::invalid_argument("mollifier: n must be 1, 2 or 3");
  }
}

}  // namespace

double Mollifier::profile(double r) const { return bump(r); }

double Mollifier::operator()(std::span<const double> x) const {
  double s = 0.0;
  for (double v : x) s += v * v;
  return c_norm * bump(std::sqrt(s));
}

Mollifier make_mollifier(int n) {
  Mollifier m;
  m.n = n;
  m.radius = kBumpRadius;
  const double radial = adaptive_simpson(
      [n](double r) { return bump(r) * std::pow(r, n - 1); }, 0.0, kBumpRadius,
      1e-14);
  const double integral = sphere_area(n) * radial;
  if (!(integral > 0) || !std::isfinite(integral))
    throw std::runtime_error("make_mollifier: normalization quadrature failed");
  m.c_norm = 1.0 / integral;

  // sup norms of the gradient and Hessian of the radial function; the
  // Hessian eigenvalues are G''(r) and G'(r)/r
  const int samples = 200000;
  for (int i = 1; i <= samples; ++i) {
    const double r = kBumpRadius * i / (samples + 1.0);
    const double g1 = m.c_norm * bump_d1(r);
    const double g2 = m.c_norm * bump_d2(r);
    m.grad_sup = std::max(m.grad_sup, std::abs(g1));
    m.hess_sup = std::max({m.hess_sup, std::abs(g2), std::abs(g1) / r});
  }
  return m;
}

namespace {

void check_grid_matches_cube(const UniformGrid& g, const Cube& Q) {
  const int n = g.n;
  if (static_cast<int>(Q.center.size()) != n)
    throw std::invalid_argument("bogovskii: cube dimension mismatch");
  const int N = g.dims[0];
  for (int a = 0; a < n; ++a)
    if (g.dims[a] != N)
      throw std::invalid_argument("bogovskii: grid must be N^n over the cube");
  if (std::abs(g.spacing * N - Q.side) > 1e-9 * Q.side)
    throw std::invalid_argument("bogovskii: grid does not tile the cube");
  for (int a = 0; a < n; ++a) {
    const double expect = Q.center[a] - 0.5 * Q.side + 0.5 * g.spacing;
    if (std::abs(g.origin[a] - expect) > 1e-9 * Q.side)
      throw std::invalid_argument("bogovskii: grid is not centered on the cube");
  }
}

}  // namespace

BogovskiiSolution bogovskii_apply(const UniformGridField& f, const Cube& Q,
                                  int m, bool project_mean) {
  if (f.rank != 0) throw std::invalid_argument("bogovskii: scalar input expected");
  if (m < 4) throw std::invalid_argument("bogovskii: inner order must be >= 4");
  const UniformGrid& g = f.grid;
  const int n = g.n;
  check_grid_matches_cube(g, Q);

  const double vol = g.cell_volume();
  const std::size_t np = g.num_points();
  UniformGridField fz = f;
  double mean = 0.0, l1 = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    mean += fz.at(i) * vol;
    l1 += std::abs(fz.at(i)) * vol;
  }
  if (std::abs(mean) > 1e-10 * std::max(l1, 1e-300)) {
    if (!project_mean)
      throw std::invalid_argument("bogovskii: input must have zero mean over Q");
    const double volume = vol * np;
    for (std::size_t i = 0; i < np; ++i) fz.at(i) -= mean / volume;
  }

  const Mollifier rho = make_mollifier(n);
  const double lambda = Q.side;
  const double supp_rad = lambda * rho.radius;
  const double rho_scale = std::pow(lambda, -double(n));
  const GaussRule gauss = gauss_legendre(m);

  std::vector<std::vector<double>> coord(np);
  for (std::size_t i = 0; i < np; ++i) coord[i] = g.point(i);

  BogovskiiSolution sol;
  sol.f = fz;
  sol.Q = Q;
  sol.inner_order = m;
  sol.v = UniformGridField(g, 1);

  const auto& c = Q.center;
  parallel_for(0, np, [&](std::size_t i0, std::size_t i1) {
    std::vector<double> e(n), yc(n), p(n);
    for (std::size_t i = i0; i < i1; ++i) {
      const auto& x = coord[i];
      std::vector<double> acc(n, 0.0);
      for (std::size_t j = 0; j < np; ++j) {
        if (j == i) continue;  // self cell skipped; O(h) contribution
        const double fy = fz.at(j);
        if (fy == 0.0) continue;
        const auto& y = coord[j];
        double r2 = 0.0;
        for (int a = 0; a < n; ++a) {
          e[a] = x[a] - y[a];
          r2 += e[a] * e[a];
        }
        const double r = std::sqrt(r2);
        for (int a = 0; a < n; ++a) e[a] /= r;
        // ray y + xi e meets the mollifier support ball?
        double b = 0.0, q2 = 0.0;
        for (int a = 0; a < n; ++a) {
          yc[a] = y[a] - c[a];
          b += e[a] * yc[a];
          q2 += yc[a] * yc[a];
        }
        const double disc = b * b - (q2 - supp_rad * supp_rad);
        if (disc <= 0.0) continue;
        const double sd = std::sqrt(disc);
        const double xi_lo = std::max(-b - sd, r);
        const double xi_hi = -b + sd;
        if (xi_hi <= xi_lo) continue;
        const double mid = 0.5 * (xi_lo + xi_hi);
        const double half = 0.5 * (xi_hi - xi_lo);
        double ray = 0.0;
        for (int qn = 0; qn < m; ++qn) {
          const double xi = mid + half * gauss.nodes[qn];
          double pr2 = 0.0;
          for (int a = 0; a < n; ++a) {
            const double pa = yc[a] + xi * e[a];
            pr2 += pa * pa;
          }
          ray += gauss.weights[qn] *
                 rho.c_norm * bump(std::sqrt(pr2) / lambda) *
                 std::pow(xi, n - 1);
        }
        ray *= half * rho_scale;
        const double scale = fy * ray / std::pow(r, n - 1) * vol;
        for (int a = 0; a < n; ++a) acc[a] += scale * e[a];
      }
      for (int a = 0; a < n; ++a) sol.v.at(i, a) = acc[a];
    }
  });
  return sol;
}

DivResidual divergence_residual(const BogovskiiSolution& sol) {
  const UniformGrid& g = sol.f.grid;
  const UniformGridField div = divergence(sol.v, Stencil::ZeroExtension);
  DivResidual res;
  double num = 0.0, den = 0.0;
  const std::size_t np = g.num_points();
  for (std::size_t i = 0; i < np; ++i) {
    const auto idx = g.unflat(i);
    bool interior = true;
    for (int a = 0; a < g.n; ++a)
      if (idx[a] == 0 || idx[a] == g.dims[a] - 1) interior = false;
    if (!interior) continue;
    const double d = div.at(i) - sol.f.at(i);
    num += d * d;
    den += sol.f.at(i) * sol.f.at(i);
    res.linf = std::max(res.linf, std::abs(d));
  }
  res.l2_rel = den > 0 ? std::sqrt(num / den) : std::sqrt(num);
  return res;
}

namespace {

UniformGridField weight_samples(const UniformGrid& g, const Weight* omega) {
  UniformGridField w(g, 0);
  const std::size_t np = g.num_points();
  for (std::size_t i = 0; i < np; ++i)
    w.at(i) = omega ? omega->evaluate(g.point(i)) : 1.0;
  return w;
}

// |d+ f| + |d- f| + |f| / l(Q) pointwise
UniformGridField r2_right_side(const BogovskiiSolution& sol, double h, int k) {
  const UniformGridField dp = diff_quot(sol.f, k, h, +1);
  const UniformGridField dm = diff_quot(sol.f, k, h, -1);
  UniformGridField rhs(sol.f.grid, 0);
  const std::size_t np = sol.f.grid.num_points();
  for (std::size_t i = 0; i < np; ++i)
    rhs.at(i) = std::abs(dp.at(i)) + std::abs(dm.at(i)) +
                std::abs(sol.f.at(i)) / sol.Q.side;
  return rhs;
}

}  // namespace

double gradient_bound_ratio(const BogovskiiSolution& sol, double p,
                            const Weight* omega) {
  const UniformGridField w = weight_samples(sol.f.grid, omega);
  const double den = norm_p(sol.f, p, &w);
  if (den == 0.0) throw std::invalid_argument("gradient_bound_ratio: zero input");
  const UniformGridField grad = gradient(sol.v, Stencil::ZeroExtension);
  return norm_p(grad, p, &w) / den;
}

double diffquot_bound_ratio(const BogovskiiSolution& sol, double p,
                            const Weight* omega, double h, int k) {
  const UniformGridField w = weight_samples(sol.f.grid, omega);
  const UniformGridField rhs = r2_right_side(sol, h, k);
  const double den = norm_p(rhs, p, &w);
  if (den == 0.0) throw std::invalid_argument("diffquot_bound_ratio: zero input");
  const UniformGridField grad = gradient(sol.v, Stencil::ZeroExtension);
  const UniformGridField dgrad = diff_quot(grad, k, h, +1);
  return norm_p(dgrad, p, &w) / den;
}

std::pair<double, double> orlicz_bound_ratios(const BogovskiiSolution& sol,
                                              const NFunctionPD& nf, double h,
                                              int k) {
  const double den1 = modular(nf, sol.f).value;
  if (den1 == 0.0) throw std::invalid_argument("orlicz_bound_ratios: zero input");
  const UniformGridField grad = gradient(sol.v, Stencil::ZeroExtension);
  const double ratio_ii = modular(nf, grad).value / den1;

  const UniformGridField rhs = r2_right_side(sol, h, k);
  const double den2 = modular(nf, rhs).value;
  const UniformGridField dgrad = diff_quot(grad, k, h, +1);
  const double ratio_iii = modular(nf, dgrad).value / den2;
  return {ratio_ii, ratio_iii};
}

double second_difference_bound_check(const Mollifier& rho, int samples,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-1.5 * rho.radius, 1.5 * rho.radius);
  const int n = rho.n;
  std::vector<double> a(n), b(n), w(n), aw(n), bw(n);
  double max_ratio = 0.0;
  for (int s = 0; s < samples; ++s) {
    double wn = 0.0, abn = 0.0;
    for (int i = 0; i < n; ++i) {
      a[i] = box(rng);
      b[i] = box(rng);
      w[i] = box(rng);
      aw[i] = a[i] + w[i];
      bw[i] = b[i] + w[i];
      wn += w[i] * w[i];
      abn += (a[i] - b[i]) * (a[i] - b[i]);
    }
    if (wn == 0.0 || abn == 0.0) continue;
    const double lhs = std::abs(rho(a) - rho(aw) - rho(b) + rho(bw));
    const double bound = rho.hess_sup * std::sqrt(wn) * std::sqrt(abn);
    if (bound > 0) max_ratio = std::max(max_ratio, lhs / bound);
  }
  return max_ratio;
}

}  // namespace bogotool
