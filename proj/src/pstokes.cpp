#include "bogotool/pstokes.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "bogotool/nfunc.hpp"
#include "bogotool/util.hpp"

namespace bogotool {

namespace {

bool on_margin(const UniformGrid& g, std::size_t i, int margin) {
  const auto idx = g.unflat(i);
  for (int a = 0; a < g.n; ++a)
    if (idx[a] < margin || idx[a] >= g.dims[a] - margin) return true;
  return false;
}

void mask_margin(UniformGridField& f, int margin) {
  const std::size_t np = f.grid.num_points();
  for (std::size_t i = 0; i < np; ++i)
    if (on_margin(f.grid, i, margin))
      for (int c = 0; c < f.comps(); ++c) f.at(i, c) = 0.0;
}

void check_smooth(const PStokesProblem& prob) {
  const auto& nf = prob.model.nf;
  if (nf.delta == 0.0 && nf.p < 2.0)
    throw std::invalid_argument(
        "pstokes: delta = 0 with p < 2 makes the energy nonsmooth at Du = 0");
}

// S(Du(psi)) with mu folded in; rank-2 field.
UniformGridField stress_field(const PStokesProblem& prob,
                              const UniformGridField& Du) {
  const int n = Du.grid.n;
  const auto& nf = prob.model.nf;
  UniformGridField S(Du.grid, 2);
  const std::size_t np = Du.grid.num_points();
  for (std::size_t i = 0; i < np; ++i) {
    const double mag = Du.point_norm(i);
    const double scale =
        prob.model.mu * std::pow(nf.delta + mag, nf.p - 2.0);
    for (int c = 0; c < n * n; ++c) S.at(i, c) = scale * Du.at(i, c);
  }
  return S;
}

double vec_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double vec_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

PStokesProblem::PStokesProblem(StressModel model_, UniformGridField f_)
    : model(std::move(model_)), f(std::move(f_)) {
  if (f.grid.n != 2 || f.rank != 1)
    throw std::invalid_argument("pstokes: forcing must be a planar vector field");
  if (model.nf.p > 2.0)
    throw std::invalid_argument("pstokes: p must lie in (1, 2]");
}

UniformGridField make_forcing(const UniformGrid& grid,
                              const std::string& preset) {
  if (grid.n != 2) throw std::invalid_argument("make_forcing: planar grids only");
  double lo[2], side = grid.spacing * grid.dims[0];
  for (int a = 0; a < 2; ++a) lo[a] = grid.origin[a] - 0.5 * grid.spacing;
  auto unit = [&](const std::vector<double>& x, int a) {
    return (x[a] - lo[a]) / side;
  };
  if (preset == "zero")
    return make_vector_field(grid, [](const std::vector<double>&) {
      return std::vector<double>{0.0, 0.0};
    });
  if (preset == "vortex")
    return make_vector_field(grid, [&](const std::vector<double>& x) {
      const double s = std::sin(M_PI * unit(x, 0)), t = std::sin(M_PI * unit(x, 1));
      return std::vector<double>{10.0 * s * s * std::sin(2.0 * M_PI * unit(x, 1)),
                                 -10.0 * t * t * std::sin(2.0 * M_PI * unit(x, 0))};
    });
  if (preset == "shear")
    return make_vector_field(grid, [&](const std::vector<double>& x) {
      return std::vector<double>{std::sin(2.0 * M_PI * unit(x, 1)), 0.0};
    });
  throw std::invalid_argument("make_forcing: unknown preset " + preset);
}

double discrete_energy(const PStokesProblem& prob, const UniformGridField& psi) {
  const UniformGridField u = curl2d(psi, Stencil::ZeroExtension);
  const UniformGridField Du = sym_gradient(u, Stencil::ZeroExtension);
  const auto& nf = prob.model.nf;
  const double vol = psi.grid.cell_volume();
  const std::size_t np = psi.grid.num_points();
  double J = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    J += prob.model.mu * phi_eval(nf, Du.point_norm(i));
    for (int a = 0; a < 2; ++a) J -= prob.f.at(i, a) * u.at(i, a);
  }
  return J * vol;
}

UniformGridField energy_gradient(const PStokesProblem& prob,
                                 const UniformGridField& psi) {
  check_smooth(prob);
  const UniformGrid& g = psi.grid;
  const double vol = g.cell_volume();
  const UniformGridField u = curl2d(psi, Stencil::ZeroExtension);
  const UniformGridField Du = sym_gradient(u, Stencil::ZeroExtension);
  const UniformGridField S = stress_field(prob, Du);

  // dJ/du_j = -h^2 (div S)_j - h^2 f_j; centered zero-extension stencils are
  // skew-adjoint, so this is exact for the discrete energy.
  UniformGridField gu(g, 1);
  const std::size_t np = g.num_points();
  for (int k = 0; k < 2; ++k) {
    const UniformGridField dS = derivative(S, k, Stencil::ZeroExtension);
    for (std::size_t i = 0; i < np; ++i)
      for (int j = 0; j < 2; ++j) gu.at(i, j) -= vol * dS.at(i, j * 2 + k);
  }
  for (std::size_t i = 0; i < np; ++i)
    for (int j = 0; j < 2; ++j) gu.at(i, j) -= vol * prob.f.at(i, j);

  // adjoint of psi -> (d2 psi, -d1 psi)
  UniformGridField g1(g, 0), g2(g, 0);
  for (std::size_t i = 0; i < np; ++i) {
    g1.at(i) = gu.at(i, 0);
    g2.at(i) = gu.at(i, 1);
  }
  const UniformGridField d2g1 = derivative(g1, 1, Stencil::ZeroExtension);
  const UniformGridField d1g2 = derivative(g2, 0, Stencil::ZeroExtension);
  UniformGridField grad(g, 0);
  for (std::size_t i = 0; i < np; ++i)
    grad.at(i) = -d2g1.at(i) + d1g2.at(i);
  mask_margin(grad, prob.margin);
  return grad;
}

PStokesSolution solve(const PStokesProblem& prob, double tol, int max_iters) {
  check_smooth(prob);
  const UniformGrid& g = prob.f.grid;
  if (tol <= 0) throw std::invalid_argument("pstokes solve: tol must be positive");
  UniformGridField psi(g, 0);
  double fnorm = 0.0;
  for (double v : prob.f.values) fnorm += v * v;
  const double target = tol * (1.0 + std::sqrt(fnorm));

  PStokesSolution sol;
  double J = discrete_energy(prob, psi);
  sol.energy_history.push_back(J);
  UniformGridField grad = energy_gradient(prob, psi);

  // Polak-Ribiere nonlinear conjugate gradients with a secant line search;
  // on the p = 2 quadratic this is exactly linear CG, which copes with the
  // biharmonic-type conditioning of the stream-function system.
  std::vector<double> d(grad.values.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = -grad.values[i];
  double prev_alpha = 0.0;
  UniformGridField trial = psi;

  int it = 0;
  for (; it < max_iters; ++it) {
    const double gn = vec_norm(grad.values);
    sol.grad_norm = gn;
    if (gn <= target) {
      sol.converged = true;
      break;
    }
    double slope = vec_dot(grad.values, d);
    if (slope >= 0) {
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = -grad.values[i];
      slope = -gn * gn;
    }

    auto q = [&](double a) {  // directional derivative at psi + a d
      for (std::size_t i = 0; i < d.size(); ++i)
        trial.values[i] = psi.values[i] + a * d[i];
      return vec_dot(energy_gradient(prob, trial).values, d);
    };
    double a0 = 0.0, q0 = slope;
    double a1 = prev_alpha > 0 ? prev_alpha : 1.0 / std::max(gn, 1e-30);
    double q1 = q(a1);
    for (int ls = 0; ls < 25; ++ls) {
      if (q1 == q0) break;
      double a2 = a1 - q1 * (a1 - a0) / (q1 - q0);
      if (!(a2 > 0)) a2 = 0.5 * a1;
      a2 = std::min(a2, 100.0 * a1);
      a0 = a1; q0 = q1;
      a1 = a2; q1 = q(a1);
      if (std::abs(q1) <= 1e-6 * std::abs(slope)) break;
    }
    double step = a1;
    // the secant result satisfies the curvature condition; near the optimum
    // energy differences drop below rounding noise, so the slope decrease is
    // the reliable acceptance signal there
    const bool curvature_ok = std::abs(q1) <= 0.9 * std::abs(slope);

    // Armijo safeguard: insist on actual energy decrease
    double Jt = 0.0;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t i = 0; i < d.size(); ++i)
        trial.values[i] = psi.values[i] + step * d[i];
      Jt = discrete_energy(prob, trial);
      if (Jt <= J + 1e-4 * step * slope ||
          (curvature_ok && step == a1 &&
           Jt <= J + 1e-12 * std::abs(J))) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // stalled at rounding level

    const std::vector<double> g_old = grad.values;
    std::swap(psi.values, trial.values);
    J = Jt;
    sol.energy_history.push_back(J);
    grad = energy_gradient(prob, psi);
    prev_alpha = step;

    double num = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
      num += grad.values[i] * (grad.values[i] - g_old[i]);
    const double beta = std::max(0.0, num / (gn * gn));
    for (std::size_t i = 0; i < d.size(); ++i)
      d[i] = -grad.values[i] + beta * d[i];
  }
  sol.grad_norm = vec_norm(grad.values);
  if (sol.grad_norm <= target) sol.converged = true;
  sol.iterations = it;
  sol.psi = psi;
  sol.u = curl2d(psi, Stencil::ZeroExtension);
  return sol;
}

PStokesSolution solve_linear(const PStokesProblem& prob, double tol,
                             int max_iters) {
  if (prob.model.nf.p != 2.0)
    throw std::invalid_argument("solve_linear: requires p = 2");
  const UniformGrid& g = prob.f.grid;
  if (max_iters == 0) max_iters = 40 * int(g.num_points());

  UniformGridField zero(g, 0);
  const UniformGridField g0 = energy_gradient(prob, zero);
  auto apply_A = [&](const UniformGridField& x) {
    UniformGridField Ax = energy_gradient(prob, x);
    for (std::size_t i = 0; i < Ax.values.size(); ++i)
      Ax.values[i] -= g0.values[i];
    return Ax;
  };

  UniformGridField x(g, 0);
  std::vector<double> r(g0.values.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = -g0.values[i];
  std::vector<double> p = r;
  double rr = vec_dot(r, r);
  const double r0 = std::sqrt(rr);
  int it = 0;
  PStokesSolution sol;
  UniformGridField pf(g, 0);
  for (; it < max_iters && std::sqrt(rr) > tol * std::max(r0, 1e-300); ++it) {
    pf.values = p;
    const UniformGridField Ap = apply_A(pf);
    const double pAp = vec_dot(p, Ap.values);
    if (pAp <= 0) break;
    const double alpha = rr / pAp;
    for (std::size_t i = 0; i < r.size(); ++i) {
      x.values[i] += alpha * p[i];
      r[i] -= alpha * Ap.values[i];
    }
    const double rr_new = vec_dot(r, r);
    for (std::size_t i = 0; i < r.size(); ++i)
      p[i] = r[i] + (rr_new / rr) * p[i];
    rr = rr_new;
  }
  sol.psi = x;
  sol.u = curl2d(x, Stencil::ZeroExtension);
  sol.grad_norm = std::sqrt(rr);
  sol.converged = std::sqrt(rr) <= tol * std::max(r0, 1e-300);
  sol.iterations = it;
  sol.energy_history = {discrete_energy(prob, zero), discrete_energy(prob, x)};
  return sol;
}

double h1_rel_error(const UniformGridField& u, const UniformGridField& ref) {
  UniformGridField diff = u;
  for (std::size_t i = 0; i < diff.values.size(); ++i)
    diff.values[i] -= ref.values[i];
  const UniformGridField gd = gradient(diff, Stencil::ZeroExtension);
  const UniformGridField gr = gradient(ref, Stencil::ZeroExtension);
  auto h1 = [](const UniformGridField& a, const UniformGridField& b) {
    double s = 0.0;
    for (double v : a.values) s += v * v;
    for (double v : b.values) s += v * v;
    return std::sqrt(s);
  };
  return h1(diff, gd) / std::max(h1(ref, gr), 1e-300);
}

double weak_residual(const PStokesSolution& sol, const PStokesProblem& prob,
                     int num_tests, std::uint64_t seed) {
  const UniformGrid& g = prob.f.grid;
  const double vol = g.cell_volume();
  const double pp = prob.model.nf.p / (prob.model.nf.p - 1.0);
  const UniformGridField Du = sym_gradient(sol.u, Stencil::ZeroExtension);
  const UniformGridField S = stress_field(prob, Du);

  std::mt19937_64 rng(seed);
  double lo[2], side = g.spacing * g.dims[0];
  for (int a = 0; a < 2; ++a) lo[a] = g.origin[a] - 0.5 * g.spacing;
  std::uniform_real_distribution<double> cdist(0.25, 0.75), wdist(0.05, 0.15);

  double worst = 0.0;
  for (int t = 0; t < num_tests; ++t) {
    const double cx = lo[0] + side * cdist(rng), cy = lo[1] + side * cdist(rng);
    const double w = side * wdist(rng);
    UniformGridField eta = make_scalar_field(g, [&](const std::vector<double>& x) {
      const double dx = x[0] - cx, dy = x[1] - cy;
      return std::exp(-(dx * dx + dy * dy) / (2.0 * w * w));
    });
    mask_margin(eta, prob.margin + 1);
    const UniformGridField wf = curl2d(eta, Stencil::ZeroExtension);
    const UniformGridField Dw = sym_gradient(wf, Stencil::ZeroExtension);
    double r = 0.0;
    const std::size_t np = g.num_points();
    for (std::size_t i = 0; i < np; ++i) {
      for (int c = 0; c < 4; ++c) r += S.at(i, c) * Dw.at(i, c);
      for (int a = 0; a < 2; ++a) r -= prob.f.at(i, a) * wf.at(i, a);
    }
    r *= vol;
    const UniformGridField gw = gradient(wf, Stencil::ZeroExtension);
    const double scale = norm_p(gw, pp);
    if (scale > 0) worst = std::max(worst, std::abs(r) / scale);
  }
  return worst;
}

double apriori_ratio(const PStokesSolution& sol, const PStokesProblem& prob) {
  const auto& nf = prob.model.nf;
  const double vol = prob.f.grid.cell_volume();
  const UniformGridField gu = gradient(sol.u, Stencil::ZeroExtension);
  const std::size_t np = prob.f.grid.num_points();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    num += phi_eval(nf, gu.point_norm(i));
    den += conjugate_eval(nf, prob.f.point_norm(i));
  }
  if (den == 0.0) throw std::invalid_argument("apriori_ratio: zero data norm");
  double gamma0 = 1.0;
  if (prob.model.gamma0_est) {
    gamma0 = *prob.model.gamma0_est;
  } else {
    StressModel m = prob.model;
    calibrate(m, 2000, 1);
    gamma0 = *m.gamma0_est;
  }
  return gamma0 * num * vol / (den * vol);
}

namespace {

// smooth step built from the mollifier bump profile, 1 at t <= 0, 0 at t >= 1
struct SmoothStep {
  double total;
  static double bump01(double s) {
    if (s <= -1.0 || s >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s * s));
  }
  SmoothStep() {
    total = adaptive_simpson(bump01, 0.0, 1.0, 1e-13);
  }
  double operator()(double t) const {
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    return adaptive_simpson(bump01, t, 1.0, 1e-13) / total;
  }
};

}  // namespace

CutoffSpec make_cutoff(const Cube& Q, const UniformGrid& grid,
                       int min_band_cells) {
  if (grid.n != int(Q.center.size()))
    throw std::invalid_argument("make_cutoff: dimension mismatch");
  const double band = Q.side / 8.0;
  if (band / grid.spacing < min_band_cells)
    throw std::invalid_argument(
        "make_cutoff: transition band spans fewer cells than required");

  // 1D profile table (the adaptive quadrature per point is too slow to call
  // in the inner loop)
  static thread_local SmoothStep step;
  const int table_n = 4096;
  std::vector<double> table(table_n + 1);
  for (int i = 0; i <= table_n; ++i) table[i] = step(double(i) / table_n);
  auto step_t = [&](double t) {
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    const double u = t * table_n;
    const int i = std::min(int(u), table_n - 1);
    return table[i] + (u - i) * (table[i + 1] - table[i]);
  };
  auto xi_eval = [&](const std::vector<double>& x) {
    double v = 1.0;
    for (int a = 0; a < grid.n; ++a) {
      const double t = (std::abs(x[a] - Q.center[a]) - 0.25 * Q.side) / band;
      v *= step_t(t);
    }
    return v;
  };

  CutoffSpec spec;
  spec.Q = Q;
  spec.xi = make_scalar_field(grid, xi_eval);

  // finite-difference sup norms on a refined grid over (3/4)Q
  const int fine = 512;
  const double fh = 0.75 * Q.side / fine;
  std::vector<double> row((fine + 1) * (fine + 1));
  auto val = [&](int i, int j) {
    std::vector<double> x{Q.center[0] - 0.375 * Q.side + i * fh,
                          Q.center[1] - 0.375 * Q.side + j * fh};
    return xi_eval(x);
  };
  for (int i = 0; i <= fine; ++i)
    for (int j = 0; j <= fine; ++j) row[i * (fine + 1) + j] = val(i, j);
  auto at = [&](int i, int j) {
    if (i < 0 || j < 0 || i > fine || j > fine) return 0.0;
    return row[i * (fine + 1) + j];
  };
  for (int i = 1; i < fine; ++i)
    for (int j = 1; j < fine; ++j) {
      const double gx = (at(i + 1, j) - at(i - 1, j)) / (2 * fh);
      const double gy = (at(i, j + 1) - at(i, j - 1)) / (2 * fh);
      spec.norm1_inf = std::max(spec.norm1_inf, std::hypot(gx, gy));
      const double hxx = (at(i + 1, j) - 2 * at(i, j) + at(i - 1, j)) / (fh * fh);
      const double hyy = (at(i, j + 1) - 2 * at(i, j) + at(i, j - 1)) / (fh * fh);
      const double hxy = (at(i + 1, j + 1) - at(i + 1, j - 1) - at(i - 1, j + 1) +
                          at(i - 1, j - 1)) / (4 * fh * fh);
      spec.norm2_inf = std::max(
          spec.norm2_inf,
          std::sqrt(hxx * hxx + hyy * hyy + 2 * hxy * hxy));
    }
  return spec;
}

RegularityReport interior_regularity_check(const PStokesSolution& sol,
                                           const PStokesProblem& prob,
                                           const CutoffSpec& cutoff,
                                           std::span<const double> h_values) {
  const UniformGrid& g = prob.f.grid;
  const auto& nf = prob.model.nf;
  const double vol = g.cell_volume();
  const Cube& Q = cutoff.Q;
  for (double h : h_values)
    if (h >= 0.25 * Q.side)
      throw std::invalid_argument(
          "interior_regularity_check: h must stay below side(Q)/4");

  const UniformGridField Du = sym_gradient(sol.u, Stencil::ZeroExtension);
  UniformGridField F(g, 2);
  const std::size_t np = g.num_points();
  SymTensor P(2);
  for (std::size_t i = 0; i < np; ++i) {
    for (int c = 0; c < 4; ++c) P.a[c] = Du.at(i, c);
    const SymTensor Fi = f_assoc(prob.model, P);
    for (int c = 0; c < 4; ++c) F.at(i, c) = Fi.a[c];
  }

  auto in_scaled_cube = [&](std::size_t i, double factor) {
    const auto x = g.point(i);
    for (int a = 0; a < 2; ++a)
      if (std::abs(x[a] - Q.center[a]) > 0.5 * factor * Q.side) return false;
    return true;
  };

  RegularityReport rep;
  rep.xi_norm1_inf = cutoff.norm1_inf;
  rep.xi_norm2_inf = cutoff.norm2_inf;

  std::vector<UniformGridField> dF(2);
  for (int k = 0; k < 2; ++k) dF[k] = derivative(F, k, Stencil::ZeroExtension);
  const UniformGridField gu = gradient(sol.u, Stencil::ZeroExtension);
  for (std::size_t i = 0; i < np; ++i) {
    if (in_scaled_cube(i, 0.5)) {
      double s = 0.0;
      for (int k = 0; k < 2; ++k)
        for (int c = 0; c < 4; ++c) s += dF[k].at(i, c) * dF[k].at(i, c);
      rep.lhs += s * vol;
    }
    if (in_scaled_cube(i, 1.0))
      rep.rhs += (conjugate_eval(nf, prob.f.point_norm(i)) +
                  phi_eval(nf, gu.point_norm(i))) * vol;
  }
  rep.ratio = rep.rhs > 0 ? rep.lhs / rep.rhs : 0.0;

  double min_sum1 = 0.0, max_sum1 = 0.0, min_sum2 = 0.0, max_sum2 = 0.0;
  bool first = true;
  for (double h : h_values) {
    double sum1 = 0.0, sum2 = 0.0;
    for (int k = 0; k < 2; ++k) {
      TangQuantity tq;
      tq.h = h;
      tq.k = k;
      const UniformGridField dqF = diff_quot(F, k, h, +1);
      const UniformGridField dqu = diff_quot(sol.u, k, h, +1);
      const UniformGridField gdqu = gradient(dqu, Stencil::ZeroExtension);
      for (std::size_t i = 0; i < np; ++i) {
        const double xi = cutoff.xi.at(i);
        if (xi == 0.0) continue;
        tq.xi_dF2 += xi * xi * dqF.point_norm(i) * dqF.point_norm(i) * vol;
        tq.phi_grad_dqu += phi_eval(nf, xi * gdqu.point_norm(i)) * vol;
      }
      sum1 += tq.xi_dF2;
      sum2 += tq.phi_grad_dqu;
      rep.tang.push_back(tq);
    }
    if (first) {
      min_sum1 = max_sum1 = sum1;
      min_sum2 = max_sum2 = sum2;
      first = false;
    } else {
      min_sum1 = std::min(min_sum1, sum1);
      max_sum1 = std::max(max_sum1, sum1);
      min_sum2 = std::min(min_sum2, sum2);
      max_sum2 = std::max(max_sum2, sum2);
    }
  }
  rep.spread_dF2 = min_sum1 > 0 ? max_sum1 / min_sum1 : 1.0;
  rep.spread_phi = min_sum2 > 0 ? max_sum2 / min_sum2 : 1.0;
  return rep;
}

}  // namespace bogotool
