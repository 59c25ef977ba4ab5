#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bogotool/czop.hpp"
#include "bogotool/grid.hpp"
#include "bogotool/nfunc.hpp"

namespace bogotool {

// Radial smooth bump supported in the ball of radius 1/5 (inside
// (-1/4, 1/4)^n), normalized to unit integral.
struct Mollifier {
  int n = 0;
  double radius = 0.2;
  double c_norm = 0.0;
  double grad_sup = 0.0;  // measured |grad rho|_inf
  double hess_sup = 0.0;  // measured |grad^2 rho|_inf (spectral norm)

  double profile(double r) const;  // unnormalized bump
  double operator()(std::span<const double> x) const;
};

Mollifier make_mollifier(int n);

struct Cube {
  std::vector<double> center;
  double side = 0.0;
};

struct BogovskiiSolution {
  UniformGridField f;  // input, zero mean over Q
  Cube Q;
  UniformGridField v;  // Bf, vanishes outside Q
  int inner_order = 0;
};

// Bf by midpoint quadrature of the integral representation; the inner ray
// integral uses an m-point Gauss rule over the segment where the ray meets
// the support of the rescaled mollifier. The self cell y = x is skipped.
// f must have zero mean over Q unless project_mean is set, in which case
// the average is subtracted first.
BogovskiiSolution bogovskii_apply(const UniformGridField& f, const Cube& Q,
                                  int m, bool project_mean = false);

struct DivResidual {
  double l2_rel = 0.0;
  double linf = 0.0;
};

// |div Bf - f| in relative L2 and max norm over the interior of Q.
DivResidual divergence_residual(const BogovskiiSolution& sol);

// |grad Bf|_{L^p_w(Q)} / |f|_{L^p_w(Q)}.
double gradient_bound_ratio(const BogovskiiSolution& sol, double p,
                            const Weight* omega = nullptr);

// |d_{h,k} grad Bf|_{L^p_w} / | |d+ f| + |d- f| + |f|/l(Q) |_{L^p_w},
// fields extended by zero outside Q.
double diffquot_bound_ratio(const BogovskiiSolution& sol, double p,
                            const Weight* omega, double h, int k = 0);

// Modular versions: rho_phi(grad Bf)/rho_phi(f) and the difference
// quotient analogue.
std::pair<double, double> orlicz_bound_ratios(const BogovskiiSolution& sol,
                                              const NFunctionPD& nf, double h,
                                              int k = 0);

// Max over random triples (a, b, w) of
// |rho(a)-rho(a+w)-rho(b)+rho(b+w)| / (|hess rho|_inf |w| |a-b|).
double second_difference_bound_check(const Mollifier& rho, int samples,
                                     std::uint64_t seed);

}  // namespace bogotool
