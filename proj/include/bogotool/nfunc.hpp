#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bogotool {

struct UniformGridField;

// The N-function phi(t) = int_0^t (delta + s)^(p-2) s ds, evaluated in
// closed form. Strictly convex and increasing on [0, inf) for p > 1.
struct NFunctionPD {
  double p;
  double delta;

  NFunctionPD(double p, double delta);
};

double phi_eval(const NFunctionPD& nf, double t);
// phi'(t) = (delta + t)^(p-2) t
double phi_prime(const NFunctionPD& nf, double t);
// phi''(t) = (p-2)(delta+t)^(p-3) t + (delta+t)^(p-2). Throws for
// delta = 0, p < 2, t = 0 where the pointwise value blows up; use
// phi_second_times(nf, t) for the product phi''(t) t, extended by zero.
double phi_second(const NFunctionPD& nf, double t);
// phi''(t) * t, continuously extended by 0 at t = 0.
double phi_second_times(const NFunctionPD& nf, double t);

// Shift of the base function by a >= 0; for this family the shifted
// function collapses to NFunctionPD{p, delta + a}.
struct ShiftedNFunction {
  NFunctionPD base;
  double a;

  ShiftedNFunction(NFunctionPD base, double a);
};

double shifted_eval(const ShiftedNFunction& sf, double t);
// phi_a'(t) = phi'(a+t) t / (a+t)
double shifted_prime(const ShiftedNFunction& sf, double t);

// Conjugate phi*(s) = sup_t (st - phi(t)), via bisection on phi'(t) = s.
double conjugate_eval(const NFunctionPD& nf, double s);
// The maximizing t of st - phi(t), i.e. the inverse of phi' at s.
double phi_prime_inverse(const NFunctionPD& nf, double s);

// Sampled sup of psi(2t)/psi(t) over a log grid on [1e-6, 1e6]; a lower
// bound for the Delta_2 constant of phi (or of its conjugate).
double delta2_estimate(const NFunctionPD& nf, bool conjugate = false);

struct ModularReport {
  double value = 0.0;
  double grid_spacing = 0.0;
  std::string function_id;
};

// Midpoint-rule modular sum_x psi(|field(x)|) h^n.
ModularReport modular(const NFunctionPD& nf, const UniformGridField& field,
                      bool conjugate = false);

// Smallest lambda with modular(field / lambda) <= 1, by bisection to
// relative tolerance 1e-8. Returns 0 for the zero field.
double luxemburg_norm(const NFunctionPD& nf, const UniformGridField& field);

struct YoungReport {
  double c_eps1 = 0.0;  // for ts <= eps phi(t) + c phi*(s)
  double c_eps2 = 0.0;  // for t phi'(s) + phi'(t) s <= eps phi(t) + c phi(s)
  bool pass1 = false;
  bool pass2 = false;
  int violations1 = 0;
  int violations2 = 0;
};

// Computes c_eps for both inequalities by a dense log-grid search over
// [1e-3, 1e3]^2, then validates the inequalities on the given sample
// (relative slack 1e-3 to absorb the grid resolution of the sup).
YoungReport young_check(const NFunctionPD& nf, double eps,
                        std::span<const std::pair<double, double>> sample);

}  // namespace bogotool
