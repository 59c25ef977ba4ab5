#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bogotool/bogovskii.hpp"
#include "bogotool/grid.hpp"
#include "bogotool/tensor.hpp"

namespace bogotool {

// Planar shear-thinning Stokes problem on the square covered by f's grid,
// minimized over stream functions vanishing on a margin of boundary cells.
struct PStokesProblem {
  StressModel model;
  UniformGridField f;  // rank-1 forcing
  int margin = 2;

  PStokesProblem(StressModel model, UniformGridField f);
};

struct PStokesSolution {
  UniformGridField psi;  // rank 0, zero on the margin
  UniformGridField u;    // curl of psi, exactly solenoidal
  std::vector<double> energy_history;
  double grad_norm = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Presets: "zero", "vortex" (smooth counter-rotating forcing), "shear".
UniformGridField make_forcing(const UniformGrid& grid, const std::string& preset);

// J(psi) = h^2 sum phi(|D curl psi|) - h^2 sum f . curl psi, centered
// zero-extension stencils throughout.
double discrete_energy(const PStokesProblem& prob, const UniformGridField& psi);

// Exact gradient of discrete_energy with respect to the psi values; zero on
// the margin (fixed dofs). Refuses delta = 0 with p < 2.
UniformGridField energy_gradient(const PStokesProblem& prob,
                                 const UniformGridField& psi);

// Limited-memory quasi-Newton descent with Armijo backtracking from psi = 0
// until |grad|_2 <= tol (1 + |f|_2).
PStokesSolution solve(const PStokesProblem& prob, double tol, int max_iters);

// Conjugate-gradient solve of the linear system grad J = 0; requires p = 2.
PStokesSolution solve_linear(const PStokesProblem& prob, double tol = 1e-13,
                             int max_iters = 0);

// Relative discrete H^1 distance (values plus centered gradients).
double h1_rel_error(const UniformGridField& u, const UniformGridField& ref);

// Max over random solenoidal test fields w = curl eta of
// |sum S(Du).Dw - sum f.w| h^2 / |grad w|_{p'}.
double weak_residual(const PStokesSolution& sol, const PStokesProblem& prob,
                     int num_tests, std::uint64_t seed);

// gamma0_hat * sum phi(|grad u|) h^2 / sum phi*(|f|) h^2.
double apriori_ratio(const PStokesSolution& sol, const PStokesProblem& prob);

struct CutoffSpec {
  Cube Q;
  UniformGridField xi;  // samples on the problem grid
  double norm1_inf = 0.0;  // measured sup |grad xi|
  double norm2_inf = 0.0;  // measured sup |grad^2 xi|
};

// Tensorized mollified step: 1 on (1/2)Q, 0 outside (3/4)Q, smooth across
// the band of width side/8. Errors out when the band covers fewer than
// min_band_cells grid cells.
CutoffSpec make_cutoff(const Cube& Q, const UniformGrid& grid,
                       int min_band_cells = 8);

struct TangQuantity {
  double h = 0.0;
  int k = 0;
  double xi_dF2 = 0.0;      // h_g^2 sum xi^2 |d+ F(Du)|^2
  double phi_grad_dqu = 0.0;  // h_g^2 sum phi(xi |grad d+ u|)
};

struct RegularityReport {
  double lhs = 0.0;  // h_g^2 sum_{Q/2} |grad F(Du)|^2
  double rhs = 0.0;  // h_g^2 sum_Q (phi*(|f|) + phi(|grad u|))
  double ratio = 0.0;
  double xi_norm1_inf = 0.0;
  double xi_norm2_inf = 0.0;
  std::vector<TangQuantity> tang;
  double spread_dF2 = 0.0;  // max/min over h of sum_k xi_dF2
  double spread_phi = 0.0;
};

// h values must be grid multiples below side(Q)/4.
RegularityReport interior_regularity_check(const PStokesSolution& sol,
                                           const PStokesProblem& prob,
                                           const CutoffSpec& cutoff,
                                           std::span<const double> h_values);

}  // namespace bogotool
