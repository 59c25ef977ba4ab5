#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace bogotool {

struct NFunctionPD;

// Uniform cube grid: points x = origin + idx * spacing, idx in [0, dims).
// Points are cell centers of a box of side dims*spacing when used for
// quadrature; sums of f(x) * spacing^n are midpoint-rule integrals.
struct UniformGrid {
  int n = 0;
  std::vector<double> origin;
  double spacing = 0.0;
  std::vector<int> dims;

  UniformGrid() = default;
  UniformGrid(int n, std::vector<double> origin, double spacing,
              std::vector<int> dims);

  std::size_t num_points() const;
  std::size_t flat(const std::vector<int>& idx) const;
  std::vector<int> unflat(std::size_t f) const;
  std::vector<double> point(const std::vector<int>& idx) const;
  std::vector<double> point(std::size_t f) const;
  double cell_volume() const;
  bool contains(const std::vector<int>& idx) const;
};

// Square/cube grid of N points per axis with spacing side/N, covering the
// cell centers of the cube [lo, lo+side]^n.
UniformGrid make_cell_grid(int n, double lo, double side, int N);

enum class Stencil {
  OneSided,       // centered interior, second-order one-sided at the boundary
  ZeroExtension,  // centered everywhere, field treated as 0 outside the grid
};

// Scalar (rank 0), vector (rank 1) or tensor (rank 2) samples on a grid.
// Values are stored point-major with n^rank components per point; fields
// are extended by zero outside the grid.
struct UniformGridField {
  UniformGrid grid;
  int rank = 0;
  std::vector<double> values;

  UniformGridField() = default;
  UniformGridField(UniformGrid g, int rank);

  int comps() const;
  double& at(std::size_t pt, int c = 0);
  double at(std::size_t pt, int c = 0) const;
  // Zero outside the grid.
  double value_ext(const std::vector<int>& idx, int c = 0) const;
  // Euclidean/Frobenius norm of the components at a point.
  double point_norm(std::size_t pt) const;
};

UniformGridField make_scalar_field(const UniformGrid& g,
                                   const std::function<double(const std::vector<double>&)>& f);
UniformGridField make_vector_field(const UniformGrid& g,
                                   const std::function<std::vector<double>(const std::vector<double>&)>& f);

// (F(x +/- h e_k) - F(x)) / h with zero extension; h must be an integer
// multiple of the grid spacing (no interpolation).
UniformGridField diff_quot(const UniformGridField& f, int k, double h, int sign);
// h * diff_quot
UniformGridField delta_shift(const UniformGridField& f, int k, double h, int sign);

// max |grad(d f) - d(grad f)| with the same discrete stencil on both sides.
double commute_check(const UniformGridField& f, int k, double h, int sign);

// max |d(FG) - F(.+-h e_k) dG - dF G| over the grid, scalar F, G.
double product_rule_check(const UniformGridField& F, const UniformGridField& G,
                          int k, double h, int sign);

// |sum F d+G - sum d-F G| * h_g^n; F, G must vanish on a margin >= h.
double partial_integration_check(const UniformGridField& F,
                                 const UniformGridField& G, double h, int k);

struct DqModularCheck {
  double lhs = 0.0;  // modular of the difference quotient over the h0-interior
  double rhs = 0.0;  // modular of the sampled analytic partial derivative
  bool pass = false;
};

// Checks sum_{E_{h0}} psi(|d F|) <= sum_E psi(|dF_analytic|) + tol.
// F and its analytic k-th partial are both sampled on the same grid.
DqModularCheck modular_dq_inequality(const NFunctionPD& nf,
                                     const UniformGridField& F,
                                     const UniformGridField& dF_analytic,
                                     int k, double h, double h0, int sign,
                                     double rel_tol = 1e-3);

// Single partial derivative of every component.
UniformGridField derivative(const UniformGridField& f, int k, Stencil s);
// Du = (grad u + grad u^T)/2 for a vector field u.
UniformGridField sym_gradient(const UniformGridField& u,
                              Stencil s = Stencil::OneSided);
UniformGridField gradient(const UniformGridField& u,
                          Stencil s = Stencil::OneSided);
UniformGridField divergence(const UniformGridField& u,
                            Stencil s = Stencil::OneSided);
// u = (d2 psi, -d1 psi); exactly solenoidal for matching stencils.
UniformGridField curl2d(const UniformGridField& psi,
                        Stencil s = Stencil::OneSided);

// lp norm (sum |f|^p w h^n)^(1/p) with optional pointwise weight samples.
double norm_p(const UniformGridField& f, double p,
              const UniformGridField* weight = nullptr);

// CSV: one row per grid point, coordinates then components.
void write_csv(const UniformGridField& f, const std::string& path);
// Binary: header n, dims, spacing, rank; then row-major 64-bit floats.
void write_binary(const UniformGridField& f, const std::string& path);
UniformGridField read_binary(const std::string& path);

}  // namespace bogotool
