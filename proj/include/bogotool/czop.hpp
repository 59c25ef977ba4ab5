#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bogotool/grid.hpp"
#include "bogotool/nfunc.hpp"
#include "bogotool/whitney.hpp"

namespace bogotool {

struct KernelDescriptor {
  std::function<double(std::span<const double>, std::span<const double>)> evaluate;
  std::string label;
  int n = 0;
  std::optional<double> kappa1_est;
  std::optional<double> kappa2_est;
};

// Builtin kernels: "riesz-1" .. "riesz-n" (Riesz transforms), "log-grad"
// (first gradient component of the log potential, n = 2), "nocancel"
// (1/|x-y|^n, fails the sphere mean-zero condition),
// "bogovskii-jij-surrogate" (z_1 z_2^2 / |z|^(n+3), a homogeneous
// degree -n kernel of the shape appearing in divergence-equation kernels).
KernelDescriptor make_kernel(const std::string& name, int n);

struct Weight {
  std::function<double(std::span<const double>)> evaluate;
  std::string label;
};

// "const:c" or "power:alpha" (|x|^alpha).
Weight make_weight(const std::string& spec);

// Estimated kappa_1: max over random admissible triples (|x-z| <= |x-y|/2)
// of the three standard-kernel ratios.
double sk_check(const KernelDescriptor& K, const DomainOracle& domain,
                int num_triples, std::uint64_t seed);

struct CzCheckReport {
  double homogeneity_dev = 0.0;
  double mean_zero_dev = 0.0;
  double kappa2 = 0.0;
};

// Sphere quadrature checks of homogeneity degree -n, sphere mean zero and
// sphere L2 size for N(x, z) = K(x, x - z). n = 2 uses the trapezoid rule
// on the circle, n = 3 a product rule.
CzCheckReport cz_check(const KernelDescriptor& K, const DomainOracle& domain,
                       int sphere_quadrature_order, int num_centers,
                       std::uint64_t seed);

// T_eps f by midpoint quadrature over cells with center distance > eps.
UniformGridField truncated_apply(const KernelDescriptor& K, double eps,
                                 const UniformGridField& f);

// One pass over all pairs, every truncation level at once. eps must be
// strictly decreasing. Returns one field per eps.
std::vector<UniformGridField> truncated_apply_multi(
    const KernelDescriptor& K, std::span<const double> eps,
    const UniformGridField& f);

struct PvReport {
  UniformGridField field;      // T at the smallest eps
  UniformGridField max_trunc;  // sup_j |T_eps_j f| pointwise
  std::vector<double> l2_diffs;
};

PvReport pv_apply(const KernelDescriptor& K, const UniformGridField& f,
                  std::span<const double> eps_sequence);

// Non-centered maximal function over grid-centered balls with dyadic radii;
// a lower bound of the true maximal function.
UniformGridField maximal_op(const UniformGridField& f);

// Sampled A_p characteristic over grid-centered balls with dyadic radii;
// a lower bound of [w]_{A_p}.
double ap_constant(const Weight& omega, double p, const UniformGrid& grid);

struct BoundReport {
  double sup_ratio = 0.0;
  double min_ratio = 0.0;
  // max over f of (max over eps ratio) / (min over eps ratio)
  double eps_variation = 0.0;
  std::vector<double> per_function_sup;
};

BoundReport weighted_bound_ratio(const KernelDescriptor& K, double p,
                                 const Weight& omega,
                                 std::span<const UniformGridField> test_family,
                                 std::span<const double> eps);

// Modular ratios rho_psi(T_eps f) / rho_psi((kappa1 + kappa2) f).
BoundReport orlicz_bound_ratio(const KernelDescriptor& K, const NFunctionPD& nf,
                               std::span<const UniformGridField> test_family,
                               std::span<const double> eps, double kappa_sum);

// Deterministic bump/oscillatory fields on the grid.
std::vector<UniformGridField> make_test_family(const UniformGrid& grid,
                                               int count, std::uint64_t seed);

}  // namespace bogotool
