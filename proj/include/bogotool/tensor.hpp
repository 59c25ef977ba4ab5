#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bogotool/nfunc.hpp"

namespace bogotool {

struct UniformGridField;

// Dense n x n real tensor, row-major.
struct SymTensor {
  int n = 0;
  std::vector<double> a;

  SymTensor() = default;
  explicit SymTensor(int n);

  double& operator()(int i, int j) { return a[i * n + j]; }
  double operator()(int i, int j) const { return a[i * n + j]; }
};

SymTensor sym_part(const SymTensor& P);
double frobenius(const SymTensor& P);
double dot(const SymTensor& P, const SymTensor& Q);
SymTensor operator-(const SymTensor& P, const SymTensor& Q);

// Power-law stress S(P) = mu (delta + |P^sym|)^(p-2) P^sym and the
// associated field F(P) = (delta + |P^sym|)^((p-2)/2) P^sym.
struct StressModel {
  NFunctionPD nf;
  double mu = 1.0;
  std::optional<double> gamma0_est;  // sampled coercivity ratio
  std::optional<double> gamma1_est;  // sampled growth ratio

  explicit StressModel(NFunctionPD nf, double mu = 1.0);
};

SymTensor stress(const StressModel& m, const SymTensor& P);
SymTensor f_assoc(const StressModel& m, const SymTensor& P);

// Fills gamma0_est = min and gamma1_est = max over random tensor pairs of
// the ratio ((S(P)-S(Q)).(P-Q)) / (phi''(|P|+|P-Q|)|P-Q|^2).
void calibrate(StressModel& m, int samples, std::uint64_t seed);

struct HammerQuantities {
  double monotone = 0.0;      // (S(P)-S(Q)) . (P-Q)
  double f_diff2 = 0.0;       // |F(P)-F(Q)|^2
  double shifted_mod = 0.0;   // phi_{|P^sym|}(|P^sym - Q^sym|)
  double second_mod = 0.0;    // phi''(|P^sym|+|P^sym-Q^sym|) |P^sym-Q^sym|^2
  double stress_diff = 0.0;   // |S(P)-S(Q)|
  double shifted_prime = 0.0; // phi'_{|P^sym|}(|P^sym - Q^sym|)
};

HammerQuantities hammer_quantities(const StressModel& m, const SymTensor& P,
                                   const SymTensor& Q);

struct DiffquotEquivReport {
  // pointwise min/max ratios between (q1, q2), (q1, q3), (q2, q3) where
  // q1 = d S(Du) . d Du, q2 = |d F(Du)|^2,
  // q3 = (delta+|Du|+|Delta Du|)^(p-2) |d Du|^2
  double min12 = 0.0, max12 = 0.0;
  double min13 = 0.0, max13 = 0.0;
  double min23 = 0.0, max23 = 0.0;
  std::size_t points = 0;
};

DiffquotEquivReport diffquot_equiv(const StressModel& m,
                                   const UniformGridField& Du_field, double h,
                                   int k, int sign);

}  // namespace bogotool
