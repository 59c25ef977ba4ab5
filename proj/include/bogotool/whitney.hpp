#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace bogotool {

// Open dyadic cube prod_i (j_i 2^k, (j_i+1) 2^k). Integer level/index so
// that containment and disjointness tests are exact.
struct DyadicCube {
  int n = 0;
  int level = 0;
  std::array<std::int64_t, 3> index{};

  double side() const { return std::ldexp(1.0, level); }
  double lo(int axis) const { return index[axis] * side(); }
  double hi(int axis) const { return (index[axis] + 1) * side(); }
  double diam() const;
  bool contains_point(std::span<const double> x) const;  // closure
};

bool dyadic_disjoint(const DyadicCube& a, const DyadicCube& b);

struct DomainOracle {
  int n = 0;
  std::function<bool(std::span<const double>)> membership;
  std::function<double(std::span<const double>)> boundary_distance;
  std::vector<double> bbox_lo, bbox_hi;
  // Exact min over the cube closure of boundary_distance for builtin
  // shapes; empty for user oracles (dense sampling fallback is used and
  // the verification report flags it as conservative).
  std::function<double(const DyadicCube&)> cube_boundary_distance;
};

DomainOracle make_ball(int n, std::vector<double> center, double radius);
DomainOracle make_box(int n, std::vector<double> lo, std::vector<double> hi);
DomainOracle make_annulus(int n, std::vector<double> center, double r_inner,
                          double r_outer);

// dist(Q, boundary) for any oracle: exact when the oracle provides
// cube_boundary_distance, otherwise a dense-sample lower-accuracy value.
double cube_distance(const DomainOracle& dom, const DyadicCube& q,
                     bool* exact = nullptr);

// Top-down subdivision: accept a cube once dist(Q, dOmega) > 4 diam Q and
// its center lies in Omega, subdivide otherwise, stop below min_level.
// Output ordering: level descending, then index lexicographic.
std::vector<DyadicCube> whitney_decompose(const DomainOracle& dom, int min_level);

struct WhitneyReport {
  bool disjoint = false;
  bool distance_ok = false;
  bool distance_exact = false;
  double coverage = 0.0;       // fraction of samples covered (or near-boundary)
  std::size_t num_cubes = 0;
  std::size_t samples = 0;
};

WhitneyReport verify_decomposition(std::span<const DyadicCube> cubes,
                                   const DomainOracle& dom, std::size_t samples,
                                   std::uint64_t seed, int min_level);

// CSV columns: level, j1..jn.
void write_cubes_csv(std::span<const DyadicCube> cubes, const std::string& path);

}  // namespace bogotool
