#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace bogotool {

// Number of worker threads. Reads BOGOTOOL_THREADS once; falls back to
// std::thread::hardware_concurrency().
std::size_t thread_count();

// Splits [begin, end) into contiguous chunks and runs them on worker
// threads. body(i0, i1) must not touch state owned by other chunks.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& body);

// Adaptive Simpson quadrature of f on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol);

struct GaussRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre rule with m points, computed by Newton iteration.
GaussRule gauss_legendre(int m);

}  // namespace bogotool
