#include "bogotool/util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace bogotool {

std::size_t thread_count() {
  static const std::size_t n = [] {
    if (const char* env = std::getenv("BOGOTOOL_THREADS")) {
      long v = std::strtol(env, nullptr, 10);
      if (v > 0) return static_cast<std::size_t>(v);
    }
    std::size_t hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : std::size_t{1};
  }();
  return n;
}

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  if (begin >= end) return;
  const std::size_t n = end - begin;
  const std::size_t nt = std::min(thread_count(), n);
  if (nt <= 1) {
    body(begin, end);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(nt);
  const std::size_t chunk = (n + nt - 1) / nt;
  for (std::size_t t = 0; t < nt; ++t) {
    const std::size_t i0 = begin + t * chunk;
    const std::size_t i1 = std::min(end, i0 + chunk);
    if (i0 >= i1) break;
    workers.emplace_back([&body, i0, i1] { body(i0, i1); });
  }
  for (auto& w : workers) w.join();
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adsimp(const std::function<double(double)>& f, double a, double fa,
              double b, double fb, double m, double fm, double whole,
              double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adsimp(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1) +
         adsimp(f, m, fm, b, fb, rm, frm, right, tol / 2, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson(f, a, fa, b, fb, m, fm);
  return adsimp(f, a, fa, b, fb, m, fm, whole, tol, 50);
}

GaussRule gauss_legendre(int m) {
  if (m < 1) throw std::invalid_argument("gauss_legendre: m must be >= 1");
  GaussRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev initial guess, then Newton on P_m.
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[m - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[m - 1 - i] = w;
  }
  return rule;
}

}  // namespace bogotool
