#include "bogotool/nfunc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bogotool/grid.hpp"

namespace bogotool {

NFunctionPD::NFunctionPD(double p_, double delta_) : p(p_), delta(delta_) {
  if (!(p > 1)) throw std::invalid_argument("NFunctionPD: p must be > 1");
  if (!(delta >= 0)) throw std::invalid_argument("NFunctionPD: delta must be >= 0");
}

double phi_eval(const NFunctionPD& nf, double t) {
  if (t < 0) throw std::domain_error("phi_eval: t must be >= 0");
  if (t == 0) return 0.0;
  const double p = nf.p, d = nf.delta;
  if (d == 0) return std::pow(t, p) / p;
  // int_0^t (d+s)^(p-2) s ds = [(d+t)^p - d^p]/p - d[(d+t)^(p-1) - d^(p-1)]/(p-1)
  const double dt = d + t;
  return (std::pow(dt, p) - std::pow(d, p)) / p -
         d * (std::pow(dt, p - 1) - std::pow(d, p - 1)) / (p - 1);
}

double phi_prime(const NFunctionPD& nf, double t) {
  if (t < 0) throw std::domain_error("phi_prime: t must be >= 0");
  if (t == 0) return 0.0;
  return std::pow(nf.delta + t, nf.p - 2) * t;
}

double phi_second(const NFunctionPD& nf, double t) {
  if (t < 0) throw std::domain_error("phi_second: t must be >= 0");
  if (t == 0 && nf.delta == 0 && nf.p < 2)
    throw std::domain_error("phi_second: unbounded at t = 0 for delta = 0, p < 2");
  if (t == 0 && nf.delta == 0) return nf.p == 2 ? 1.0 : 0.0;
  const double dt = nf.delta + t;
  return (nf.p - 2) * std::pow(dt, nf.p - 3) * t + std::pow(dt, nf.p - 2);
}

double phi_second_times(const NFunctionPD& nf, double t) {
  if (t == 0) return 0.0;
  return phi_second(nf, t) * t;
}

ShiftedNFunction::ShiftedNFunction(NFunctionPD base_, double a_)
    : base(base_), a(a_) {
  if (!(a >= 0)) throw std::invalid_argument("ShiftedNFunction: a must be >= 0");
}

double shifted_eval(const ShiftedNFunction& sf, double t) {
  // phi_a for phi_{p,delta} collapses to phi_{p,delta+a}
  return phi_eval(NFunctionPD(sf.base.p, sf.base.delta + sf.a), t);
}

double shifted_prime(const ShiftedNFunction& sf, double t) {
  if (t < 0) throw std::domain_error("shifted_prime: t must be >= 0");
  if (t == 0) return 0.0;
  return phi_prime(sf.base, sf.a + t) * t / (sf.a + t);
}

double phi_prime_inverse(const NFunctionPD& nf, double s) {
  if (s < 0) throw std::domain_error("phi_prime_inverse: s must be >= 0");
  if (s == 0) return 0.0;
  double hi = 1.0;
  int grow = 0;
  while (phi_prime(nf, hi) < s) {
    hi *= 2.0;
    if (++grow > 2000)
      throw std::runtime_error("phi_prime_inverse: bracket growth failed");
  }
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (phi_prime(nf, mid) < s)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-10 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

double conjugate_eval(const NFunctionPD& nf, double s) {
  if (s < 0) throw std::domain_error("conjugate_eval: s must be >= 0");
  if (s == 0) return 0.0;
  const double t = phi_prime_inverse(nf, s);
  return std::max(0.0, s * t - phi_eval(nf, t));
}

double delta2_estimate(const NFunctionPD& nf, bool conjugate) {
  double sup = 0.0;
  const int samples = 4000;
  for (int i = 0; i <= samples; ++i) {
    const double t = std::pow(10.0, -6.0 + 12.0 * i / samples);
    const double num = conjugate ? conjugate_eval(nf, 2 * t) : phi_eval(nf, 2 * t);
    const double den = conjugate ? conjugate_eval(nf, t) : phi_eval(nf, t);
    if (den > 0) sup = std::max(sup, num / den);
  }
  return sup;
}

ModularReport modular(const NFunctionPD& nf, const UniformGridField& field,
                      bool conjugate) {
  if (field.values.empty()) throw std::invalid_argument("modular: empty field");
  const double vol = field.grid.cell_volume();
  const std::size_t np = field.grid.num_points();
  double s = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    const double v = field.point_norm(i);
    s += (conjugate ? conjugate_eval(nf, v) : phi_eval(nf, v)) * vol;
  }
  ModularReport out;
  out.value = s;
  out.grid_spacing = field.grid.spacing;
  out.function_id = conjugate ? "phi_conjugate" : "phi";
  return out;
}

double luxemburg_norm(const NFunctionPD& nf, const UniformGridField& field) {
  const double vol = field.grid.cell_volume();
  const std::size_t np = field.grid.num_points();
  double max_abs = 0.0;
  for (std::size_t i = 0; i < np; ++i)
    max_abs = std::max(max_abs, field.point_norm(i));
  if (max_abs == 0.0) return 0.0;
  const auto mod_scaled = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < np; ++i)
      s += phi_eval(nf, field.point_norm(i) / lambda) * vol;
    return s;
  };
  double hi = max_abs, lo = max_abs;
  while (mod_scaled(hi) > 1.0) hi *= 2.0;
  while (mod_scaled(lo) <= 1.0 && lo > 1e-300) lo *= 0.5;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mod_scaled(mid) <= 1.0)
      hi = mid;
    else
      lo = mid;
    if ((hi - lo) <= 1e-8 * hi) break;
  }
  return hi;
}

YoungReport young_check(const NFunctionPD& nf, double eps,
                        std::span<const std::pair<double, double>> sample) {
  if (!(eps > 0)) throw std::invalid_argument("young_check: eps must be > 0");
  YoungReport rep;
  // dense log grid search for c_eps on [1e-3, 1e3]^2
  const int ng = 1000;
  std::vector<double> ts(ng + 1);
  for (int i = 0; i <= ng; ++i) ts[i] = std::pow(10.0, -3.0 + 6.0 * i / ng);
  std::vector<double> phis(ng + 1), primes(ng + 1), conjs(ng + 1);
  for (int i = 0; i <= ng; ++i) {
    phis[i] = phi_eval(nf, ts[i]);
    primes[i] = phi_prime(nf, ts[i]);
    conjs[i] = conjugate_eval(nf, ts[i]);
  }
  for (int i = 0; i <= ng; ++i) {
    const double t = ts[i];
    for (int j = 0; j <= ng; ++j) {
      const double s = ts[j];
      const double num1 = t * s - eps * phis[i];
      if (num1 > 0) rep.c_eps1 = std::max(rep.c_eps1, num1 / conjs[j]);
      const double num2 = t * primes[j] + primes[i] * s - eps * phis[i];
      if (num2 > 0) rep.c_eps2 = std::max(rep.c_eps2, num2 / phis[j]);
    }
  }
  // validate on the supplied sample; slack absorbs the grid resolution of
  // the sup search
  const double slack = 1e-3;
  rep.pass1 = rep.pass2 = true;
  for (const auto& [s, t] : sample) {
    if (s < 0 || t < 0) throw std::domain_error("young_check: negative sample");
    const double rhs1 = eps * phi_eval(nf, t) + rep.c_eps1 * conjugate_eval(nf, s);
    if (t * s > rhs1 * (1.0 + slack) + 1e-300) {
      if (conjugate_eval(nf, s) == 0.0 && t * s > 0) ++rep.violations1;
      ++rep.violations1;
      rep.pass1 = false;
    }
    const double lhs2 = (t > 0 && s > 0)
                            ? t * phi_prime(nf, s) + phi_prime(nf, t) * s
                            : 0.0;
    const double rhs2 = eps * phi_eval(nf, t) + rep.c_eps2 * phi_eval(nf, s);
    if (lhs2 > rhs2 * (1.0 + slack) + 1e-300) {
      ++rep.violations2;
      rep.pass2 = false;
    }
  }
  return rep;
}

}  // namespace bogotool
