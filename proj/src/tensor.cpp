#include "bogotool/tensor.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "bogotool/grid.hpp"

namespace bogotool {

SymTensor::SymTensor(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0.0) {
  if (n < 1) throw std::invalid_argument("SymTensor: n must be >= 1");
}

SymTensor sym_part(const SymTensor& P) {
  SymTensor s(P.n);
  for (int i = 0; i < P.n; ++i)
    for (int j = 0; j < P.n; ++j) s(i, j) = 0.5 * (P(i, j) + P(j, i));
  return s;
}

double frobenius(const SymTensor& P) {
  double s = 0.0;
  for (double v : P.a) s += v * v;
  return std::sqrt(s);
}

double dot(const SymTensor& P, const SymTensor& Q) {
  double s = 0.0;
  for (std::size_t i = 0; i < P.a.size(); ++i) s += P.a[i] * Q.a[i];
  return s;
}

SymTensor operator-(const SymTensor& P, const SymTensor& Q) {
  SymTensor d(P.n);
  for (std::size_t i = 0; i < P.a.size(); ++i) d.a[i] = P.a[i] - Q.a[i];
  return d;
}

StressModel::StressModel(NFunctionPD nf_, double mu_) : nf(nf_), mu(mu_) {
  if (!(mu > 0)) throw std::invalid_argument("StressModel: mu must be > 0");
}

namespace {

SymTensor scaled_sym(const SymTensor& P, double exponent, double delta,
                     double factor) {
  SymTensor ps = sym_part(P);
  const double norm = frobenius(ps);
  if (norm == 0.0) {
    for (double& v : ps.a) v = 0.0;
    return ps;
  }
  const double c = factor * std::pow(delta + norm, exponent);
  for (double& v : ps.a) v *= c;
  return ps;
}

}  // namespace

SymTensor stress(const StressModel& m, const SymTensor& P) {
  return scaled_sym(P, m.nf.p - 2.0, m.nf.delta, m.mu);
}

SymTensor f_assoc(const StressModel& m, const SymTensor& P) {
  return scaled_sym(P, 0.5 * (m.nf.p - 2.0), m.nf.delta, 1.0);
}

HammerQuantities hammer_quantities(const StressModel& m, const SymTensor& P,
                                   const SymTensor& Q) {
  HammerQuantities q;
  const SymTensor sp = stress(m, P), sq = stress(m, Q);
  const SymTensor fp = f_assoc(m, P), fq = f_assoc(m, Q);
  const SymTensor ds = sp - sq, df = fp - fq;
  q.monotone = dot(ds, P - Q);
  q.f_diff2 = dot(df, df);
  const double pn = frobenius(sym_part(P));
  const double dn = frobenius(sym_part(P) - sym_part(Q));
  const ShiftedNFunction shifted(m.nf, pn);
  q.shifted_mod = shifted_eval(shifted, dn);
  q.second_mod = dn > 0 ? phi_second(m.nf, pn + dn) * dn * dn : 0.0;
  q.stress_diff = frobenius(ds);
  q.shifted_prime = shifted_prime(shifted, dn);
  return q;
}

void calibrate(StressModel& m, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  const int n = 2;
  for (int s = 0; s < samples; ++s) {
    SymTensor P(n), Q(n);
    for (double& v : P.a) v = uni(rng);
    for (double& v : Q.a) v = uni(rng);
    const auto q = hammer_quantities(m, P, Q);
    if (q.second_mod > 1e-12) {
      const double r = q.monotone / q.second_mod;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  m.gamma0_est = lo;
  m.gamma1_est = hi;
}

DiffquotEquivReport diffquot_equiv(const StressModel& m,
                                   const UniformGridField& Du_field, double h,
                                   int k, int sign) {
  if (Du_field.rank != 2)
    throw std::invalid_argument("diffquot_equiv: tensor field expected");
  const UniformGrid& g = Du_field.grid;
  const int n = g.n;
  const int steps = static_cast<int>(std::lround(h / g.spacing));
  if (steps < 1 || std::abs(h / g.spacing - steps) > 1e-9)
    throw std::invalid_argument("diffquot_equiv: h must be a grid multiple");

  DiffquotEquivReport rep;
  rep.min12 = rep.min13 = rep.min23 = std::numeric_limits<double>::infinity();
  const double tiny = 1e-12;
  const std::size_t np = g.num_points();
  for (std::size_t i = 0; i < np; ++i) {
    auto idx = g.unflat(i);
    idx[k] += sign >= 0 ? steps : -steps;
    if (!g.contains(idx)) continue;
    const std::size_t j = g.flat(idx);

    SymTensor Du(n), Dush(n);
    for (int c = 0; c < n * n; ++c) {
      Du.a[c] = Du_field.at(i, c);
      Dush.a[c] = Du_field.at(j, c);
    }
    SymTensor dDu = Dush - Du;  // Delta^pm_{h,k} Du
    const double delta_norm = frobenius(dDu);
    SymTensor dq = dDu;
    for (double& v : dq.a) v /= h;

    const SymTensor dS = stress(m, Dush) - stress(m, Du);
    const SymTensor dF = f_assoc(m, Dush) - f_assoc(m, Du);
    const double q1 = dot(dS, dq) / h;
    double q2 = dot(dF, dF) / (h * h);
    const double base = m.nf.delta + frobenius(Du) + delta_norm;
    const double dqn = frobenius(dq);
    const double q3 =
        base > 0 ? std::pow(base, m.nf.p - 2.0) * dqn * dqn : 0.0;

    ++rep.points;
    if (q1 > tiny && q2 > tiny) {
      rep.min12 = std::min(rep.min12, q1 / q2);
      rep.max12 = std::max(rep.max12, q1 / q2);
    }
    if (q1 > tiny && q3 > tiny) {
      rep.min13 = std::min(rep.min13, q1 / q3);
      rep.max13 = std::max(rep.max13, q1 / q3);
    }
    if (q2 > tiny && q3 > tiny) {
      rep.min23 = std::min(rep.min23, q2 / q3);
      rep.max23 = std::max(rep.max23, q2 / q3);
    }
  }
  if (rep.points == 0)
    throw std::invalid_argument("diffquot_equiv: inner set is empty");
  return rep;
}

}  // namespace bogotool
