#include "bogotool/czop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "bogotool/util.hpp"

namespace bogotool {

namespace {

double dist(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) s += (x[a] - y[a]) * (x[a] - y[a]);
  return std::sqrt(s);
}

}  // namespace

KernelDescriptor make_kernel(const std::string& name, int n) {
  KernelDescriptor K;
  K.label = name;
  K.n = n;
  if (name.rfind("riesz-", 0) == 0) {
    const int comp = std::stoi(name.substr(6)) - 1;
    if (comp < 0 || comp >= n) throw std::invalid_argument("make_kernel: bad riesz component");
    K.evaluate = [comp, n](std::span<const double> x, std::span<const double> y) {
      const double r = dist(x, y);
      return (x[comp] - y[comp]) / std::pow(r, n + 1);
    };
  } else if (name == "log-grad") {
    if (n != 2) throw std::invalid_argument("make_kernel: log-grad needs n = 2");
    K.evaluate = [](std::span<const double> x, std::span<const double> y) {
      const double r2 = (x[0] - y[0]) * (x[0] - y[0]) + (x[1] - y[1]) * (x[1] - y[1]);
      return (x[0] - y[0]) / r2;
    };
  } else if (name == "nocancel") {
    K.evaluate = [n](std::span<const double> x, std::span<const double> y) {
      return 1.0 / std::pow(dist(x, y), n);
    };
  } else if (name == "bogovskii-jij-surrogate") {
    K.evaluate = [n](std::span<const double> x, std::span<const double> y) {
      const double r = dist(x, y);
      const double z0 = x[0] - y[0];
      const double z1 = x[std::min(1, n - 1)] - y[std::min(1, n - 1)];
      return z0 * z1 * z1 / std::pow(r, n + 3);
    };
  } else {
    throw std::invalid_argument("make_kernel: unknown kernel " + name);
  }
  return K;
}

Weight make_weight(const std::string& spec) {
  Weight w;
  w.label = spec;
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const double param = colon == std::string::npos ? 1.0 : std::stod(spec.substr(colon + 1));
  if (kind == "const") {
    if (!(param > 0)) throw std::invalid_argument("make_weight: const weight must be positive");
    w.evaluate = [param](std::span<const double>) { return param; };
  } else if (kind == "power") {
    w.evaluate = [param](std::span<const double> x) {
      double s = 0.0;
      for (double v : x) s += v * v;
      const double r = std::sqrt(s);
      return r > 0 ? std::pow(r, param) : std::pow(1e-12, param);
    };
  } else {
    throw std::invalid_argument("make_weight: unknown weight " + spec);
  }
  return w;
}

double sk_check(const KernelDescriptor& K, const DomainOracle& domain,
                int num_triples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uniform_real_distribution<double>> box;
  for (int a = 0; a < domain.n; ++a)
    box.emplace_back(domain.bbox_lo[a], domain.bbox_hi[a]);
  std::vector<double> x(domain.n), y(domain.n), z(domain.n);
  double kappa1 = 0.0;
  int accepted = 0;
  long guard = 0;
  while (accepted < num_triples) {
    if (++guard > 200L * num_triples)
      throw std::runtime_error("sk_check: rejection sampling stalled");
    for (int a = 0; a < domain.n; ++a) {
      x[a] = box[a](rng);
      y[a] = box[a](rng);
      z[a] = box[a](rng);
    }
    if (!domain.membership(x) || !domain.membership(y) || !domain.membership(z))
      continue;
    const double rxy = dist(x, y);
    if (rxy <= 0 || dist(x, z) > 0.5 * rxy) continue;
    ++accepted;
    const double rn = std::pow(rxy, domain.n);
    kappa1 = std::max(kappa1, std::abs(K.evaluate(x, y)) * rn);
    const double rxz = dist(x, z);
    if (rxz > 0) {
      const double scale = rn * rxy / rxz;
      kappa1 = std::max(kappa1, std::abs(K.evaluate(x, y) - K.evaluate(z, y)) * scale);
      kappa1 = std::max(kappa1, std::abs(K.evaluate(y, x) - K.evaluate(y, z)) * scale);
    }
  }
  return kappa1;
}

namespace {

// evaluates N(x, z) = K(x, x - z)
double eval_N(const KernelDescriptor& K, std::span<const double> x,
              std::span<const double> z) {
  std::vector<double> y(x.size());
  for (std::size_t a = 0; a < x.size(); ++a) y[a] = x[a] - z[a];
  return K.evaluate(x, y);
}

// unit sphere quadrature points and weights (trapezoid on S^1, product
// rule Gauss x trapezoid on S^2); weights sum to the sphere measure
void sphere_rule(int n, int order, std::vector<std::vector<double>>& pts,
                 std::vector<double>& wts) {
  pts.clear();
  wts.clear();
  if (n == 2) {
    for (int i = 0; i < order; ++i) {
      const double th = 2.0 * M_PI * i / order;
      pts.push_back({std::cos(th), std::sin(th)});
      wts.push_back(2.0 * M_PI / order);
    }
  } else if (n == 3) {
    const GaussRule gl = gauss_legendre(order);
    for (int i = 0; i < order; ++i) {
      const double ct = gl.nodes[i];
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int j = 0; j < 2 * order; ++j) {
        const double ph = M_PI * j / order;
        pts.push_back({st * std::cos(ph), st * std::sin(ph), ct});
        wts.push_back(gl.weights[i] * M_PI / order);
      }
    }
  } else {
    throw std::invalid_argument("sphere_rule: only n = 2 or 3 supported");
  }
}

}  // namespace

CzCheckReport cz_check(const KernelDescriptor& K, const DomainOracle& domain,
                       int sphere_quadrature_order, int num_centers,
                       std::uint64_t seed) {
  if (sphere_quadrature_order < 8)
    throw std::invalid_argument("cz_check: quadrature order must be >= 8");
  std::vector<std::vector<double>> pts;
  std::vector<double> wts;
  sphere_rule(domain.n, sphere_quadrature_order, pts, wts);

  std::mt19937_64 rng(seed);
  std::vector<std::uniform_real_distribution<double>> box;
  for (int a = 0; a < domain.n; ++a)
    box.emplace_back(domain.bbox_lo[a], domain.bbox_hi[a]);
  std::uniform_real_distribution<double> alpha_dist(0.1, 10.0);

  CzCheckReport rep;
  std::vector<double> x(domain.n), z(domain.n), az(domain.n);
  int used = 0;
  long guard = 0;
  while (used < num_centers) {
    if (++guard > 200L * num_centers)
      throw std::runtime_error("cz_check: rejection sampling stalled");
    for (int a = 0; a < domain.n; ++a) x[a] = box[a](rng);
    if (!domain.membership(x)) continue;
    ++used;

    double mean = 0.0, sq = 0.0;
    for (std::size_t q = 0; q < pts.size(); ++q) {
      const double v = eval_N(K, x, pts[q]);
      mean += v * wts[q];
      sq += v * v * wts[q];
    }
    rep.mean_zero_dev = std::max(rep.mean_zero_dev, std::abs(mean));
    rep.kappa2 = std::max(rep.kappa2, std::sqrt(sq));

    // homogeneity at random directions and scales
    for (int t = 0; t < 8; ++t) {
      const auto& dir = pts[rng() % pts.size()];
      const double alpha = alpha_dist(rng);
      double zn = 0.0;
      for (int a = 0; a < domain.n; ++a) {
        z[a] = dir[a];
        az[a] = alpha * dir[a];
        zn += z[a] * z[a];
      }
      const double lhs = eval_N(K, x, az);
      const double rhs = std::pow(alpha, -domain.n) * eval_N(K, x, z);
      rep.homogeneity_dev =
          std::max(rep.homogeneity_dev, std::abs(lhs - rhs) * std::pow(std::sqrt(zn), domain.n));
    }
  }
  return rep;
}

std::vector<UniformGridField> truncated_apply_multi(
    const KernelDescriptor& K, std::span<const double> eps,
    const UniformGridField& f) {
  if (f.rank != 0) throw std::invalid_argument("truncated_apply: scalar field expected");
  for (std::size_t j = 1; j < eps.size(); ++j)
    if (!(eps[j] < eps[j - 1]))
      throw std::invalid_argument("truncated_apply: eps must be strictly decreasing");
  const UniformGrid& g = f.grid;
  const double vol = g.cell_volume();
  const std::size_t np = g.num_points();
  const std::size_t ne = eps.size();

  // precompute coordinates
  std::vector<std::vector<double>> coord(np);
  for (std::size_t i = 0; i < np; ++i) coord[i] = g.point(i);

  std::vector<UniformGridField> out;
  out.reserve(ne);
  for (std::size_t e = 0; e < ne; ++e) out.emplace_back(g, 0);

  parallel_for(0, np, [&](std::size_t i0, std::size_t i1) {
    std::vector<double> acc(ne);
    for (std::size_t i = i0; i < i1; ++i) {
      std::fill(acc.begin(), acc.end(), 0.0);
      const auto& x = coord[i];
      for (std::size_t j = 0; j < np; ++j) {
        const double fy = f.at(j);
        if (fy == 0.0) continue;
        const double d = dist(x, coord[j]);
        if (d <= eps[ne - 1]) continue;
        const double contrib = fy * K.evaluate(x, coord[j]) * vol;
        // contributes to every truncation with eps < d
        for (std::size_t e = ne; e-- > 0;) {
          if (d > eps[e])
            acc[e] += contrib;
          else
            break;
        }
      }
      for (std::size_t e = 0; e < ne; ++e) out[e].at(i) = acc[e];
    }
  });
  return out;
}

UniformGridField truncated_apply(const KernelDescriptor& K, double eps,
                                 const UniformGridField& f) {
  if (!(eps > 0)) throw std::invalid_argument("truncated_apply: eps must be > 0");
  const double e[1] = {eps};
  return truncated_apply_multi(K, e, f)[0];
}

PvReport pv_apply(const KernelDescriptor& K, const UniformGridField& f,
                  std::span<const double> eps_sequence) {
  if (eps_sequence.empty()) throw std::invalid_argument("pv_apply: empty eps sequence");
  if (eps_sequence.back() < f.grid.spacing)
    throw std::invalid_argument("pv_apply: eps below grid spacing");
  auto fields = truncated_apply_multi(K, eps_sequence, f);
  PvReport rep;
  rep.max_trunc = UniformGridField(f.grid, 0);
  const std::size_t np = f.grid.num_points();
  for (std::size_t i = 0; i < np; ++i) {
    double m = 0.0;
    for (const auto& fld : fields) m = std::max(m, std::abs(fld.at(i)));
    rep.max_trunc.at(i) = m;
  }
  const double vol = f.grid.cell_volume();
  for (std::size_t e = 1; e < fields.size(); ++e) {
    double s = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
      const double d = fields[e].at(i) - fields[e - 1].at(i);
      s += d * d * vol;
    }
    rep.l2_diffs.push_back(std::sqrt(s));
  }
  rep.field = std::move(fields.back());
  return rep;
}

UniformGridField maximal_op(const UniformGridField& f) {
  if (f.rank != 0) throw std::invalid_argument("maximal_op: scalar field expected");
  const UniformGrid& g = f.grid;
  const std::size_t np = g.num_points();
  std::vector<std::vector<double>> coord(np);
  for (std::size_t i = 0; i < np; ++i) coord[i] = g.point(i);

  double diameter = 0.0;
  for (int a = 0; a < g.n; ++a) {
    const double ext = (g.dims[a] - 1) * g.spacing;
    diameter += ext * ext;
  }
  diameter = std::sqrt(diameter);
  std::vector<double> radii;
  for (double r = g.spacing; r <= diameter + g.spacing; r *= 2.0) radii.push_back(r);

  UniformGridField out(g, 0);
  // Mf(x) >= |f(x)| on grid points: seed with the point value (ball of one cell)
  for (std::size_t i = 0; i < np; ++i) out.at(i) = std::abs(f.at(i));

  std::vector<std::vector<float>> best(radii.size(),
                                       std::vector<float>(np, 0.0f));
  parallel_for(0, np, [&](std::size_t c0, std::size_t c1) {
    for (std::size_t c = c0; c < c1; ++c) {
      for (std::size_t r = 0; r < radii.size(); ++r) {
        const double rad = radii[r];
        double sum = 0.0;
        std::size_t cells = 0;
        for (std::size_t j = 0; j < np; ++j) {
          if (dist(coord[c], coord[j]) <= rad) {
            sum += std::abs(f.at(j));
            ++cells;
          }
        }
        if (cells) best[r][c] = static_cast<float>(sum / cells);
      }
    }
  });
  parallel_for(0, np, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
      double m = out.at(i);
      for (std::size_t r = 0; r < radii.size(); ++r)
        for (std::size_t c = 0; c < np; ++c)
          if (best[r][c] > m && dist(coord[i], coord[c]) <= radii[r])
            m = best[r][c];
      out.at(i) = m;
    }
  });
  return out;
}

double ap_constant(const Weight& omega, double p, const UniformGrid& grid) {
  if (!(p > 1)) throw std::invalid_argument("ap_constant: p must be > 1");
  const double pprime = p / (p - 1.0);
  const std::size_t np = grid.num_points();
  std::vector<std::vector<double>> coord(np);
  std::vector<double> w(np), wdual(np);
  for (std::size_t i = 0; i < np; ++i) {
    coord[i] = grid.point(i);
    w[i] = omega.evaluate(coord[i]);
    if (!(w[i] > 0) || !std::isfinite(w[i]))
      throw std::invalid_argument("ap_constant: weight must be positive and finite");
    wdual[i] = std::pow(w[i], 1.0 - pprime);
  }
  double diameter = 0.0;
  for (int a = 0; a < grid.n; ++a) {
    const double ext = (grid.dims[a] - 1) * grid.spacing;
    diameter += ext * ext;
  }
  diameter = std::sqrt(diameter);

  double sup = 0.0;
  for (std::size_t c = 0; c < np; ++c) {
    for (double rad = grid.spacing; rad <= diameter + grid.spacing; rad *= 2.0) {
      double s1 = 0.0, s2 = 0.0;
      std::size_t cells = 0;
      for (std::size_t j = 0; j < np; ++j) {
        if (dist(coord[c], coord[j]) <= rad) {
          s1 += w[j];
          s2 += wdual[j];
          ++cells;
        }
      }
      if (!cells) continue;
      const double avg1 = s1 / cells, avg2 = s2 / cells;
      sup = std::max(sup, avg1 * std::pow(avg2, p - 1.0));
    }
  }
  return sup;
}

BoundReport weighted_bound_ratio(const KernelDescriptor& K, double p,
                                 const Weight& omega,
                                 std::span<const UniformGridField> test_family,
                                 std::span<const double> eps) {
  if (test_family.empty())
    throw std::invalid_argument("weighted_bound_ratio: empty family");
  BoundReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  rep.eps_variation = 1.0;

  const UniformGrid& g = test_family.front().grid;
  UniformGridField wfield(g, 0);
  const std::size_t np = g.num_points();
  for (std::size_t i = 0; i < np; ++i)
    wfield.at(i) = omega.evaluate(g.point(i));

  // sup over the family at each truncation level: the measured operator
  // norm; eps_variation is the spread of that estimate across levels
  std::vector<double> level_sup(eps.size(), 0.0);
  for (const auto& f : test_family) {
    const double fn = norm_p(f, p, &wfield);
    if (fn == 0.0) continue;
    const auto fields = truncated_apply_multi(K, eps, f);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t e = 0; e < fields.size(); ++e) {
      const double r = norm_p(fields[e], p, &wfield) / fn;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      level_sup[e] = std::max(level_sup[e], r);
    }
    rep.per_function_sup.push_back(hi);
    rep.sup_ratio = std::max(rep.sup_ratio, hi);
    rep.min_ratio = std::min(rep.min_ratio, lo);
  }
  const auto [slo, shi] = std::minmax_element(level_sup.begin(), level_sup.end());
  if (*slo > 0) rep.eps_variation = *shi / *slo;
  return rep;
}

BoundReport orlicz_bound_ratio(const KernelDescriptor& K, const NFunctionPD& nf,
                               std::span<const UniformGridField> test_family,
                               std::span<const double> eps, double kappa_sum) {
  if (test_family.empty())
    throw std::invalid_argument("orlicz_bound_ratio: empty family");
  BoundReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  rep.eps_variation = 1.0;
  std::vector<double> level_sup(eps.size(), 0.0);
  for (const auto& f : test_family) {
    UniformGridField scaled = f;
    for (double& v : scaled.values) v *= kappa_sum;
    const double denom = modular(nf, scaled).value;
    if (denom == 0.0) continue;
    const auto fields = truncated_apply_multi(K, eps, f);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t e = 0; e < fields.size(); ++e) {
      const double r = modular(nf, fields[e]).value / denom;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      level_sup[e] = std::max(level_sup[e], r);
    }
    rep.per_function_sup.push_back(hi);
    rep.sup_ratio = std::max(rep.sup_ratio, hi);
    rep.min_ratio = std::min(rep.min_ratio, lo);
  }
  const auto [slo, shi] = std::minmax_element(level_sup.begin(), level_sup.end());
  if (*slo > 0) rep.eps_variation = *shi / *slo;
  return rep;
}

std::vector<UniformGridField> make_test_family(const UniformGrid& grid,
                                               int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> center(0.25, 0.75);
  std::uniform_real_distribution<double> width(0.05, 0.2);
  std::uniform_int_distribution<int> freq(1, 4);
  std::vector<UniformGridField> family;
  const double lo = grid.origin[0] - 0.5 * grid.spacing;
  const double side = grid.dims[0] * grid.spacing;
  for (int i = 0; i < count; ++i) {
    std::vector<double> c(grid.n);
    for (int a = 0; a < grid.n; ++a) c[a] = lo + side * center(rng);
    const double w = side * width(rng);
    const int k1 = freq(rng), k2 = freq(rng);
    const bool oscillate = i % 2 == 1;
    family.push_back(make_scalar_field(grid, [=](const std::vector<double>& x) {
      double r2 = 0.0;
      for (int a = 0; a < grid.n; ++a) r2 += (x[a] - c[a]) * (x[a] - c[a]);
      const double bump = std::exp(-r2 / (2.0 * w * w));
      if (!oscillate) return bump;
      double osc = 1.0;
      osc *= std::sin(2.0 * M_PI * k1 * (x[0] - lo) / side);
      if (grid.n > 1) osc *= std::cos(2.0 * M_PI * k2 * (x[1] - lo) / side);
      return bump * osc;
    }));
  }
  return family;
}

}  // namespace bogotool
