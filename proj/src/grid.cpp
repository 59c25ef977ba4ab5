#include "bogotool/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "bogotool/nfunc.hpp"

namespace bogotool {

UniformGrid::UniformGrid(int n_, std::vector<double> origin_, double spacing_,
                         std::vector<int> dims_)
    : n(n_), origin(std::move(origin_)), spacing(spacing_), dims(std::move(dims_)) {
  if (n < 1) throw std::invalid_argument("UniformGrid: n must be >= 1");
  if (!(spacing > 0)) throw std::invalid_argument("UniformGrid: spacing must be > 0");
  if (static_cast<int>(origin.size()) != n || static_cast<int>(dims.size()) != n)
    throw std::invalid_argument("UniformGrid: origin/dims size mismatch");
  for (int d : dims)
    if (d < 2) throw std::invalid_argument("UniformGrid: dims must be >= 2 per axis");
}

std::size_t UniformGrid::num_points() const {
  std::size_t p = 1;
  for (int d : dims) p *= static_cast<std::size_t>(d);
  return p;
}

std::size_t UniformGrid::flat(const std::vector<int>& idx) const {
  std::size_t f = 0;
  for (int a = 0; a < n; ++a) f = f * dims[a] + idx[a];
  return f;
}

std::vector<int> UniformGrid::unflat(std::size_t f) const {
  std::vector<int> idx(n);
  for (int a = n - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(f % dims[a]);
    f /= dims[a];
  }
  return idx;
}

std::vector<double> UniformGrid::point(const std::vector<int>& idx) const {
  std::vector<double> x(n);
  for (int a = 0; a < n; ++a) x[a] = origin[a] + idx[a] * spacing;
  return x;
}

std::vector<double> UniformGrid::point(std::size_t f) const {
  return point(unflat(f));
}

double UniformGrid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < n; ++a) v *= spacing;
  return v;
}

bool UniformGrid::contains(const std::vector<int>& idx) const {
  for (int a = 0; a < n; ++a)
    if (idx[a] < 0 || idx[a] >= dims[a]) return false;
  return true;
}

UniformGrid make_cell_grid(int n, double lo, double side, int N) {
  const double h = side / N;
  std::vector<double> origin(n, lo + 0.5 * h);
  std::vector<int> dims(n, N);
  return UniformGrid(n, origin, h, dims);
}

UniformGridField::UniformGridField(UniformGrid g, int rank_)
    : grid(std::move(g)), rank(rank_) {
  if (rank < 0 || rank > 2)
    throw std::invalid_argument("UniformGridField: rank must be 0, 1 or 2");
  values.assign(grid.num_points() * comps(), 0.0);
}

int UniformGridField::comps() const {
  int c = 1;
  for (int r = 0; r < rank; ++r) c *= grid.n;
  return c;
}

double& UniformGridField::at(std::size_t pt, int c) {
  return values[pt * comps() + c];
}

double UniformGridField::at(std::size_t pt, int c) const {
  return values[pt * comps() + c];
}

double UniformGridField::value_ext(const std::vector<int>& idx, int c) const {
  if (!grid.contains(idx)) return 0.0;
  return at(grid.flat(idx), c);
}

double UniformGridField::point_norm(std::size_t pt) const {
  const int nc = comps();
  double s = 0.0;
  for (int c = 0; c < nc; ++c) {
    const double v = at(pt, c);
    s += v * v;
  }
  return std::sqrt(s);
}

UniformGridField make_scalar_field(
    const UniformGrid& g,
    const std::function<double(const std::vector<double>&)>& f) {
  UniformGridField out(g, 0);
  const std::size_t np = g.num_points();
  for (std::size_t i = 0; i < np; ++i) out.at(i) = f(g.point(i));
  return out;
}

UniformGridField make_vector_field(
    const UniformGrid& g,
    const std::function<std::vector<double>(const std::vector<double>&)>& f) {
  UniformGridField out(g, 1);
  const std::size_t np = g.num_points();
  for (std::size_t i = 0; i < np; ++i) {
    const auto v = f(g.point(i));
    for (int c = 0; c < g.n; ++c) out.at(i, c) = v[c];
  }
  return out;
}

namespace {

int shift_steps(const UniformGrid& g, double h) {
  const double ratio = h / g.spacing;
  const int steps = static_cast<int>(std::lround(ratio));
  if (steps < 1 || std::abs(ratio - steps) > 1e-9 * std::max(1.0, ratio))
    throw std::invalid_argument(
        "difference quotient: h must be a positive integer multiple of the grid spacing");
  return steps;
}

}  // namespace

UniformGridField diff_quot(const UniformGridField& f, int k, double h, int sign) {
  if (k < 0 || k >= f.grid.n) throw std::invalid_argument("diff_quot: bad axis");
  const int steps = shift_steps(f.grid, h) * (sign >= 0 ? 1 : -1);
  UniformGridField out(f.grid, f.rank);
  const int nc = f.comps();
  const std::size_t np = f.grid.num_points();
  for (std::size_t i = 0; i < np; ++i) {
    auto idx = f.grid.unflat(i);
    idx[k] += steps;
    for (int c = 0; c < nc; ++c)
      out.at(i, c) = (f.value_ext(idx, c) - f.at(i, c)) / h;
  }
  return out;
}

UniformGridField delta_shift(const UniformGridField& f, int k, double h, int sign) {
  UniformGridField out = diff_quot(f, k, h, sign);
  for (double& v : out.values) v *= h;
  return out;
}

double commute_check(const UniformGridField& f, int k, double h, int sign) {
  const UniformGridField df = diff_quot(f, k, h, sign);
  const UniformGridField g = gradient(df, Stencil::ZeroExtension);
  const UniformGridField gf = gradient(f, Stencil::ZeroExtension);
  const UniformGridField dg = diff_quot(gf, k, h, sign);
  double dev = 0.0;
  for (std::size_t i = 0; i < g.values.size(); ++i)
    dev = std::max(dev, std::abs(g.values[i] - dg.values[i]));
  return dev;
}

double product_rule_check(const UniformGridField& F, const UniformGridField& G,
                          int k, double h, int sign) {
  if (F.rank != 0 || G.rank != 0)
    throw std::invalid_argument("product_rule_check: scalar fields expected");
  UniformGridField FG(F.grid, 0);
  for (std::size_t i = 0; i < FG.values.size(); ++i)
    FG.values[i] = F.values[i] * G.values[i];
  const UniformGridField dFG = diff_quot(FG, k, h, sign);
  const UniformGridField dF = diff_quot(F, k, h, sign);
  const UniformGridField dG = diff_quot(G, k, h, sign);
  const int steps = shift_steps(F.grid, h) * (sign >= 0 ? 1 : -1);
  double dev = 0.0;
  const std::size_t np = F.grid.num_points();
  for (std::size_t i = 0; i < np; ++i) {
    auto idx = F.grid.unflat(i);
    idx[k] += steps;
    const double lhs = dFG.at(i);
    const double rhs = F.value_ext(idx) * dG.at(i) + dF.at(i) * G.at(i);
    dev = std::max(dev, std::abs(lhs - rhs));
  }
  return dev;
}

double partial_integration_check(const UniformGridField& F,
                                 const UniformGridField& G, double h, int k) {
  const int steps = shift_steps(F.grid, h);
  // both fields must vanish on a margin of at least h
  const std::size_t np = F.grid.num_points();
  for (std::size_t i = 0; i < np; ++i) {
    const auto idx = F.grid.unflat(i);
    bool margin = false;
    for (int a = 0; a < F.grid.n; ++a)
      if (idx[a] < steps || idx[a] >= F.grid.dims[a] - steps) margin = true;
    if (margin && (F.at(i) != 0.0 || G.at(i) != 0.0))
      throw std::invalid_argument(
          "partial_integration_check: support touches the h-margin");
  }
  const UniformGridField dpG = diff_quot(G, k, h, +1);
  const UniformGridField dmF = diff_quot(F, k, h, -1);
  double s = 0.0;
  for (std::size_t i = 0; i < np; ++i)
    s += F.at(i) * dpG.at(i) - dmF.at(i) * G.at(i);
  return std::abs(s) * F.grid.cell_volume();
}

DqModularCheck modular_dq_inequality(const NFunctionPD& nf,
                                     const UniformGridField& F,
                                     const UniformGridField& dF_analytic,
                                     int k, double h, double h0, int sign,
                                     double rel_tol) {
  if (!(h > 0) || h > h0)
    throw std::invalid_argument("modular_dq_inequality: need 0 < h <= h0");
  const UniformGrid& g = F.grid;
  const UniformGridField dF = diff_quot(F, k, h, sign);
  const double vol = g.cell_volume();
  double lhs = 0.0, rhs = 0.0;
  std::size_t inner = 0;
  const std::size_t np = g.num_points();
  for (std::size_t i = 0; i < np; ++i) {
    const auto idx = g.unflat(i);
    // distance of the point to the boundary of the sampled box
    double dist = std::numeric_limits<double>::infinity();
    for (int a = 0; a < g.n; ++a) {
      const double lo = g.origin[a] - 0.5 * g.spacing;
      const double hi = g.origin[a] + (g.dims[a] - 0.5) * g.spacing;
      const double x = g.origin[a] + idx[a] * g.spacing;
      dist = std::min({dist, x - lo, hi - x});
    }
    rhs += phi_eval(nf, std::abs(dF_analytic.at(i))) * vol;
    if (dist > h0) {
      lhs += phi_eval(nf, std::abs(dF.at(i))) * vol;
      ++inner;
    }
  }
  if (inner == 0)
    throw std::invalid_argument("modular_dq_inequality: h0-interior is empty");
  DqModularCheck out;
  out.lhs = lhs;
  out.rhs = rhs;
  out.pass = lhs <= rhs + rel_tol * rhs + 1e-14;
  return out;
}

namespace {

double stencil_derivative(const UniformGridField& f, std::vector<int>& idx,
                          int k, int c, Stencil s) {
  const UniformGrid& g = f.grid;
  const double h = g.spacing;
  const int i = idx[k];
  if (s == Stencil::ZeroExtension || (i > 0 && i < g.dims[k] - 1)) {
    idx[k] = i + 1;
    const double fp = f.value_ext(idx, c);
    idx[k] = i - 1;
    const double fm = f.value_ext(idx, c);
    idx[k] = i;
    return (fp - fm) / (2.0 * h);
  }
  // second-order one-sided at the boundary layer
  if (i == 0) {
    idx[k] = 1;
    const double f1 = f.value_ext(idx, c);
    idx[k] = 2;
    const double f2 = g.dims[k] > 2 ? f.value_ext(idx, c) : 0.0;
    idx[k] = 0;
    const double f0 = f.at(g.flat(idx), c);
    if (g.dims[k] == 2) return (f1 - f0) / h;
    return (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
  }
  const int last = g.dims[k] - 1;
  idx[k] = last - 1;
  const double f1 = f.value_ext(idx, c);
  idx[k] = last - 2;
  const double f2 = last >= 2 ? f.value_ext(idx, c) : 0.0;
  idx[k] = last;
  const double f0 = f.at(g.flat(idx), c);
  if (g.dims[k] == 2) return (f0 - f1) / h;
  return (3.0 * f0 - 4.0 * f1 + f2) / (2.0 * h);
}

}  // namespace

UniformGridField derivative(const UniformGridField& f, int k, Stencil s) {
  if (k < 0 || k >= f.grid.n) throw std::invalid_argument("derivative: bad axis");
  UniformGridField out(f.grid, f.rank);
  const int nc = f.comps();
  const std::size_t np = f.grid.num_points();
  for (std::size_t i = 0; i < np; ++i) {
    auto idx = f.grid.unflat(i);
    for (int c = 0; c < nc; ++c)
      out.at(i, c) = stencil_derivative(f, idx, k, c, s);
  }
  return out;
}

UniformGridField gradient(const UniformGridField& u, Stencil s) {
  const int n = u.grid.n;
  if (u.rank >= 2) throw std::invalid_argument("gradient: rank too high");
  UniformGridField out(u.grid, u.rank + 1);
  const int nc = u.comps();
  const std::size_t np = u.grid.num_points();
  for (std::size_t i = 0; i < np; ++i) {
    auto idx = u.grid.unflat(i);
    for (int c = 0; c < nc; ++c)
      for (int k = 0; k < n; ++k)
        out.at(i, c * n + k) = stencil_derivative(u, idx, k, c, s);
  }
  return out;
}

UniformGridField sym_gradient(const UniformGridField& u, Stencil s) {
  if (u.rank != 1) throw std::invalid_argument("sym_gradient: vector field expected");
  UniformGridField g = gradient(u, s);
  const int n = u.grid.n;
  const std::size_t np = u.grid.num_points();
  for (std::size_t i = 0; i < np; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const double sym = 0.5 * (g.at(i, j * n + k) + g.at(i, k * n + j));
        g.at(i, j * n + k) = sym;
        g.at(i, k * n + j) = sym;
      }
  return g;
}

UniformGridField divergence(const UniformGridField& u, Stencil s) {
  if (u.rank != 1) throw std::invalid_argument("divergence: vector field expected");
  const int n = u.grid.n;
  UniformGridField out(u.grid, 0);
  const std::size_t np = u.grid.num_points();
  for (std::size_t i = 0; i < np; ++i) {
    auto idx = u.grid.unflat(i);
    double d = 0.0;
    for (int k = 0; k < n; ++k) d += stencil_derivative(u, idx, k, k, s);
    out.at(i) = d;
  }
  return out;
}

UniformGridField curl2d(const UniformGridField& psi, Stencil s) {
  if (psi.grid.n != 2 || psi.rank != 0)
    throw std::invalid_argument("curl2d: 2D scalar field expected");
  UniformGridField out(psi.grid, 1);
  const std::size_t np = psi.grid.num_points();
  for (std::size_t i = 0; i < np; ++i) {
    auto idx = psi.grid.unflat(i);
    out.at(i, 0) = stencil_derivative(psi, idx, 1, 0, s);
    out.at(i, 1) = -stencil_derivative(psi, idx, 0, 0, s);
  }
  return out;
}

double norm_p(const UniformGridField& f, double p, const UniformGridField* weight) {
  const double vol = f.grid.cell_volume();
  const std::size_t np = f.grid.num_points();
  double s = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    const double w = weight ? weight->at(i) : 1.0;
    s += std::pow(f.point_norm(i), p) * w * vol;
  }
  return std::pow(s, 1.0 / p);
}

void write_csv(const UniformGridField& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out.precision(17);
  const int nc = f.comps();
  const std::size_t np = f.grid.num_points();
  for (std::size_t i = 0; i < np; ++i) {
    const auto x = f.grid.point(i);
    for (int a = 0; a < f.grid.n; ++a) out << x[a] << ',';
    for (int c = 0; c < nc; ++c) out << f.at(i, c) << (c + 1 < nc ? ',' : '\n');
  }
}

void write_binary(const UniformGridField& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_binary: cannot open " + path);
  const std::int32_t n = f.grid.n, rank = f.rank;
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  for (int a = 0; a < n; ++a) {
    const std::int32_t d = f.grid.dims[a];
    out.write(reinterpret_cast<const char*>(&d), sizeof d);
  }
  out.write(reinterpret_cast<const char*>(&f.grid.spacing), sizeof(double));
  out.write(reinterpret_cast<const char*>(&rank), sizeof rank);
  out.write(reinterpret_cast<const char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
}

UniformGridField read_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_binary: cannot open " + path);
  std::int32_t n = 0, rank = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  if (n < 1 || n > 3) throw std::runtime_error("read_binary: bad dimension");
  std::vector<int> dims(n);
  for (int a = 0; a < n; ++a) {
    std::int32_t d = 0;
    in.read(reinterpret_cast<char*>(&d), sizeof d);
    dims[a] = d;
  }
  double spacing = 0.0;
  in.read(reinterpret_cast<char*>(&spacing), sizeof spacing);
  in.read(reinterpret_cast<char*>(&rank), sizeof rank);
  UniformGridField f(UniformGrid(n, std::vector<double>(n, 0.0), spacing, dims),
                     rank);
  in.read(reinterpret_cast<char*>(f.values.data()),
          static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (!in) throw std::runtime_error("read_binary: truncated file");
  return f;
}

}  // namespace bogotool
