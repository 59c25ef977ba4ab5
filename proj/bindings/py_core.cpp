#include <cmath>
#include <random>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bogotool/bogovskii.hpp"
#include "bogotool/czop.hpp"
#include "bogotool/grid.hpp"
#include "bogotool/nfunc.hpp"
#include "bogotool/pstokes.hpp"
#include "bogotool/tensor.hpp"
#include "bogotool/whitney.hpp"

namespace py = pybind11;
using namespace bogotool;

namespace {

SymTensor tensor_from(const std::vector<std::vector<double>>& rows) {
  const int n = int(rows.size());
  SymTensor t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = rows[i][j];
  return t;
}

std::vector<std::vector<double>> tensor_to(const SymTensor& t) {
  std::vector<std::vector<double>> rows(t.n, std::vector<double>(t.n));
  for (int i = 0; i < t.n; ++i)
    for (int j = 0; j < t.n; ++j) rows[i][j] = t(i, j);
  return rows;
}

UniformGridField field_from(py::array_t<double, py::array::c_style> arr,
                            double lo, double side) {
  const auto buf = arr.request();
  if (buf.ndim != 2 || buf.shape[0] != buf.shape[1])
    throw std::invalid_argument("expected a square 2d array of samples");
  const int N = int(buf.shape[0]);
  UniformGridField f(make_cell_grid(2, lo, side, N), 0);
  const double* src = static_cast<const double*>(buf.ptr);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      f.at(f.grid.flat({i, j})) = src[i * N + j];
  return f;
}

py::array_t<double> field_values(const UniformGridField& f) {
  py::array_t<double> out(std::vector<py::ssize_t>{
      py::ssize_t(f.grid.num_points()), py::ssize_t(f.comps())});
  auto buf = out.request();
  double* dst = static_cast<double*>(buf.ptr);
  std::copy(f.values.begin(), f.values.end(), dst);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "numerical toolkit for generalized-Newtonian flow estimates";

  m.def("phi_eval", [](double p, double d, double t) {
    return phi_eval(NFunctionPD(p, d), t);
  });
  m.def("phi_prime", [](double p, double d, double t) {
    return phi_prime(NFunctionPD(p, d), t);
  });
  m.def("conjugate_eval", [](double p, double d, double s) {
    return conjugate_eval(NFunctionPD(p, d), s);
  });
  m.def("delta2_estimate", [](double p, double d, bool conj) {
    return delta2_estimate(NFunctionPD(p, d), conj);
  }, py::arg("p"), py::arg("delta"), py::arg("conjugate") = false);
  m.def("shifted_eval", [](double p, double d, double a, double t) {
    return shifted_eval(ShiftedNFunction(NFunctionPD(p, d), a), t);
  });

  m.def("young_check", [](double p, double d, double eps, int samples,
                          std::uint64_t seed) {
    std::vector<std::pair<double, double>> pts(samples);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> logu(-3.0, 3.0);
    for (auto& st : pts)
      st = {std::pow(10.0, logu(rng)), std::pow(10.0, logu(rng))};
    const YoungReport r = young_check(NFunctionPD(p, d), eps, pts);
    py::dict out;
    out["c_eps1"] = r.c_eps1;
    out["c_eps2"] = r.c_eps2;
    out["pass"] = r.pass1 && r.pass2;
    return out;
  }, py::arg("p"), py::arg("delta"), py::arg("eps"),
     py::arg("samples") = 10000, py::arg("seed") = 1);

  m.def("stress", [](double p, double d, double mu,
                     const std::vector<std::vector<double>>& P) {
    return tensor_to(stress(StressModel(NFunctionPD(p, d), mu), tensor_from(P)));
  });
  m.def("f_assoc", [](double p, double d,
                      const std::vector<std::vector<double>>& P) {
    return tensor_to(f_assoc(StressModel(NFunctionPD(p, d)), tensor_from(P)));
  });

  m.def("modular", [](double p, double d, py::array_t<double> values,
                      double lo, double side) {
    return modular(NFunctionPD(p, d), field_from(values, lo, side)).value;
  });
  m.def("luxemburg_norm", [](double p, double d, py::array_t<double> values,
                             double lo, double side) {
    return luxemburg_norm(NFunctionPD(p, d), field_from(values, lo, side));
  });

  m.def("whitney_check", [](const std::string& shape, int min_level,
                            std::size_t samples, std::uint64_t seed) {
    DomainOracle dom;
    if (shape == "ball") dom = make_ball(2, {0.0, 0.0}, 1.0);
    else if (shape == "box") dom = make_box(2, {0.0, 0.0}, {1.0, 1.0});
    else if (shape == "annulus") dom = make_annulus(2, {0.0, 0.0}, 0.4, 1.0);
    else throw std::invalid_argument("unknown shape " + shape);
    const auto cubes = whitney_decompose(dom, min_level);
    const WhitneyReport r = verify_decomposition(cubes, dom, samples, seed,
                                                 min_level);
    py::dict out;
    out["num_cubes"] = r.num_cubes;
    out["disjoint"] = r.disjoint;
    out["distance_ok"] = r.distance_ok;
    out["coverage"] = r.coverage;
    return out;
  }, py::arg("shape"), py::arg("min_level") = -10, py::arg("samples") = 20000,
     py::arg("seed") = 1);

  m.def("cz_check", [](const std::string& kernel, int n, int order,
                       int centers, std::uint64_t seed) {
    const KernelDescriptor K = make_kernel(kernel, n);
    const DomainOracle dom = make_ball(n, std::vector<double>(n, 0.0), 1.0);
    const CzCheckReport r = cz_check(K, dom, order, centers, seed);
    py::dict out;
    out["homogeneity_dev"] = r.homogeneity_dev;
    out["mean_zero_dev"] = r.mean_zero_dev;
    out["kappa2"] = r.kappa2;
    return out;
  }, py::arg("kernel"), py::arg("n") = 2, py::arg("order") = 512,
     py::arg("centers") = 8, py::arg("seed") = 1);

  m.def("bogovskii_apply", [](py::array_t<double> values, double lo,
                              double side, int order) {
    UniformGridField f = field_from(values, lo, side);
    Cube Q{{lo + 0.5 * side, lo + 0.5 * side}, side};
    const BogovskiiSolution sol = bogovskii_apply(f, Q, order, true);
    const DivResidual r = divergence_residual(sol);
    py::dict out;
    out["v"] = field_values(sol.v);
    out["div_l2_rel"] = r.l2_rel;
    out["div_linf"] = r.linf;
    return out;
  }, py::arg("values"), py::arg("lo") = -0.5, py::arg("side") = 1.0,
     py::arg("order") = 16);

  m.def("pstokes_solve", [](double p, double d, int N,
                            const std::string& preset, double tol,
                            int max_iters) {
    const UniformGrid g = make_cell_grid(2, 0.0, 1.0, N);
    PStokesProblem prob{StressModel{NFunctionPD(p, d)}, make_forcing(g, preset)};
    const PStokesSolution sol = solve(prob, tol, max_iters);
    py::dict out;
    out["converged"] = sol.converged;
    out["iterations"] = sol.iterations;
    out["grad_norm"] = sol.grad_norm;
    out["energy"] = sol.energy_history.back();
    out["u"] = field_values(sol.u);
    out["weak_residual"] = weak_residual(sol, prob, 5, 1);
    return out;
  }, py::arg("p"), py::arg("delta"), py::arg("N") = 32,
     py::arg("preset") = "vortex", py::arg("tol") = 1e-7,
     py::arg("max_iters") = 20000);
}
