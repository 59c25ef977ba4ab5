// bogotool: command line front end for the verification toolkit.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bogotool/bogovskii.hpp"
#include "bogotool/czop.hpp"
#include "bogotool/grid.hpp"
#include "bogotool/nfunc.hpp"
#include "bogotool/pstokes.hpp"
#include "bogotool/tensor.hpp"
#include "bogotool/whitney.hpp"

using json = nlohmann::ordered_json;
using namespace bogotool;

namespace {

struct Reporter {
  std::ofstream file;
  bool to_file = false;
  bool all_pass = true;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open report file " + path);
    to_file = true;
  }
  void emit(json rec, bool pass) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    rec["pass"] = pass;
    rec["runtime_s"] = secs;
    json line;
    line["schema"] = 1;
    line.update(rec);
    (to_file ? file : std::cout) << line.dump() << "\n";
    if (to_file)
      std::cout << (pass ? "PASS " : "FAIL ") << rec["check"].get<std::string>()
                << "\n";
    all_pass = all_pass && pass;
    t0 = std::chrono::steady_clock::now();
  }
};

double max_interior_div(const UniformGridField& u) {
  const UniformGridField d = divergence(u, Stencil::ZeroExtension);
  const UniformGrid& g = u.grid;
  double m = 0.0;
  for (std::size_t i = 0; i < g.num_points(); ++i) {
    const auto idx = g.unflat(i);
    bool interior = true;
    for (int a = 0; a < g.n; ++a)
      if (idx[a] == 0 || idx[a] == g.dims[a] - 1) interior = false;
    if (interior) m = std::max(m, std::abs(d.at(i)));
  }
  return m;
}

// analytic scalar family on the unit square with closed-form partials
double family_f(int which, double x, double y) {
  switch (which) {
    case 0: return std::sin(2 * M_PI * x) * std::cos(2 * M_PI * y);
    case 1: return std::exp(-4.0 * ((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5)));
    case 2: return x * x * y + y * y;
    case 3: return std::cos(3.0 * x + 2.0 * y);
    default: return x * y * (1.0 - x) * (1.0 - y);
  }
}

double family_df(int which, int k, double x, double y) {
  switch (which) {
    case 0:
      return k == 0 ? 2 * M_PI * std::cos(2 * M_PI * x) * std::cos(2 * M_PI * y)
                    : -2 * M_PI * std::sin(2 * M_PI * x) * std::sin(2 * M_PI * y);
    case 1: {
      const double g = family_f(1, x, y);
      return k == 0 ? -8.0 * (x - 0.5) * g : -8.0 * (y - 0.5) * g;
    }
    case 2: return k == 0 ? 2.0 * x * y : x * x + 2.0 * y;
    case 3: return (k == 0 ? -3.0 : -2.0) * std::sin(3.0 * x + 2.0 * y);
    default:
      return k == 0 ? y * (1.0 - y) * (1.0 - 2.0 * x)
                    : x * (1.0 - x) * (1.0 - 2.0 * y);
  }
}

int cmd_verify_young(Reporter& rep, double p, double delta, double eps,
                     int samples, std::uint64_t seed) {
  NFunctionPD nf(p, delta);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> logu(-3.0, 3.0);
  std::vector<std::pair<double, double>> pts(samples);
  for (auto& st : pts)
    st = {std::pow(10.0, logu(rng)), std::pow(10.0, logu(rng))};
  const YoungReport r = young_check(nf, eps, pts);
  rep.emit({{"check", "young-inequalities"},
            {"p", p},
            {"delta", delta},
            {"eps", eps},
            {"samples", samples},
            {"c_eps1", r.c_eps1},
            {"c_eps2", r.c_eps2},
            {"violations1", r.violations1},
            {"violations2", r.violations2}},
           r.pass1 && r.pass2);
  return 0;
}

int cmd_verify_hammer(Reporter& rep, double p, double delta, int samples,
                      std::uint64_t seed) {
  StressModel m{NFunctionPD(p, delta)};
  calibrate(m, samples, seed);
  std::mt19937_64 rng(seed + 1);
  std::normal_distribution<double> gauss;
  double lo12 = 0, hi12 = 0, lo23 = 0, hi23 = 0;
  bool first = true;
  for (int s = 0; s < samples; ++s) {
    SymTensor P(2), Q(2);
    for (int c = 0; c < 4; ++c) {
      P.a[c] = gauss(rng);
      Q.a[c] = gauss(rng);
    }
    const HammerQuantities q = hammer_quantities(m, P, Q);
    if (q.shifted_mod <= 0 || q.second_mod <= 0) continue;
    const double r12 = q.f_diff2 / q.shifted_mod;
    const double r23 = q.shifted_mod / q.second_mod;
    if (first) {
      lo12 = hi12 = r12;
      lo23 = hi23 = r23;
      first = false;
    }
    lo12 = std::min(lo12, r12); hi12 = std::max(hi12, r12);
    lo23 = std::min(lo23, r23); hi23 = std::max(hi23, r23);
  }
  const bool pass = !first && lo12 > 0 && lo23 > 0 && std::isfinite(hi12) &&
                    std::isfinite(hi23);
  rep.emit({{"check", "stress-equivalences"},
            {"p", p},
            {"delta", delta},
            {"samples", samples},
            {"gamma0_est", m.gamma0_est.value_or(0.0)},
            {"gamma1_est", m.gamma1_est.value_or(0.0)},
            {"fdiff2_over_shifted", {lo12, hi12}},
            {"shifted_over_second", {lo23, hi23}}},
           pass);
  return 0;
}

int cmd_verify_eq2(Reporter& rep, double p, double delta, int N) {
  NFunctionPD nf(p, delta);
  const UniformGrid g = make_cell_grid(2, 0.0, 1.0, N);
  const double h = g.spacing;
  bool all = true;
  json per = json::array();
  for (int which = 0; which < 5; ++which) {
    for (int k = 0; k < 2; ++k) {
      UniformGridField F = make_scalar_field(g, [&](const std::vector<double>& x) {
        return family_f(which, x[0], x[1]);
      });
      UniformGridField dF = make_scalar_field(g, [&](const std::vector<double>& x) {
        return family_df(which, k, x[0], x[1]);
      });
      const DqModularCheck c = modular_dq_inequality(nf, F, dF, k, h, 2 * h, +1);
      per.push_back({{"function", which}, {"k", k}, {"lhs", c.lhs},
                     {"rhs", c.rhs}, {"pass", c.pass}});
      all = all && c.pass;
    }
  }
  rep.emit({{"check", "modular-difference-quotient-bound"},
            {"p", p},
            {"delta", delta},
            {"grid", N},
            {"cases", per}},
           all);
  return 0;
}

int cmd_verify_diffquot(Reporter& rep, double p, double delta, int N,
                        int h_mult) {
  StressModel m{NFunctionPD(p, delta)};
  const UniformGrid g = make_cell_grid(2, 0.0, 1.0, N);
  UniformGridField u = make_vector_field(g, [](const std::vector<double>& x) {
    return std::vector<double>{std::sin(2 * M_PI * x[0]) * x[1],
                               std::cos(2 * M_PI * x[1]) + x[0] * x[0]};
  });
  const UniformGridField Du = sym_gradient(u, Stencil::OneSided);
  const double h = h_mult * g.spacing;
  const DiffquotEquivReport r = diffquot_equiv(m, Du, h, 0, +1);
  const bool pass = r.points > 0 && r.min12 > 0 && r.min13 > 0 && r.min23 > 0 &&
                    std::isfinite(r.max12) && std::isfinite(r.max13) &&
                    std::isfinite(r.max23);
  rep.emit({{"check", "difference-quotient-equivalences"},
            {"p", p},
            {"delta", delta},
            {"grid", N},
            {"h", h},
            {"ratio12", {r.min12, r.max12}},
            {"ratio13", {r.min13, r.max13}},
            {"ratio23", {r.min23, r.max23}},
            {"points", r.points}},
           pass);
  return 0;
}

int cmd_whitney(Reporter& rep, const std::string& shape, int min_level,
                std::size_t samples, std::uint64_t seed,
                const std::string& csv_out) {
  DomainOracle dom;
  if (shape == "ball")
    dom = make_ball(2, {0.0, 0.0}, 1.0);
  else if (shape == "box")
    dom = make_box(2, {0.0, 0.0}, {1.0, 1.0});
  else if (shape == "annulus")
    dom = make_annulus(2, {0.0, 0.0}, 0.4, 1.0);
  else
    throw CLI::ValidationError("--shape", "unknown shape " + shape);
  const auto cubes = whitney_decompose(dom, min_level);
  const WhitneyReport r = verify_decomposition(cubes, dom, samples, seed,
                                               min_level);
  if (!csv_out.empty()) write_cubes_csv(cubes, csv_out);
  rep.emit({{"check", "whitney-decomposition"},
            {"shape", shape},
            {"min_level", min_level},
            {"num_cubes", r.num_cubes},
            {"disjoint", r.disjoint},
            {"distance_ok", r.distance_ok},
            {"distance_exact", r.distance_exact},
            {"coverage", r.coverage},
            {"samples", r.samples}},
           r.disjoint && r.distance_ok && r.coverage >= 0.999);
  return 0;
}

int cmd_cz_check(Reporter& rep, const std::string& kernel, int n, int order,
                 int centers, std::uint64_t seed) {
  const KernelDescriptor K = make_kernel(kernel, n);
  const DomainOracle dom = make_ball(n, std::vector<double>(n, 0.0), 1.0);
  const double kappa1 = sk_check(K, dom, 2000, seed);
  const CzCheckReport r = cz_check(K, dom, order, centers, seed + 1);
  const bool pass = r.homogeneity_dev < 1e-10 && r.mean_zero_dev < 1e-8 &&
                    std::isfinite(kappa1);
  rep.emit({{"check", "singular-kernel-conditions"},
            {"kernel", kernel},
            {"n", n},
            {"kappa1_est", kappa1},
            {"homogeneity_dev", r.homogeneity_dev},
            {"mean_zero_dev", r.mean_zero_dev},
            {"kappa2", r.kappa2}},
           pass);
  return 0;
}

int cmd_cz_bound(Reporter& rep, const std::string& kernel, double p,
                 double delta, const std::string& weight_spec, int N,
                 int family, std::uint64_t seed) {
  const KernelDescriptor K = make_kernel(kernel, 2);
  const UniformGrid g = make_cell_grid(2, -0.5, 1.0, N);
  const auto fam = make_test_family(g, family, seed);
  std::vector<double> eps;
  for (int e = 3; e <= 7; ++e) eps.push_back(std::ldexp(1.0, -e));
  const Weight w = make_weight(weight_spec);
  const BoundReport wr = weighted_bound_ratio(K, p, w, fam, eps);
  NFunctionPD nf(p, delta);
  const DomainOracle dom = make_ball(2, {0.0, 0.0}, 1.0);
  const CzCheckReport cz = cz_check(K, dom, 512, 4, seed);
  const double kappa1 = sk_check(K, dom, 2000, seed + 1);
  const BoundReport orr = orlicz_bound_ratio(K, nf, fam, eps, kappa1 + cz.kappa2);
  // a norm spread of factor 2 inflates the modular spread by at most the
  // doubling constant of phi
  const double doubling = delta2_estimate(nf);
  const bool pass = wr.eps_variation < 2.0 && orr.eps_variation < doubling;
  rep.emit({{"check", "truncated-operator-bounds"},
            {"kernel", kernel},
            {"p", p},
            {"delta", delta},
            {"weight", weight_spec},
            {"grid", N},
            {"weighted_sup_ratio", wr.sup_ratio},
            {"weighted_eps_variation", wr.eps_variation},
            {"orlicz_sup_ratio", orr.sup_ratio},
            {"orlicz_eps_variation", orr.eps_variation},
            {"doubling_threshold", doubling},
            {"ap_const", ap_constant(w, p, g)}},
           pass);
  return 0;
}

UniformGridField default_bogovskii_data(const UniformGrid& g) {
  return make_scalar_field(g, [&](const std::vector<double>& x) {
    double v = 1.0;
    for (int a = 0; a < g.n; ++a) v *= std::sin(2.0 * M_PI * (x[a] + 0.5));
    return v;
  });
}

int cmd_bogovskii_solve(Reporter& rep, int n, int N, int m,
                        const std::string& out) {
  Cube Q{std::vector<double>(n, 0.0), 1.0};
  const UniformGrid g = make_cell_grid(n, -0.5, 1.0, N);
  const UniformGridField f = default_bogovskii_data(g);
  const BogovskiiSolution sol = bogovskii_apply(f, Q, m, true);
  const DivResidual r = divergence_residual(sol);
  if (!out.empty()) write_binary(sol.v, out);
  rep.emit({{"check", "divergence-equation-residual"},
            {"n", n},
            {"grid", N},
            {"inner_order", m},
            {"div_l2_rel", r.l2_rel},
            {"div_linf", r.linf}},
           std::isfinite(r.l2_rel));
  return 0;
}

int cmd_bogovskii_estimates(Reporter& rep, int N, int m, double p, double delta,
                            int h_count) {
  Cube Q{{0.0, 0.0}, 1.0};
  const UniformGrid g = make_cell_grid(2, -0.5, 1.0, N);
  const UniformGridField f = default_bogovskii_data(g);
  const BogovskiiSolution sol = bogovskii_apply(f, Q, m, true);
  NFunctionPD nf(p, delta);
  const double grad_ratio = gradient_bound_ratio(sol, p);
  json per_h = json::array();
  double lo = 0, hi = 0;
  for (int j = 0; j < h_count; ++j) {
    const double h = g.spacing * (1 << j);
    if (h > 0.25) break;
    const double dq = diffquot_bound_ratio(sol, p, nullptr, h);
    const auto [oii, oiii] = orlicz_bound_ratios(sol, nf, h);
    per_h.push_back({{"h", h}, {"dq_ratio", dq}, {"orlicz_grad", oii},
                     {"orlicz_dq", oiii}});
    if (j == 0) lo = hi = dq;
    lo = std::min(lo, dq);
    hi = std::max(hi, dq);
  }
  const double spread = lo > 0 ? hi / lo : 0.0;
  rep.emit({{"check", "divergence-equation-difference-quotient-bounds"},
            {"grid", N},
            {"p", p},
            {"delta", delta},
            {"gradient_ratio", grad_ratio},
            {"per_h", per_h},
            {"h_spread", spread}},
           std::isfinite(grad_ratio) && spread > 0 && spread < 2.0);
  return 0;
}

int cmd_pstokes_solve(Reporter& rep, double p, double delta,
                      const std::vector<int>& grids, const std::string& preset,
                      double tol, std::uint64_t seed) {
  bool all = true;
  for (int N : grids) {
    const UniformGrid g = make_cell_grid(2, 0.0, 1.0, N);
    PStokesProblem prob{StressModel{NFunctionPD(p, delta)},
                        make_forcing(g, preset)};
    const PStokesSolution sol = solve(prob, tol, 20000);
    bool monotone = true;
    for (std::size_t i = 1; i < sol.energy_history.size(); ++i)
      monotone = monotone &&
                 sol.energy_history[i] <=
                     sol.energy_history[i - 1] +
                         1e-11 * (1.0 + std::abs(sol.energy_history[i - 1]));
    const double divmax = max_interior_div(sol.u);
    const double wres = weak_residual(sol, prob, 10, seed);
    const double ap = apriori_ratio(sol, prob);
    const bool pass = sol.converged && monotone && divmax <= 1e-10;
    all = all && pass;
    rep.emit({{"check", "p-stokes-solve"},
              {"p", p},
              {"delta", delta},
              {"grid", N},
              {"forcing", preset},
              {"converged", sol.converged},
              {"iterations", sol.iterations},
              {"grad_norm", sol.grad_norm},
              {"energy_monotone", monotone},
              {"max_interior_div", divmax},
              {"weak_residual", wres},
              {"apriori_ratio", ap}},
             pass);
  }
  return all ? 0 : 1;
}

int cmd_pstokes_regularity(Reporter& rep, double p, double delta,
                           const std::vector<int>& grids,
                           const std::string& preset, double tol,
                           int band_cells) {
  double lo_ratio = 0, hi_ratio = 0;
  bool first = true, all = true;
  for (int N : grids) {
    const UniformGrid g = make_cell_grid(2, 0.0, 1.0, N);
    PStokesProblem prob{StressModel{NFunctionPD(p, delta)},
                        make_forcing(g, preset)};
    const PStokesSolution sol = solve(prob, tol, 20000);
    const Cube Q{{0.5, 0.5}, 0.5};
    const CutoffSpec cut = make_cutoff(Q, g, band_cells);
    std::vector<double> hs;
    for (int j = 0; j < 3; ++j) {
      const double h = g.spacing * (1 << j);
      if (h < 0.25 * Q.side) hs.push_back(h);
    }
    const RegularityReport r = interior_regularity_check(sol, prob, cut, hs);
    if (first) { lo_ratio = hi_ratio = r.ratio; first = false; }
    lo_ratio = std::min(lo_ratio, r.ratio);
    hi_ratio = std::max(hi_ratio, r.ratio);
    const bool pass = sol.converged && r.spread_dF2 < 2.0 && r.spread_phi < 2.0;
    all = all && pass;
    json tang = json::array();
    for (const auto& t : r.tang)
      tang.push_back({{"h", t.h}, {"k", t.k}, {"xi_dF2", t.xi_dF2},
                      {"phi_grad_dqu", t.phi_grad_dqu}});
    rep.emit({{"check", "interior-regularity-estimate"},
              {"p", p},
              {"delta", delta},
              {"grid", N},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"ratio", r.ratio},
              {"xi_norm1_inf", r.xi_norm1_inf},
              {"xi_norm2_inf", r.xi_norm2_inf},
              {"tang", tang},
              {"h_spread_dF2", r.spread_dF2},
              {"h_spread_phi", r.spread_phi}},
             pass);
  }
  const bool stable = lo_ratio > 0 && hi_ratio / lo_ratio < 2.0;
  rep.emit({{"check", "interior-regularity-refinement-stability"},
            {"p", p},
            {"delta", delta},
            {"ratio_min", lo_ratio},
            {"ratio_max", hi_ratio}},
           stable && all);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification toolkit for shear-thinning flow estimates"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value config file, sections per subcommand");

  std::uint64_t seed = 1;
  std::string out;
  app.add_option("--seed", seed, "rng seed")->capture_default_str();
  app.add_option("--out", out, "JSON-lines report path (default stdout)");

  double p = 1.5, delta = 0.1, eps = 1.0, tol = 1e-9;
  int N = 64, samples = 10000, h_mult = 1, min_level = -12, order = 512,
      centers = 16, m = 16, n = 2, family = 20, h_count = 6, band_cells = 8;
  std::size_t mc_samples = 100000;
  std::string shape = "ball", kernel = "riesz-1", weight = "const:1",
              preset = "vortex", csv_out;
  std::vector<int> grids{64};

  auto* verify = app.add_subcommand("verify", "inequality and calculus checks");
  auto* vy = verify->add_subcommand("young", "Young-type inequalities");
  vy->add_option("--p", p)->capture_default_str();
  vy->add_option("--delta", delta)->capture_default_str();
  vy->add_option("--eps", eps)->capture_default_str();
  vy->add_option("--samples", samples)->capture_default_str();
  auto* vh = verify->add_subcommand("hammer", "stress/field equivalences");
  vh->add_option("--p", p)->capture_default_str();
  vh->add_option("--delta", delta)->capture_default_str();
  vh->add_option("--samples", samples)->capture_default_str();
  auto* ve = verify->add_subcommand("eq2", "modular difference-quotient bound");
  ve->add_option("--p", p)->capture_default_str();
  ve->add_option("--delta", delta)->capture_default_str();
  ve->add_option("--grid", N)->capture_default_str();
  auto* vd = verify->add_subcommand("diffquot", "difference-quotient equivalences");
  vd->add_option("--p", p)->capture_default_str();
  vd->add_option("--delta", delta)->capture_default_str();
  vd->add_option("--grid", N)->capture_default_str();
  vd->add_option("--h-mult", h_mult)->capture_default_str();

  auto* wh = app.add_subcommand("whitney", "dyadic decomposition check");
  wh->add_option("--shape", shape, "ball | box | annulus")->capture_default_str();
  wh->add_option("--min-level", min_level)->capture_default_str();
  wh->add_option("--samples", mc_samples)->capture_default_str();
  wh->add_option("--csv", csv_out, "write the cube list as CSV");

  auto* cz = app.add_subcommand("cz", "singular integral checks");
  auto* czc = cz->add_subcommand("check", "kernel conditions");
  czc->add_option("--kernel", kernel)->capture_default_str();
  czc->add_option("--n", n)->capture_default_str();
  czc->add_option("--order", order)->capture_default_str();
  czc->add_option("--centers", centers)->capture_default_str();
  auto* czb = cz->add_subcommand("bound", "operator bound measurement");
  czb->add_option("--kernel", kernel)->capture_default_str();
  czb->add_option("--p", p)->capture_default_str();
  czb->add_option("--delta", delta)->capture_default_str();
  czb->add_option("--weight", weight)->capture_default_str();
  czb->add_option("--grid", N)->capture_default_str();
  czb->add_option("--family", family)->capture_default_str();

  auto* bg = app.add_subcommand("bogovskii", "divergence equation operator");
  auto* bgs = bg->add_subcommand("solve", "apply the operator, check div");
  bgs->add_option("--n", n)->capture_default_str();
  bgs->add_option("--grid", N)->capture_default_str();
  bgs->add_option("--m", m)->capture_default_str();
  bgs->add_option("--field-out", csv_out, "write the solution field (binary)");
  auto* bge = bg->add_subcommand("estimates", "gradient and dq bound ratios");
  bge->add_option("--grid", N)->capture_default_str();
  bge->add_option("--m", m)->capture_default_str();
  bge->add_option("--p", p)->capture_default_str();
  bge->add_option("--delta", delta)->capture_default_str();
  bge->add_option("--h-count", h_count)->capture_default_str();

  auto* ps = app.add_subcommand("pstokes", "planar shear-thinning Stokes");
  auto* pss = ps->add_subcommand("solve", "energy minimization solve");
  pss->add_option("--p", p)->capture_default_str();
  pss->add_option("--delta", delta)->capture_default_str();
  pss->add_option("--grid-list", grids, "grid sizes")->delimiter(',')->capture_default_str();
  pss->add_option("--f", preset, "forcing preset")->capture_default_str();
  pss->add_option("--tol", tol)->capture_default_str();
  auto* psr = ps->add_subcommand("regularity", "interior regularity ratios");
  psr->add_option("--p", p)->capture_default_str();
  psr->add_option("--delta", delta)->capture_default_str();
  psr->add_option("--grid-list", grids)->delimiter(',')->capture_default_str();
  psr->add_option("--f", preset)->capture_default_str();
  psr->add_option("--tol", tol)->capture_default_str();
  psr->add_option("--band-cells", band_cells,
                  "minimum cells across the cutoff transition band")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Reporter rep;
  try {
    rep.open(out);
    if (vy->parsed()) cmd_verify_young(rep, p, delta, eps, samples, seed);
    else if (vh->parsed()) cmd_verify_hammer(rep, p, delta, samples, seed);
    else if (ve->parsed()) cmd_verify_eq2(rep, p, delta, N);
    else if (vd->parsed()) cmd_verify_diffquot(rep, p, delta, N, h_mult);
    else if (wh->parsed()) cmd_whitney(rep, shape, min_level, mc_samples, seed, csv_out);
    else if (czc->parsed()) cmd_cz_check(rep, kernel, n, order, centers, seed);
    else if (czb->parsed()) cmd_cz_bound(rep, kernel, p, delta, weight, N, family, seed);
    else if (bgs->parsed()) cmd_bogovskii_solve(rep, n, N, m, csv_out);
    else if (bge->parsed()) cmd_bogovskii_estimates(rep, N, m, p, delta, h_count);
    else if (pss->parsed()) cmd_pstokes_solve(rep, p, delta, grids, preset, tol, seed);
    else if (psr->parsed()) cmd_pstokes_regularity(rep, p, delta, grids, preset, tol, band_cells);
    else {
      std::cerr << "missing subcommand\n" << app.help() << "\n";
      return 2;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return rep.all_pass ? 0 : 1;
}
