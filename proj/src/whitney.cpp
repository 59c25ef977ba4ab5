#include "bogotool/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace bogotool {

double DyadicCube::diam() const { return std::sqrt(double(n)) * side(); }

bool DyadicCube::contains_point(std::span<const double> x) const {
  for (int a = 0; a < n; ++a)
    if (x[a] < lo(a) || x[a] > hi(a)) return false;
  return true;
}

bool dyadic_disjoint(const DyadicCube& a, const DyadicCube& b) {
  // compare open cubes on the common finer level, exactly in integers
  const DyadicCube& coarse = a.level >= b.level ? a : b;
  const DyadicCube& fine = a.level >= b.level ? b : a;
  const int shift = coarse.level - fine.level;
  if (shift > 62) return true;  // sides differ absurdly; treat as disjoint
  for (int ax = 0; ax < a.n; ++ax) {
    const std::int64_t clo = coarse.index[ax] << shift;
    const std::int64_t chi = (coarse.index[ax] + 1) << shift;
    if (fine.index[ax] < clo || fine.index[ax] >= chi) return true;
  }
  return false;  // the finer cube nests inside the coarser one
}

namespace {

double sq(double v) { return v * v; }

double corner_max_dist(const DyadicCube& q, const std::vector<double>& c) {
  // max over cube corners of |corner - c|; per axis the max coordinate gap
  double s = 0.0;
  for (int a = 0; a < q.n; ++a)
    s += sq(std::max(std::abs(q.lo(a) - c[a]), std::abs(q.hi(a) - c[a])));
  return std::sqrt(s);
}

double clamp_min_dist(const DyadicCube& q, const std::vector<double>& c) {
  // min over the cube closure of |x - c|
  double s = 0.0;
  for (int a = 0; a < q.n; ++a) {
    const double x = std::clamp(c[a], q.lo(a), q.hi(a));
    s += sq(x - c[a]);
  }
  return std::sqrt(s);
}

}  // namespace

DomainOracle make_ball(int n, std::vector<double> center, double radius) {
  if (!(radius > 0)) throw std::invalid_argument("make_ball: radius must be > 0");
  DomainOracle dom;
  dom.n = n;
  dom.bbox_lo.resize(n);
  dom.bbox_hi.resize(n);
  for (int a = 0; a < n; ++a) {
    dom.bbox_lo[a] = center[a] - radius;
    dom.bbox_hi[a] = center[a] + radius;
  }
  dom.membership = [center, radius](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t a = 0; a < center.size(); ++a) s += sq(x[a] - center[a]);
    return s < radius * radius;
  };
  dom.boundary_distance = [center, radius](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t a = 0; a < center.size(); ++a) s += sq(x[a] - center[a]);
    return std::abs(radius - std::sqrt(s));
  };
  dom.cube_boundary_distance = [center, radius](const DyadicCube& q) {
    // radius - |x - c| is concave, its min over the cube sits at a corner;
    // for cubes outside the ball the min of |x-c| - radius sits at the
    // clamped projection
    const double dmax = corner_max_dist(q, center);
    const double dmin = clamp_min_dist(q, center);
    if (dmax <= radius) return radius - dmax;      // cube inside
    if (dmin >= radius) return dmin - radius;      // cube outside
    return 0.0;                                    // cube straddles the sphere
  };
  return dom;
}

DomainOracle make_box(int n, std::vector<double> lo, std::vector<double> hi) {
  for (int a = 0; a < n; ++a)
    if (!(hi[a] > lo[a])) throw std::invalid_argument("make_box: empty box");
  DomainOracle dom;
  dom.n = n;
  dom.bbox_lo = lo;
  dom.bbox_hi = hi;
  dom.membership = [lo, hi](std::span<const double> x) {
    for (std::size_t a = 0; a < lo.size(); ++a)
      if (x[a] <= lo[a] || x[a] >= hi[a]) return false;
    return true;
  };
  dom.boundary_distance = [lo, hi](std::span<const double> x) {
    // distance to the boundary of the box, inside or outside
    bool inside = true;
    double inner = std::numeric_limits<double>::infinity();
    double outer2 = 0.0;
    for (std::size_t a = 0; a < lo.size(); ++a) {
      if (x[a] <= lo[a] || x[a] >= hi[a]) inside = false;
      inner = std::min({inner, x[a] - lo[a], hi[a] - x[a]});
      const double gap = std::max({lo[a] - x[a], x[a] - hi[a], 0.0});
      outer2 += sq(gap);
    }
    return inside ? inner : std::sqrt(outer2);
  };
  dom.cube_boundary_distance = [lo, hi, n](const DyadicCube& q) {
    // the signed slab distance per axis is concave piecewise linear, so the
    // min over the cube closure is attained at a corner
    double best = std::numeric_limits<double>::infinity();
    const int corners = 1 << n;
    std::vector<double> x(n);
    for (int c = 0; c < corners; ++c) {
      bool inside = true;
      double inner = std::numeric_limits<double>::infinity();
      double outer2 = 0.0;
      for (int a = 0; a < n; ++a) {
        x[a] = (c >> a) & 1 ? q.hi(a) : q.lo(a);
        if (x[a] <= lo[a] || x[a] >= hi[a]) inside = false;
        inner = std::min({inner, x[a] - lo[a], hi[a] - x[a]});
        const double gap = std::max({lo[a] - x[a], x[a] - hi[a], 0.0});
        outer2 += sq(gap);
      }
      best = std::min(best, inside ? inner : std::sqrt(outer2));
    }
    return best;
  };
  return dom;
}

DomainOracle make_annulus(int n, std::vector<double> center, double r_inner,
                          double r_outer) {
  if (!(0 < r_inner && r_inner < r_outer))
    throw std::invalid_argument("make_annulus: need 0 < r_inner < r_outer");
  DomainOracle dom;
  dom.n = n;
  dom.bbox_lo.resize(n);
  dom.bbox_hi.resize(n);
  for (int a = 0; a < n; ++a) {
    dom.bbox_lo[a] = center[a] - r_outer;
    dom.bbox_hi[a] = center[a] + r_outer;
  }
  dom.membership = [center, r_inner, r_outer](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t a = 0; a < center.size(); ++a) s += sq(x[a] - center[a]);
    return s > r_inner * r_inner && s < r_outer * r_outer;
  };
  dom.boundary_distance = [center, r_inner, r_outer](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t a = 0; a < center.size(); ++a) s += sq(x[a] - center[a]);
    const double r = std::sqrt(s);
    return std::min(std::abs(r - r_inner), std::abs(r_outer - r));
  };
  dom.cube_boundary_distance = [center, r_inner, r_outer](const DyadicCube& q) {
    const double dmax = corner_max_dist(q, center);
    const double dmin = clamp_min_dist(q, center);
    // distance to the outer sphere
    double outer;
    if (dmax <= r_outer) outer = r_outer - dmax;
    else if (dmin >= r_outer) outer = dmin - r_outer;
    else outer = 0.0;
    // distance to the inner sphere (|x-c| - r_inner is convex; min at the
    // clamped projection, max at a corner)
    double inner;
    if (dmin >= r_inner) inner = dmin - r_inner;
    else if (dmax <= r_inner) inner = r_inner - dmax;
    else inner = 0.0;
    return std::min(outer, inner);
  };
  return dom;
}

double cube_distance(const DomainOracle& dom, const DyadicCube& q, bool* exact) {
  if (dom.cube_boundary_distance) {
    if (exact) *exact = true;
    return dom.cube_boundary_distance(q);
  }
  if (exact) *exact = false;
  // dense sampling: 9 points per axis over the closure
  const int per_axis = 9;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> it(dom.n, 0);
  std::vector<double> x(dom.n);
  while (true) {
    for (int a = 0; a < dom.n; ++a)
      x[a] = q.lo(a) + q.side() * it[a] / (per_axis - 1);
    best = std::min(best, dom.boundary_distance(x));
    int a = 0;
    for (; a < dom.n; ++a) {
      if (++it[a] < per_axis) break;
      it[a] = 0;
    }
    if (a == dom.n) break;
  }
  return best;
}

namespace {

void subdivide(const DomainOracle& dom, const DyadicCube& q, int min_level,
               std::vector<DyadicCube>& out) {
  const double d = cube_distance(dom, q);
  std::vector<double> c(dom.n);
  for (int a = 0; a < dom.n; ++a) c[a] = 0.5 * (q.lo(a) + q.hi(a));
  const bool center_in = dom.membership(c);
  if (d > 0 && !center_in) return;  // cube entirely outside the domain
  if (center_in && d > 4.0 * q.diam()) {
    out.push_back(q);
    return;
  }
  if (q.level <= min_level) return;  // unresolved near the boundary
  DyadicCube child;
  child.n = q.n;
  child.level = q.level - 1;
  const int kids = 1 << q.n;
  for (int k = 0; k < kids; ++k) {
    for (int a = 0; a < q.n; ++a)
      child.index[a] = 2 * q.index[a] + ((k >> a) & 1);
    subdivide(dom, child, min_level, out);
  }
}

}  // namespace

std::vector<DyadicCube> whitney_decompose(const DomainOracle& dom, int min_level) {
  for (int a = 0; a < dom.n; ++a)
    if (!std::isfinite(dom.bbox_lo[a]) || !std::isfinite(dom.bbox_hi[a]))
      throw std::invalid_argument("whitney_decompose: unbounded bounding box");
  // smallest dyadic level whose cubes can cover the bounding box
  double extent = 0.0;
  for (int a = 0; a < dom.n; ++a)
    extent = std::max(extent, dom.bbox_hi[a] - dom.bbox_lo[a]);
  int level = min_level;
  while (std::ldexp(1.0, level) < extent) ++level;

  std::vector<DyadicCube> out;
  DyadicCube root;
  root.n = dom.n;
  root.level = level;
  std::array<std::int64_t, 3> lo{}, hi{};
  for (int a = 0; a < dom.n; ++a) {
    lo[a] = static_cast<std::int64_t>(std::floor(dom.bbox_lo[a] / root.side()));
    hi[a] = static_cast<std::int64_t>(std::floor(dom.bbox_hi[a] / root.side()));
  }
  std::vector<std::int64_t> it(dom.n);
  for (int a = 0; a < dom.n; ++a) it[a] = lo[a];
  while (true) {
    for (int a = 0; a < dom.n; ++a) root.index[a] = it[a];
    subdivide(dom, root, min_level, out);
    int a = 0;
    for (; a < dom.n; ++a) {
      if (++it[a] <= hi[a]) break;
      it[a] = lo[a];
    }
    if (a == dom.n) break;
  }
  std::sort(out.begin(), out.end(), [](const DyadicCube& a, const DyadicCube& b) {
    if (a.level != b.level) return a.level > b.level;
    for (int ax = 0; ax < a.n; ++ax)
      if (a.index[ax] != b.index[ax]) return a.index[ax] < b.index[ax];
    return false;
  });
  return out;
}

namespace {

// packs (level, index) for hash lookup; indices fit in 20 bits per axis at
// the refinement depths used here
std::uint64_t pack_index(const DyadicCube& q) {
  std::uint64_t key = 0;
  for (int a = 0; a < q.n; ++a)
    key = (key << 21) | (static_cast<std::uint64_t>(q.index[a] + (1 << 20)) &
                         ((1u << 21) - 1));
  return key;
}

}  // namespace

WhitneyReport verify_decomposition(std::span<const DyadicCube> cubes,
                                   const DomainOracle& dom, std::size_t samples,
                                   std::uint64_t seed, int min_level) {
  if (cubes.empty())
    throw std::invalid_argument("verify_decomposition: empty cube list");
  WhitneyReport rep;
  rep.num_cubes = cubes.size();
  rep.samples = samples;

  // disjointness through the level/index hash: two dyadic cubes overlap
  // iff one contains the other, i.e. the finer one's ancestor at the
  // coarser level is listed
  std::unordered_map<int, std::unordered_set<std::uint64_t>> by_level;
  rep.disjoint = true;
  for (const auto& q : cubes) {
    if (!by_level[q.level].insert(pack_index(q)).second) rep.disjoint = false;
  }
  for (const auto& q : cubes) {
    DyadicCube anc = q;
    for (const auto& [lvl, set] : by_level) {
      if (lvl <= q.level) continue;
      anc.level = lvl;
      for (int a = 0; a < q.n; ++a) anc.index[a] = q.index[a] >> (lvl - q.level);
      if (set.count(pack_index(anc))) rep.disjoint = false;
    }
  }

  rep.distance_ok = true;
  rep.distance_exact = true;
  for (const auto& q : cubes) {
    bool exact = false;
    const double d = cube_distance(dom, q, &exact);
    if (!exact) rep.distance_exact = false;
    if (!(d > 4.0 * q.diam())) rep.distance_ok = false;
  }

  // Monte-Carlo coverage: a sample counts as covered if it lies in the
  // closure of some listed cube or within 5 * 2^min_level of the boundary
  std::mt19937_64 rng(seed);
  std::vector<std::uniform_real_distribution<double>> dist;
  for (int a = 0; a < dom.n; ++a)
    dist.emplace_back(dom.bbox_lo[a], dom.bbox_hi[a]);
  const double near_boundary = 5.0 * std::ldexp(1.0, min_level);
  std::size_t covered = 0, considered = 0;
  std::vector<double> x(dom.n);
  DyadicCube probe;
  probe.n = dom.n;
  while (considered < samples) {
    for (int a = 0; a < dom.n; ++a) x[a] = dist[a](rng);
    if (!dom.membership(x)) continue;
    ++considered;
    bool hit = false;
    for (const auto& [lvl, set] : by_level) {
      probe.level = lvl;
      const double side = std::ldexp(1.0, lvl);
      for (int a = 0; a < dom.n; ++a)
        probe.index[a] = static_cast<std::int64_t>(std::floor(x[a] / side));
      if (set.count(pack_index(probe))) {
        hit = true;
        break;
      }
    }
    if (hit || dom.boundary_distance(x) <= near_boundary) ++covered;
  }
  rep.coverage = considered ? double(covered) / double(considered) : 0.0;
  return rep;
}

void write_cubes_csv(std::span<const DyadicCube> cubes, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_cubes_csv: cannot open " + path);
  for (const auto& q : cubes) {
    out << q.level;
    for (int a = 0; a < q.n; ++a) out << ',' << q.index[a];
    out << '\n';
  }
}

}  // namespace bogotool
