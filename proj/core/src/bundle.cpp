#include "oblab/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>

#include "oblab/linalg.hpp"

namespace oblab {

long long grid_index(const std::vector<int>& grid, const std::vector<int>& ix) {
  long long f = 0;
  for (size_t i = 0; i < grid.size(); ++i) f = f * grid[i] + ix[i];
  return f;
}

std::vector<int> grid_unindex(const std::vector<int>& grid, long long flat) {
  std::vector<int> ix(grid.size());
  for (int i = static_cast<int>(grid.size()) - 1; i >= 0; --i) {
    ix[i] = static_cast<int>(flat % grid[i]);
    flat /= grid[i];
  }
  return ix;
}

CMatrix build_a(const NormalizedMap& psi, const TorusCover& cover,
                const std::vector<double>& x, const std::vector<int>& patches) {
  const int m = psi.dim();
  const int np = static_cast<int>(patches.size());
  std::vector<double> w(np);
  for (int a = 0; a < np; ++a) w[a] = cover.chi_weight(patches[a], x);
  std::map<std::vector<int>, CMatrix> cache;
  CMatrix out = CMatrix::Zero(np * m, np * m);
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b) {
      double ww = w[a] * w[b];
      if (ww == 0.0) continue;
      ZdElement g = cover.cocycle(patches[a], patches[b]);
      auto it = cache.find(g.coords);
      if (it == cache.end()) it = cache.emplace(g.coords, psi.value(g)).first;
      out.block(a * m, b * m, m, m) = ww * it->second;
    }
  return out;
}

PointField assemble_point(const NormalizedMap& psi, const TorusCover& cover,
                          const std::vector<double>& x, double reach,
                          double gap_tol) {
  PointField p;
  p.patches = cover.active_patches(x, reach);
  CMatrix a = build_a(psi, cover, x, p.patches);
  double scale = max_abs(a);
  if (max_abs(a - a.adjoint()) > rel_tol(1e-10, scale))
    throw ContractViolation("assemble_point: a(x) not Hermitian; is the map normalized?");
  EigenSystem sys = hermitian_eig(a);
  p.evals = std::move(sys.eigenvalues);
  p.gap = 1e300;
  for (Eigen::Index i = 0; i < p.evals.size(); ++i)
    p.gap = std::min(p.gap, std::abs(p.evals[i] - 0.5));
  if (p.gap < gap_tol) {
    double worst = 0.5;
    for (Eigen::Index i = 0; i < p.evals.size(); ++i)
      if (std::abs(p.evals[i] - 0.5) == p.gap) worst = p.evals[i];
    std::string where;
    for (double xi : x) where += std::to_string(xi) + " ";
    throw SpectralGapError(
        "assemble_point: eigenvalue " + std::to_string(worst) +
            " within gap_tol of 1/2 at x = ( " + where +
            "); the map is not multiplicative enough for this construction",
        worst);
  }
  Eigen::Index lo = 0;
  while (lo < p.evals.size() && p.evals[lo] < 0.5) ++lo;
  p.v1 = sys.eigenvectors.rightCols(sys.eigenvectors.cols() - lo);
  p.q = p.v1 * p.v1.adjoint();
  return p;
}

BundleField assemble_bundle(const NormalizedMap& psi, const TorusCover& cover,
                            const std::vector<int>& grid, double gap_tol,
                            double reach) {
  if (static_cast<int>(grid.size()) != psi.rank() || psi.rank() != cover.rank())
    throw ContractViolation("assemble_bundle: rank mismatch");
  BundleField f;
  f.d = psi.rank();
  f.m = psi.dim();
  f.n_patches = cover.n_patches();
  f.grid = grid;
  f.min_gap = 1e300;
  const long long n = grid_size(grid);
  f.points.reserve(n);
  for (long long flat = 0; flat < n; ++flat) {
    auto ix = grid_unindex(grid, flat);
    std::vector<double> x(f.d);
    for (int i = 0; i < f.d; ++i) x[i] = static_cast<double>(ix[i]) / grid[i];
    PointField p = assemble_point(psi, cover, x, reach, gap_tol);
    int rank = static_cast<int>(p.v1.cols());
    if (f.rank_q < 0) f.rank_q = rank;
    if (rank != f.rank_q)
      throw Error("assemble_bundle: projector rank varies over the grid");
    f.min_gap = std::min(f.min_gap, p.gap);
    f.points.push_back(std::move(p));
  }
  return f;
}

CMatrix to_full_frame(const PointField& p, int n_patches, int m) {
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(n_patches) * m,
                              static_cast<Eigen::Index>(n_patches) * m);
  const int np = static_cast<int>(p.patches.size());
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b)
      out.block(static_cast<Eigen::Index>(p.patches[a]) * m,
                static_cast<Eigen::Index>(p.patches[b]) * m, m, m) =
          p.q.block(a * m, b * m, m, m);
  return out;
}

BundleField pullback_field(const BundleField& src, int d,
                           const std::array<int, 2>& axes,
                           const TorusCover& cover,
                           const std::vector<int>& grid) {
  if (src.d != 2) throw ContractViolation("pullback_field: source must live on T^2");
  if (axes[0] == axes[1] || axes[0] < 0 || axes[1] < 0 || axes[0] >= d || axes[1] >= d)
    throw ContractViolation("pullback_field: target axes must be distinct and in range");
  if (grid[axes[0]] != src.grid[0] || grid[axes[1]] != src.grid[1])
    throw ContractViolation("pullback_field: factor grids must match the source");
  BundleField f;
  f.d = d;
  f.m = src.m;
  f.n_patches = cover.n_patches();
  f.grid = grid;
  f.rank_q = src.rank_q;
  f.min_gap = std::min(src.min_gap, 0.5);
  const int m = src.m;
  const long long n = grid_size(grid);
  f.points.reserve(n);
  for (long long flat = 0; flat < n; ++flat) {
    auto ix = grid_unindex(grid, flat);
    std::vector<double> x(d);
    for (int i = 0; i < d; ++i) x[i] = static_cast<double>(ix[i]) / grid[i];
    const PointField& sp =
        src.points[grid_index(src.grid, {ix[axes[0]], ix[axes[1]]})];
    PointField p;
    p.patches = cover.active_patches(x, 0.0);
    const int np = static_cast<int>(p.patches.size());
    // map every target patch to its source slot and its rest-axes chi weight
    std::vector<int> slot(np);
    std::vector<double> wrest(np);
    for (int a = 0; a < np; ++a) {
      auto arcs = cover.unflatten(p.patches[a]);
      int sid = 3 * arcs[axes[0]] + arcs[axes[1]];
      auto it = std::find(sp.patches.begin(), sp.patches.end(), sid);
      if (it == sp.patches.end())
        throw Error("pullback_field: source patch missing (grids out of sync)");
      slot[a] = static_cast<int>(it - sp.patches.begin());
      double w = 1.0;
      for (int i = 0; i < d; ++i)
        if (i != axes[0] && i != axes[1])
          w *= cover.circle().chi(x[i])[arcs[i]];
      wrest[a] = w;
    }
    p.v1.resize(static_cast<Eigen::Index>(np) * m, sp.v1.cols());
    for (int a = 0; a < np; ++a)
      p.v1.middleRows(static_cast<Eigen::Index>(a) * m, m) =
          wrest[a] * sp.v1.middleRows(static_cast<Eigen::Index>(slot[a]) * m, m);
    p.q = p.v1 * p.v1.adjoint();
    std::vector<double> ev(sp.evals.data(), sp.evals.data() + sp.evals.size());
    ev.resize(static_cast<size_t>(np) * m, 0.0);
    std::sort(ev.begin(), ev.end());
    p.evals = Eigen::Map<RVector>(ev.data(), static_cast<Eigen::Index>(ev.size()));
    p.gap = std::min(sp.gap, 0.5);
    f.points.push_back(std::move(p));
  }
  return f;
}

BundleField direct_sum_fields(const BundleField& f1, const BundleField& f2) {
  if (f1.d != f2.d || f1.grid != f2.grid)
    throw ContractViolation("direct_sum_fields: mismatched grids");
  BundleField f;
  f.d = f1.d;
  f.m = f1.m + f2.m;
  f.n_patches = f1.n_patches;
  f.grid = f1.grid;
  f.rank_q = f1.rank_q + f2.rank_q;
  f.min_gap = std::min(f1.min_gap, f2.min_gap);
  f.points.reserve(f1.points.size());
  for (size_t k = 0; k < f1.points.size(); ++k) {
    const PointField& a = f1.points[k];
    const PointField& b = f2.points[k];
    if (a.patches != b.patches)
      throw ContractViolation("direct_sum_fields: patch sets differ");
    const int np = static_cast<int>(a.patches.size());
    PointField p;
    p.patches = a.patches;
    p.v1 = CMatrix::Zero(static_cast<Eigen::Index>(np) * f.m,
                         a.v1.cols() + b.v1.cols());
    for (int t = 0; t < np; ++t) {
      p.v1.block(static_cast<Eigen::Index>(t) * f.m, 0, f1.m, a.v1.cols()) =
          a.v1.middleRows(static_cast<Eigen::Index>(t) * f1.m, f1.m);
      p.v1.block(static_cast<Eigen::Index>(t) * f.m + f1.m, a.v1.cols(), f2.m,
                 b.v1.cols()) =
          b.v1.middleRows(static_cast<Eigen::Index>(t) * f2.m, f2.m);
    }
    p.q = p.v1 * p.v1.adjoint();
    std::vector<double> ev;
    ev.insert(ev.end(), a.evals.data(), a.evals.data() + a.evals.size());
    ev.insert(ev.end(), b.evals.data(), b.evals.data() + b.evals.size());
    std::sort(ev.begin(), ev.end());
    p.evals = Eigen::Map<RVector>(ev.data(), static_cast<Eigen::Index>(ev.size()));
    p.gap = std::min(a.gap, b.gap);
    f.points.push_back(std::move(p));
  }
  return f;
}

double max_q_deviation(const BundleField& f1, const BundleField& f2) {
  if (f1.grid != f2.grid || f1.m != f2.m)
    throw ContractViolation("max_q_deviation: incompatible fields");
  double worst = 0.0;
  for (size_t k = 0; k < f1.points.size(); ++k) {
    CMatrix d = to_full_frame(f1.points[k], f1.n_patches, f1.m) -
                to_full_frame(f2.points[k], f2.n_patches, f2.m);
    worst = std::max(worst, max_abs(d));
  }
  return worst;
}

BundleDiagnostics bundle_diagnostics(const BundleField& f) {
  BundleDiagnostics d;
  auto pnorm = [](const std::vector<double>& v, double p) {
    if (std::isinf(p)) {
      double m = 0;
      for (double x : v) m = std::max(m, x);
      return m;
    }
    double s = 0;
    for (double x : v) s += std::pow(x, p);
    return std::pow(s, 1.0 / p);
  };
  for (const auto& pt : f.points) {
    std::vector<double> aq, a2a;
    for (Eigen::Index i = 0; i < pt.evals.size(); ++i) {
      double l = pt.evals[i];
      aq.push_back(std::abs(l - (l >= 0.5 ? 1.0 : 0.0)));
      a2a.push_back(std::abs(l * l - l));
      d.a_inf_sup = std::max(d.a_inf_sup, std::abs(l));
    }
    d.a2a_sup = std::max(d.a2a_sup, pnorm(a2a, kInfNorm));
    d.pnorm_slack_1 = std::max(d.pnorm_slack_1, pnorm(aq, 1) - 2 * pnorm(a2a, 1));
    d.pnorm_slack_2 = std::max(d.pnorm_slack_2, pnorm(aq, 2) - 2 * pnorm(a2a, 2));
    d.pnorm_slack_inf =
        std::max(d.pnorm_slack_inf, pnorm(aq, kInfNorm) - 2 * pnorm(a2a, kInfNorm));
  }
  return d;
}

void export_bundle(const BundleField& f, std::ostream& os) {
  os << "oblab-bundle 1\n"
     << f.d << ' ' << f.n_patches << ' ' << f.m << ' ' << f.rank_q << '\n';
  for (size_t i = 0; i < f.grid.size(); ++i)
    os << f.grid[i] << (i + 1 < f.grid.size() ? ' ' : '\n');
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", f.min_gap);
  os << buf << '\n';
  for (const auto& p : f.points) {
    os << p.patches.size();
    for (int id : p.patches) os << ' ' << id;
    os << '\n';
    for (Eigen::Index i = 0; i < p.evals.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", p.evals[i]);
      os << buf << (i + 1 < p.evals.size() ? " " : "");
    }
    os << '\n';
    for (Eigen::Index i = 0; i < p.q.rows(); ++i) {
      for (Eigen::Index j = 0; j < p.q.cols(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g", p.q(i, j).real(),
                      p.q(i, j).imag());
        os << buf << (j + 1 < p.q.cols() ? "  " : "");
      }
      os << '\n';
    }
  }
}

BundleField import_bundle(std::istream& is) {
  std::string magic;
  int ver = 0;
  BundleField f;
  is >> magic >> ver >> f.d >> f.n_patches >> f.m >> f.rank_q;
  if (magic != "oblab-bundle" || ver != 1) throw Error("import_bundle: bad header");
  f.grid.resize(f.d);
  for (int i = 0; i < f.d; ++i) is >> f.grid[i];
  is >> f.min_gap;
  const long long n = grid_size(f.grid);
  for (long long k = 0; k < n; ++k) {
    PointField p;
    size_t np;
    if (!(is >> np)) throw Error("import_bundle: truncated");
    p.patches.resize(np);
    for (auto& id : p.patches) is >> id;
    const Eigen::Index sz = static_cast<Eigen::Index>(np) * f.m;
    p.evals.resize(sz);
    for (Eigen::Index i = 0; i < sz; ++i) is >> p.evals[i];
    p.q.resize(sz, sz);
    for (Eigen::Index i = 0; i < sz; ++i)
      for (Eigen::Index j = 0; j < sz; ++j) {
        double re, im;
        is >> re >> im;
        p.q(i, j) = cplx(re, im);
      }
    p.gap = 1e300;
    for (Eigen::Index i = 0; i < sz; ++i)
      p.gap = std::min(p.gap, std::abs(p.evals[i] - 0.5));
    // v1 recovered from q when needed
    EigenSystem sys = hermitian_eig(p.q);
    Eigen::Index lo = 0;
    while (lo < sys.eigenvalues.size() && sys.eigenvalues[lo] < 0.5) ++lo;
    p.v1 = sys.eigenvectors.rightCols(sys.eigenvectors.cols() - lo);
    f.points.push_back(std::move(p));
  }
  return f;
}

}  // namespace oblab
