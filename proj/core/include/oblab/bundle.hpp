#pragma once

#include <iosfwd>
#include <vector>

#include "oblab/almost_rep.hpp"
#include "oblab/cover.hpp"
#include "oblab/types.hpp"

namespace oblab {

// per-point data, stored on the active patch block only: a(x) is
// block-diagonal (active block + zero complement), so q on the full
// 3^d * m frame is the zero-padded compact q
struct PointField {
  std::vector<int> patches;  // flattened active patch ids, increasing
  CMatrix q;                 // spectral projector on the active block
  CMatrix v1;                // isometry with q = v1 v1^*
  RVector evals;             // spectrum of a(x) on the active block, ascending
  double gap = 0;            // min |eval - 1/2|
};

struct BundleField {
  int d = 0;
  int m = 0;          // fibre dimension of the map
  int n_patches = 0;  // 3^d
  int rank_q = -1;    // constant over the grid
  std::vector<int> grid;
  double min_gap = 0;
  std::vector<PointField> points;  // row-major over the grid
};

// row-major grid helpers
inline long long grid_size(const std::vector<int>& grid) {
  long long n = 1;
  for (int g : grid) n *= g;
  return n;
}
long long grid_index(const std::vector<int>& grid, const std::vector<int>& ix);
std::vector<int> grid_unindex(const std::vector<int>& grid, long long flat);

// sum_{i,j} chi_i chi_j psi(g_ij) (x) e_ij restricted to the given patches
CMatrix build_a(const NormalizedMap& psi, const TorusCover& cover,
                const std::vector<double>& x, const std::vector<int>& patches);

// a(x) and q(x) = chi_[1/2,inf)(a(x)) on the patches active within reach of x
PointField assemble_point(const NormalizedMap& psi, const TorusCover& cover,
                          const std::vector<double>& x, double reach,
                          double gap_tol);

// whole-grid assembly; intended for small grids (the torus analyzers stream
// instead of materializing)
BundleField assemble_bundle(const NormalizedMap& psi, const TorusCover& cover,
                            const std::vector<int>& grid, double gap_tol = 0.05,
                            double reach = 0.0);

// zero-padded q on the full n_patches * m frame
CMatrix to_full_frame(const PointField& p, int n_patches, int m);

// q_src(x_a, x_b) (x) |chi(x_rest)><chi(x_rest)| on the product cover of T^d;
// src must have been assembled on the matching factor grid
BundleField pullback_field(const BundleField& src, int d,
                           const std::array<int, 2>& axes,
                           const TorusCover& cover,
                           const std::vector<int>& grid);

// blockwise direct sum over the fibre index, patch structure shared
BundleField direct_sum_fields(const BundleField& f1, const BundleField& f2);

double max_q_deviation(const BundleField& f1, const BundleField& f2);

struct BundleDiagnostics {
  double a_inf_sup = 0;    // sup_x ||a(x)||_inf
  double a2a_sup = 0;      // sup_x ||a(x)^2 - a(x)||_inf
  // sup_x (||a - q||_p - 2 ||a^2 - a||_p), should be <= 0 up to rounding
  double pnorm_slack_1 = 0, pnorm_slack_2 = 0, pnorm_slack_inf = 0;
};
BundleDiagnostics bundle_diagnostics(const BundleField& f);

// streamable container: header (d, grid, N, m, rank) + per-point matrices
void export_bundle(const BundleField& f, std::ostream& os);
BundleField import_bundle(std::istream& is);

}  // namespace oblab
