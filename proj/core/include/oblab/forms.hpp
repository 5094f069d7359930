#pragma once

#include <vector>

#include "oblab/types.hpp"

namespace oblab {

// degree-k matrix-valued form on a uniform periodic grid over [0,1)^d,
// one matrix per grid point per increasing multi-index component
struct MatrixFormField {
  int d = 0;
  int k = 0;
  int s = 0;  // matrix size
  std::vector<int> grid;
  std::vector<std::vector<int>> indices;        // increasing multi-indices (1-based)
  std::vector<std::vector<CMatrix>> comps;      // [component][row-major point]

  static MatrixFormField zero(int d, int k, int s, const std::vector<int>& grid);
  int n_components() const { return static_cast<int>(indices.size()); }
  long long n_points() const;
  int component_of(const std::vector<int>& idx) const;  // -1 if absent
};

// all increasing k-subsets of {1..d}, lexicographic
std::vector<std::vector<int>> increasing_multi_indices(int d, int k);

// sign of dx^I ^ dx^J as a reordering into the increasing merge; 0 on overlap
int shuffle_sign(const std::vector<int>& i, const std::vector<int>& j);

// discrete exterior derivative, central differences (order 2 or 4), periodic
MatrixFormField ext_d(const MatrixFormField& f, int order = 2);

// graded product; matrix factors keep their order
MatrixFormField wedge(const MatrixFormField& a, const MatrixFormField& b);

MatrixFormField operator+(const MatrixFormField& a, const MatrixFormField& b);
MatrixFormField operator-(const MatrixFormField& a, const MatrixFormField& b);
MatrixFormField scale(const MatrixFormField& a, cplx c);

MatrixFormField form_trace(const MatrixFormField& a);

enum class NormMode { literal, estimator };

struct FormNormReport {
  double p = 0;
  NormMode mode = NormMode::estimator;
  std::vector<double> pointwise;
  double sup = 0;
};

// literal mode: Schatten-p norm of left multiplication on the exterior
// algebra tensor the coefficient space, divided by 2^{d/p}; estimator mode:
// sum_I ||a_I(x)||_p (an upper bound)
FormNormReport form_norm(const MatrixFormField& a, double p, NormMode mode);

// the literal left-multiplication operator at one grid point (exposed for audits)
CMatrix left_mult_operator(const MatrixFormField& a, long long point);

}  // namespace oblab
