#include "oblab/forms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "oblab/linalg.hpp"

namespace oblab {

std::vector<std::vector<int>> increasing_multi_indices(int d, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // iterative combinations, lexicographic
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i <= d; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

long long MatrixFormField::n_points() const {
  long long n = 1;
  for (int g : grid) n *= g;
  return n;
}

MatrixFormField MatrixFormField::zero(int d, int k, int s,
                                      const std::vector<int>& grid) {
  MatrixFormField f;
  f.d = d;
  f.k = k;
  f.s = s;
  f.grid = grid;
  f.indices = increasing_multi_indices(d, k);
  f.comps.assign(f.indices.size(),
                 std::vector<CMatrix>(f.n_points(), CMatrix::Zero(s, s)));
  return f;
}

int MatrixFormField::component_of(const std::vector<int>& idx) const {
  for (size_t c = 0; c < indices.size(); ++c)
    if (indices[c] == idx) return static_cast<int>(c);
  return -1;
}

int shuffle_sign(const std::vector<int>& i, const std::vector<int>& j) {
  int inv = 0;
  for (int a : i)
    for (int b : j) {
      if (a == b) return 0;
      if (a > b) ++inv;
    }
  return (inv % 2 == 0) ? 1 : -1;
}

namespace {
// flat index of the point shifted by `step` cells along `axis`, periodic
long long shifted(const std::vector<int>& grid, long long flat, int axis, int step) {
  long long stride = 1;
  for (size_t i = axis + 1; i < grid.size(); ++i) stride *= grid[i];
  long long g = grid[axis];
  long long coord = (flat / stride) % g;
  long long base = flat - coord * stride;
  long long nc = ((coord + step) % g + g) % g;
  return base + nc * stride;
}
}  // namespace

MatrixFormField ext_d(const MatrixFormField& f, int order) {
  if (f.k >= f.d) throw ContractViolation("ext_d: form already has top degree");
  for (int g : f.grid)
    if (g < 4) throw ContractViolation("ext_d: grid resolution >= 4 required");
  if (order != 2 && order != 4) throw ContractViolation("ext_d: order must be 2 or 4");
  MatrixFormField out = MatrixFormField::zero(f.d, f.k + 1, f.s, f.grid);
  const long long n = f.n_points();
  for (size_t c = 0; c < f.indices.size(); ++c) {
    const auto& idx = f.indices[c];
    for (int mu = 1; mu <= f.d; ++mu) {
      if (std::find(idx.begin(), idx.end(), mu) != idx.end()) continue;
      std::vector<int> kidx = idx;
      kidx.insert(std::upper_bound(kidx.begin(), kidx.end(), mu), mu);
      int sign = shuffle_sign({mu}, idx);
      int oc = out.component_of(kidx);
      const double h = 1.0 / f.grid[mu - 1];
      const auto& src = f.comps[c];
      auto& dst = out.comps[oc];
      for (long long p = 0; p < n; ++p) {
        CMatrix der;
        if (order == 2) {
          der = (src[shifted(f.grid, p, mu - 1, 1)] -
                 src[shifted(f.grid, p, mu - 1, -1)]) /
                (2.0 * h);
        } else {
          der = (-src[shifted(f.grid, p, mu - 1, 2)] +
                 8.0 * src[shifted(f.grid, p, mu - 1, 1)] -
                 8.0 * src[shifted(f.grid, p, mu - 1, -1)] +
                 src[shifted(f.grid, p, mu - 1, -2)]) /
                (12.0 * h);
        }
        dst[p] += static_cast<double>(sign) * der;
      }
    }
  }
  return out;
}

MatrixFormField wedge(const MatrixFormField& a, const MatrixFormField& b) {
  if (a.d != b.d || a.grid != b.grid || a.s != b.s)
    throw ContractViolation("wedge: mismatched fields");
  if (a.k + b.k > a.d) throw ContractViolation("wedge: degree overflow");
  MatrixFormField out = MatrixFormField::zero(a.d, a.k + b.k, a.s, a.grid);
  const long long n = a.n_points();
  for (size_t ca = 0; ca < a.indices.size(); ++ca)
    for (size_t cb = 0; cb < b.indices.size(); ++cb) {
      int sign = shuffle_sign(a.indices[ca], b.indices[cb]);
      if (sign == 0) continue;
      std::vector<int> merged;
      std::merge(a.indices[ca].begin(), a.indices[ca].end(), b.indices[cb].begin(),
                 b.indices[cb].end(), std::back_inserter(merged));
      int oc = out.component_of(merged);
      auto& dst = out.comps[oc];
      const auto& sa = a.comps[ca];
      const auto& sb = b.comps[cb];
      for (long long p = 0; p < n; ++p)
        dst[p] += static_cast<double>(sign) * (sa[p] * sb[p]);
    }
  return out;
}

MatrixFormField operator+(const MatrixFormField& a, const MatrixFormField& b) {
  if (a.d != b.d || a.k != b.k || a.grid != b.grid || a.s != b.s)
    throw ContractViolation("form +: mismatched fields");
  MatrixFormField out = a;
  for (size_t c = 0; c < out.comps.size(); ++c)
    for (size_t p = 0; p < out.comps[c].size(); ++p) out.comps[c][p] += b.comps[c][p];
  return out;
}

MatrixFormField operator-(const MatrixFormField& a, const MatrixFormField& b) {
  return a + scale(b, cplx(-1, 0));
}

MatrixFormField scale(const MatrixFormField& a, cplx c) {
  MatrixFormField out = a;
  for (auto& comp : out.comps)
    for (auto& m : comp) m *= c;
  return out;
}

MatrixFormField form_trace(const MatrixFormField& a) {
  MatrixFormField out = MatrixFormField::zero(a.d, a.k, 1, a.grid);
  for (size_t c = 0; c < a.comps.size(); ++c)
    for (size_t p = 0; p < a.comps[c].size(); ++p)
      out.comps[c][p](0, 0) = a.comps[c][p].trace();
  return out;
}

CMatrix left_mult_operator(const MatrixFormField& a, long long point) {
  const int d = a.d;
  const int s = a.s;
  const int nmask = 1 << d;
  CMatrix op = CMatrix::Zero(static_cast<Eigen::Index>(nmask) * s,
                             static_cast<Eigen::Index>(nmask) * s);
  for (size_t c = 0; c < a.indices.size(); ++c) {
    const auto& idx = a.indices[c];
    int imask = 0;
    for (int ax : idx) imask |= 1 << (ax - 1);
    const CMatrix& m = a.comps[c][point];
    for (int jmask = 0; jmask < nmask; ++jmask) {
      if (imask & jmask) continue;
      // sign of dx^I ^ dx^J with both increasing
      std::vector<int> jidx;
      for (int ax = 1; ax <= d; ++ax)
        if (jmask & (1 << (ax - 1))) jidx.push_back(ax);
      int sign = shuffle_sign(idx, jidx);
      op.block(static_cast<Eigen::Index>(imask | jmask) * s,
               static_cast<Eigen::Index>(jmask) * s, s, s) +=
          static_cast<double>(sign) * m;
    }
  }
  return op;
}

FormNormReport form_norm(const MatrixFormField& a, double p, NormMode mode) {
  if (!(p >= 1.0)) throw std::domain_error("form_norm: p must be >= 1 (or infinity)");
  FormNormReport rep;
  rep.p = p;
  rep.mode = mode;
  const long long n = a.n_points();
  rep.pointwise.resize(n);
  if (mode == NormMode::literal) {
    long long opdim = (1LL << a.d) * a.s;
    if (opdim > 4096)
      throw ContractViolation("form_norm: literal mode cost gate exceeded (2^d*s > 4096)");
    double scale = std::isinf(p) ? 1.0 : std::pow(2.0, a.d / p);
    for (long long pt = 0; pt < n; ++pt)
      rep.pointwise[pt] = schatten_norm(left_mult_operator(a, pt), p) / scale;
  } else {
    for (long long pt = 0; pt < n; ++pt) {
      double s = 0;
      for (size_t c = 0; c < a.comps.size(); ++c)
        s += schatten_norm(a.comps[c][pt], p);
      rep.pointwise[pt] = s;
    }
  }
  rep.sup = 0;
  for (double v : rep.pointwise) rep.sup = std::max(rep.sup, v);
  return rep;
}

}  // namespace oblab
