#pragma once

#include <array>
#include <vector>

#include "oblab/types.hpp"
#include "oblab/zd.hpp"

namespace oblab {

// three open arcs A_t = (t/3 - 1/6 - overhang, t/3 + 1/6 + overhang) on R/Z
// with a smooth square-partition of unity chi_t = phi_t / sqrt(sum phi^2),
// phi the bump exp(-beta/(1-u^2)) rescaled to the arc
class CircleCover {
 public:
  explicit CircleCover(double overhang = 1.0 / 24.0, double beta = 1.0);

  double overhang() const { return overhang_; }
  double beta() const { return beta_; }

  double bump(int arc, double theta) const;          // phi_t
  std::array<double, 3> chi(double theta) const;      // all three chi_t
  // arcs meeting [theta - reach, theta + reach]
  std::vector<int> active_arcs(double theta, double reach) const;
  // circle cocycle: +1 on the wrap overlap (A2, A0), -1 on (A0, A2), else 0
  static int cocycle(int i, int j);

  // checks sum chi^2 = 1 and overlap structure on an audit grid;
  // returns the largest |sum chi^2 - 1| seen
  double audit(int samples = 10000) const;

 private:
  double overhang_;
  double beta_;
};

// product cover of T^d; patches are {0,1,2}^d, flattened lexicographically
class TorusCover {
 public:
  TorusCover(int d, CircleCover circle) : d_(d), circle_(std::move(circle)) {}

  int rank() const { return d_; }
  int n_patches() const {
    int n = 1;
    for (int i = 0; i < d_; ++i) n *= 3;
    return n;
  }
  const CircleCover& circle() const { return circle_; }

  std::vector<int> unflatten(int patch) const;  // lex digits, axis 0 first
  int flatten(const std::vector<int>& arcs) const;

  // Z^d-valued Cech cocycle, defined factorwise
  ZdElement cocycle(int patch_i, int patch_j) const;

  // product of per-axis chi values for one patch at x
  double chi_weight(int patch, const std::vector<double>& x) const;

  // flattened patches whose arcs are all active within reach of x (per axis)
  std::vector<int> active_patches(const std::vector<double>& x, double reach) const;

 private:
  int d_;
  CircleCover circle_;
};

inline CircleCover build_circle_cover(double overhang, double beta = 1.0) {
  return CircleCover(overhang, beta);
}

}  // namespace oblab
