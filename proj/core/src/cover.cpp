#include "oblab/cover.hpp"

#include <cmath>

namespace oblab {

namespace {
// signed distance to the arc centre, wrapped to (-1/2, 1/2]
double wrap_dist(double theta, double center) {
  double u = theta - center + 0.5;
  u -= std::floor(u);
  return u - 0.5;
}
}  // namespace

CircleCover::CircleCover(double overhang, double beta)
    : overhang_(overhang), beta_(beta) {
  if (!(overhang > 0.0 && overhang < 1.0 / 12.0))
    throw std::domain_error("CircleCover: overhang must lie in (0, 1/12)");
  if (!(beta > 0.0)) throw std::domain_error("CircleCover: beta must be positive");
}

double CircleCover::bump(int arc, double theta) const {
  double half = 1.0 / 6.0 + overhang_;
  double u = wrap_dist(theta, arc / 3.0) / half;
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(-beta_ / (1.0 - u * u));
}

std::array<double, 3> CircleCover::chi(double theta) const {
  std::array<double, 3> ph{bump(0, theta), bump(1, theta), bump(2, theta)};
  double s = std::sqrt(ph[0] * ph[0] + ph[1] * ph[1] + ph[2] * ph[2]);
  return {ph[0] / s, ph[1] / s, ph[2] / s};
}

std::vector<int> CircleCover::active_arcs(double theta, double reach) const {
  double half = 1.0 / 6.0 + overhang_;
  std::vector<int> out;
  for (int t = 0; t < 3; ++t)
    if (std::abs(wrap_dist(theta, t / 3.0)) < half + reach + 1e-15) out.push_back(t);
  return out;
}

int CircleCover::cocycle(int i, int j) {
  if (i == 2 && j == 0) return 1;
  if (i == 0 && j == 2) return -1;
  return 0;
}

double CircleCover::audit(int samples) const {
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    double th = static_cast<double>(k) / samples;
    auto c = chi(th);
    double s = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
    worst = std::max(worst, std::abs(s - 1.0));
    if (active_arcs(th, 0.0).empty())
      throw Error("CircleCover::audit: uncovered point");
  }
  // each pairwise overlap must be a single arc and the triple overlap empty;
  // guaranteed by overhang < 1/12, spot-check anyway
  for (int k = 0; k < samples; ++k) {
    double th = static_cast<double>(k) / samples;
    if (active_arcs(th, 0.0).size() > 2)
      throw Error("CircleCover::audit: triple overlap present");
  }
  return worst;
}

std::vector<int> TorusCover::unflatten(int patch) const {
  std::vector<int> arcs(d_);
  for (int i = d_ - 1; i >= 0; --i) {
    arcs[i] = patch % 3;
    patch /= 3;
  }
  return arcs;
}

int TorusCover::flatten(const std::vector<int>& arcs) const {
  int p = 0;
  for (int i = 0; i < d_; ++i) p = p * 3 + arcs[i];
  return p;
}

ZdElement TorusCover::cocycle(int patch_i, int patch_j) const {
  auto a = unflatten(patch_i), b = unflatten(patch_j);
  std::vector<int> g(d_);
  for (int i = 0; i < d_; ++i) g[i] = CircleCover::cocycle(a[i], b[i]);
  return ZdElement(std::move(g));
}

double TorusCover::chi_weight(int patch, const std::vector<double>& x) const {
  auto arcs = unflatten(patch);
  double w = 1.0;
  for (int i = 0; i < d_; ++i) w *= circle_.chi(x[i])[arcs[i]];
  return w;
}

std::vector<int> TorusCover::active_patches(const std::vector<double>& x,
                                            double reach) const {
  std::vector<std::vector<int>> per_axis(d_);
  for (int i = 0; i < d_; ++i) per_axis[i] = circle_.active_arcs(x[i], reach);
  std::vector<int> out;
  std::vector<int> idx(d_, 0);
  for (;;) {
    std::vector<int> arcs(d_);
    for (int i = 0; i < d_; ++i) arcs[i] = per_axis[i][idx[i]];
    out.push_back(flatten(arcs));
    int ax = d_ - 1;
    while (ax >= 0 && ++idx[ax] == static_cast<int>(per_axis[ax].size())) {
      idx[ax] = 0;
      --ax;
    }
    if (ax < 0) break;
  }
  return out;
}

}  // namespace oblab
