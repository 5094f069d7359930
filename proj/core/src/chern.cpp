#include "oblab/chern.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oblab {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

MatrixFormField bundle_to_form(const BundleField& f) {
  MatrixFormField out =
      MatrixFormField::zero(f.d, 0, f.n_patches * f.m, f.grid);
  for (size_t p = 0; p < f.points.size(); ++p)
    out.comps[0][p] = to_full_frame(f.points[p], f.n_patches, f.m);
  return out;
}

MatrixFormField curvature(const BundleField& f, int order) {
  MatrixFormField q = bundle_to_form(f);
  MatrixFormField dq = ext_d(q, order);
  return wedge(q, wedge(dq, dq));
}

MatrixFormField chern_character_form(const MatrixFormField& curv, int k) {
  if (2 * k > curv.d) throw ContractViolation("chern_character_form: 2k > d");
  if (k == 0)
    throw ContractViolation("chern_character_form: k = 0 is the rank, not a form");
  MatrixFormField pw = curv;
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) {
    pw = wedge(pw, curv);
    fact *= i;
  }
  cplx denom = std::pow(cplx(0, 2.0 * std::numbers::pi), k) * fact;
  return scale(form_trace(pw), 1.0 / denom);
}

CycleSpec CycleSpec::full(int d) {
  CycleSpec c;
  for (int i = 1; i <= d; ++i) c.axes.push_back(i);
  c.base.assign(d, 0);
  return c;
}

cplx integrate_c(const MatrixFormField& f, const CycleSpec& cycle) {
  if (f.s != 1) throw ContractViolation("integrate: scalar form required");
  if (static_cast<int>(cycle.axes.size()) != f.k)
    throw ContractViolation("integrate: cycle dimension must equal form degree");
  if (!std::is_sorted(cycle.axes.begin(), cycle.axes.end()) ||
      std::adjacent_find(cycle.axes.begin(), cycle.axes.end()) != cycle.axes.end())
    throw ContractViolation("integrate: cycle axes must be distinct and increasing");
  int comp = f.component_of(cycle.axes);
  if (comp < 0) throw ContractViolation("integrate: no matching component");
  // plain average over the subtorus (periodic trapezoid)
  std::vector<int> ix(cycle.base);
  ix.resize(f.d, 0);
  std::vector<int> sub(cycle.axes.size(), 0);
  cplx acc(0, 0);
  long long count = 0;
  for (;;) {
    for (size_t i = 0; i < cycle.axes.size(); ++i) ix[cycle.axes[i] - 1] = sub[i];
    long long flat = 0;
    for (int i = 0; i < f.d; ++i) flat = flat * f.grid[i] + ix[i];
    acc += f.comps[comp][flat](0, 0);
    ++count;
    int ax = static_cast<int>(cycle.axes.size()) - 1;
    while (ax >= 0 && ++sub[ax] == f.grid[cycle.axes[ax] - 1]) {
      sub[ax] = 0;
      --ax;
    }
    if (ax < 0) break;
  }
  return acc / static_cast<double>(count);
}

double integrate(const MatrixFormField& f, const CycleSpec& cycle) {
  return integrate_c(f, cycle).real();
}

ChernClasses chern_classes(const MatrixFormField& ch1_form, double ch2_pairing,
                           const CycleSpec& two_cycle, const CycleSpec& four_cycle) {
  ChernClasses c;
  c.c1 = integrate(ch1_form, two_cycle);
  MatrixFormField sq = wedge(ch1_form, ch1_form);
  c.c2 = 0.5 * integrate(sq, four_cycle) - ch2_pairing;
  return c;
}

double curvature_norm(const MatrixFormField& curv, double p, NormMode mode) {
  return form_norm(curv, p, mode).sup;
}

VanishingVerdict vanishing_verdict(int d, int k, double p, double pairing,
                                   double curv_norm_p, double vol) {
  VanishingVerdict v;
  v.bound = std::pow(2.0, d) * std::sqrt(binom(d, 2 * k)) *
            std::pow(curv_norm_p, p) * vol;
  v.pairing = pairing;
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  v.residual = std::abs(pairing - std::round(pairing * fact) / fact);
  v.verdict = (v.bound < 1.0 / (2.0 * fact)) ? "VANISHES" : "UNDECIDED-AT-THIS-SCALE";
  return v;
}

}  // namespace oblab
