#pragma once

#include <string>

#include "oblab/bundle.hpp"
#include "oblab/forms.hpp"

namespace oblab {

// q as a degree-0 form on the full 3^d * m frame
MatrixFormField bundle_to_form(const BundleField& f);

// F = q dq ^ dq as a degree-2 matrix form
MatrixFormField curvature(const BundleField& f, int order = 2);

// (1 / ((2 pi i)^k k!)) Tr(F^k), a scalar 2k-form
MatrixFormField chern_character_form(const MatrixFormField& curv, int k);

// coordinate subtorus: integrate over `axes`, the rest pinned at `base`
struct CycleSpec {
  std::vector<int> axes;  // 1-based, strictly increasing
  std::vector<int> base;  // grid coordinates per axis (entries on `axes` ignored)
  static CycleSpec full(int d);
};

cplx integrate_c(const MatrixFormField& scalar_form, const CycleSpec& cycle);
double integrate(const MatrixFormField& scalar_form, const CycleSpec& cycle);

struct ChernClasses {
  double c1 = 0;
  double c2 = 0;
};
// c1 = ch1 pairing; c2 = 1/2 <ch1 ^ ch1> - <ch2>, ch1 ^ ch1 taken at form level
ChernClasses chern_classes(const MatrixFormField& ch1_form, double ch2_pairing,
                           const CycleSpec& two_cycle, const CycleSpec& four_cycle);

double curvature_norm(const MatrixFormField& curv, double p, NormMode mode);

struct VanishingVerdict {
  double bound = 0;      // 2^d sqrt(C(d,2k)) ||F||_p^p vol
  double pairing = 0;
  double residual = 0;   // distance to the nearest 1/k! integer
  std::string verdict;   // "VANISHES" or "UNDECIDED-AT-THIS-SCALE"
};

VanishingVerdict vanishing_verdict(int d, int k, double p, double pairing,
                                   double curv_norm_p, double vol = 1.0);

double binom(int n, int k);

}  // namespace oblab
