#include "oblab/audit.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "oblab/almost_rep.hpp"
#include "oblab/forms.hpp"
#include "oblab/linalg.hpp"
#include "oblab/types.hpp"

namespace oblab {

namespace {

using Rng = std::mt19937_64;

cplx rand_disk(Rng& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double r = radius * std::sqrt(u(rng));
  double t = 2.0 * std::numbers::pi * u(rng);
  return {r * std::cos(t), r * std::sin(t)};
}

CMatrix rand_matrix(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

CMatrix rand_unitary(Rng& rng, int n) {
  Eigen::HouseholderQR<CMatrix> qr(rand_matrix(rng, n, n));
  CMatrix q = qr.householderQ();
  return q;
}

struct Recorder {
  PropertyResult& r;
  double tol;
  void sample(double lhs, double rhs) {
    ++r.samples;
    double v = lhs - rhs;
    r.max_violation = std::max(r.max_violation, v);
    if (v > tol) ++r.failures;
  }
};

// form with a single filled grid point; literal norms are read off at point 0
MatrixFormField point_form(Rng& rng, int d, int k, int s,
                           const std::vector<int>& grid) {
  MatrixFormField f = MatrixFormField::zero(d, k, s, grid);
  for (auto& comp : f.comps) comp[0] = rand_matrix(rng, s, s);
  return f;
}

double lit0(const MatrixFormField& f, double p) {
  return form_norm(f, p, NormMode::literal).pointwise[0];
}

void scalar_suite(Rng& rng, long long n, std::vector<PropertyResult>& out) {
  PropertyResult proj{"scalar-projection-distance"};
  PropertyResult sgn{"scalar-sign-distance"};
  Recorder rp{proj, 0.0}, rs{sgn, 0.0};
  for (long long i = 0; i < n; ++i) {
    cplx z = rand_disk(rng, 2.0);
    double chi = (z.real() >= 0.5) ? 1.0 : 0.0;
    rp.sample(std::abs(chi - z), 2.0 * std::abs(z * z - z));
    double s = (z.real() > 0) ? 1.0 : -1.0;
    rs.sample(std::abs(z - s), std::abs(z * z - 1.0));
  }
  out.push_back(proj);
  out.push_back(sgn);
}

void schatten_suite(Rng& rng, long long n, std::vector<PropertyResult>& out) {
  PropertyResult mono{"schatten-monotonicity"};
  PropertyResult trf{"schatten-trace-formula"};
  Recorder rm{mono, 1e-10}, rt{trf, 1e-9};
  std::uniform_int_distribution<int> dim(2, 8);
  for (long long i = 0; i < n; ++i) {
    CMatrix m = rand_matrix(rng, dim(rng), dim(rng));
    double n_inf = schatten_norm(m, kInfNorm);
    double n4 = schatten_norm(m, 4.0);
    double n2 = schatten_norm(m, 2.0);
    double n1 = schatten_norm(m, 1.0);
    rm.sample(n_inf, n4);
    rm.sample(n4, n2);
    rm.sample(n2, n1);
    // direct trace formulas for p = 1, 2
    double fro = std::sqrt((m.adjoint() * m).trace().real());
    RVector sv = singular_values(m);
    rt.sample(std::abs(n2 - fro), 0.0);
    rt.sample(std::abs(n1 - sv.sum()), 0.0);
    rt.sample(std::abs(n_inf - sv.maxCoeff()), 0.0);
  }
  out.push_back(mono);
  out.push_back(trf);
}

void matrix_hoelder_suite(Rng& rng, long long n, std::vector<PropertyResult>& out) {
  PropertyResult h{"matrix-hoelder"};
  Recorder rec{h, 1e-9};
  const double inf = kInfNorm;
  const std::array<std::array<double, 3>, 6> pqr = {{{2, 2, 1},
                                                     {4, 4, 2},
                                                     {inf, 2, 2},
                                                     {2, inf, 2},
                                                     {inf, 1, 1},
                                                     {1, inf, 1}}};
  std::uniform_int_distribution<int> dim(2, 8);
  for (long long i = 0; i < n; ++i) {
    int s = dim(rng);
    CMatrix a = rand_matrix(rng, s, s);
    CMatrix b = rand_matrix(rng, s, s);
    CMatrix ab = a * b;
    for (const auto& t : pqr)
      rec.sample(schatten_norm(ab, t[2]),
                 schatten_norm(a, t[0]) * schatten_norm(b, t[1]));
  }
  out.push_back(h);
}

void form_hoelder_suite(Rng& rng, long long n, std::vector<PropertyResult>& out) {
  PropertyResult h{"form-hoelder-literal"};
  PropertyResult hu{"form-hoelder-unnormalized"};
  PropertyResult est{"form-estimator-dominates-literal"};
  Recorder rh{h, 1e-9}, ru{hu, 1e-9}, re{est, 1e-9};
  const double inf = kInfNorm;
  const std::array<std::array<double, 3>, 4> pqr = {
      {{2, 2, 1}, {4, 4, 2}, {inf, 2, 2}, {2, inf, 2}}};
  const std::vector<int> grid = {4, 4};
  std::uniform_int_distribution<int> sdist(2, 4);
  std::uniform_int_distribution<int> kdist(0, 2);
  for (long long i = 0; i < n; ++i) {
    int s = sdist(rng);
    int ka = kdist(rng);
    int kb = kdist(rng);
    if (ka + kb > 2) kb = 2 - ka;
    MatrixFormField a = point_form(rng, 2, ka, s, grid);
    MatrixFormField b = point_form(rng, 2, kb, s, grid);
    MatrixFormField ab = wedge(a, b);
    for (const auto& t : pqr) {
      double la = lit0(a, t[0]), lb = lit0(b, t[1]), lab = lit0(ab, t[2]);
      rh.sample(lab, la * lb);
      // the 2^{d/p} normalizer is a convention; the bound holds either way
      auto un = [&](double lit, double p) {
        return std::isinf(p) ? lit : lit * std::pow(2.0, 2.0 / p);
      };
      ru.sample(un(lab, t[2]), un(la, t[0]) * un(lb, t[1]));
    }
    for (double p : {1.0, 2.0, inf})
      re.sample(lit0(a, p), form_norm(a, p, NormMode::estimator).pointwise[0]);
  }
  out.push_back(h);
  out.push_back(hu);
  out.push_back(est);
}

void tracebound_suite(Rng& rng, long long n, std::vector<PropertyResult>& out) {
  PropertyResult tb{"form-tracebound"};
  Recorder rec{tb, 1e-9};
  const std::vector<int> grid = {4, 4};
  std::uniform_int_distribution<int> sdist(2, 4);
  std::uniform_int_distribution<int> kdist(0, 2);
  auto binom2 = [](int k) { return k == 1 ? 2.0 : 1.0; };  // C(2,k)
  for (long long i = 0; i < n; ++i) {
    int k = kdist(rng);
    MatrixFormField a = point_form(rng, 2, k, sdist(rng), grid);
    rec.sample(lit0(form_trace(a), 1.0),
               4.0 * std::sqrt(binom2(k)) * lit0(a, 1.0));
  }
  out.push_back(tb);
}

void single_term_suite(Rng& rng, long long n, std::vector<PropertyResult>& out) {
  PropertyResult st{"single-term-form-norm"};
  Recorder rec{st, 1e-9};
  std::uniform_int_distribution<int> ddist(1, 3);
  std::uniform_int_distribution<int> sdist(1, 4);
  for (long long i = 0; i < n; ++i) {
    int d = ddist(rng);
    int s = sdist(rng);
    auto all = increasing_multi_indices(d, std::uniform_int_distribution<int>(0, d)(rng));
    const auto& idx = all[std::uniform_int_distribution<int>(
        0, static_cast<int>(all.size()) - 1)(rng)];
    int k = static_cast<int>(idx.size());
    std::vector<int> grid(d, 4);
    MatrixFormField f = MatrixFormField::zero(d, k, s, grid);
    CMatrix b = rand_matrix(rng, s, s);
    f.comps[f.component_of(idx)][0] = b;
    for (double p : {1.0, 2.0, 4.0, kInfNorm}) {
      double expect = std::isinf(p)
                          ? schatten_norm(b, p)
                          : std::pow(2.0, -k / p) * schatten_norm(b, p);
      rec.sample(std::abs(lit0(f, p) - expect), 0.0);
    }
  }
  out.push_back(st);
}

void dd_zero_suite(Rng& rng, long long n, std::vector<PropertyResult>& out) {
  PropertyResult dd{"exterior-d-squared-zero"};
  Recorder rec{dd, 0.0};
  const std::vector<int> grid = {8, 8};
  for (long long i = 0; i < n; ++i) {
    MatrixFormField f = MatrixFormField::zero(2, 0, 2, grid);
    double scale = 0;
    for (auto& m : f.comps[0]) {
      m = rand_matrix(rng, 2, 2);
      scale = std::max(scale, max_abs(m));
    }
    for (int order : {2, 4}) {
      MatrixFormField d2f = ext_d(ext_d(f, order), order);
      double worst = 0;
      for (const auto& comp : d2f.comps)
        for (const auto& m : comp) worst = std::max(worst, max_abs(m));
      // stencil values reach scale/h^2 ~ 64*scale before cancellation
      rec.sample(worst, 1e-12 * 64.0 * scale);
    }
  }
  out.push_back(dd);
}

void projector_suite(Rng& rng, long long n, std::vector<PropertyResult>& out) {
  PropertyResult pr{"spectral-projector-idempotent"};
  Recorder rec{pr, 1e-10};
  std::uniform_int_distribution<int> dim(2, 8);
  for (long long i = 0; i < n; ++i) {
    int s = dim(rng);
    CMatrix h = rand_matrix(rng, s, s);
    h = 0.5 * (h + CMatrix(h.adjoint()));
    CMatrix q;
    try {
      q = spectral_projector(h, 0.5, 1e-3);
    } catch (const SpectralGapError&) {
      --i;  // resample; the gap condition is the caller's contract
      continue;
    }
    rec.sample(max_abs(CMatrix(q * q - q)), 0.0);
    rec.sample(max_abs(CMatrix(q - q.adjoint())), 0.0);
  }
  out.push_back(pr);
}

void involution_suite(Rng& rng, long long n, std::vector<PropertyResult>& out) {
  PropertyResult inv{"normalize-involution"};
  Recorder rec{inv, 1e-10};
  std::uniform_int_distribution<int> dim(2, 4);
  std::uniform_int_distribution<int> coord(-3, 3);
  for (long long i = 0; i < n; ++i) {
    int m = dim(rng);
    AlmostRep rep(2, {rand_unitary(rng, m), rand_unitary(rng, m)});
    LexNormalized psi(rep);
    ZdElement g{{coord(rng), coord(rng)}};
    CMatrix prod = psi.value(g) * psi.value(-g);
    rec.sample(max_abs(CMatrix(prod - CMatrix::Identity(m, m))), 0.0);
    rec.sample(
        max_abs(CMatrix(psi.value(ZdElement::zero(2)) - CMatrix::Identity(m, m))),
        0.0);
  }
  out.push_back(inv);
}

// C^1 norm with exact derivatives of matrix-valued trigonometric 0-forms:
// a(x) = A exp(2 pi i <k, x>), da = 2 pi i k_mu a dx^mu
void c1_suite(Rng& rng, long long n, std::vector<PropertyResult>& out) {
  PropertyResult exact{"c1-submultiplicative-analytic"};
  PropertyResult disc{"c1-submultiplicative-discrete-slack"};
  disc.report_only = true;
  Recorder re{exact, 1e-9};
  std::uniform_int_distribution<int> kdist(-2, 2);
  std::uniform_int_distribution<int> sdist(2, 3);
  const int G = 8;
  const std::vector<int> grid = {G, G};
  const double two_pi = 2.0 * std::numbers::pi;
  for (long long i = 0; i < n; ++i) {
    int s = sdist(rng);
    CMatrix am = rand_matrix(rng, s, s), bm = rand_matrix(rng, s, s);
    int ka1 = kdist(rng), ka2 = kdist(rng), kb1 = kdist(rng), kb2 = kdist(rng);
    // analytic C^1 norms: |a|_inf = ||A||_inf, |da|_inf = 2 pi sum_mu |k_mu| ||A||_inf
    // (estimator over components, matching the discrete pipeline's norm)
    double na = schatten_norm(am, kInfNorm);
    double nb = schatten_norm(bm, kInfNorm);
    double c1a = na * (1.0 + two_pi * (std::abs(ka1) + std::abs(ka2)));
    double c1b = nb * (1.0 + two_pi * (std::abs(kb1) + std::abs(kb2)));
    double nab = schatten_norm(CMatrix(am * bm), kInfNorm);
    double c1ab =
        nab + two_pi * (std::abs(ka1 + kb1) + std::abs(ka2 + kb2)) * nab;
    re.sample(c1ab, c1a * c1b);
    // discrete counterpart on an 8x8 grid, slack recorded but not asserted
    MatrixFormField fa = MatrixFormField::zero(2, 0, s, grid);
    MatrixFormField fb = MatrixFormField::zero(2, 0, s, grid);
    for (int x = 0; x < G; ++x)
      for (int y = 0; y < G; ++y) {
        double pa = two_pi * (ka1 * x + ka2 * y) / G;
        double pb = two_pi * (kb1 * x + kb2 * y) / G;
        fa.comps[0][x * G + y] = am * cplx(std::cos(pa), std::sin(pa));
        fb.comps[0][x * G + y] = bm * cplx(std::cos(pb), std::sin(pb));
      }
    auto c1_discrete = [&](const MatrixFormField& f) {
      return form_norm(f, kInfNorm, NormMode::estimator).sup +
             form_norm(ext_d(f, 2), kInfNorm, NormMode::estimator).sup;
    };
    MatrixFormField fab = wedge(fa, fb);
    double lhs = c1_discrete(fab);
    double rhs = c1_discrete(fa) * c1_discrete(fb);
    ++disc.samples;
    disc.max_violation = std::max(disc.max_violation, lhs - rhs);
  }
  out.push_back(exact);
  out.push_back(disc);
}

}  // namespace

std::vector<PropertyResult> run_property_audit(std::uint64_t seed,
                                               long long scalar_samples,
                                               long long matrix_samples) {
  Rng rng(seed);
  std::vector<PropertyResult> out;
  scalar_suite(rng, scalar_samples, out);
  schatten_suite(rng, matrix_samples, out);
  matrix_hoelder_suite(rng, matrix_samples, out);
  form_hoelder_suite(rng, matrix_samples, out);
  tracebound_suite(rng, matrix_samples, out);
  single_term_suite(rng, matrix_samples, out);
  dd_zero_suite(rng, matrix_samples, out);
  projector_suite(rng, matrix_samples, out);
  involution_suite(rng, matrix_samples, out);
  c1_suite(rng, matrix_samples / 10 + 1, out);
  return out;
}

bool audit_passed(const std::vector<PropertyResult>& results) {
  for (const auto& r : results)
    if (!r.report_only && r.failures > 0) return false;
  return true;
}

}  // namespace oblab
