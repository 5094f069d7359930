#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oblab/forms.hpp"
#include "oblab/linalg.hpp"

using namespace oblab;

namespace {

constexpr double kPi = std::numbers::pi;
std::mt19937_64 rng(11);

CMatrix rand_matrix(int s) {
  std::normal_distribution<double> g;
  CMatrix m(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

}  // namespace

TEST_CASE("multi-index bookkeeping") {
  CHECK(increasing_multi_indices(4, 2).size() == 6);
  CHECK(increasing_multi_indices(3, 0).size() == 1);
  CHECK(shuffle_sign({1}, {2}) == 1);
  CHECK(shuffle_sign({2}, {1}) == -1);
  CHECK(shuffle_sign({1}, {1}) == 0);
  CHECK(shuffle_sign({1, 3}, {2}) == -1);  // one inversion: 3 > 2
}

TEST_CASE("exterior derivative against closed forms") {
  const int G = 64;
  const double h = 1.0 / G;
  MatrixFormField f = MatrixFormField::zero(2, 0, 1, {G, G});
  for (int x = 0; x < G; ++x)
    for (int y = 0; y < G; ++y)
      f.comps[0][x * static_cast<long long>(G) + y](0, 0) =
          std::sin(2 * kPi * x * h);
  for (int order : {2, 4}) {
    MatrixFormField df = ext_d(f, order);
    double bound = order == 2 ? std::pow(2 * kPi, 3) * h * h / 6.0
                              : std::pow(2 * kPi, 5) * std::pow(h, 4) / 30.0;
    double worst = 0;
    for (int x = 0; x < G; ++x)
      for (int y = 0; y < G; ++y) {
        double expect = 2 * kPi * std::cos(2 * kPi * x * h);
        worst = std::max(
            worst, std::abs(df.comps[0][x * static_cast<long long>(G) + y](0, 0) -
                            expect));
        CHECK(std::abs(df.comps[1][x * static_cast<long long>(G) + y](0, 0)) <=
              1e-13);
      }
    CHECK(worst <= bound);
  }

  MatrixFormField c = MatrixFormField::zero(2, 0, 2, {8, 8});
  for (auto& m : c.comps[0]) m = CMatrix::Identity(2, 2) * cplx(2.5, -1);
  MatrixFormField dc = ext_d(c, 2);
  for (const auto& comp : dc.comps)
    for (const auto& m : comp) CHECK(max_abs(m) == 0.0);
}

TEST_CASE("d squared vanishes") {
  for (int order : {2, 4}) {
    MatrixFormField f = MatrixFormField::zero(3, 0, 2, {6, 6, 6});
    double scale = 0;
    for (auto& m : f.comps[0]) {
      m = rand_matrix(2);
      scale = std::max(scale, max_abs(m));
    }
    MatrixFormField dd = ext_d(ext_d(f, order), order);
    for (const auto& comp : dd.comps)
      for (const auto& m : comp)
        CHECK(max_abs(m) <= 1e-12 * scale / (1.0 / 36.0));  // h^-2 amplification
  }
}

TEST_CASE("wedge algebra") {
  const std::vector<int> grid = {4, 4};
  MatrixFormField f0 = MatrixFormField::zero(2, 0, 2, grid);
  MatrixFormField b1 = MatrixFormField::zero(2, 1, 2, grid);
  MatrixFormField c1 = MatrixFormField::zero(2, 1, 2, grid);
  for (long long p = 0; p < 16; ++p) {
    f0.comps[0][p] = rand_matrix(2);
    b1.comps[0][p] = rand_matrix(2);  // dx^1 component
    c1.comps[1][p] = rand_matrix(2);  // dx^2 component
  }
  // 0-form wedge = pointwise multiplication on every component
  MatrixFormField fb = wedge(f0, b1);
  for (long long p = 0; p < 16; ++p)
    CHECK(max_abs(CMatrix(fb.comps[0][p] - f0.comps[0][p] * b1.comps[0][p])) <=
          1e-13);

  // repeated index kills the product
  MatrixFormField bb = wedge(b1, b1);
  for (const auto& comp : bb.comps)
    for (const auto& m : comp) CHECK(max_abs(m) == 0.0);

  // orientation: b ^ c = -(c ^ b) with matrix order preserved
  MatrixFormField bc = wedge(b1, c1);
  MatrixFormField cb = wedge(c1, b1);
  for (long long p = 0; p < 16; ++p) {
    CMatrix expect = b1.comps[0][p] * c1.comps[1][p];
    CHECK(max_abs(CMatrix(bc.comps[0][p] - expect)) <= 1e-13);
    CMatrix expect2 = -(c1.comps[1][p] * b1.comps[0][p]);
    CHECK(max_abs(CMatrix(cb.comps[0][p] - expect2)) <= 1e-13);
  }
}

TEST_CASE("form trace") {
  MatrixFormField f = MatrixFormField::zero(2, 0, 3, {4, 4});
  for (auto& m : f.comps[0]) m = CMatrix::Identity(3, 3);
  MatrixFormField tr = form_trace(f);
  for (const auto& m : tr.comps[0]) CHECK(m(0, 0) == cplx(3, 0));

  MatrixFormField a = MatrixFormField::zero(2, 1, 2, {4, 4});
  MatrixFormField b = MatrixFormField::zero(2, 1, 2, {4, 4});
  for (long long p = 0; p < 16; ++p) {
    a.comps[0][p] = rand_matrix(2);
    b.comps[0][p] = rand_matrix(2);
  }
  MatrixFormField ts = form_trace(a + b);
  MatrixFormField tsum = form_trace(a) + form_trace(b);
  for (long long p = 0; p < 16; ++p)
    CHECK(std::abs(ts.comps[0][p](0, 0) - tsum.comps[0][p](0, 0)) <= 1e-12);
}

TEST_CASE("form norms") {
  // 0-form: literal norm is the plain Schatten norm
  MatrixFormField f = MatrixFormField::zero(2, 0, 3, {4, 4});
  CMatrix b = rand_matrix(3);
  f.comps[0][0] = b;
  for (double p : {1.0, 2.0, kInfNorm})
    CHECK(form_norm(f, p, NormMode::literal).pointwise[0] ==
          doctest::Approx(schatten_norm(b, p)).epsilon(1e-10));

  // single-term k-form: 2^{-k/p} scaling
  MatrixFormField g = MatrixFormField::zero(3, 2, 2, {4, 4, 4});
  CMatrix c = rand_matrix(2);
  g.comps[g.component_of({1, 3})][0] = c;
  for (double p : {1.0, 2.0, 4.0}) {
    double expect = std::pow(2.0, -2.0 / p) * schatten_norm(c, p);
    CHECK(form_norm(g, p, NormMode::literal).pointwise[0] ==
          doctest::Approx(expect).epsilon(1e-10));
    CHECK(form_norm(g, p, NormMode::estimator).pointwise[0] ==
          doctest::Approx(schatten_norm(c, p)).epsilon(1e-10));
  }

  // estimator dominates literal; sup equals max of pointwise
  MatrixFormField m = MatrixFormField::zero(2, 1, 2, {4, 4});
  for (long long p = 0; p < 16; ++p) {
    m.comps[0][p] = rand_matrix(2);
    m.comps[1][p] = rand_matrix(2);
  }
  for (double p : {1.0, 2.0, kInfNorm}) {
    FormNormReport lit = form_norm(m, p, NormMode::literal);
    FormNormReport est = form_norm(m, p, NormMode::estimator);
    double pw_max = 0;
    for (long long q = 0; q < 16; ++q) {
      CHECK(est.pointwise[q] >= lit.pointwise[q] - 1e-9);
      pw_max = std::max(pw_max, lit.pointwise[q]);
    }
    CHECK(lit.sup == doctest::Approx(pw_max));
  }

  // zero field is zero in both modes
  MatrixFormField z = MatrixFormField::zero(2, 1, 2, {4, 4});
  CHECK(form_norm(z, 2.0, NormMode::literal).sup == 0.0);
  CHECK(form_norm(z, 2.0, NormMode::estimator).sup == 0.0);

  // literal-mode cost gate at 2^d * s > 4096
  std::vector<int> ones(13, 1);
  MatrixFormField big = MatrixFormField::zero(13, 0, 1, ones);
  CHECK_THROWS_AS(form_norm(big, 2.0, NormMode::literal), ContractViolation);
  CHECK_THROWS(form_norm(m, 0.5, NormMode::literal));
}

TEST_CASE("degree and size guards") {
  MatrixFormField top = MatrixFormField::zero(2, 2, 1, {4, 4});
  CHECK_THROWS(ext_d(top, 2));
  MatrixFormField coarse = MatrixFormField::zero(2, 0, 1, {3, 4});
  CHECK_THROWS(ext_d(coarse, 2));
  MatrixFormField a = MatrixFormField::zero(2, 1, 1, {4, 4});
  MatrixFormField b = MatrixFormField::zero(2, 2, 1, {4, 4});
  CHECK_THROWS(wedge(a, b));  // degree overflow
}
