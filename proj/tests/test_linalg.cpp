#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oblab/linalg.hpp"

using namespace oblab;

namespace {

std::mt19937_64 rng(7);

CMatrix rand_matrix(int r, int c) {
  std::normal_distribution<double> g;
  CMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

CMatrix rand_hermitian(int s) {
  CMatrix m = rand_matrix(s, s);
  return 0.5 * (m + CMatrix(m.adjoint()));
}

CMatrix rand_unitary(int s) {
  Eigen::HouseholderQR<CMatrix> qr(rand_matrix(s, s));
  return qr.householderQ();
}

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("schatten norm closed forms") {
  for (int n : {1, 3, 7})
    for (double p : {1.0, 2.0, 4.0, kInfNorm}) {
      double expect = std::isinf(p) ? 1.0 : std::pow(n, 1.0 / p);
      CHECK(schatten_norm(CMatrix::Identity(n, n), p) ==
            doctest::Approx(expect).epsilon(1e-12));
    }
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = 4;
  CHECK(schatten_norm(d, 2.0) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(schatten_norm(rand_unitary(6), kInfNorm) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(schatten_norm(d, 0.5), std::domain_error);
}

TEST_CASE("schatten monotonicity and trace formula") {
  for (int t = 0; t < 20; ++t) {
    CMatrix a = rand_matrix(2 + t % 5, 2 + (t / 2) % 5);
    double ninf = schatten_norm(a, kInfNorm);
    double prev = ninf;
    for (double p : {4.0, 2.0, 1.0}) {
      double np = schatten_norm(a, p);
      CHECK(np >= prev - 1e-10);
      prev = np;
      // (Tr (a*a)^{p/2})^{1/p} computed from the eigenvalues of a*a
      EigenSystem s = hermitian_eig(CMatrix(a.adjoint() * a));
      double acc = 0;
      for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
        acc += std::pow(std::max(s.eigenvalues[i], 0.0), p / 2);
      // small singular values lose half the digits through sqrt(eig(a*a))
      CHECK(np == doctest::Approx(std::pow(acc, 1.0 / p)).epsilon(1e-7));
    }
  }
}

TEST_CASE("matrix hoelder") {
  for (int t = 0; t < 20; ++t) {
    int s = 2 + t % 6;
    CMatrix a = rand_matrix(s, s), b = rand_matrix(s, s);
    CMatrix ab = a * b;
    CHECK(schatten_norm(ab, 1.0) <=
          schatten_norm(a, 2.0) * schatten_norm(b, 2.0) + 1e-9);
    CHECK(schatten_norm(ab, 2.0) <=
          schatten_norm(a, 4.0) * schatten_norm(b, 4.0) + 1e-9);
    CHECK(schatten_norm(ab, 2.0) <=
          schatten_norm(a, kInfNorm) * schatten_norm(b, 2.0) + 1e-9);
  }
}

TEST_CASE("hermitian eigendecomposition") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 2;
  d(1, 1) = -1;
  EigenSystem s = hermitian_eig(d);
  CHECK(s.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(s.eigenvalues[1] == doctest::Approx(2.0));

  CMatrix px(2, 2);
  px << 0, 1, 1, 0;
  s = hermitian_eig(px);
  CHECK(s.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(s.eigenvalues[1] == doctest::Approx(1.0));

  CMatrix h = rand_hermitian(8);
  s = hermitian_eig(h);
  CMatrix rec = s.eigenvectors * s.eigenvalues.asDiagonal() *
                s.eigenvectors.adjoint();
  CHECK(max_abs(CMatrix(rec - h)) <= 1e-10 * std::max(1.0, max_abs(h)));
  CMatrix vv = s.eigenvectors.adjoint() * s.eigenvectors;
  CHECK(max_abs(CMatrix(vv - CMatrix::Identity(8, 8))) <= 1e-10);
  for (Eigen::Index i = 1; i < 8; ++i)
    CHECK(s.eigenvalues[i] >= s.eigenvalues[i - 1]);

  CHECK_THROWS_AS(hermitian_eig(rand_matrix(4, 4)), ContractViolation);
}

TEST_CASE("spectral projector") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 0.9;
  d(1, 1) = 0.1;
  CMatrix q = spectral_projector(d);
  CHECK(max_abs(CMatrix(q - (CMatrix(2, 2) << 1, 0, 0, 0).finished())) <= 1e-12);

  // an exact projection is a fixed point
  CMatrix v = rand_unitary(5);
  CMatrix p = CMatrix::Zero(5, 5);
  p(0, 0) = p(1, 1) = 1;
  p = v * p * v.adjoint();
  CHECK(max_abs(CMatrix(spectral_projector(p) - p)) <= 1e-10);
  CHECK(max_abs(CMatrix(q * q - q)) <= 1e-10);
  CHECK(max_abs(CMatrix(q - q.adjoint())) <= 1e-10);

  CMatrix half = CMatrix::Constant(1, 1, 0.5);
  CHECK_THROWS_AS(spectral_projector(half, 0.5, 0.1), SpectralGapError);
  try {
    spectral_projector(half, 0.5, 0.1);
  } catch (const SpectralGapError& e) {
    CHECK(e.eigenvalue == doctest::Approx(0.5));
  }
}

TEST_CASE("normal functional calculus") {
  CMatrix h = rand_hermitian(6);
  CHECK(max_abs(CMatrix(normal_funcalc(h, [](cplx z) { return z; }) - h)) <=
        1e-10 * std::max(1.0, max_abs(h)));

  CMatrix u = CMatrix::Zero(2, 2);
  u(0, 0) = cplx(0, 1);
  u(1, 1) = cplx(0, -1);
  CMatrix sq = normal_funcalc(u, [](cplx z) { return z * z; });
  CHECK(max_abs(CMatrix(sq + CMatrix::Identity(2, 2))) <= 1e-10);

  CMatrix w = rand_unitary(6);
  CMatrix sgn = normal_funcalc(
      w, [](cplx z) { return z.real() > 0 ? cplx(1, 0) : cplx(-1, 0); });
  CHECK(max_abs(CMatrix(sgn * sgn.adjoint() - CMatrix::Identity(6, 6))) <= 1e-9);
  CHECK(max_abs(CMatrix(sgn * sgn - CMatrix::Identity(6, 6))) <= 1e-9);

  CHECK_THROWS_AS(normal_funcalc(rand_matrix(4, 4), [](cplx z) { return z; }),
                  ContractViolation);
}

TEST_CASE("sign unitarize") {
  CMatrix id = CMatrix::Identity(3, 3);
  CHECK(max_abs(CMatrix(sign_unitarize(id) - id)) <= 1e-12);
  CHECK(max_abs(CMatrix(sign_unitarize(CMatrix(-id)) + id)) <= 1e-12);

  CMatrix u = CMatrix::Zero(2, 2);
  u(0, 0) = std::polar(1.0, kPi / 4);
  u(1, 1) = std::polar(1.0, -kPi / 4);
  CMatrix v = sign_unitarize(u);
  CHECK(max_abs(CMatrix(v - CMatrix::Identity(2, 2))) <= 1e-12);
  for (double p : {1.0, 2.0, kInfNorm})
    CHECK(schatten_norm(CMatrix(u - v), p) <=
          schatten_norm(CMatrix(u * u - CMatrix::Identity(2, 2)), p) + 1e-12);

  CMatrix bad = CMatrix::Constant(1, 1, cplx(0, 1));
  CHECK_THROWS_AS(sign_unitarize(bad), SpectralGapError);
}

TEST_CASE("unitary log trace") {
  CHECK(std::abs(unitary_log_trace(CMatrix::Identity(4, 4))) <= 1e-12);

  int n = 5;
  CMatrix u = std::polar(1.0, -2 * kPi / n) * CMatrix::Identity(n, n);
  cplx lt = unitary_log_trace(u);
  CHECK(std::abs(lt - cplx(0, -2 * kPi)) <= 1e-10);

  double theta = 0.3;
  CMatrix v = CMatrix::Constant(1, 1, std::polar(1.0, theta));
  CHECK(std::abs(unitary_log_trace(v) - cplx(0, theta)) <= 1e-12);

  CMatrix at_minus_one = CMatrix::Constant(1, 1, cplx(-1, 0));
  CHECK_THROWS_AS(unitary_log_trace(at_minus_one), BranchCutError);
}

TEST_CASE("scalar spectral inequalities") {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 5000; ++i) {
    cplx z(u(rng), u(rng));
    if (std::abs(z) > 2) continue;
    double chi = z.real() >= 0.5 ? 1.0 : 0.0;
    CHECK(std::abs(chi - z) <= 2.0 * std::abs(z * z - z));
    double sgn = z.real() > 0 ? 1.0 : -1.0;
    CHECK(std::abs(z - sgn) <= std::abs(z * z - 1.0));
  }
}
