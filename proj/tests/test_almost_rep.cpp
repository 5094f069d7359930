#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oblab/almost_rep.hpp"
#include "oblab/linalg.hpp"

using namespace oblab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("voiculescu pair construction") {
  AlmostRep r = voiculescu_pair(2);
  CMatrix s_expect(2, 2), o_expect(2, 2);
  s_expect << 0, 1, 1, 0;
  o_expect << 1, 0, 0, -1;
  CHECK(max_abs(CMatrix(r.gens[0] - s_expect)) <= 1e-15);
  CHECK(max_abs(CMatrix(r.gens[1] - o_expect)) <= 1e-15);
  CHECK(schatten_norm(CMatrix(r.gens[0] * r.gens[1] - r.gens[1] * r.gens[0]),
                      kInfNorm) == doctest::Approx(2.0));

  for (int n : {3, 8, 17}) {
    AlmostRep v = voiculescu_pair(n);
    const CMatrix& s = v.gens[0];
    const CMatrix& o = v.gens[1];
    CMatrix comm = s * o * s.adjoint() * o.adjoint();
    cplx omega_inv = std::polar(1.0, -2 * kPi / n);
    CHECK(max_abs(CMatrix(comm - omega_inv * CMatrix::Identity(n, n))) <= 1e-13);
    CHECK(schatten_norm(CMatrix(comm - CMatrix::Identity(n, n)), kInfNorm) ==
          doctest::Approx(2 * std::sin(kPi / n)).epsilon(1e-12));
  }
}

TEST_CASE("commutator norm closed form") {
  for (int n : {8, 64})
    for (double p : {1.0, 2.0, 4.0, kInfNorm}) {
      AlmostRep v = voiculescu_pair(n);
      CMatrix comm = v.gens[0] * v.gens[1] - v.gens[1] * v.gens[0];
      double expect = 2 * std::sin(kPi / n) *
                      (std::isinf(p) ? 1.0 : std::pow(n, 1.0 / p));
      CHECK(std::abs(schatten_norm(comm, p) - expect) <= 1e-10);
    }
}

TEST_CASE("defect tables") {
  // commuting generators: genuine representation
  AlmostRep c = voiculescu_pair(6);
  AlmostRep comm(2, {c.gens[1], CMatrix(c.gens[1] * c.gens[1])});
  CHECK(defect(comm, kInfNorm).max_defect <= 1e-12);
  CHECK(defect(comm, 1.0).max_defect <= 1e-12);

  for (int n : {8, 16}) {
    AlmostRep v = voiculescu_pair(n);
    DefectTable t = defect(v, kInfNorm, 1);
    CHECK(t.max_defect == doctest::Approx(2 * std::sin(kPi / n)).epsilon(1e-10));
    DefectTable t1 = defect(v, 1.0, 1);
    CHECK(t1.max_defect ==
          doctest::Approx(2 * std::sin(kPi / n) * n).epsilon(1e-10));
    for (const auto& [pair, val] : t.entries)
      if (pair.first.is_zero()) CHECK(val <= 1e-12);
  }
}

TEST_CASE("direct sum and embedding") {
  AlmostRep v = voiculescu_pair(8);
  AlmostRep sum = direct_sum(v, v);
  CHECK(sum.m == 16);
  CHECK(defect(sum, 1.0).max_defect ==
        doctest::Approx(2 * defect(v, 1.0).max_defect).epsilon(1e-10));
  // finite-p subadditivity of the blockwise defect
  double d2v = defect(v, 2.0).max_defect;
  CHECK(defect(sum, 2.0).max_defect <=
        std::pow(2 * std::pow(d2v, 2.0), 0.5) + 1e-9);

  AlmostRep emb = embed_rank(voiculescu_pair(4), 4, {3, 4});
  CHECK(emb.d == 4);
  CHECK(max_abs(CMatrix(emb.gens[0] - CMatrix::Identity(4, 4))) <= 1e-15);
  CHECK(max_abs(CMatrix(emb.gens[1] - CMatrix::Identity(4, 4))) <= 1e-15);
  CHECK(max_abs(CMatrix(emb.gens[2] - voiculescu_pair(4).gens[0])) <= 1e-15);
  CHECK(defect(emb, kInfNorm).max_defect ==
        doctest::Approx(defect(voiculescu_pair(4), kInfNorm).max_defect)
            .epsilon(1e-10));
  CHECK_THROWS(embed_rank(voiculescu_pair(4), 4, {2, 2}));
}

TEST_CASE("normalized map") {
  int n = 8;
  AlmostRep v = voiculescu_pair(n);
  LexNormalized psi(v);
  CHECK(max_abs(CMatrix(psi.value(ZdElement::zero(2)) -
                        CMatrix::Identity(n, n))) <= 1e-15);
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) {
      ZdElement g{{a, b}};
      CHECK(max_abs(CMatrix(psi.value(g) * psi.value(-g) -
                            CMatrix::Identity(n, n))) <= 1e-10);
      CHECK(max_abs(CMatrix(psi.value(-g) - psi.value(g).adjoint())) <= 1e-13);
    }
  // psi((-1,-1)) = (S Omega)^* and its distance to the raw section
  ZdElement m11{{-1, -1}};
  CMatrix expect = (v.gens[0] * v.gens[1]).adjoint();
  CHECK(max_abs(CMatrix(psi.value(m11) - expect)) <= 1e-13);
  CHECK(schatten_norm(CMatrix(psi.value(m11) - v.section(m11)), kInfNorm) ==
        doctest::Approx(2 * std::sin(kPi / n)).epsilon(1e-10));

  // genuine representation: psi = rho everywhere
  AlmostRep comm(2, {v.gens[1], CMatrix(v.gens[1] * v.gens[1])});
  LexNormalized psic(comm);
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) {
      ZdElement g{{a, b}};
      CHECK(max_abs(CMatrix(psic.value(g) - comm.section(g))) <= 1e-12);
    }
}

TEST_CASE("blockwise normalization factorizes over blocks") {
  AlmostRep v = voiculescu_pair(4);
  BlockNormalized bn(4, {{v, {1, 2}}, {v, {3, 4}}});
  LexNormalized l2(v);
  for (int a : {-1, 0, 1})
    for (int b : {-1, 0, 1})
      for (int c : {-1, 1}) {
        ZdElement g{{a, b, c, -c}};
        CMatrix top = bn.value(g).topLeftCorner(4, 4);
        CMatrix bot = bn.value(g).bottomRightCorner(4, 4);
        CHECK(max_abs(CMatrix(top - l2.value(ZdElement{{a, b}}))) <= 1e-13);
        CHECK(max_abs(CMatrix(bot - l2.value(ZdElement{{c, -c}}))) <= 1e-13);
      }
}

TEST_CASE("winding invariant") {
  AlmostRep v = voiculescu_pair(8);
  CHECK(std::abs(winding(v.gens[0], CMatrix::Identity(8, 8)).value) <= 1e-12);
  for (int n : {3, 8, 16, 64, 256}) {
    AlmostRep r = voiculescu_pair(n);
    WindingResult so = winding(r.gens[0], r.gens[1]);
    WindingResult os = winding(r.gens[1], r.gens[0]);
    CHECK(so.nearest == -1);
    CHECK(os.nearest == 1);
    CHECK(std::abs(so.value + 1.0) <= 1e-9);
    CHECK(std::abs(os.value - 1.0) <= 1e-9);
    CHECK(so.nearest == -os.nearest);  // antisymmetry
  }
}

TEST_CASE("defect decay slope") {
  // log-log slope of the generator commutator defect, close to -1
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (int n : {8, 16, 32, 64, 128}) {
    double x = std::log(n);
    double y = std::log(2 * std::sin(kPi / n));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  CHECK(std::abs(slope + 1.0) <= 0.05);
}

TEST_CASE("text serialization round trip") {
  AlmostRep v = voiculescu_pair(5);
  std::stringstream ss;
  save_text(v, ss);
  AlmostRep back = load_text(ss);
  CHECK(back.d == v.d);
  CHECK(back.m == v.m);
  for (int i = 0; i < v.d; ++i)
    CHECK(max_abs(CMatrix(back.gens[i] - v.gens[i])) == 0.0);
}
