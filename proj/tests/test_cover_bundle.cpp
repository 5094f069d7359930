#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oblab/bundle.hpp"
#include "oblab/linalg.hpp"

using namespace oblab;

TEST_CASE("circle cover partition of unity") {
  for (double ov : {1.0 / 24.0, 0.082}) {
    CircleCover c(ov, 1.0);
    CHECK(c.audit(10000) <= 1e-12);
  }
  CHECK_THROWS(CircleCover(0.0));
  CHECK_THROWS(CircleCover(1.0 / 12.0));

  CircleCover c;
  auto chi0 = c.chi(0.0);  // interior of A0 only
  CHECK(chi0[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(chi0[1] == 0.0);
  CHECK(chi0[2] == 0.0);

  CHECK(CircleCover::cocycle(2, 0) == 1);
  CHECK(CircleCover::cocycle(0, 2) == -1);
  CHECK(CircleCover::cocycle(0, 1) == 0);
  CHECK(CircleCover::cocycle(1, 2) == 0);
  CHECK(CircleCover::cocycle(1, 1) == 0);
}

TEST_CASE("torus cover cocycle") {
  TorusCover t(2, CircleCover());
  CHECK(t.n_patches() == 9);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      ZdElement gij = t.cocycle(i, j);
      ZdElement gji = t.cocycle(j, i);
      CHECK((gij + gji).is_zero());  // antisymmetry
      // factorwise values
      auto ai = t.unflatten(i), aj = t.unflatten(j);
      for (int ax = 0; ax < 2; ++ax)
        CHECK(gij.coords[ax] == CircleCover::cocycle(ai[ax], aj[ax]));
    }
  // cocycle identity on triples; per circle the triple overlap is empty, so
  // only patch triples with pairwise-consistent arcs occur on the grid
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      for (int k = 0; k < 9; ++k) {
        ZdElement lhs = t.cocycle(i, j) + t.cocycle(j, k);
        // identity must hold whenever all three pairwise overlaps exist,
        // which per circle means the arcs are not {0,1,2} all distinct
        auto ai = t.unflatten(i), aj = t.unflatten(j), ak = t.unflatten(k);
        bool meets = true;
        for (int ax = 0; ax < 2; ++ax) {
          int s = (1 << ai[ax]) | (1 << aj[ax]) | (1 << ak[ax]);
          if (s == 7) meets = false;
        }
        if (meets) CHECK((lhs + (-t.cocycle(i, k))).is_zero());
      }
}

TEST_CASE("trivial representation gives an exact projector field") {
  AlmostRep triv(2, {CMatrix::Identity(1, 1), CMatrix::Identity(1, 1)});
  LexNormalized psi(triv);
  TorusCover cover(2, CircleCover());
  BundleField f = assemble_bundle(psi, cover, {8, 8});
  CHECK(f.rank_q == 1);
  for (const auto& p : f.points) {
    CHECK(max_abs(CMatrix(p.q * p.q - p.q)) <= 1e-12);
    CHECK(max_abs(CMatrix(p.q - p.q.adjoint())) <= 1e-13);
  }
  BundleDiagnostics diag = bundle_diagnostics(f);
  CHECK(diag.a2a_sup <= 1e-12);  // exact idempotent
}

TEST_CASE("voiculescu bundle invariants") {
  int n = 16;
  AlmostRep v = voiculescu_pair(n);
  double gen_defect = defect(v, kInfNorm, 1).max_defect;
  LexNormalized psi(v);
  TorusCover cover(2, CircleCover());
  BundleField f = assemble_bundle(psi, cover, {16, 16});
  CHECK(f.rank_q == n);
  CHECK(f.min_gap > 0.1);
  for (const auto& p : f.points) {
    CHECK(max_abs(CMatrix(p.q * p.q - p.q)) <= 1e-10);
    CHECK(max_abs(CMatrix(p.q - p.q.adjoint())) <= 1e-10);
  }
  BundleDiagnostics diag = bundle_diagnostics(f);
  CHECK(diag.a_inf_sup <= 9.0 * 9.0);               // N^2 bound
  CHECK(diag.a2a_sup <= 9.0 * 9.0 * 9.0 * gen_defect);  // cover constant
  CHECK(diag.pnorm_slack_1 <= 1e-9);
  CHECK(diag.pnorm_slack_2 <= 1e-9);
  CHECK(diag.pnorm_slack_inf <= 1e-9);
}

TEST_CASE("hermiticity requires a normalized map") {
  int n = 8;
  AlmostRep v = voiculescu_pair(n);
  LexNormalized psi(v);
  TorusCover cover(2, CircleCover());
  // a(x) from the normalized map is Hermitian on a wrap overlap point
  std::vector<double> x = {5.0 / 6.0, 5.0 / 6.0};
  auto patches = cover.active_patches(x, 0.0);
  CMatrix a = build_a(psi, cover, x, patches);
  CHECK(max_abs(CMatrix(a - a.adjoint())) <= 1e-12 * std::max(1.0, max_abs(a)));
}

TEST_CASE("pullback identity and rank") {
  AlmostRep v = voiculescu_pair(4);
  LexNormalized psi(v);
  TorusCover cov2(2, CircleCover());
  BundleField src = assemble_bundle(psi, cov2, {6, 6});
  // pulling back along the same two axes of T^2 reproduces the field
  BundleField same = pullback_field(src, 2, {0, 1}, cov2, {6, 6});
  CHECK(max_q_deviation(src, same) <= 1e-13);

  TorusCover cov3(3, CircleCover());
  BundleField up = pullback_field(src, 3, {0, 1}, cov3, {6, 6, 6});
  CHECK(up.rank_q == src.rank_q);  // tensoring with a rank-1 factor
  for (const auto& p : up.points) {
    CHECK(max_abs(CMatrix(p.q * p.q - p.q)) <= 1e-10);
  }
}

TEST_CASE("bundle serialization round trip") {
  AlmostRep v = voiculescu_pair(3);
  LexNormalized psi(v);
  TorusCover cover(2, CircleCover());
  BundleField f = assemble_bundle(psi, cover, {8, 8});
  std::stringstream ss;
  export_bundle(f, ss);
  BundleField g = import_bundle(ss);
  CHECK(g.d == f.d);
  CHECK(g.grid == f.grid);
  CHECK(g.rank_q == f.rank_q);
  CHECK(max_q_deviation(f, g) <= 1e-12);
}

TEST_CASE("spectral gap failures carry context") {
  // a rep so badly non-multiplicative the spectrum straddles 1/2
  AlmostRep v = voiculescu_pair(2);
  LexNormalized psi(v);
  TorusCover cover(2, CircleCover());
  CHECK_THROWS_AS(assemble_bundle(psi, cover, {12, 12}, 0.45),
                  SpectralGapError);
}
