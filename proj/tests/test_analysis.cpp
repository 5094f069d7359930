#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oblab/analysis.hpp"
#include "oblab/chern.hpp"
#include "oblab/linalg.hpp"

using namespace oblab;

TEST_CASE("streaming analyzer agrees with dense assembly") {
  int n = 8, grid = 8;
  AlmostRep v = voiculescu_pair(n);
  LexNormalized psi(v);
  TorusOptions opt;
  opt.grid = grid;
  opt.order = 2;
  T2Result t = analyze_t2(psi, opt);

  TorusCover cover(2, CircleCover(opt.overhang, opt.beta));
  BundleField f = assemble_bundle(psi, cover, {grid, grid}, opt.gap_tol);
  MatrixFormField curv = curvature(f, 2);
  MatrixFormField ch1 = chern_character_form(curv, 1);
  double dense = integrate(ch1, CycleSpec::full(2));
  CHECK(t.ch1 == doctest::Approx(dense).epsilon(1e-10));
  CHECK(t.rank == f.rank_q);
  CHECK(t.min_gap == doctest::Approx(f.min_gap).epsilon(1e-12));

  // curvature norm sups match the estimator-mode form norms
  FormNormReport n1 = form_norm(curv, 1.0, NormMode::estimator);
  FormNormReport n2 = form_norm(curv, 2.0, NormMode::estimator);
  CHECK(t.curv1_sup == doctest::Approx(n1.sup).epsilon(1e-9));
  CHECK(t.curv2_sup == doctest::Approx(n2.sup).epsilon(1e-9));
}

TEST_CASE("trivial representation is exactly flat in the pairing") {
  AlmostRep triv(2, {CMatrix::Identity(1, 1), CMatrix::Identity(1, 1)});
  LexNormalized psi(triv);
  TorusOptions opt;
  opt.grid = 16;
  T2Result t = analyze_t2(psi, opt);
  CHECK(std::abs(t.ch1) <= 1e-12);  // real field: TrF is exactly zero
  CHECK(t.rank == 1);
  CHECK(t.min_gap == doctest::Approx(0.5));
}

TEST_CASE("voiculescu pairing reproduces the winding number") {
  TorusOptions opt;
  opt.grid = 32;
  opt.order = 4;
  opt.overhang = 0.082;
  opt.beta = 0.5;
  AlmostRep v = voiculescu_pair(8);
  LexNormalized psi(v);
  T2Result t = analyze_t2(psi, opt);
  CHECK(std::llround(t.ch1) == -1);
  CHECK(std::abs(t.ch1 - winding(v.gens[0], v.gens[1]).value) <= 0.1);
  CHECK(t.min_gap > 0.1);
  CHECK(t.rank == 8);
  CHECK(t.pnorm_slack <= 1e-9);
  CHECK(t.a_inf_sup <= 81.0);
}

TEST_CASE("character bundles hit integer pairings") {
  TorusOptions opt;
  opt.grid = 64;
  opt.order = 4;
  opt.overhang = 1.0 / 12.0 - 1.0 / 750.0;  // widened transition regions
  opt.beta = 0.5;
  for (int w : {-1, 0, 1}) {
    T2Result t = character_t2(w, opt);
    CHECK(std::abs(t.ch1 - w) <= 5e-3);
    if (w == 0) {
      CHECK(t.curv1_sup == 0.0);  // x2-independent field
      CHECK(t.curv2_sup == 0.0);
    }
  }
}

TEST_CASE("pullback assembly equals direct assembly on T^4") {
  Z4AuditResult audit = z4_pullback_audit(4, 6, 0.082, 0.5, 0.05);
  CHECK(audit.dev_blockwise <= 1e-8);
  // the single global lexicographic branch does not factorize; this gap is
  // structural, not numerical (wrap-overlap points see reversed words)
  CHECK(audit.dev_lex > 1e-3);
}

TEST_CASE("z4 analyzer sanity at small size") {
  TorusOptions opt;
  opt.grid = 16;
  opt.order = 4;
  opt.overhang = 0.082;
  opt.beta = 0.5;
  Z4Result z = analyze_z4(8, opt);
  CHECK(z.rank == 16);
  CHECK(z.ch1_12 == doctest::Approx(z.ch1_34));
  CHECK(z.ch1_mixed <= 1e-9);
  CHECK(std::abs(z.ch2_imag) <= 1e-9);
  CHECK(std::abs(z.ch2) <= 0.05);  // exact discrete cancellation up to rounding
  CHECK(std::abs(z.c2 - z.ch1_12 * z.ch1_34 + z.ch2) <= 1e-12);
  CHECK(z.min_gap > 0.05);
  CHECK(z.curv2_sup > 0.0);
  CHECK((z.verdict.verdict == "VANISHES" ||
         z.verdict.verdict == "UNDECIDED-AT-THIS-SCALE"));
}
