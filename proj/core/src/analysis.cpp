#include "oblab/analysis.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "oblab/linalg.hpp"

namespace oblab {

namespace {

constexpr double kPi = std::numbers::pi;

struct Stencil {
  std::vector<std::pair<int, double>> taps;  // (offset, coefficient)
};

Stencil make_stencil(int order, double h) {
  if (order == 2)
    return {{{1, 1.0 / (2 * h)}, {-1, -1.0 / (2 * h)}}};
  if (order == 4)
    return {{{1, 8.0 / (12 * h)},
             {-1, -8.0 / (12 * h)},
             {2, -1.0 / (12 * h)},
             {-2, 1.0 / (12 * h)}}};
  throw ContractViolation("stencil order must be 2 or 4");
}

// positions of src patches inside the (sorted) frame patch list
std::vector<int> frame_slots(const std::vector<int>& frame,
                             const std::vector<int>& patches) {
  std::vector<int> slots(patches.size());
  for (size_t a = 0; a < patches.size(); ++a) {
    auto it = std::lower_bound(frame.begin(), frame.end(), patches[a]);
    if (it == frame.end() || *it != patches[a])
      throw Error("stream_t2: neighbour patch outside the centre frame");
    slots[a] = static_cast<int>(it - frame.begin());
  }
  return slots;
}

void embed_add(CMatrix& dst, const PointField& src, double coef,
               const std::vector<int>& frame, int m) {
  auto slots = frame_slots(frame, src.patches);
  const int np = static_cast<int>(src.patches.size());
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b)
      dst.block(static_cast<Eigen::Index>(slots[a]) * m,
                static_cast<Eigen::Index>(slots[b]) * m, m, m) +=
          coef * src.q.block(static_cast<Eigen::Index>(a) * m,
                             static_cast<Eigen::Index>(b) * m, m, m);
}

void point_diagnostics(const RVector& evals, T2Result& r) {
  double aq1 = 0, aq2 = 0, aqi = 0, a2a1 = 0, a2a2 = 0, a2ai = 0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    double l = evals[i];
    double dq = std::abs(l - (l >= 0.5 ? 1.0 : 0.0));
    double d2 = std::abs(l * l - l);
    aq1 += dq;
    aq2 += dq * dq;
    aqi = std::max(aqi, dq);
    a2a1 += d2;
    a2a2 += d2 * d2;
    a2ai = std::max(a2ai, d2);
    r.a_inf_sup = std::max(r.a_inf_sup, std::abs(l));
  }
  r.a2a_sup = std::max(r.a2a_sup, a2ai);
  r.pnorm_slack = std::max({r.pnorm_slack, aq1 - 2 * a2a1,
                            std::sqrt(aq2) - 2 * std::sqrt(a2a2), aqi - 2 * a2ai});
}

}  // namespace

void stream_t2(const NormalizedMap& psi, const TorusOptions& opt,
               const std::function<void(long long, const T2PointData&)>& cb,
               double* min_gap_out, int* rank_out) {
  if (psi.rank() != 2) throw ContractViolation("stream_t2: rank-2 map required");
  const int G = opt.grid;
  const int R = opt.order == 4 ? 2 : 1;
  if (G < 2 * R + 2) throw ContractViolation("stream_t2: grid too coarse");
  const int m = psi.dim();
  const double h = 1.0 / G;
  TorusCover cover(2, CircleCover(opt.overhang, opt.beta));
  Stencil st = make_stencil(opt.order, h);

  double min_gap = 1e300;
  int rank = -1;
  std::map<int, std::vector<PointField>> rows;
  auto ensure_row = [&](int ix) -> std::vector<PointField>& {
    ix = ((ix % G) + G) % G;
    auto it = rows.find(ix);
    if (it != rows.end()) return it->second;
    std::vector<PointField> row;
    row.reserve(G);
    for (int iy = 0; iy < G; ++iy) {
      row.push_back(
          assemble_point(psi, cover, {ix * h, iy * h}, 0.0, opt.gap_tol));
      PointField& p = row.back();
      min_gap = std::min(min_gap, p.gap);
      int r = static_cast<int>(p.v1.cols());
      if (rank < 0) rank = r;
      if (r != rank) throw Error("stream_t2: projector rank varies over the grid");
    }
    return rows.emplace(ix, std::move(row)).first->second;
  };

  for (int ix = 0; ix < G; ++ix) {
    for (int s = -R; s <= R; ++s) ensure_row(ix + s);
    const std::vector<PointField>& crow = ensure_row(ix);
    for (int iy = 0; iy < G; ++iy) {
      const PointField& c = crow[iy];
      std::vector<int> frame =
          cover.active_patches({ix * h, iy * h}, R * h + 1e-12);
      const Eigen::Index na = static_cast<Eigen::Index>(frame.size()) * m;
      CMatrix d1 = CMatrix::Zero(na, na), d2 = CMatrix::Zero(na, na);
      for (auto [off, coef] : st.taps) {
        embed_add(d1, ensure_row(ix + off)[iy], coef, frame, m);
        embed_add(d2, crow[((iy + off) % G + G) % G], coef, frame, m);
      }
      CMatrix q = CMatrix::Zero(na, na);
      embed_add(q, c, 1.0, frame, m);
      CMatrix v1 = CMatrix::Zero(na, c.v1.cols());
      auto slots = frame_slots(frame, c.patches);
      for (size_t a = 0; a < c.patches.size(); ++a)
        v1.middleRows(static_cast<Eigen::Index>(slots[a]) * m, m) =
            c.v1.middleRows(static_cast<Eigen::Index>(a) * m, m);
      T2PointData pd{&c, &frame, &q, &d1, &d2, &v1};
      cb(static_cast<long long>(ix) * G + iy, pd);
    }
    int dead = ix - R;
    if (dead >= R) rows.erase(dead);  // rows 0..R-1 stay for the wrap
  }
  if (min_gap_out) *min_gap_out = min_gap;
  if (rank_out) *rank_out = rank;
}

T2Result analyze_t2(const NormalizedMap& psi, const TorusOptions& opt) {
  T2Result r;
  double ch1_acc = 0;
  stream_t2(
      psi, opt,
      [&](long long, const T2PointData& pd) {
        const CMatrix& v1 = *pd.v1;
        CMatrix x1 = (*pd.d1) * v1;  // na x m
        CMatrix x2 = (*pd.d2) * v1;
        cplx t = (x1.adjoint() * x2).trace();
        ch1_acc += t.imag() / kPi;  // TrF = 2i Im t; pairing adds Im(TrF)/2pi
        if (opt.want_norms) {
          CMatrix w = x1.adjoint() * (*pd.d2) - x2.adjoint() * (*pd.d1);
          RVector sv = singular_values(w);
          r.curv1_sup = std::max(r.curv1_sup, sv.sum());
          r.curv2_sup = std::max(r.curv2_sup, sv.norm());
        }
        point_diagnostics(pd.center->evals, r);
      },
      &r.min_gap, &r.rank);
  r.ch1 = ch1_acc / (static_cast<double>(opt.grid) * opt.grid);
  r.ch1_imag = 0.0;  // TrF is purely imaginary by construction here
  return r;
}

T2Result character_t2(int w, const TorusOptions& opt) {
  const int G = opt.grid;
  const double h = 1.0 / G;
  CircleCover circ(opt.overhang, opt.beta);
  Stencil st = make_stencil(opt.order, h);
  T2Result r;
  r.rank = 1;
  r.min_gap = 1e300;
  // 3x3 fields are cheap enough to hold on the whole grid
  std::vector<CMatrix> q(static_cast<size_t>(G) * G);
  for (int ix = 0; ix < G; ++ix)
    for (int iy = 0; iy < G; ++iy) {
      auto chi = circ.chi(ix * h);
      double x2 = iy * h;
      CMatrix a(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double ph = -2.0 * kPi * w * x2 * CircleCover::cocycle(i, j);
          a(i, j) = chi[i] * chi[j] * cplx(std::cos(ph), std::sin(ph));
        }
      EigenSystem sys = hermitian_eig(a);
      for (Eigen::Index i = 0; i < 3; ++i)
        r.min_gap = std::min(r.min_gap, std::abs(sys.eigenvalues[i] - 0.5));
      point_diagnostics(sys.eigenvalues, r);
      CMatrix v = sys.eigenvectors.col(2);  // top eigenvalue carries the bundle
      if (sys.eigenvalues[2] < 0.5 || sys.eigenvalues[1] >= 0.5)
        throw Error("character_t2: unexpected spectrum");
      q[static_cast<size_t>(ix) * G + iy] = v * v.adjoint();
    }
  double ch1_acc = 0;
  auto at = [&](int ix, int iy) -> const CMatrix& {
    return q[static_cast<size_t>((ix % G + G) % G) * G + ((iy % G + G) % G)];
  };
  for (int ix = 0; ix < G; ++ix)
    for (int iy = 0; iy < G; ++iy) {
      CMatrix d1 = CMatrix::Zero(3, 3), d2 = CMatrix::Zero(3, 3);
      for (auto [off, coef] : st.taps) {
        d1 += coef * at(ix + off, iy);
        d2 += coef * at(ix, iy + off);
      }
      CMatrix f = at(ix, iy) * (d1 * d2 - d2 * d1);
      ch1_acc += f.trace().imag() / (2.0 * kPi);
      if (opt.want_norms) {
        RVector sv = singular_values(f);
        r.curv1_sup = std::max(r.curv1_sup, sv.sum());
        r.curv2_sup = std::max(r.curv2_sup, sv.norm());
      }
    }
  r.ch1 = ch1_acc / (static_cast<double>(G) * G);
  return r;
}

namespace {

// field ids: 0: X, 1: F_X = X(X1 X2 - X2 X1), 2: X X1, 3: X X1 X,
//            4: X X2, 5: X X2 X
std::array<CMatrix, 6> six_fields(const CMatrix& x, const CMatrix& x1,
                                  const CMatrix& x2) {
  std::array<CMatrix, 6> u;
  u[0] = x;
  u[2] = x * x1;
  u[3] = u[2] * x;
  u[4] = x * x2;
  u[5] = u[4] * x;
  u[1] = u[2] * x2 - u[4] * x1;
  return u;
}

cplx trace_prod(const CMatrix& a, const CMatrix& b) {
  return (a.transpose().cwiseProduct(b)).sum();  // Tr(ab)
}

cplx trace_gram(const CMatrix& a, const CMatrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum();  // Tr(a* b)
}

struct Term {
  int u, v;
  double c;
};

// curvature components of X(u) (x) Y(v), local axes (u1,u2,v1,v2)
const std::vector<Term> kF_uu = {{1, 0, 1.0}};
const std::vector<Term> kF_vv = {{0, 1, 1.0}};
const std::vector<Term> kF_u1v1 = {{3, 2, 1.0}, {2, 3, -1.0}};
const std::vector<Term> kF_u1v2 = {{3, 4, 1.0}, {2, 5, -1.0}};
const std::vector<Term> kF_u2v1 = {{5, 2, 1.0}, {4, 3, -1.0}};
const std::vector<Term> kF_u2v2 = {{5, 4, 1.0}, {4, 5, -1.0}};

using Table6 = std::array<cplx, 36>;

cplx pair_integral(const Table6& ix, const Table6& iy, const std::vector<Term>& fa,
                   const std::vector<Term>& fb) {
  cplx s(0, 0);
  for (const Term& a : fa)
    for (const Term& b : fb)
      s += a.c * b.c * ix[a.u * 6 + b.u] * iy[a.v * 6 + b.v];
  return s;
}

}  // namespace

Z4Result analyze_z4(int n, const TorusOptions& opt) {
  Z4Result res;
  res.n = n;
  const int G = opt.grid;
  const double h = 1.0 / G;
  const long long np = static_cast<long long>(G) * G;
  AlmostRep rep = voiculescu_pair(n);
  LexNormalized psi(rep);

  std::vector<Table6> gram_a(np), gram_b(np);
  Table6 ia{}, ib{};
  std::array<cplx, 6> ja{}, jb{};

  stream_t2(
      psi, opt,
      [&](long long flat, const T2PointData& pd) {
        auto u = six_fields(*pd.q, *pd.d1, *pd.d2);
        for (int a = 0; a < 6; ++a) {
          ja[a] += u[a].trace();
          for (int b = 0; b < 6; ++b) {
            ia[a * 6 + b] += trace_prod(u[a], u[b]);
            gram_a[flat][a * 6 + b] = trace_gram(u[a], u[b]);
          }
        }
      },
      &res.min_gap, &res.rank);
  res.rank *= 2;  // two blocks
  res.min_gap = std::min(res.min_gap, 0.5);

  // rank-1 partition factor |chi (x) chi><chi (x) chi| on the 9-patch frame
  CircleCover circ(opt.overhang, opt.beta);
  std::vector<CMatrix> bmat(np);
  for (int ix = 0; ix < G; ++ix)
    for (int iy = 0; iy < G; ++iy) {
      auto c1 = circ.chi(ix * h);
      auto c2 = circ.chi(iy * h);
      CVector v(9);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) v[i * 3 + j] = c1[i] * c2[j];
      bmat[static_cast<size_t>(ix) * G + iy] = v * v.adjoint();
    }
  Stencil st = make_stencil(opt.order, h);
  auto bat = [&](int ix, int iy) -> const CMatrix& {
    return bmat[static_cast<size_t>((ix % G + G) % G) * G + ((iy % G + G) % G)];
  };
  for (int ix = 0; ix < G; ++ix)
    for (int iy = 0; iy < G; ++iy) {
      CMatrix d1 = CMatrix::Zero(9, 9), d2 = CMatrix::Zero(9, 9);
      for (auto [off, coef] : st.taps) {
        d1 += coef * bat(ix + off, iy);
        d2 += coef * bat(ix, iy + off);
      }
      auto u = six_fields(bat(ix, iy), d1, d2);
      long long flat = static_cast<long long>(ix) * G + iy;
      for (int a = 0; a < 6; ++a) {
        jb[a] += u[a].trace();
        for (int b = 0; b < 6; ++b) {
          ib[a * 6 + b] += trace_prod(u[a], u[b]);
          gram_b[flat][a * 6 + b] = trace_gram(u[a], u[b]);
        }
      }
    }

  const double inv = 1.0 / static_cast<double>(np);
  for (auto& z : ia) z *= inv;
  for (auto& z : ib) z *= inv;
  for (auto& z : ja) z *= inv;
  for (auto& z : jb) z *= inv;

  const cplx two_pi_i(0, 2.0 * kPi);
  double ch1_a = (ja[1] / two_pi_i).real();
  double ch1_b = (jb[1] / two_pi_i).real();
  res.ch1_12 = ch1_a + n * ch1_b;
  res.ch1_34 = ch1_a + n * ch1_b;

  // mixed-plane TrF integrals; idempotency makes the terms cancel
  double mixed = 0;
  for (const auto* f : {&kF_u1v1, &kF_u1v2, &kF_u2v1, &kF_u2v2}) {
    cplx s(0, 0);
    for (const Term& t : *f) s += t.c * (ja[t.u] * jb[t.v] + jb[t.u] * ja[t.v]);
    mixed = std::max(mixed, std::abs(s / two_pi_i));
  }
  res.ch1_mixed = mixed;

  // int Tr(F ^ F) via the factorized pair tables, both blocks
  cplx tot(0, 0);
  for (const auto& [ix_tab, iy_tab] :
       {std::pair<const Table6&, const Table6&>(ia, ib),
        std::pair<const Table6&, const Table6&>(ib, ia)}) {
    tot += 2.0 * (pair_integral(ix_tab, iy_tab, kF_uu, kF_vv) -
                  pair_integral(ix_tab, iy_tab, kF_u1v1, kF_u2v2) +
                  pair_integral(ix_tab, iy_tab, kF_u1v2, kF_u2v1));
  }
  cplx ch2c = tot / (2.0 * two_pi_i * two_pi_i);
  res.ch2 = ch2c.real();
  res.ch2_imag = ch2c.imag();
  res.c2 = res.ch1_12 * res.ch1_34 - res.ch2;

  // sup over the T^4 grid of sum_K ||F_K||_2 (estimator mode)
  const std::array<const std::vector<Term>*, 6> planes = {
      &kF_uu, &kF_vv, &kF_u1v1, &kF_u1v2, &kF_u2v1, &kF_u2v2};
  double sup = 0;
  for (long long u = 0; u < np; ++u) {
    const Table6& au = gram_a[u];
    const Table6& bu = gram_b[u];
    for (long long v = 0; v < np; ++v) {
      const Table6& av = gram_a[v];
      const Table6& bv = gram_b[v];
      double s = 0;
      for (const auto* pl : planes) {
        double nsq = 0;
        for (const Term& a : *pl)
          for (const Term& b : *pl) {
            cplx blk1 = au[a.u * 6 + b.u] * bv[a.v * 6 + b.v];
            cplx blk2 = bu[a.u * 6 + b.u] * av[a.v * 6 + b.v];
            nsq += a.c * b.c * (blk1.real() + blk2.real());
          }
        s += std::sqrt(std::max(nsq, 0.0));
      }
      sup = std::max(sup, s);
    }
  }
  res.curv2_sup = sup;
  res.verdict = vanishing_verdict(4, 2, 2.0, res.ch2, res.curv2_sup);
  return res;
}

Z4AuditResult z4_pullback_audit(int n, int grid, double overhang, double beta,
                                double gap_tol) {
  CircleCover circ(overhang, beta);
  TorusCover cov2(2, circ), cov4(4, circ);
  AlmostRep rep2 = voiculescu_pair(n);
  LexNormalized psi2(rep2);
  std::vector<int> g4 = {grid, grid, grid, grid};
  BundleField src = assemble_bundle(psi2, cov2, {grid, grid}, gap_tol);
  BundleField pb = direct_sum_fields(pullback_field(src, 4, {0, 1}, cov4, g4),
                                     pullback_field(src, 4, {2, 3}, cov4, g4));
  BlockNormalized bn(4, {{rep2, {1, 2}}, {rep2, {3, 4}}});
  BundleField direct_block = assemble_bundle(bn, cov4, g4, gap_tol);
  AlmostRep rep4 = direct_sum(embed_rank(rep2, 4, {1, 2}),
                              embed_rank(rep2, 4, {3, 4}));
  LexNormalized psi4(rep4);
  BundleField direct_lex = assemble_bundle(psi4, cov4, g4, gap_tol);
  Z4AuditResult r;
  r.dev_blockwise = max_q_deviation(pb, direct_block);
  r.dev_lex = max_q_deviation(pb, direct_lex);
  return r;
}

}  // namespace oblab
