#include "oblab/almost_rep.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>

#include "oblab/linalg.hpp"

namespace oblab {

namespace {
// U^a for unitary U, negative exponents via the adjoint
CMatrix upow(const CMatrix& u, int a) {
  const Eigen::Index n = u.rows();
  CMatrix acc = CMatrix::Identity(n, n);
  CMatrix base = a >= 0 ? u : CMatrix(u.adjoint());
  for (int i = 0; i < std::abs(a); ++i) acc = acc * base;
  return acc;
}
}  // namespace

AlmostRep::AlmostRep(int rank, std::vector<CMatrix> generators)
    : d(rank), gens(std::move(generators)) {
  if (d <= 0 || static_cast<int>(gens.size()) != d)
    throw ContractViolation("AlmostRep: rank must match generator count");
  m = static_cast<int>(gens[0].rows());
  for (const auto& u : gens) {
    require_finite(u, "AlmostRep");
    require_square(u, "AlmostRep");
    if (u.rows() != m) throw ContractViolation("AlmostRep: generator sizes differ");
    CMatrix g = u.adjoint() * u;
    g.diagonal().array() -= 1.0;
    if (max_abs(g) > 1e-10)
      throw ContractViolation("AlmostRep: generator is not unitary to 1e-10");
  }
}

CMatrix AlmostRep::section(const ZdElement& g) const {
  if (g.rank() != d) throw ContractViolation("AlmostRep::section: rank mismatch");
  CMatrix acc = CMatrix::Identity(m, m);
  for (int i = 0; i < d; ++i)
    if (g.coords[i] != 0) acc = acc * upow(gens[i], g.coords[i]);
  return acc;
}

AlmostRep voiculescu_pair(int n) {
  if (n < 2) throw std::domain_error("voiculescu_pair: n >= 2 required");
  CMatrix s = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) s((j + 1) % n, j) = 1.0;
  CMatrix om = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double th = 2.0 * std::numbers::pi * j / n;
    om(j, j) = cplx(std::cos(th), std::sin(th));
  }
  return AlmostRep(2, {s, om});
}

AlmostRep direct_sum(const AlmostRep& r1, const AlmostRep& r2) {
  if (r1.d != r2.d) throw ContractViolation("direct_sum: rank mismatch");
  std::vector<CMatrix> gens;
  gens.reserve(r1.d);
  for (int i = 0; i < r1.d; ++i) {
    CMatrix g = CMatrix::Zero(r1.m + r2.m, r1.m + r2.m);
    g.topLeftCorner(r1.m, r1.m) = r1.gens[i];
    g.bottomRightCorner(r2.m, r2.m) = r2.gens[i];
    gens.push_back(std::move(g));
  }
  return AlmostRep(r1.d, std::move(gens));
}

AlmostRep embed_rank(const AlmostRep& r, int target_rank,
                     const std::vector<int>& coord_map) {
  if (static_cast<int>(coord_map.size()) != r.d)
    throw ContractViolation("embed_rank: coord_map must cover every generator");
  std::vector<CMatrix> gens(target_rank, CMatrix::Identity(r.m, r.m));
  std::vector<bool> used(target_rank, false);
  for (int i = 0; i < r.d; ++i) {
    int c = coord_map[i];
    if (c < 1 || c > target_rank || used[c - 1])
      throw ContractViolation("embed_rank: coord_map must be injective into 1..d");
    used[c - 1] = true;
    gens[c - 1] = r.gens[i];
  }
  return AlmostRep(target_rank, std::move(gens));
}

namespace {
void ball(int d, int radius, std::vector<int>& cur, std::vector<ZdElement>& out) {
  if (static_cast<int>(cur.size()) == d) {
    out.emplace_back(cur);
    return;
  }
  for (int c = -radius; c <= radius; ++c) {
    cur.push_back(c);
    ball(d, radius, cur, out);
    cur.pop_back();
  }
}
}  // namespace

DefectTable defect(const AlmostRep& r, double p, int word_radius) {
  if (word_radius < 1) throw std::domain_error("defect: word_radius >= 1 required");
  std::vector<ZdElement> pts;
  std::vector<int> cur;
  ball(r.d, word_radius, cur, pts);
  DefectTable t;
  t.p = p;
  t.word_radius = word_radius;
  for (const auto& g : pts) {
    CMatrix rg = r.section(g);
    for (const auto& h : pts) {
      double v = schatten_norm(rg * r.section(h) - r.section(g + h), p);
      t.entries.push_back({{g, h}, v});
      t.max_defect = std::max(t.max_defect, v);
    }
  }
  return t;
}

CMatrix LexNormalized::value(const ZdElement& g) const {
  if (g.is_zero()) return CMatrix::Identity(rep_.m, rep_.m);
  if (lex_positive(g)) return rep_.section(g);
  return rep_.section(-g).adjoint();
}

BlockNormalized::BlockNormalized(int rank, std::vector<Block> blocks)
    : d_(rank), blocks_(std::move(blocks)) {
  m_ = 0;
  std::vector<bool> used(d_, false);
  for (const auto& b : blocks_) {
    if (static_cast<int>(b.coords.size()) != b.rep.d)
      throw ContractViolation("BlockNormalized: block coords must match block rank");
    for (int c : b.coords) {
      if (c < 1 || c > d_ || used[c - 1])
        throw ContractViolation("BlockNormalized: coordinates must be disjoint");
      used[c - 1] = true;
    }
    m_ += b.rep.m;
  }
}

CMatrix BlockNormalized::value(const ZdElement& g) const {
  if (g.rank() != d_) throw ContractViolation("BlockNormalized::value: rank mismatch");
  CMatrix out = CMatrix::Zero(m_, m_);
  int off = 0;
  for (const auto& b : blocks_) {
    std::vector<int> sub(b.rep.d);
    for (int i = 0; i < b.rep.d; ++i) sub[i] = g.coords[b.coords[i] - 1];
    ZdElement gs{sub};
    CMatrix v;
    if (gs.is_zero())
      v = CMatrix::Identity(b.rep.m, b.rep.m);
    else if (lex_positive(gs))
      v = b.rep.section(gs);
    else
      v = b.rep.section(-gs).adjoint();
    out.block(off, off, b.rep.m, b.rep.m) = v;
    off += b.rep.m;
  }
  return out;
}

WindingResult winding(const CMatrix& u, const CMatrix& v) {
  CMatrix comm = u * v * u.adjoint() * v.adjoint();
  cplx lt = unitary_log_trace(comm);
  WindingResult w;
  w.value = (lt / (cplx(0, 2) * std::numbers::pi)).real();
  w.nearest = std::llround(w.value);
  return w;
}

void save_text(const AlmostRep& r, std::ostream& os) {
  os << "oblab-almostrep 1\n" << r.d << ' ' << r.m << '\n';
  char buf[64];
  for (const auto& g : r.gens)
    for (int i = 0; i < r.m; ++i) {
      for (int j = 0; j < r.m; ++j) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g", g(i, j).real(), g(i, j).imag());
        os << buf << (j + 1 < r.m ? "  " : "");
      }
      os << '\n';
    }
}

AlmostRep load_text(std::istream& is) {
  std::string magic;
  int ver = 0, d = 0, m = 0;
  is >> magic >> ver >> d >> m;
  if (magic != "oblab-almostrep" || ver != 1 || d <= 0 || m <= 0)
    throw Error("load_text: bad header");
  std::vector<CMatrix> gens(d, CMatrix(m, m));
  for (auto& g : gens)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double re, im;
        if (!(is >> re >> im)) throw Error("load_text: truncated data");
        g(i, j) = cplx(re, im);
      }
  return AlmostRep(d, std::move(gens));
}

}  // namespace oblab
