#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "oblab/types.hpp"
#include "oblab/zd.hpp"

namespace oblab {

// unitary-valued map on Z^d given by generator images; evaluation uses the
// fixed ordered-power section rho(a_1..a_d) = U_1^{a_1} ... U_d^{a_d}
struct AlmostRep {
  int d = 0;  // group rank
  int m = 0;  // matrix dimension
  std::vector<CMatrix> gens;

  AlmostRep() = default;
  AlmostRep(int rank, std::vector<CMatrix> generators);

  CMatrix section(const ZdElement& g) const;
  CMatrix operator()(const ZdElement& g) const { return section(g); }
};

AlmostRep voiculescu_pair(int n);
AlmostRep direct_sum(const AlmostRep& r1, const AlmostRep& r2);
// places generators of r at the listed coordinates (1-based) of a rank-d map;
// unmapped generators become the identity
AlmostRep embed_rank(const AlmostRep& r, int target_rank,
                     const std::vector<int>& coord_map);

struct DefectTable {
  double p = 0;
  int word_radius = 0;
  // ((g, h), ||rho(g)rho(h) - rho(gh)||_p) over the ball of radius L
  std::vector<std::pair<std::pair<ZdElement, ZdElement>, double>> entries;
  double max_defect = 0;
};

DefectTable defect(const AlmostRep& r, double p, int word_radius = 2);

// a map with psi(0) = I and psi(-g) = psi(g)^* exactly
class NormalizedMap {
 public:
  virtual ~NormalizedMap() = default;
  virtual int rank() const = 0;
  virtual int dim() const = 0;
  virtual CMatrix value(const ZdElement& g) const = 0;
};

// psi(g) = rho(g) for lexicographically positive g, rho(-g)^* otherwise
class LexNormalized : public NormalizedMap {
 public:
  explicit LexNormalized(AlmostRep rep) : rep_(std::move(rep)) {}
  int rank() const override { return rep_.d; }
  int dim() const override { return rep_.m; }
  CMatrix value(const ZdElement& g) const override;
  const AlmostRep& rep() const { return rep_; }

 private:
  AlmostRep rep_;
};

inline LexNormalized normalize(AlmostRep rep) { return LexNormalized(std::move(rep)); }

// direct sum of independently normalized blocks, each block reading only its
// own coordinates; the natural normalization when the blocks live on
// complementary coordinate planes (it factorizes over the product cover,
// which the single global lexicographic branch does not)
class BlockNormalized : public NormalizedMap {
 public:
  struct Block {
    AlmostRep rep;               // rank = coords.size()
    std::vector<int> coords;     // 1-based target coordinates
  };
  BlockNormalized(int rank, std::vector<Block> blocks);
  int rank() const override { return d_; }
  int dim() const override { return m_; }
  CMatrix value(const ZdElement& g) const override;
  const std::vector<Block>& blocks() const { return blocks_; }

 private:
  int d_;
  int m_;
  std::vector<Block> blocks_;
};

struct WindingResult {
  double value = 0;        // (1/2 pi i) Tr Log(u v u* v*)
  long long nearest = 0;   // nearest integer
};

WindingResult winding(const CMatrix& u, const CMatrix& v);

// text container: rank, dim, row-major generator entries at 17 significant digits
void save_text(const AlmostRep& r, std::ostream& os);
AlmostRep load_text(std::istream& is);

}  // namespace oblab
