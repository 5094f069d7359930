#pragma once

#include <cstdlib>
#include <vector>

namespace oblab {

// element of the free abelian group of rank d
struct ZdElement {
  std::vector<int> coords;

  ZdElement() = default;
  explicit ZdElement(std::vector<int> c) : coords(std::move(c)) {}
  static ZdElement zero(int d) { return ZdElement(std::vector<int>(d, 0)); }

  int rank() const { return static_cast<int>(coords.size()); }
  bool is_zero() const {
    for (int c : coords)
      if (c != 0) return false;
    return true;
  }
  ZdElement operator+(const ZdElement& o) const {
    ZdElement r = *this;
    for (size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
    return r;
  }
  ZdElement operator-() const {
    ZdElement r = *this;
    for (int& c : r.coords) c = -c;
    return r;
  }
  bool operator==(const ZdElement& o) const { return coords == o.coords; }
  int norm_inf() const {
    int m = 0;
    for (int c : coords) m = std::max(m, std::abs(c));
    return m;
  }
  int norm_1() const {
    int s = 0;
    for (int c : coords) s += std::abs(c);
    return s;
  }
};

// first nonzero coordinate positive
inline bool lex_positive(const ZdElement& g) {
  for (int c : g.coords) {
    if (c > 0) return true;
    if (c < 0) return false;
  }
  return false;
}

}  // namespace oblab
