#include "nhqc/basis.hpp"

namespace nhqc {

FockBasis build_basis(int L) {
  if (L < 2) throw invalid_parameter("build_basis: L must be >= 2");
  FockBasis b;
  b.L = L;
  b.pairs.reserve(static_cast<std::size_t>(L) * (L + 1) / 2);
  for (int l = 1; l <= L; ++l)
    for (int lp = l; lp <= L; ++lp) b.pairs.emplace_back(l, lp);
  return b;
}

}  // namespace nhqc
