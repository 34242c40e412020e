#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "nhqc/types.hpp"

namespace nhqc {

// Symmetrized two-boson position basis. Pairs (l, l') with 1 <= l <= l' <= L
// in lexicographic order; l < l' stands for (|l,l'> + |l',l>)/sqrt(2),
// l = l' for the doubly occupied |2_l>.
struct FockBasis {
  int L = 0;
  std::vector<std::pair<int, int>> pairs;

  std::size_t dim() const { return pairs.size(); }

  // index of the (sorted) pair; arguments may come in either order
  int index_of(int l, int lp) const {
    if (l > lp) std::swap(l, lp);
    // block of fixed l starts at S(l) = (l-1)L - (l-1)(l-2)/2
    const long a = l - 1;
    const long start = a * L - a * (a - 1) / 2;
    return static_cast<int>(start + (lp - l));
  }
};

FockBasis build_basis(int L);

}  // namespace nhqc
