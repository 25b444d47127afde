#pragma once

#include "k3lat/matrix.hpp"

namespace k3lat {

/// U * M * V == S with U, V unimodular and S diagonal; the nonzero diagonal
/// entries are positive and each divides the next.
struct SmithDecomposition {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;
  std::size_t rank = 0;

  /// The nonzero diagonal entries d_1 | d_2 | ... | d_rank.
  IntVector diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Nonzero Smith diagonal entries.
IntVector elementary_divisors(const IntMatrix& m);

}  // namespace k3lat
