#pragma once

#include <optional>

#include "k3lat/lattice.hpp"

namespace k3lat {

/// The discriminant group L^/L of an integral lattice with its torsion forms.
///
/// Generator i has order invariant_factors[i]; generators are rational
/// coordinate vectors in the basis of the source lattice. Bilinear values are
/// reduced into [0, 1), quadratic values into [0, 2).
struct FiniteQuadraticModule {
  IntVector invariant_factors;
  RatMatrix generators;
  RatMatrix bilinear_values;
  std::optional<RatVector> quadratic_values;  // only for even sources

  Integer order() const;
  std::size_t length() const { return invariant_factors.size(); }
};

/// Throws Error for non-integral input.
FiniteQuadraticModule discriminant_group(const Lattice& l);

/// Minimal number of generators of the p-primary part; throws if p is not prime.
int p_length(const FiniteQuadraticModule& d, const Integer& p);

}  // namespace k3lat
