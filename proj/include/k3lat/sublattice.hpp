#pragma once

#include <vector>

#include "k3lat/embedding.hpp"

namespace k3lat {

/// Ambient/S is torsion-free. Requires integral coordinates.
bool is_primitive(const SublatticeEmbedding& s);

/// The saturation (S (x) Q) cap ambient. Returns s itself when already primitive.
SublatticeEmbedding primitive_closure(const SublatticeEmbedding& s);

/// {x in ambient : (x, s) = 0 for all s in S}, in Hermite basis.
SublatticeEmbedding orthogonal_complement(const SublatticeEmbedding& s);

struct Projection {
  SublatticeEmbedding image;  // inside the summand spanned by the chosen basis vectors
  bool injective = false;
};

/// Projection onto the orthogonal summand spanned by the ambient basis
/// vectors in `summand`. Throws if the cut is not an orthogonal splitting.
Projection orthogonal_projection(const SublatticeEmbedding& s, const std::vector<std::size_t>& summand);

/// Invariant factors (> 1) of super/sub. Both must have equal rank and sub
/// must lie in super.
IntVector quotient_group(const SublatticeEmbedding& sub, const SublatticeEmbedding& super);

/// True when the Gram matrix matches Lambda0 = E8(2) + U^3 in its fixed basis.
bool is_lambda0(const Lattice& l);

/// (S (x) Q) cap k * Lambda1 for S inside Lambda0, with k > 0.
SublatticeEmbedding intersect_with_scaled_dual(const SublatticeEmbedding& s, const Rational& k);

}  // namespace k3lat
