#pragma once

#include "k3lat/lattice.hpp"

namespace k3lat {

/// A lattice given by coordinate rows inside a fixed ambient lattice.
///
/// Rows must be linearly independent. The induced Gram matrix may be
/// degenerate (projections can produce isotropic images); use lattice() when
/// a nondegenerate Lattice is required.
class SublatticeEmbedding {
 public:
  SublatticeEmbedding(Lattice ambient, RatMatrix coords);

  const Lattice& ambient() const { return ambient_; }
  const RatMatrix& coords() const { return coords_; }
  const RatMatrix& gram() const { return gram_; }
  std::size_t rank() const { return coords_.rows(); }

  /// True when every coordinate is an integer, i.e. a sublattice of the ambient.
  bool is_integral() const { return k3lat::is_integral(coords_); }
  bool is_nondegenerate() const { return determinant(gram_) != 0; }

  /// The sublattice as an abstract lattice; throws if degenerate.
  Lattice lattice() const { return Lattice(gram_); }

  /// Integer coordinates; throws if some coordinate is fractional.
  IntMatrix integral_coords() const;

 private:
  Lattice ambient_;
  RatMatrix coords_;
  RatMatrix gram_;
};

/// Embedding with the given rows; throws on dependent rows or dimension mismatch.
SublatticeEmbedding embed(const Lattice& ambient, const RatMatrix& rows);

/// The embedding of the ambient lattice into itself.
SublatticeEmbedding whole(const Lattice& ambient);

/// The dual lattice, with basis rows gram^{-1} inside L (x) Q.
SublatticeEmbedding dual(const Lattice& l);

/// Dual of a sublattice inside its own rational span.
SublatticeEmbedding dual(const SublatticeEmbedding& s);

/// The same module with every coordinate multiplied by factor.
SublatticeEmbedding scale_coords(const SublatticeEmbedding& s, const Rational& factor);

/// inner is a subset of outer (same ambient, compared by coordinates).
bool contains(const SublatticeEmbedding& outer, const SublatticeEmbedding& inner);

/// Equal as modules inside the ambient rational space.
bool same_lattice(const SublatticeEmbedding& a, const SublatticeEmbedding& b);

}  // namespace k3lat
