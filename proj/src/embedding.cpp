#include "k3lat/embedding.hpp"

namespace k3lat {

SublatticeEmbedding::SublatticeEmbedding(Lattice ambient, RatMatrix coords)
    : ambient_(std::move(ambient)), coords_(std::move(coords)) {
  if (coords_.rows() > 0 && coords_.cols() != ambient_.rank())
    throw Error("embedding rows have " + std::to_string(coords_.cols()) + " coordinates, ambient rank is " +
                std::to_string(ambient_.rank()));
  if (coords_.rows() == 0) coords_ = RatMatrix(0, ambient_.rank());
  if (k3lat::rank(coords_) != coords_.rows()) throw Error("embedding rows are linearly dependent");
  gram_ = gram_of(coords_, ambient_.gram());
}

IntMatrix SublatticeEmbedding::integral_coords() const {
  auto c = to_integer(coords_);
  if (!c) throw Error("embedding coordinates are not integral");
  return *c;
}

SublatticeEmbedding embed(const Lattice& ambient, const RatMatrix& rows) { return SublatticeEmbedding(ambient, rows); }

SublatticeEmbedding whole(const Lattice& ambient) {
  return SublatticeEmbedding(ambient, RatMatrix::identity(ambient.rank()));
}

SublatticeEmbedding dual(const Lattice& l) { return SublatticeEmbedding(l, inverse(l.gram())); }

SublatticeEmbedding dual(const SublatticeEmbedding& s) {
  return SublatticeEmbedding(s.ambient(), inverse(s.gram()) * s.coords());
}

SublatticeEmbedding scale_coords(const SublatticeEmbedding& s, const Rational& factor) {
  return SublatticeEmbedding(s.ambient(), factor * s.coords());
}

bool contains(const SublatticeEmbedding& outer, const SublatticeEmbedding& inner) {
  if (!(outer.ambient() == inner.ambient())) throw Error("containment test across different ambients");
  auto x = solve_left(outer.coords(), inner.coords());
  return x && is_integral(*x);
}

bool same_lattice(const SublatticeEmbedding& a, const SublatticeEmbedding& b) {
  return a.rank() == b.rank() && contains(a, b) && contains(b, a);
}

}  // namespace k3lat
