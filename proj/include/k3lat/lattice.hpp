#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "k3lat/matrix.hpp"

namespace k3lat {

struct Signature {
  int positive = 0;
  int negative = 0;

  auto operator<=>(const Signature&) const = default;
};

std::string to_string(const Signature& sig);

/// A free module of finite rank with a nondegenerate rational symmetric
/// bilinear form, stored as its Gram matrix in a fixed basis.
class Lattice {
 public:
  /// Throws Error if gram is not square, not symmetric, or degenerate.
  explicit Lattice(RatMatrix gram);

  static Lattice from_integers(const std::vector<std::vector<long>>& gram);
  static Lattice diagonal(const RatVector& entries);

  const RatMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }

  bool is_integral() const;
  bool is_even() const;

  /// Gram matrix as integers; throws if the lattice is not integral.
  IntMatrix integral_gram() const;

  Rational pairing(const RatVector& x, const RatVector& y) const { return bilinear(x, gram_, y); }
  Rational norm(const RatVector& x) const { return bilinear(x, gram_, x); }

  bool operator==(const Lattice& other) const { return gram_ == other.gram_; }

 private:
  RatMatrix gram_;
};

/// Gram matrix of the rank-two even unimodular hyperbolic plane.
Lattice hyperbolic_plane();

/// U^k.
Lattice hyperbolic(std::size_t k);

/// The negative-definite E8 root lattice. Basis v1..v8 with the chain
/// v1-v2-v3-v4-v5-v6-v7 and v8 attached to v3.
Lattice e8();

/// Names accepted by make_named: U, U^2, U^3, E8, E8(2), Lambda0, Lambda1, U(2)^3.
const std::vector<std::string>& named_lattices();

/// Lattice0 basis order is v1..v8, e1, f1, e2, f2, e3, f3. Lambda1 uses the
/// basis v1/2..v8/2, e1, f1, e2, f2, e3, f3 of the dual.
Lattice make_named(std::string_view name);

Lattice scale(const Lattice& l, const Rational& factor);
Lattice direct_sum(const Lattice& a, const Lattice& b);
Lattice direct_sum(const std::vector<Lattice>& parts);

struct DeterminantSignature {
  Rational det;
  Signature sig;
};

DeterminantSignature determinant_signature(const Lattice& l);
Signature signature(const Lattice& l);
Rational determinant(const Lattice& l);

/// Rows of a unimodular change of basis that LLL-reduces the form, using
/// |b*_i . b*_i| in the exchange condition so that indefinite forms are
/// handled too. Stops early when a Gram-Schmidt vector becomes isotropic.
IntMatrix reduce_basis(const Lattice& l);

/// Summary line such as "rank 2, sig (1,1), det -1, even".
std::string describe(const Lattice& l);

}  // namespace k3lat
