#pragma once

// Quadratic forms over Q: diagonalization, Hilbert symbols, the complete
// invariant system (rank, determinant class, signature, Hasse-Witt symbols)
// and the decision procedures built on it.

#include <optional>
#include <string>
#include <vector>

#include "k3lat/lattice.hpp"

namespace k3lat {

/// A place of Q: a prime p or the real place.
class Place {
 public:
  static Place infinity() { return Place(Integer(0)); }
  /// Throws Error unless p is prime.
  static Place prime(const Integer& p);

  bool is_infinite() const { return p_ == 0; }
  const Integer& p() const { return p_; }
  std::string to_string() const { return is_infinite() ? "inf" : p_.get_str(); }

 private:
  explicit Place(Integer p) : p_(std::move(p)) {}
  Integer p_;
};

/// Congruent diagonal form: basis * gram * basis^T == diag(entries).
struct Diagonalization {
  RatVector entries;
  RatMatrix basis;
};

/// Throws Error on degenerate input.
Diagonalization diagonalize(const RatMatrix& gram);
Diagonalization diagonalize(const Lattice& l);

/// (a, b)_v in {+1, -1}; a, b nonzero.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

/// True when a nonzero rational is a square in Q_v (R when v is infinite).
bool is_local_square(const Rational& a, const Place& v);

/// prod_{i<j} (d_i, d_j)_v over a diagonalization.
int hasse_product(const RatVector& diagonal, const Place& v);

/// Complete invariants of a nondegenerate rational quadratic space.
///
/// `hasse` lists the primes where the Hasse-Witt symbol is -1. The symbol is
/// normalized so that orthogonal sums with hyperbolic planes leave it
/// unchanged: it equals hasse_product corrected by (-1,-d), (-1,-1) or (-1,d)
/// according to rank mod 8. In this normalization a rank-3 space, or a
/// rank-4 space of square determinant, is anisotropic at p exactly when its
/// symbol at p is -1.
struct FormInvariants {
  std::size_t rank = 0;
  Integer det_class = 1;
  Signature sig;
  IntVector hasse;

  /// Symbol at any place, including the real one.
  int symbol(const Place& v) const;

  bool operator==(const FormInvariants&) const = default;
};

/// "rank 4, det_class 1, sig (2,2), hasse [2,3]"
std::string to_string(const FormInvariants& inv);

FormInvariants invariants(const Lattice& q);
FormInvariants invariants_of_diagonal(const RatVector& diagonal);
/// Same, examining only the given finite places; they must include 2 and
/// every prime dividing a numerator or denominator of the diagonal.
FormInvariants invariants_of_diagonal(const RatVector& diagonal, const std::vector<Integer>& places);

/// Serre's convention prod_{i<j} at v, recovered from the normalized symbol.
int hasse_product(const FormInvariants& inv, const Place& v);

bool equivalent(const Lattice& a, const Lattice& b);

bool is_locally_isotropic(const FormInvariants& inv, const Place& v);
bool is_isotropic(const FormInvariants& inv);
bool is_isotropic(const Lattice& q);

/// Number of hyperbolic planes that split off over Q.
int witt_index(const Lattice& q);

/// Diagonal entries of a space W with q + W isometric to U^k over Q, or
/// nullopt when none exists. Every returned witness has been checked by
/// comparing invariants of q + W and U^k.
std::optional<RatVector> hyperbolic_complement(const Lattice& q, std::size_t k);

/// q (x) Q embeds in U^k (x) Q.
bool embeds_in_hyperbolic(const Lattice& q, std::size_t k);

/// Witness that scale(q2, n) and q1 have equal rational invariants.
struct ScaleCertificate {
  Integer n;
  FormInvariants target;  // invariants of q1
  FormInvariants scaled;  // invariants of scale(q2, n)
};

/// Squarefree products of the primes dividing 2 * det(q1) * det(q2), ascending.
/// In even rank the least scale need not be among them.
IntVector scale_candidates(const Lattice& q1, const Lattice& q2);

/// Least positive squarefree n with q1 equivalent to scale(q2, n), or nullopt
/// when no n exists.
std::optional<ScaleCertificate> similar_scale(const Lattice& q1, const Lattice& q2);

/// A primitive integer vector of norm zero, found by exact rational
/// solving (Legendre descent and splitting), or nullopt if q is anisotropic.
std::optional<IntVector> isotropic_vector(const Lattice& q);

/// Nonzero rational solution of sum e_i x_i^2 = 0 for nonzero integers e_i.
/// Throws Error if the diagonal form is anisotropic.
RatVector solve_diagonal_isotropic(const IntVector& e);

}  // namespace k3lat
