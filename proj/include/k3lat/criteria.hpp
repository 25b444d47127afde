#pragma once

// Lattice-level decision procedures for K3 surfaces: the Nikulin quotient
// inside Lambda0, Kummer dominance and Shioda-Inose tests via embeddings
// into hyperbolic lattices, and scale similarity of transcendental lattices.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "k3lat/discriminant.hpp"
#include "k3lat/embedding.hpp"
#include "k3lat/forms.hpp"

namespace k3lat {

enum class Verdict { yes, no, unknown };

std::string to_string(Verdict v);

struct EmbeddingCertificate {
  SublatticeEmbedding image;  // rows in the hyperbolic ambient, Gram equal to the source
  bool primitive = false;
};

using Certificate = std::variant<std::monostate, EmbeddingCertificate, IntVector, ScaleCertificate>;

struct Decision {
  Verdict verdict = Verdict::unknown;
  std::string reason;
  Certificate certificate;
  std::vector<std::string> notes;
};

struct SearchBudget {
  int height_bound = 10;
  /// Cap on candidate vectors examined by embedding searches.
  long node_limit = 20'000'000;
};

/// Isometry shadow: equal fingerprints are necessary for integral isometry.
struct Fingerprint {
  std::size_t rank = 0;
  Rational det;
  Signature sig;
  bool even = false;
  IntVector discriminant;  // invariant factors; empty for non-integral input
  FormInvariants rational;

  bool operator==(const Fingerprint&) const = default;
};

Fingerprint fingerprint(const Lattice& l);
std::string to_string(const Fingerprint& f);

struct QuotientReport {
  Lattice quotient;                  // (S (x) Q cap Lambda1)(2)
  SublatticeEmbedding intersection;  // S (x) Q cap Lambda1, in Lambda0 coordinates
  bool source_in_quotient = false;   // S(2) inside T
  bool double_in_source = false;     // 2T inside S(2)
  bool intersection_is_half = false; // intersection equals S/2
};

/// Requires S primitive in Lambda0 with integral coordinates.
QuotientReport nikulin_quotient(const SublatticeEmbedding& s);

/// Lambda0 coordinates of l1..m3 with m_i replaced by m_i + l_i: the rows
/// are the images of e1, f1, e2, f2, e3, f3 under an isometry U(2)^3 -> L.
IntMatrix u2_cube_isometry();

/// Image of T(2) in Lambda0 for T primitive in U^3.
SublatticeEmbedding sandwich_embedding(const SublatticeEmbedding& t);

struct IsotropicSearch {
  std::optional<IntVector> vector;
  std::string tag;  // found, anisotropic, anisotropic-by-signature, budget-exhausted
};

/// Bounded enumeration by height; the first hit in shell order is returned.
IsotropicSearch find_isotropic(const Lattice& l, const SearchBudget& budget = {});

/// Coordinates (in L (x) Q) of an even overlattice with no proper even
/// overlattice, built by adjoining isotropic discriminant elements of prime
/// order: primes ascending, coefficient vectors in lexicographic order.
SublatticeEmbedding maximal_even_overlattice(const Lattice& l);

struct HyperbolicSplit {
  IntVector v;
  IntVector w;                     // (v, w) = 1, (w, w) = 0
  SublatticeEmbedding complement;  // span(v, w)^perp inside L
};

/// Throws Error if v is not primitive isotropic or (v, L) != Z.
HyperbolicSplit split_hyperbolic(const Lattice& l, const IntVector& v);

/// Embedding of an even lattice into U^k, constructed through a maximal
/// even overlattice and hyperbolic splitting when rank exceeds k.
Decision embed_in_hyperbolic(const Lattice& t, std::size_t k);
Decision embed_in_U3(const Lattice& t);

Decision kummer_dominance(const Lattice& t);
Decision product_kummer_dominance(const Lattice& t);

/// Primitive embedding into U^3: direct below rank 4, otherwise the
/// constructive embedding when already primitive, else a bounded search.
Decision shioda_inose(const Lattice& t, const SearchBudget& budget = {});

/// Rows e1, f1, ..., ek, fk (coordinates in m) of a hyperbolic basis of an
/// even unimodular lattice of signature (k, k).
IntMatrix hyperbolic_basis(const Lattice& m);

/// Even lattices of rank at most 2 with signature sig and |det| = abs_det;
/// every isometry class occurs at least once.
std::vector<Lattice> complement_candidates(const Signature& sig, const Integer& abs_det);

/// An isomorphism D_a -> D_b with q_b(phi(x)) = -q_a(x): row i holds the
/// coefficients of the image of generator i over the generators of D_b.
/// Both lattices must be even. nodes accumulates examined candidates.
std::optional<IntMatrix> anti_isometry(const Lattice& a, const Lattice& b, long node_limit, long& nodes);

/// Image of t in U^3 obtained by gluing t and k along phi and splitting the
/// resulting unimodular lattice into hyperbolic planes.
SublatticeEmbedding glue_into_U3(const Lattice& t, const Lattice& k, const IntMatrix& phi);

/// Primitive embedding into U^3 for ranks 4 to 6, decided by enumerating
/// candidate orthogonal complements and anti-isometries of discriminant forms.
Decision primitive_embedding_by_gluing(const Lattice& t, const SearchBudget& budget = {});

Decision isogeny_scale(const Lattice& tx, const Lattice& ta);

struct ObstructionReport {
  bool obstructed = false;
  bool pairings_even = false;
  int two_length = 0;
  int bound = 0;  // 6 - rank
  std::string reason;
};

/// Requires M even.
ObstructionReport double_quotient_obstruction(const Lattice& m);

/// Independent checks of certificates.
bool check_embedding(const Lattice& source, const EmbeddingCertificate& cert, std::size_t k);
bool check_isotropic(const Lattice& l, const IntVector& v);
bool check_scale(const Lattice& q1, const Lattice& q2, const ScaleCertificate& cert);

}  // namespace k3lat
