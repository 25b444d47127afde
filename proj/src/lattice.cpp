#include "k3lat/lattice.hpp"

#include <array>

namespace k3lat {

std::string to_string(const Signature& sig) {
  return "(" + std::to_string(sig.positive) + "," + std::to_string(sig.negative) + ")";
}

Lattice::Lattice(RatMatrix gram) : gram_(std::move(gram)) {
  if (!gram_.is_square()) throw Error("gram matrix is not square");
  if (!is_symmetric(gram_)) throw Error("gram matrix is not symmetric");
  if (determinant(gram_) == 0) throw Error("gram matrix is degenerate");
}

Lattice Lattice::from_integers(const std::vector<std::vector<long>>& gram) {
  RatMatrix g(gram.size(), gram.size());
  for (std::size_t i = 0; i < gram.size(); ++i) {
    if (gram[i].size() != gram.size()) throw Error("gram matrix is not square");
    for (std::size_t j = 0; j < gram.size(); ++j) g(i, j) = gram[i][j];
  }
  return Lattice(std::move(g));
}

Lattice Lattice::diagonal(const RatVector& entries) {
  RatMatrix g(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) g(i, i) = entries[i];
  return Lattice(std::move(g));
}

bool Lattice::is_integral() const { return k3lat::is_integral(gram_); }

bool Lattice::is_even() const {
  if (!is_integral()) return false;
  for (std::size_t i = 0; i < rank(); ++i)
    if (!mpz_even_p(gram_(i, i).get_num().get_mpz_t())) return false;
  return true;
}

IntMatrix Lattice::integral_gram() const {
  auto g = to_integer(gram_);
  if (!g) throw Error("lattice is not integral");
  return *g;
}

Lattice hyperbolic_plane() { return Lattice(RatMatrix{{0, 1}, {1, 0}}); }

Lattice hyperbolic(std::size_t k) {
  std::vector<Lattice> parts(k, hyperbolic_plane());
  return direct_sum(parts);
}

Lattice e8() {
  static constexpr std::array<std::array<int, 2>, 7> kEdges{
      {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 7}}};
  RatMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = -2;
  for (const auto& [a, b] : kEdges) {
    g(a, b) = 1;
    g(b, a) = 1;
  }
  return Lattice(std::move(g));
}

const std::vector<std::string>& named_lattices() {
  static const std::vector<std::string> kNames{"U", "U^2", "U^3", "E8", "E8(2)", "Lambda0", "Lambda1", "U(2)^3"};
  return kNames;
}

Lattice make_named(std::string_view name) {
  if (name == "U") return hyperbolic_plane();
  if (name == "U^2") return hyperbolic(2);
  if (name == "U^3") return hyperbolic(3);
  if (name == "E8") return e8();
  if (name == "E8(2)") return scale(e8(), 2);
  if (name == "Lambda0") return direct_sum(scale(e8(), 2), hyperbolic(3));
  if (name == "Lambda1") return direct_sum(scale(e8(), Rational(1, 2)), hyperbolic(3));
  if (name == "U(2)^3") return scale(hyperbolic(3), 2);
  throw Error("unknown lattice name '" + std::string(name) + "'");
}

Lattice scale(const Lattice& l, const Rational& factor) {
  if (factor <= 0) throw Error("scale factor must be positive");
  return Lattice(factor * l.gram());
}

Lattice direct_sum(const Lattice& a, const Lattice& b) { return Lattice(block_diagonal(a.gram(), b.gram())); }

Lattice direct_sum(const std::vector<Lattice>& parts) {
  RatMatrix g;
  for (const auto& p : parts) g = block_diagonal(g, p.gram());
  return Lattice(std::move(g));
}

DeterminantSignature determinant_signature(const Lattice& l) {
  auto diag = diagonalize_symmetric(l.gram());
  DeterminantSignature out{determinant(l.gram()), {}};
  for (const auto& d : diag.entries) {
    if (d > 0) ++out.sig.positive;
    if (d < 0) ++out.sig.negative;
  }
  return out;
}

Signature signature(const Lattice& l) { return determinant_signature(l).sig; }
Rational determinant(const Lattice& l) { return determinant(l.gram()); }

std::string describe(const Lattice& l) {
  auto ds = determinant_signature(l);
  std::string parity = l.is_even() ? "even" : (l.is_integral() ? "odd" : "non-integral");
  return "rank " + std::to_string(l.rank()) + ", sig " + to_string(ds.sig) + ", det " + to_string(ds.det) + ", " +
         parity;
}

namespace {

Integer nearest(const Rational& q) { return floor_div(2 * q.get_num() + q.get_den(), 2 * q.get_den()); }

// Gram-Schmidt coefficients; false if some b*_i is isotropic.
bool gram_schmidt(const RatMatrix& g, RatMatrix& mu, RatVector& b) {
  const std::size_t n = g.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Rational s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= mu(j, k) * mu(i, k) * b[k];
      mu(i, j) = s / b[j];
    }
    b[i] = g(i, i);
    for (std::size_t k = 0; k < i; ++k) b[i] -= mu(i, k) * mu(i, k) * b[k];
    if (b[i] == 0) return false;
  }
  return true;
}

}  // namespace

IntMatrix reduce_basis(const Lattice& l) {
  const std::size_t n = l.rank();
  IntMatrix u = IntMatrix::identity(n);
  RatMatrix g = l.gram();
  RatMatrix mu(n, n);
  RatVector b(n);
  const Rational delta(3, 4);
  std::size_t k = 1;
  for (long step = 0; k < n && step < 100000; ++step) {
    for (std::size_t j = k; j-- > 0;) {
      if (!gram_schmidt(g, mu, b)) return u;
      const Integer r = nearest(mu(k, j));
      if (r == 0) continue;
      for (std::size_t c = 0; c < n; ++c) u(k, c) -= r * u(j, c);
      g = gram_of(to_rational(u), l.gram());
    }
    if (!gram_schmidt(g, mu, b)) return u;
    const Rational lhs = b[k] + mu(k, k - 1) * mu(k, k - 1) * b[k - 1];
    if (abs(lhs) < delta * abs(b[k - 1])) {
      for (std::size_t c = 0; c < n; ++c) std::swap(u(k, c), u(k - 1, c));
      g = gram_of(to_rational(u), l.gram());
      k = k > 1 ? k - 1 : 1;
    } else {
      ++k;
    }
  }
  return u;
}

}  // namespace k3lat
