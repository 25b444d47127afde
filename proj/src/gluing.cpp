#include <cmath>
#include <functional>

#include "k3lat/criteria.hpp"
#include "k3lat/sublattice.hpp"

namespace k3lat {

namespace {

struct Element {
  IntVector c;  // coefficients over the generators
  Rational q;   // mod 2
};

std::vector<Element> elements(const FiniteQuadraticModule& d) {
  std::vector<Element> out;
  const std::size_t m = d.length();
  IntVector c(m, Integer(0));
  while (true) {
    Rational q = 0;
    for (std::size_t i = 0; i < m; ++i) {
      q += c[i] * c[i] * (*d.quadratic_values)[i];
      for (std::size_t j = i + 1; j < m; ++j) q += 2 * c[i] * c[j] * d.bilinear_values(i, j);
    }
    out.push_back({c, mod(q, 2)});
    std::size_t k = 0;
    while (k < m && c[k] + 1 == d.invariant_factors[k]) c[k++] = 0;
    if (k == m) break;
    ++c[k];
  }
  return out;
}

Rational pairing(const FiniteQuadraticModule& d, const IntVector& x, const IntVector& y) {
  Rational b = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) b += x[i] * y[j] * d.bilinear_values(i, j);
  return mod(b, 1);
}

bool kills(const FiniteQuadraticModule& d, const IntVector& c, const Integer& n) {
  for (std::size_t j = 0; j < c.size(); ++j)
    if (!mpz_divisible_p(Integer(n * c[j]).get_mpz_t(), d.invariant_factors[j].get_mpz_t())) return false;
  return true;
}

// Size of the subgroup generated by the rows.
Integer generated_order(const FiniteQuadraticModule& d, const std::vector<IntVector>& rows) {
  const std::size_t m = d.length();
  IntMatrix rel(rows.size() + m, m);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < m; ++j) rel(i, j) = rows[i][j];
  for (std::size_t j = 0; j < m; ++j) rel(rows.size() + j, j) = d.invariant_factors[j];
  // index of the image in Z^m / (relations) via the Hermite basis of rows + relations
  IntMatrix h = hermite_form(rel);
  Integer span = 1;
  for (std::size_t j = 0; j < m; ++j) span *= abs(h(j, j));
  return d.order() / span;
}

}  // namespace

IntMatrix hyperbolic_basis(const Lattice& m) {
  const auto sig = signature(m);
  if (!m.is_even() || abs(determinant(m)) != 1 || sig.positive != sig.negative)
    throw Error("hyperbolic_basis: not an even unimodular lattice of signature (k, k)");
  std::vector<RatVector> rows;
  SublatticeEmbedding cur = whole(m);
  while (cur.rank() > 0) {
    Lattice l = cur.lattice();
    const RatMatrix r = to_rational(reduce_basis(l));
    auto v = isotropic_vector(Lattice(gram_of(r, l.gram())));
    if (!v) throw Error("hyperbolic_basis: no isotropic vector");
    HyperbolicSplit s = split_hyperbolic(l, *to_integer(to_rational(*v) * r));
    rows.push_back(to_rational(s.v) * cur.coords());
    rows.push_back(to_rational(s.w) * cur.coords());
    if (s.complement.rank() == 0) break;
    cur = embed(m, s.complement.coords() * cur.coords());
  }
  RatMatrix p = RatMatrix::from_rows(rows, m.rank());
  auto out = to_integer(p);
  if (!out || !(gram_of(p, m.gram()) == hyperbolic(m.rank() / 2).gram()))
    throw Error("hyperbolic_basis: verification failed");
  return *out;
}

std::vector<Lattice> complement_candidates(const Signature& sig, const Integer& abs_det) {
  std::vector<Lattice> out;
  const int rank = sig.positive + sig.negative;
  if (rank == 1) {
    if (mpz_even_p(abs_det.get_mpz_t())) out.push_back(Lattice::diagonal({Rational(sig.negative ? -abs_det : abs_det)}));
    return out;
  }
  if (rank != 2) throw Error("complement_candidates: rank must be 1 or 2");
  auto push = [&](const Integer& a, const Integer& b, const Integer& c, int s) {
    RatMatrix g{{Rational(2 * a * s), Rational(b * s)}, {Rational(b * s), Rational(2 * c * s)}};
    out.emplace_back(g);
  };
  if (sig.positive == 1) {
    // a x^2 + b x y + c y^2 with b^2 - 4ac = abs_det, reduced to |b| <= |a| <= |c|
    const Integer& disc = abs_det;
    const Integer bound = sqrt(disc) / 2 + 1;
    for (Integer a = -bound; a <= bound; ++a) {
      if (a == 0) continue;
      for (Integer b = -abs(a); b <= abs(a); ++b) {
        Integer num = b * b - disc;
        if (!mpz_divisible_p(num.get_mpz_t(), Integer(4 * a).get_mpz_t())) continue;
        Integer c = num / (4 * a);
        if (abs(c) >= abs(a)) push(a, b, c, 1);
      }
    }
    if (is_perfect_square(disc)) {
      Integer r = sqrt(disc);
      for (Integer c = 0; c < r; ++c) push(0, r, c, 1);
    }
    return out;
  }
  // definite: |b| <= a <= c with 4ac - b^2 = abs_det
  const int s = sig.positive == 2 ? 1 : -1;
  for (Integer a = 1; 3 * a * a <= abs_det; ++a)
    for (Integer b = -a; b <= a; ++b) {
      Integer num = abs_det + b * b;
      if (!mpz_divisible_p(num.get_mpz_t(), Integer(4 * a).get_mpz_t())) continue;
      Integer c = num / (4 * a);
      if (c >= a) push(a, b, c, s);
    }
  return out;
}

std::optional<IntMatrix> anti_isometry(const Lattice& a, const Lattice& b, long node_limit, long& nodes) {
  const FiniteQuadraticModule da = discriminant_group(a);
  const FiniteQuadraticModule db = discriminant_group(b);
  if (!da.quadratic_values || !db.quadratic_values) throw Error("anti_isometry: lattices must be even");
  if (da.invariant_factors != db.invariant_factors) return std::nullopt;
  const std::size_t m = da.length();
  if (m == 0) return IntMatrix(0, 0);
  const std::vector<Element> pool = elements(db);
  std::vector<IntVector> chosen;
  bool exhausted = false;

  std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
    if (i == m) return generated_order(db, chosen) == db.order();
    const Rational want = mod(-(*da.quadratic_values)[i], 2);
    for (const auto& e : pool) {
      if (++nodes > node_limit) {
        exhausted = true;
        return false;
      }
      if (e.q != want || !kills(db, e.c, da.invariant_factors[i])) continue;
      bool ok = true;
      for (std::size_t k = 0; ok && k < i; ++k) ok = pairing(db, e.c, chosen[k]) == mod(-da.bilinear_values(i, k), 1);
      if (!ok) continue;
      chosen.push_back(e.c);
      if (extend(i + 1)) return true;
      chosen.pop_back();
      if (exhausted) return false;
    }
    return false;
  };
  if (extend(0)) {
    IntMatrix out(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) out(i, j) = chosen[i][j];
    return out;
  }
  if (exhausted) throw Error("anti_isometry: node limit reached");
  return std::nullopt;
}

SublatticeEmbedding glue_into_U3(const Lattice& t, const Lattice& k, const IntMatrix& phi) {
  const std::size_t n = t.rank(), r = k.rank(), total = n + r;
  if (total != 6) throw Error("glue_into_U3: ranks must add up to 6");
  const FiniteQuadraticModule dt = discriminant_group(t);
  const FiniteQuadraticModule dk = discriminant_group(k);
  RatMatrix gens(total + dt.length(), total);
  for (std::size_t i = 0; i < total; ++i) gens(i, i) = 1;
  for (std::size_t i = 0; i < dt.length(); ++i) {
    for (std::size_t j = 0; j < n; ++j) gens(total + i, j) = dt.generators(i, j);
    for (std::size_t g = 0; g < dk.length(); ++g)
      for (std::size_t j = 0; j < r; ++j) gens(total + i, n + j) += phi(i, g) * dk.generators(g, j);
  }
  const Lattice sum = direct_sum(t, k);
  const RatMatrix basis = lattice_basis(gens);
  const Lattice glued(gram_of(basis, sum.gram()));
  const RatMatrix p = to_rational(hyperbolic_basis(glued));
  RatMatrix head(n, total);
  for (std::size_t i = 0; i < n; ++i) head(i, i) = 1;
  const RatMatrix coords = head * inverse(basis) * inverse(p);
  SublatticeEmbedding image(hyperbolic(3), coords);
  if (!image.is_integral() || !(image.gram() == t.gram()) || !is_primitive(image))
    throw Error("glue_into_U3: verification failed");
  return image;
}

Decision primitive_embedding_by_gluing(const Lattice& t, const SearchBudget& budget) {
  Decision d;
  const std::size_t n = t.rank();
  if (n < 4 || n > 6) throw Error("primitive_embedding_by_gluing: rank must be between 4 and 6");
  const auto sig = signature(t);
  if (!t.is_even() || sig.positive > 3 || sig.negative > 3) {
    d.verdict = Verdict::no;
    d.reason = "signature";
    return d;
  }
  const Integer abs_det = Rational(abs(determinant(t))).get_num();
  if (n == 6) {
    if (abs_det != 1) {
      d.verdict = Verdict::no;
      d.reason = "no-complement";
      return d;
    }
    RatMatrix coords = inverse(to_rational(hyperbolic_basis(t)));
    d.verdict = Verdict::yes;
    d.reason = "glue";
    d.certificate = EmbeddingCertificate{SublatticeEmbedding(hyperbolic(3), coords), true};
    return d;
  }
  const Signature ksig{3 - sig.positive, 3 - sig.negative};
  long nodes = 0;
  std::size_t tried = 0;
  for (const auto& k : complement_candidates(ksig, abs_det)) {
    ++tried;
    std::optional<IntMatrix> phi;
    try {
      phi = anti_isometry(t, k, budget.node_limit, nodes);
    } catch (const Error&) {
      d.verdict = Verdict::unknown;
      d.reason = "budget-exhausted";
      d.notes.push_back("anti-isometry search reached the node limit");
      return d;
    }
    if (!phi) continue;
    d.verdict = Verdict::yes;
    d.reason = "glue";
    d.certificate = EmbeddingCertificate{glue_into_U3(t, k, *phi), true};
    d.notes.push_back("orthogonal complement " + describe(k));
    return d;
  }
  d.verdict = Verdict::no;
  d.reason = "no-complement";
  d.notes.push_back(std::to_string(tried) + " candidate complements, none with an anti-isometric discriminant form");
  return d;
}

}  // namespace k3lat
