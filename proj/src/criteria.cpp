#include "k3lat/criteria.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "k3lat/constructions.hpp"
#include "k3lat/smith.hpp"
#include "k3lat/sublattice.hpp"

namespace k3lat {

namespace {

Decision no(std::string reason) {
  Decision d;
  d.verdict = Verdict::no;
  d.reason = std::move(reason);
  return d;
}

Decision unknown(std::string reason) {
  Decision d;
  d.verdict = Verdict::unknown;
  d.reason = std::move(reason);
  return d;
}

// Value of an odometer digit: 0, 1, -1, 2, -2, ...
long digit_value(long idx) { return idx % 2 == 1 ? (idx + 1) / 2 : -(idx / 2); }

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

bool all_divisors_one(const IntMatrix& m) {
  auto divisors = elementary_divisors(m);
  return divisors.size() == m.rows() &&
         std::all_of(divisors.begin(), divisors.end(), [](const Integer& d) { return d == 1; });
}

// Rows of a primitive embedding of the even lattice r into planes
// offset, offset+1, ... of U^k: t_i -> e_i + (g_ii/2) f_i + sum_{j<i} g_ij f_j.
RatMatrix direct_rows(const Lattice& r, std::size_t k, std::size_t offset) {
  const auto& g = r.gram();
  RatMatrix out(r.rank(), 2 * k);
  for (std::size_t i = 0; i < r.rank(); ++i) {
    out(i, 2 * (offset + i)) = 1;
    out(i, 2 * (offset + i) + 1) = g(i, i) / 2;
    for (std::size_t j = 0; j < i; ++j) out(i, 2 * (offset + j) + 1) = g(i, j);
  }
  return out;
}

// Reason attached to a failed rational test.
std::string rational_reason(const Lattice& t, std::size_t k) {
  if (k == 3 && t.rank() == 4 && !is_isotropic(t)) return "anisotropic-rank-4";
  return "rational-obstruction";
}

// Pre-checks shared by every hyperbolic-embedding decision.
std::optional<Decision> reject_for_hyperbolic(const Lattice& t, std::size_t k) {
  if (!t.is_even()) return no("not-even");
  if (t.rank() > 2 * k) return no("rank");
  auto sig = signature(t);
  const int kk = static_cast<int>(k);
  if (sig.positive > kk || sig.negative > kk) return no("signature");
  if (!embeds_in_hyperbolic(t, k)) return no(rational_reason(t, k));
  return std::nullopt;
}

// Overlattice and hyperbolic splitting: an embedding of t into U^k, or
// nullopt if some stage unexpectedly has no isotropic vector.
std::optional<RatMatrix> constructive_embedding(const Lattice& t, std::size_t k, std::vector<std::string>& notes) {
  SublatticeEmbedding over = maximal_even_overlattice(t);
  const RatMatrix& b = over.coords();  // overlattice basis in t coordinates
  Lattice m = over.lattice();
  const std::size_t n = m.rank();

  RatMatrix rest = RatMatrix::identity(n);  // current complement basis, m coordinates
  std::vector<RatVector> pairs;
  std::size_t splits = 0;
  while (rest.rows() > k - splits) {
    Lattice r(gram_of(rest, m.gram()));
    auto v = isotropic_vector(r);
    if (!v) {
      notes.push_back("no isotropic vector after " + std::to_string(splits) + " splits");
      return std::nullopt;
    }
    HyperbolicSplit split = split_hyperbolic(r, *v);
    pairs.push_back(to_rational(split.v) * rest);
    pairs.push_back(to_rational(split.w) * rest);
    rest = split.complement.coords() * rest;
    ++splits;
  }
  const Rational index = 1 / abs(determinant(b));
  if (index != 1) notes.push_back("overlattice index " + to_string(index));
  if (splits > 0) notes.push_back("split " + std::to_string(splits) + " hyperbolic plane(s)");

  // P: new basis of m in m coordinates; Y: its image in U^k.
  RatMatrix p(n, n);
  RatMatrix y(n, 2 * k);
  for (std::size_t i = 0; i < pairs.size(); ++i) p.set_row(i, pairs[i]);
  for (std::size_t s = 0; s < splits; ++s) {
    y(2 * s, 2 * s) = 1;
    y(2 * s + 1, 2 * s + 1) = 1;
  }
  Lattice r(gram_of(rest, m.gram()));
  RatMatrix tail = direct_rows(r, k, splits);
  for (std::size_t i = 0; i < rest.rows(); ++i) {
    p.set_row(pairs.size() + i, rest.row(i));
    y.set_row(pairs.size() + i, tail.row(i));
  }
  RatMatrix image_m = inverse(p) * y;
  return inverse(b) * image_m;
}

struct EmbeddingSearch {
  const std::vector<std::vector<long>>& g;
  long h;
  long node_limit;
  long nodes = 0;
  bool exhausted = false;
  std::vector<std::array<long, 6>> chosen;

  static long pair(const std::array<long, 6>& x, const std::array<long, 6>& y) {
    long s = 0;
    for (int j = 0; j < 3; ++j) s += x[2 * j] * y[2 * j + 1] + x[2 * j + 1] * y[2 * j];
    return s;
  }

  bool accept(std::size_t i, const std::array<long, 6>& y) {
    for (std::size_t j = 0; j < i; ++j)
      if (pair(y, chosen[j]) != g[i][j]) return false;
    return true;
  }

  bool primitive() const {
    IntMatrix m(chosen.size(), 6);
    for (std::size_t i = 0; i < chosen.size(); ++i)
      for (int j = 0; j < 6; ++j) m(i, j) = chosen[i][j];
    return all_divisors_one(m);
  }

  bool descend(std::size_t i) {
    if (i == g.size()) return primitive();
    const long c = chosen[0][1];
    const long half = g[i][i] / 2;
    const long span = 2 * h + 1;
    for (long i1 = 0; i1 < span; ++i1)
      for (long i2 = 0; i2 < span; ++i2)
        for (long i3 = 0; i3 < span; ++i3)
          for (long i4 = 0; i4 < span; ++i4) {
            if (++nodes > node_limit) {
              exhausted = true;
              return false;
            }
            const long a1 = digit_value(i1), a2 = digit_value(i2), b2 = digit_value(i3), a3 = digit_value(i4);
            const long b1 = g[i][0] - c * a1;
            const long rem = half - a1 * b1 - a2 * b2;
            auto attempt = [&](long b3) {
              std::array<long, 6> y{a1, b1, a2, b2, a3, b3};
              if (!accept(i, y)) return false;
              chosen.push_back(y);
              if (descend(i + 1)) return true;
              chosen.pop_back();
              return false;
            };
            if (a3 != 0) {
              if (rem % a3 != 0) continue;
              if (attempt(rem / a3)) return true;
            } else if (rem == 0) {
              for (long i5 = 0; i5 < span; ++i5)
                if (attempt(digit_value(i5))) return true;
            }
            if (exhausted) return false;
          }
    return false;
  }
};

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "yes";
    case Verdict::no:
      return "no";
    default:
      return "unknown";
  }
}

Fingerprint fingerprint(const Lattice& l) {
  Fingerprint f;
  auto ds = determinant_signature(l);
  f.rank = l.rank();
  f.det = ds.det;
  f.sig = ds.sig;
  f.even = l.is_even();
  if (l.is_integral()) f.discriminant = discriminant_group(l).invariant_factors;
  f.rational = invariants(l);
  return f;
}

std::string to_string(const Fingerprint& f) {
  std::ostringstream os;
  os << "rank " << f.rank << ", det " << to_string(f.det) << ", sig " << to_string(f.sig) << ", "
     << (f.even ? "even" : "not even") << ", disc [";
  for (std::size_t i = 0; i < f.discriminant.size(); ++i) os << (i ? "," : "") << f.discriminant[i];
  os << "], " << to_string(f.rational);
  return os.str();
}

QuotientReport nikulin_quotient(const SublatticeEmbedding& s) {
  if (!is_lambda0(s.ambient())) throw Error("nikulin_quotient: ambient is not Lambda0");
  if (!s.is_integral()) throw Error("nikulin_quotient: coordinates are not integral");
  if (!is_primitive(s)) throw Error("nikulin_quotient: sublattice is not primitive");
  SublatticeEmbedding inter = intersect_with_scaled_dual(s, 1);
  QuotientReport r{scale(inter.lattice(), 2), inter};
  r.source_in_quotient = contains(inter, s);
  r.double_in_source = contains(s, scale_coords(inter, 2));
  r.intersection_is_half = same_lattice(inter, scale_coords(s, Rational(1, 2)));
  return r;
}

IntMatrix u2_cube_isometry() {
  IntMatrix lm = u2_cube_rows();
  IntMatrix out(6, lambda0::kRank);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < lambda0::kRank; ++j) {
      out(2 * i, j) = lm(2 * i, j);
      out(2 * i + 1, j) = lm(2 * i + 1, j) + lm(2 * i, j);
    }
  return out;
}

SublatticeEmbedding sandwich_embedding(const SublatticeEmbedding& t) {
  if (!(t.ambient() == hyperbolic(3))) throw Error("sandwich_embedding: ambient is not U^3");
  if (!t.is_integral() || !is_primitive(t)) throw Error("sandwich_embedding: input is not primitive in U^3");
  return embed(make_named("Lambda0"), t.coords() * to_rational(u2_cube_isometry()));
}

IsotropicSearch find_isotropic(const Lattice& l, const SearchBudget& budget) {
  if (budget.height_bound < 1) throw Error("height bound must be at least 1");
  auto sig = signature(l);
  if (sig.positive == 0 || sig.negative == 0) return {std::nullopt, "anisotropic-by-signature"};
  if (!is_isotropic(l)) return {std::nullopt, "anisotropic"};

  const std::size_t n = l.rank();
  const Integer den = common_denominator(l.gram());
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = Rational(l.gram()(i, j) * den).get_num();

  for (long h = 1; h <= budget.height_bound; ++h) {
    std::vector<long> idx(n, 0);
    const long top = 2 * h;
    while (true) {
      IntVector x(n);
      long height = 0;
      for (std::size_t i = 0; i < n; ++i) {
        long val = digit_value(idx[i]);
        x[i] = val;
        height = std::max(height, std::abs(val));
      }
      std::size_t last = n;
      for (std::size_t i = n; i-- > 0;)
        if (x[i] != 0) {
          last = i;
          break;
        }
      if (height == h && last < n && x[last] > 0 && content(x) == 1) {
        Integer q = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (x[i] == 0) continue;
          Integer row = 0;
          for (std::size_t j = 0; j < n; ++j) row += g(i, j) * x[j];
          q += x[i] * row;
        }
        if (q == 0) return {x, "found"};
      }
      std::size_t pos = 0;
      while (pos < n && idx[pos] == top) idx[pos++] = 0;
      if (pos == n) break;
      ++idx[pos];
    }
  }
  return {std::nullopt, "budget-exhausted"};
}

SublatticeEmbedding maximal_even_overlattice(const Lattice& l) {
  if (!l.is_even()) throw Error("maximal_even_overlattice: lattice is not even");
  const std::size_t n = l.rank();
  RatMatrix basis = RatMatrix::identity(n);
  while (true) {
    Lattice current(gram_of(basis, l.gram()));
    FiniteQuadraticModule d = discriminant_group(current);
    std::optional<RatVector> found;
    for (const auto& pp : factor(determinant(current.integral_gram()))) {
      if (pp.exponent < 2) continue;
      const Integer& p = pp.prime;
      std::vector<RatVector> h;
      for (std::size_t i = 0; i < d.length(); ++i)
        if (mpz_divisible_p(d.invariant_factors[i].get_mpz_t(), p.get_mpz_t())) {
          RatVector g = d.generators.row(i);
          const Rational f(d.invariant_factors[i] / p);
          for (auto& c : g) c *= f;
          h.push_back(g);
        }
      Integer count = 1;
      for (std::size_t i = 0; i < h.size(); ++i) count *= p;
      if (count > 10'000'000) throw Error("maximal_even_overlattice: p-torsion too large to enumerate");
      const long pl = p.get_si();
      std::vector<long> c(h.size(), 0);
      while (true) {
        // next coefficient vector, last entry fastest
        std::size_t pos = c.size();
        while (pos-- > 0) {
          if (++c[pos] < pl) break;
          c[pos] = 0;
        }
        if (pos == static_cast<std::size_t>(-1)) break;
        RatVector x(n, Rational(0));
        for (std::size_t i = 0; i < h.size(); ++i)
          for (std::size_t j = 0; j < n; ++j) x[j] += c[i] * h[i][j];
        Rational q = current.norm(x);
        if (is_integer(q) && mpz_even_p(q.get_num_mpz_t())) {
          found = x;
          break;
        }
      }
      if (found) break;
    }
    if (!found) break;
    RatMatrix gens = vstack(RatMatrix::identity(n), RatMatrix::from_rows(std::vector<RatVector>{*found}, n));
    basis = lattice_basis(gens) * basis;
  }
  return SublatticeEmbedding(l, basis);
}

HyperbolicSplit split_hyperbolic(const Lattice& l, const IntVector& v) {
  if (!l.is_even()) throw Error("split_hyperbolic: lattice is not even");
  if (v.size() != l.rank()) throw Error("split_hyperbolic: dimension mismatch");
  if (content(v) != 1) throw Error("split_hyperbolic: vector is not primitive");
  const RatVector vr = to_rational(v);
  if (l.norm(vr) != 0) throw Error("split_hyperbolic: vector is not isotropic");
  const IntMatrix g = l.integral_gram();
  IntVector a(l.rank(), Integer(0));
  for (std::size_t j = 0; j < l.rank(); ++j)
    for (std::size_t i = 0; i < l.rank(); ++i) a[j] += v[i] * g(i, j);
  // w0 with a . w0 = gcd(a)
  IntVector w0(l.rank(), Integer(0));
  Integer acc = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    Integer s, t;
    Integer next = gcdext(acc, a[j], s, t);
    for (std::size_t i = 0; i < j; ++i) w0[i] *= s;
    w0[j] = t;
    acc = next;
  }
  if (acc != 1) throw Error("split_hyperbolic: divisor of v exceeds 1");
  const Rational half_norm = l.norm(to_rational(w0)) / 2;
  IntVector w(l.rank());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = w0[i] - half_norm.get_num() * v[i];
  SublatticeEmbedding plane = embed(l, RatMatrix::from_rows(std::vector<RatVector>{vr, to_rational(w)}, l.rank()));
  return {v, w, orthogonal_complement(plane)};
}

Decision embed_in_hyperbolic(const Lattice& t, std::size_t k) {
  if (k == 0) throw Error("embed_in_hyperbolic: k must be positive");
  if (auto rejected = reject_for_hyperbolic(t, k)) return *rejected;
  Decision d;
  RatMatrix rows;
  if (t.rank() <= k) {
    rows = direct_rows(t, k, 0);
    d.reason = "rank<=" + std::to_string(k) + "-direct";
  } else {
    auto built = constructive_embedding(t, k, d.notes);
    if (!built) {
      d.verdict = Verdict::unknown;
      d.reason = "construction-failed";
      return d;
    }
    rows = *built;
    d.reason = "overlattice-split";
  }
  SublatticeEmbedding image(hyperbolic(k), rows);
  if (!image.is_integral() || !(image.gram() == t.gram())) throw Error("embed_in_hyperbolic: certificate failed verification");
  d.verdict = Verdict::yes;
  d.certificate = EmbeddingCertificate{image, is_primitive(image)};
  return d;
}

Decision embed_in_U3(const Lattice& t) { return embed_in_hyperbolic(t, 3); }

Decision kummer_dominance(const Lattice& t) {
  Decision d = embed_in_hyperbolic(t, 3);
  auto sig = signature(t);
  if (sig.positive != 2 || sig.negative != static_cast<int>(t.rank()) - 2)
    d.notes.push_back("signature " + to_string(sig) + " is not (2, rank-2)");
  return d;
}

Decision product_kummer_dominance(const Lattice& t) {
  Decision d = embed_in_hyperbolic(t, 2);
  auto sig = signature(t);
  if (sig.positive != 2 || sig.negative != static_cast<int>(t.rank()) - 2)
    d.notes.push_back("signature " + to_string(sig) + " is not (2, rank-2)");
  return d;
}

Decision shioda_inose(const Lattice& t, const SearchBudget& budget) {
  if (budget.height_bound < 1) throw Error("height bound must be at least 1");
  Decision base = embed_in_hyperbolic(t, 3);
  if (base.verdict == Verdict::no) return base;

  // A primitive S in the unimodular U^3 has D_S isomorphic to D_{S^perp}.
  auto disc = discriminant_group(t);
  const int room = 6 - static_cast<int>(t.rank());
  for (const auto& p : prime_divisors(disc.order())) {
    if (p_length(disc, p) > room) {
      Decision d = no("discriminant-length");
      d.notes.push_back("p-length at " + p.get_str() + " exceeds " + std::to_string(room));
      return d;
    }
  }

  if (base.verdict == Verdict::yes) {
    const auto& cert = std::get<EmbeddingCertificate>(base.certificate);
    if (cert.primitive) {
      base.reason = "primitive-" + base.reason;
      return base;
    }
    base.notes.push_back("constructed embedding is not primitive");
  }

  if (t.rank() >= 4) {
    Decision d = primitive_embedding_by_gluing(t, budget);
    d.notes.insert(d.notes.begin(), base.notes.begin(), base.notes.end());
    return d;
  }

  std::vector<std::vector<long>> g(t.rank(), std::vector<long>(t.rank()));
  for (std::size_t i = 0; i < t.rank(); ++i)
    for (std::size_t j = 0; j < t.rank(); ++j) {
      const Rational& x = t.gram()(i, j);
      if (!x.get_num().fits_slong_p() || abs(x.get_num()) > 1'000'000'000L) {
        Decision d = unknown("budget-exhausted");
        d.notes = base.notes;
        d.notes.push_back("Gram entries too large for the bounded search");
        return d;
      }
      g[i][j] = x.get_num().get_si();
    }
  // Primitive vectors of equal norm in U^3 are equivalent, so the first basis
  // vector may be sent to e1 + (g11/2) f1.
  EmbeddingSearch search{g, budget.height_bound, budget.node_limit, 0, false, {}};
  search.chosen.push_back({1, g[0][0] / 2, 0, 0, 0, 0});
  if (search.descend(1)) {
    RatMatrix rows(t.rank(), 6);
    for (std::size_t i = 0; i < t.rank(); ++i)
      for (int j = 0; j < 6; ++j) rows(i, j) = search.chosen[i][j];
    SublatticeEmbedding image(hyperbolic(3), rows);
    Decision d;
    d.verdict = Verdict::yes;
    d.reason = "primitive-search";
    d.certificate = EmbeddingCertificate{image, true};
    d.notes = base.notes;
    return d;
  }
  Decision d = unknown("budget-exhausted");
  d.notes = base.notes;
  d.notes.push_back(search.exhausted ? "node limit reached" : "height bound exhausted");
  return d;
}

Decision isogeny_scale(const Lattice& tx, const Lattice& ta) {
  if (tx.rank() != ta.rank()) return no("rank");
  auto cert = similar_scale(tx, ta);
  if (!cert) return no("no-scale");
  Decision d;
  d.verdict = Verdict::yes;
  d.reason = "scale";
  d.certificate = *cert;
  return d;
}

ObstructionReport double_quotient_obstruction(const Lattice& m) {
  if (!m.is_even()) throw Error("double_quotient_obstruction: lattice is not even");
  ObstructionReport r;
  r.pairings_even = true;
  for (std::size_t i = 0; i < m.rank(); ++i)
    for (std::size_t j = 0; j < m.rank(); ++j)
      if (!mpz_even_p(m.gram()(i, j).get_num_mpz_t())) r.pairings_even = false;
  r.two_length = p_length(discriminant_group(m), 2);
  r.bound = 6 - static_cast<int>(m.rank());
  r.obstructed = r.pairings_even && r.two_length > r.bound;
  if (r.obstructed)
    r.reason = "2-length-obstruction";
  else if (!r.pairings_even)
    r.reason = "pairings-not-even";
  else
    r.reason = "2-length-within-bound";
  return r;
}

bool check_embedding(const Lattice& source, const EmbeddingCertificate& cert, std::size_t k) {
  const SublatticeEmbedding& image = cert.image;
  if (!(image.ambient() == hyperbolic(k))) return false;
  if (image.rank() != source.rank()) return false;
  auto rows = to_integer(image.coords());
  if (!rows) return false;
  RatMatrix x = to_rational(*rows);
  if (!(x * image.ambient().gram() * x.transpose() == source.gram())) return false;
  if (cert.primitive && !all_divisors_one(*rows)) return false;
  return true;
}

bool check_isotropic(const Lattice& l, const IntVector& v) {
  if (v.size() != l.rank() || content(v) != 1) return false;
  return l.norm(to_rational(v)) == 0;
}

bool check_scale(const Lattice& q1, const Lattice& q2, const ScaleCertificate& cert) {
  if (cert.n <= 0 || squarefree_part(cert.n) != cert.n) return false;
  const FormInvariants a = invariants(q1);
  const FormInvariants b = invariants(scale(q2, Rational(cert.n)));
  return a == b && cert.target == a && cert.scaled == b;
}

}  // namespace k3lat
