#include "k3lat/forms.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace k3lat {

namespace {

// Nonzero rational -> nonzero integer of the same square class.
Integer integral_class(const Rational& q) {
  if (q == 0) throw Error("zero has no square class");
  return q.get_num() * q.get_den();
}

int legendre(const Integer& a, const Integer& p) {
  Integer r = a % p;
  if (r < 0) r += p;
  return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

unsigned long mod8(const Integer& u) { return mpz_fdiv_ui(u.get_mpz_t(), 8); }

// Strip the p-part: a = p^v * u.
unsigned split_valuation(const Integer& a, const Integer& p, Integer& u) {
  u = a;
  unsigned v = 0;
  while (mpz_divisible_p(u.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

// Factor turning Serre's product into the normalized symbol.
int witt_correction(std::size_t n, const Rational& d, const Place& v) {
  switch (n % 8) {
    case 1:
    case 2:
      return 1;
    case 3:
    case 4:
      return hilbert_symbol(-1, -d, v);
    case 5:
    case 6:
      return hilbert_symbol(-1, -1, v);
    default:
      return hilbert_symbol(-1, d, v);
  }
}

int real_hasse_product(int negative) { return (negative * (negative - 1) / 2) % 2 == 0 ? 1 : -1; }

// Prescribed Serre invariant: -1 at the listed primes and `at_infinity` at
// the real place, +1 elsewhere.
struct LocalTarget {
  std::vector<Integer> minus;
  int at_infinity = 1;

  int at(const Place& v) const {
    if (v.is_infinite()) return at_infinity;
    return std::binary_search(minus.begin(), minus.end(), v.p()) ? -1 : 1;
  }
};

// Target for W' where W = <e> + W' and W has target t, det class d'.
LocalTarget peel_target(const LocalTarget& t, const Integer& e, const Integer& d_rest) {
  std::vector<Integer> places = merge_primes({Integer(2)}, t.minus);
  places = merge_primes(places, prime_divisors(e));
  places = merge_primes(places, prime_divisors(d_rest));
  LocalTarget out;
  for (const auto& p : places) {
    Place v = Place::prime(p);
    if (t.at(v) * hilbert_symbol(e, d_rest, v) == -1) out.minus.push_back(p);
  }
  out.at_infinity = t.at_infinity * hilbert_symbol(e, d_rest, Place::infinity());
  return out;
}

// Local-global existence of a rational space with rank m, determinant
// class d, signature sig and Serre invariant t.
bool realizable(std::size_t m, const Integer& d, const Signature& sig, const LocalTarget& t) {
  if (sig.positive < 0 || sig.negative < 0) return false;
  if (static_cast<std::size_t>(sig.positive + sig.negative) != m) return false;
  if (sign(d) != (sig.negative % 2 == 0 ? 1 : -1)) return false;
  if (t.at_infinity != real_hasse_product(sig.negative)) return false;
  if ((t.minus.size() + (t.at_infinity == -1 ? 1 : 0)) % 2 != 0) return false;
  switch (m) {
    case 0:
      return d == 1 && t.minus.empty();
    case 1:
      return t.minus.empty();
    case 2:
      for (const auto& p : t.minus)
        if (is_local_square(-d, Place::prime(p))) return false;
      if (t.at_infinity == -1 && is_local_square(-d, Place::infinity())) return false;
      return true;
    default:
      return true;
  }
}

// Squarefree integers ordered by absolute value, positive first.
class SquarefreeSequence {
 public:
  explicit SquarefreeSequence(long limit) : limit_(limit) {}
  bool next(Integer& out) {
    while (true) {
      if (negative_pending_) {
        negative_pending_ = false;
        out = -current_;
        return true;
      }
      ++current_;
      if (current_ > limit_) return false;
      if (squarefree_part(current_) == current_) {
        negative_pending_ = true;
        out = current_;
        return true;
      }
    }
  }

 private:
  long limit_;
  Integer current_ = 0;
  bool negative_pending_ = false;
};

constexpr long kWitnessSearchLimit = 200000;

std::optional<RatVector> realize(std::size_t m, const Integer& d, const Signature& sig, const LocalTarget& t) {
  if (!realizable(m, d, sig, t)) return std::nullopt;
  if (m == 0) return RatVector{};
  if (m == 1) return RatVector{Rational(d)};
  SquarefreeSequence seq(kWitnessSearchLimit);
  Integer a;
  if (m == 2) {
    std::vector<Integer> base = merge_primes({Integer(2)}, t.minus);
    base = merge_primes(base, prime_divisors(d));
    while (seq.next(a)) {
      int pos = (a > 0 ? 1 : 0) + (a * d > 0 ? 1 : 0);
      if (pos != sig.positive) continue;
      if (hilbert_symbol(a, -d, Place::infinity()) != t.at_infinity) continue;
      bool ok = true;
      for (const auto& p : merge_primes(base, prime_divisors(a))) {
        Place v = Place::prime(p);
        if (hilbert_symbol(a, -d, v) != t.at(v)) {
          ok = false;
          break;
        }
      }
      if (ok) return RatVector{Rational(a), Rational(a * d)};
    }
    throw Error("rank-2 witness search exceeded its limit");
  }
  while (seq.next(a)) {
    Signature rest = sig;
    if (a > 0) {
      if (rest.positive == 0) continue;
      --rest.positive;
    } else {
      if (rest.negative == 0) continue;
      --rest.negative;
    }
    Integer d_rest = squarefree_part(d * a);
    LocalTarget t_rest = peel_target(t, a, d_rest);
    if (!realizable(m - 1, d_rest, rest, t_rest)) continue;
    auto tail = realize(m - 1, d_rest, rest, t_rest);
    if (!tail) continue;
    RatVector out{Rational(a)};
    out.insert(out.end(), tail->begin(), tail->end());
    return out;
  }
  throw Error("witness search exceeded its limit");
}

struct ComplementData {
  std::size_t m = 0;
  Integer d;
  Signature sig;
  LocalTarget target;
};

std::optional<ComplementData> complement_data(const Lattice& q, std::size_t k) {
  const FormInvariants inv = invariants(q);
  if (inv.rank > 2 * k) return std::nullopt;
  const int kk = static_cast<int>(k);
  if (inv.sig.positive > kk || inv.sig.negative > kk) return std::nullopt;
  ComplementData c;
  c.m = 2 * k - inv.rank;
  c.d = squarefree_part(k % 2 == 0 ? inv.det_class : Integer(-inv.det_class));
  c.sig = {kk - inv.sig.positive, kk - inv.sig.negative};
  const int hyperbolic_sign = ((k * (k - 1) / 2) % 2 == 0) ? 1 : -1;
  auto serre_w = [&](const Place& v) {
    int u = hyperbolic_sign == 1 ? 1 : hilbert_symbol(-1, -1, v);
    return u * hasse_product(inv, v) * hilbert_symbol(inv.det_class, c.d, v);
  };
  std::vector<Integer> places = merge_primes({Integer(2)}, prime_divisors(inv.det_class));
  places = merge_primes(places, inv.hasse);
  for (const auto& p : places)
    if (serre_w(Place::prime(p)) == -1) c.target.minus.push_back(p);
  c.target.at_infinity = serre_w(Place::infinity());
  return c;
}

}  // namespace

Place Place::prime(const Integer& p) {
  if (p < 2 || !is_prime(p)) throw Error("not a place: " + p.get_str());
  return Place(p);
}

Diagonalization diagonalize(const RatMatrix& gram) {
  auto d = diagonalize_symmetric(gram);
  for (const auto& e : d.entries)
    if (e == 0) throw Error("diagonalize: degenerate form");
  return {std::move(d.entries), std::move(d.basis)};
}

Diagonalization diagonalize(const Lattice& l) { return diagonalize(l.gram()); }

int hilbert_symbol(const Rational& a_in, const Rational& b_in, const Place& v) {
  const Integer a = integral_class(a_in);
  const Integer b = integral_class(b_in);
  if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
  const Integer& p = v.p();
  Integer u, w;
  const unsigned alpha = split_valuation(a, p, u);
  const unsigned beta = split_valuation(b, p, w);
  if (p == 2) {
    auto eps = [](const Integer& x) { return ((mod8(x) - 1) / 2) % 2; };
    auto omega = [](const Integer& x) {
      unsigned long r = mod8(x);
      return ((r * r - 1) / 8) % 2;
    };
    unsigned long e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
    return e % 2 == 0 ? 1 : -1;
  }
  int result = 1;
  const bool eps_p = mpz_fdiv_ui(p.get_mpz_t(), 4) == 3;
  if (eps_p && (alpha * beta) % 2 == 1) result = -result;
  if (beta % 2 == 1) result *= legendre(u, p);
  if (alpha % 2 == 1) result *= legendre(w, p);
  return result;
}

bool is_local_square(const Rational& q, const Place& v) {
  const Integer a = integral_class(q);
  if (v.is_infinite()) return a > 0;
  Integer u;
  if (split_valuation(a, v.p(), u) % 2 != 0) return false;
  if (v.p() == 2) return mod8(u) == 1;
  return legendre(u, v.p()) == 1;
}

int hasse_product(const RatVector& d, const Place& v) {
  int s = 1;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) s *= hilbert_symbol(d[i], d[j], v);
  return s;
}

int FormInvariants::symbol(const Place& v) const {
  if (v.is_infinite()) return real_hasse_product(sig.negative) * witt_correction(rank, det_class, v);
  return std::binary_search(hasse.begin(), hasse.end(), v.p()) ? -1 : 1;
}

int hasse_product(const FormInvariants& inv, const Place& v) {
  return inv.symbol(v) * witt_correction(inv.rank, inv.det_class, v);
}

std::string to_string(const FormInvariants& inv) {
  std::ostringstream os;
  os << "rank " << inv.rank << ", det_class " << inv.det_class << ", sig " << to_string(inv.sig) << ", hasse [";
  for (std::size_t i = 0; i < inv.hasse.size(); ++i) os << (i ? "," : "") << inv.hasse[i];
  os << "]";
  return os.str();
}

FormInvariants invariants_of_diagonal(const RatVector& d, const std::vector<Integer>& places) {
  FormInvariants inv;
  inv.rank = d.size();
  Rational det = 1;
  for (const auto& e : d) {
    if (e == 0) throw Error("invariants: degenerate form");
    det *= e;
    (e > 0 ? inv.sig.positive : inv.sig.negative)++;
  }
  inv.det_class = sign(det);
  for (const auto& p : places) {
    if ((valuation(det.get_num(), p) + valuation(det.get_den(), p)) % 2 == 1) inv.det_class *= p;
  }
  for (const auto& p : places) {
    Place v = Place::prime(p);
    if (hasse_product(d, v) * witt_correction(inv.rank, inv.det_class, v) == -1) inv.hasse.push_back(p);
  }
  return inv;
}

FormInvariants invariants_of_diagonal(const RatVector& d) {
  for (const auto& e : d)
    if (e == 0) throw Error("invariants: degenerate form");
  return invariants_of_diagonal(d, merge_primes({Integer(2)}, primes_of(d)));
}

FormInvariants invariants(const Lattice& q) { return invariants_of_diagonal(diagonalize(q).entries); }

bool equivalent(const Lattice& a, const Lattice& b) { return invariants(a) == invariants(b); }

bool is_locally_isotropic(const FormInvariants& inv, const Place& v) {
  if (v.is_infinite()) return inv.sig.positive > 0 && inv.sig.negative > 0;
  switch (inv.rank) {
    case 0:
    case 1:
      return false;
    case 2:
      return is_local_square(-inv.det_class, v);
    case 3:
      return inv.symbol(v) == 1;
    case 4:
      return !is_local_square(inv.det_class, v) || inv.symbol(v) == 1;
    default:
      return true;
  }
}

bool is_isotropic(const FormInvariants& inv) {
  if (inv.rank < 2) return false;
  if (inv.rank == 2) return inv.det_class == -1;
  if (!is_locally_isotropic(inv, Place::infinity())) return false;
  std::vector<Integer> places = merge_primes({Integer(2)}, prime_divisors(inv.det_class));
  places = merge_primes(places, inv.hasse);
  for (const auto& p : places)
    if (!is_locally_isotropic(inv, Place::prime(p))) return false;
  return true;
}

bool is_isotropic(const Lattice& q) { return is_isotropic(invariants(q)); }

int witt_index(const Lattice& q) {
  FormInvariants inv = invariants(q);
  int count = 0;
  while (is_isotropic(inv)) {
    inv.rank -= 2;
    inv.det_class = -inv.det_class;
    inv.sig.positive -= 1;
    inv.sig.negative -= 1;
    ++count;
  }
  return count;
}

std::optional<RatVector> hyperbolic_complement(const Lattice& q, std::size_t k) {
  auto c = complement_data(q, k);
  if (!c) return std::nullopt;
  auto w = realize(c->m, c->d, c->sig, c->target);
  if (!w) return std::nullopt;
  Lattice total = w->empty() ? q : direct_sum(q, Lattice::diagonal(*w));
  if (!equivalent(total, hyperbolic(k))) throw Error("hyperbolic complement failed verification");
  return w;
}

bool embeds_in_hyperbolic(const Lattice& q, std::size_t k) {
  auto c = complement_data(q, k);
  return c && realizable(c->m, c->d, c->sig, c->target);
}

IntVector scale_candidates(const Lattice& q1, const Lattice& q2) {
  std::vector<Integer> primes = merge_primes({Integer(2)}, primes_of({determinant(q1), determinant(q2)}));
  IntVector out{Integer(1)};
  for (const auto& p : primes) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

constexpr long kScaleSearchLimit = 10'000'000;

std::optional<ScaleCertificate> certify_scale(const FormInvariants& target, const RatVector& base, const Integer& n) {
  RatVector scaled = base;
  for (auto& e : scaled) e *= n;
  FormInvariants inv = invariants_of_diagonal(scaled);
  if (inv == target) return ScaleCertificate{n, target, inv};
  return std::nullopt;
}

}  // namespace

// Scaling an even-rank form by n multiplies its symbol at p by (n, D)_p with
// D = (-1)^(r/2) det, so n must satisfy (n, D)_p = c_p(q1) c_p(q2) everywhere.
// Such n > 0 exists iff the condition is locally solvable; primes of n
// outside the bad set must split in Q(sqrt D).
std::optional<ScaleCertificate> similar_scale(const Lattice& q1, const Lattice& q2) {
  if (q1.rank() != q2.rank()) return std::nullopt;
  const FormInvariants a = invariants(q1);
  const FormInvariants b = invariants(q2);
  if (!(a.sig == b.sig)) return std::nullopt;
  const RatVector base = diagonalize(q2).entries;
  const std::size_t r = a.rank;
  if (r % 2 == 1) {
    Integer n = square_class(Rational(a.det_class * b.det_class));
    if (n < 0) return std::nullopt;
    return certify_scale(a, base, n);
  }
  if (a.det_class != b.det_class) return std::nullopt;
  const Integer disc = (r / 2) % 2 == 0 ? a.det_class : Integer(-a.det_class);
  const std::vector<Integer> bad = merge_primes(merge_primes({Integer(2)}, prime_divisors(disc)), merge_primes(a.hasse, b.hasse));
  std::vector<int> eps;
  for (const auto& p : bad) {
    Place v = Place::prime(p);
    eps.push_back(a.symbol(v) * b.symbol(v));
    if (eps.back() == -1 && is_local_square(disc, v)) return std::nullopt;
  }
  for (long m = 1; m <= kScaleSearchLimit; ++m) {
    Integer n = m;
    if (squarefree_part(n) != n) continue;
    bool ok = true;
    for (std::size_t i = 0; ok && i < bad.size(); ++i) ok = hilbert_symbol(n, disc, Place::prime(bad[i])) == eps[i];
    for (const auto& q : prime_divisors(n))
      if (ok && !std::binary_search(bad.begin(), bad.end(), q)) ok = hilbert_symbol(n, disc, Place::prime(q)) == 1;
    if (!ok) continue;
    if (auto cert = certify_scale(a, base, n)) return cert;
    throw Error("similar_scale: local conditions met but invariants differ");
  }
  throw Error("similar_scale: search limit exceeded");
}

}  // namespace k3lat
