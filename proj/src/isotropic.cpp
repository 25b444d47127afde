#include <algorithm>
#include <array>
#include <cmath>

#include "k3lat/forms.hpp"

namespace k3lat {

namespace {

Integer positive_mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

Integer powmod(const Integer& b, const Integer& e, const Integer& m) {
  Integer r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Tonelli-Shanks; throws if a is not a square mod p.
Integer sqrt_mod_prime(const Integer& a_in, const Integer& p) {
  Integer a = positive_mod(a_in, p);
  if (a == 0) return 0;
  if (p == 2) return a;
  if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1) throw Error("not a square modulo " + p.get_str());
  Integer q = p - 1;
  unsigned s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  Integer z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  Integer c = powmod(z, q, p);
  Integer x = powmod(a, Integer((q + 1) / 2), p);
  Integer t = powmod(a, q, p);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    Integer t2 = t;
    while (t2 != 1) {
      t2 = positive_mod(Integer(t2 * t2), p);
      ++i;
    }
    Integer b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = positive_mod(Integer(b * b), p);
    x = positive_mod(Integer(x * b), p);
    c = positive_mod(Integer(b * b), p);
    t = positive_mod(Integer(t * c), p);
    m = i;
  }
  return x;
}

// Square root of a modulo a squarefree n > 1, reduced into |t| <= n/2.
Integer sqrt_mod_squarefree(const Integer& a, const Integer& n) {
  Integer r = 0, modulus = 1;
  for (const auto& pp : factor(n)) {
    const Integer& p = pp.prime;
    Integer rp = sqrt_mod_prime(a, p);
    Integer s, t;
    gcdext(modulus, p, s, t);
    // r' = r + modulus * s * (rp - r)  (mod modulus * p)
    r = positive_mod(Integer(r + modulus * s * (rp - r)), Integer(modulus * p));
    modulus *= p;
  }
  if (2 * r > n) r -= n;
  return r;
}

Integer isqrt_exact(const Integer& n) {
  Integer r = sqrt(n);
  if (r * r != n) throw Error("isqrt_exact: not a square");
  return r;
}

// Split n = c * k^2 with c squarefree.
void square_split(const Integer& n, Integer& c, Integer& k) {
  c = squarefree_part(n);
  k = isqrt_exact(Integer(n / c));
}

// Nonzero integers (x, y, z) with x^2 = a y^2 + b z^2; a, b squarefree, nonzero.
std::array<Integer, 3> legendre_solve(const Integer& a, const Integer& b) {
  if (a < 0 && b < 0) throw Error("legendre_solve: no real solution");
  if (a == 1) return {1, 1, 0};
  if (b == 1) return {1, 0, 1};
  if (a == -b) return {0, 1, 1};
  if (abs(a) > abs(b)) {
    auto s = legendre_solve(b, a);
    return {s[0], s[2], s[1]};
  }
  // |a| <= |b|, |b| >= 2: descend through t^2 - a = b c.
  const Integer nb = abs(b);
  Integer t = sqrt_mod_squarefree(a, nb);
  Integer c_full = (t * t - a) / b;
  if (c_full == 0) throw Error("legendre_solve: unexpected square");
  Integer c, k;
  square_split(c_full, c, k);
  auto s = legendre_solve(a, c);
  const Integer& X = s[0];
  const Integer& Y = s[1];
  const Integer& Z = s[2];
  // (X^2 - a Y^2)(t^2 - a) = c Z^2 * b c k^2
  return {t * X + a * Y, X + t * Y, c * k * Z};
}

RatVector to_rat(const IntVector& e) {
  RatVector out;
  for (const auto& x : e) out.emplace_back(x);
  return out;
}

// Local isotropy at infinity and at the listed places, which must cover 2
// and every prime dividing an entry.
bool isotropic_at(const IntVector& e, const std::vector<Integer>& places) {
  if (e.size() < 2) return false;
  if (e.size() == 2) return is_perfect_square(Integer(-e[0] * e[1]));
  FormInvariants inv = invariants_of_diagonal(to_rat(e), places);
  if (!is_locally_isotropic(inv, Place::infinity())) return false;
  for (const auto& p : places)
    if (!is_locally_isotropic(inv, Place::prime(p))) return false;
  return true;
}

IntVector pick(const IntVector& e, const std::vector<std::size_t>& idx) {
  IntVector out;
  for (auto i : idx) out.push_back(e[i]);
  return out;
}

RatVector scatter(const RatVector& x, const std::vector<std::size_t>& idx, std::size_t n) {
  RatVector out(n, Rational(0));
  for (std::size_t i = 0; i < idx.size(); ++i) out[idx[i]] = x[i];
  return out;
}

std::vector<std::size_t> all_but(std::size_t n, std::size_t skip) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (i != skip) out.push_back(i);
  return out;
}

// Serre's local criteria, with the real place included.
bool locally_isotropic(const RatVector& d, const Place& v) {
  Rational det = 1;
  for (const auto& x : d) det *= x;
  const int eps = hasse_product(d, v);
  switch (d.size()) {
    case 2:
      return is_local_square(-det, v);
    case 3:
      return hilbert_symbol(-1, -det, v) == eps;
    case 4:
      return !is_local_square(det, v) || eps == hilbert_symbol(-1, -1, v);
    default:
      if (d.size() < 2) return false;
      if (!v.is_infinite()) return true;
      return std::any_of(d.begin(), d.end(), [](const auto& x) { return x > 0; }) &&
             std::any_of(d.begin(), d.end(), [](const auto& x) { return x < 0; });
  }
}

// Representatives of Q_p^* / Q_p^*2.
std::vector<Integer> square_classes(const Integer& p) {
  if (p == 2) return {1, 3, 5, 7, 2, 6, 10, 14};
  Integer u = 2;
  while (mpz_legendre(u.get_mpz_t(), p.get_mpz_t()) != -1) ++u;
  return {1, u, p, u * p};
}

Integer unit_part(const Integer& n, const Integer& p) {
  Integer m = n;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) m /= p;
  return m;
}

// Residue symbol of an odd unit class at p: Legendre symbol, or the class mod 8 at 2.
long unit_class(const Integer& u, const Integer& p) {
  if (p == 2) {
    Integer r = u % 8;
    if (r < 0) r += 8;
    return r.get_si();
  }
  return mpz_legendre(Integer(((u % p) + p) % p).get_mpz_t(), p.get_mpz_t());
}

constexpr long kPrimeSearchLimit = 5000000;

RatVector solve_squarefree(const IntVector& e, const std::vector<Integer>& places);

// <e_i, e_j> represents t and the remaining entries represent -t. The local
// class of t is fixed at every place of the form, then t = s q with q prime;
// reciprocity settles the place q.
std::optional<RatVector> split_solve(const IntVector& e, std::size_t i, std::size_t j,
                                     const std::vector<Integer>& places) {
  const std::size_t n = e.size();
  std::vector<std::size_t> rest_idx;
  for (std::size_t k = 0; k < n; ++k)
    if (k != i && k != j) rest_idx.push_back(k);
  auto fits = [&](const Integer& t, const Place& v) {
    RatVector left{Rational(e[i]), Rational(e[j]), Rational(-t)};
    RatVector right;
    for (auto k : rest_idx) right.emplace_back(e[k]);
    right.emplace_back(t);
    return locally_isotropic(left, v) && locally_isotropic(right, v);
  };
  Integer s = 0;
  for (int sg : {1, -1})
    if (s == 0 && fits(Integer(sg), Place::infinity())) s = sg;
  if (s == 0) return std::nullopt;
  std::vector<Integer> chosen;
  for (const auto& p : places) {
    Place v = Place::prime(p);
    auto classes = square_classes(p);
    auto it = std::find_if(classes.begin(), classes.end(), [&](const Integer& c) { return fits(c, v); });
    if (it == classes.end()) return std::nullopt;
    chosen.push_back(*it);
    if (mpz_divisible_p(it->get_mpz_t(), p.get_mpz_t())) s *= p;
  }
  std::vector<long> need;
  for (std::size_t k = 0; k < places.size(); ++k) {
    const Integer& p = places[k];
    long want = unit_class(unit_part(chosen[k], p), p);
    long have = unit_class(unit_part(s, p), p);
    need.push_back(p == 2 ? (want * have) % 8 : want * have);
  }
  auto matches = [&](const Integer& q) {
    for (std::size_t k = 0; k < places.size(); ++k)
      if (unit_class(q, places[k]) != need[k]) return false;
    return true;
  };
  Integer q = 1;
  for (long step = 0; step < kPrimeSearchLimit; ++step) {
    if (step > 0) mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
    if (std::binary_search(places.begin(), places.end(), q) || !matches(q)) continue;
    Integer t = s * q;
    std::vector<Integer> tp = q == 1 ? places : merge_primes(places, {q});
    IntVector left{e[i], e[j], Integer(-t)};
    IntVector right = pick(e, rest_idx);
    right.push_back(t);
    if (!isotropic_at(left, tp) || !isotropic_at(right, tp)) throw Error("isotropic split: local conditions not met");
    RatVector x = solve_squarefree(left, tp);
    RatVector y = solve_squarefree(right, tp);
    RatVector out(n, Rational(0));
    out[i] = x[0] / x[2];
    out[j] = x[1] / x[2];
    for (std::size_t k = 0; k < rest_idx.size(); ++k) out[rest_idx[k]] = y[k] / y.back();
    return out;
  }
  return std::nullopt;
}

// Squarefree entries only.
RatVector solve_squarefree(const IntVector& e, const std::vector<Integer>& places) {
  const std::size_t n = e.size();
  if (!isotropic_at(e, places)) throw Error("diagonal form is anisotropic");
  if (n == 2) {
    Integer r = isqrt_exact(Integer(-e[0] * e[1]));
    return {Rational(r), Rational(e[0])};
  }
  if (n == 3) {
    Integer a, alpha, b, beta;
    square_split(Integer(-e[0] * e[1]), a, alpha);
    square_split(Integer(-e[0] * e[2]), b, beta);
    auto s = legendre_solve(a, b);
    return {make_rational(s[0], e[0]), make_rational(s[1], alpha), make_rational(s[2], beta)};
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (is_perfect_square(Integer(-e[a] * e[b]))) {
        RatVector x(n, Rational(0));
        x[a] = isqrt_exact(Integer(-e[a] * e[b]));
        x[b] = e[a];
        return x;
      }
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return abs(e[a]) < abs(e[b]); });
  if (n > 5) {
    // Any indefinite form of rank 5 is isotropic.
    std::vector<std::size_t> idx(order.begin(), order.begin() + 5);
    auto has = [&](int s) { return std::any_of(idx.begin(), idx.end(), [&](auto k) { return sign(e[k]) == s; }); };
    for (int s : {1, -1}) {
      if (has(s)) continue;
      auto other = std::find_if(order.begin() + 5, order.end(), [&](auto k) { return sign(e[k]) == s; });
      idx.back() = *other;
    }
    return scatter(solve_squarefree(pick(e, idx), places), idx, n);
  }
  for (auto k : order) {
    std::vector<std::size_t> idx = all_but(n, k);
    IntVector sub = pick(e, idx);
    if (isotropic_at(sub, places)) return scatter(solve_squarefree(sub, places), idx, n);
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& x, const auto& y) {
    return abs(e[x.first] * e[x.second]) < abs(e[y.first] * e[y.second]);
  });
  for (const auto& [a, b] : pairs)
    if (auto x = split_solve(e, a, b, places)) return *x;
  throw Error("isotropic split: no prime found within the search limit");
}

// Null vector with all |x_i| <= h for small h, shell by shell; int64 arithmetic.
std::optional<IntVector> small_null_vector(const Lattice& q) {
  const std::size_t n = q.rank();
  if (!q.is_integral()) return std::nullopt;
  IntMatrix g = q.integral_gram();
  std::vector<long> gl(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (abs(g(i, j)) > 1000000) return std::nullopt;
      gl[i * n + j] = g(i, j).get_si();
    }
  constexpr double kBudget = 200000;
  for (long h = 1; std::pow(2.0 * h + 1, static_cast<double>(n)) <= kBudget; ++h) {
    std::vector<long> x(n, -h);
    while (true) {
      long top = 0;
      for (auto c : x) top = std::max(top, std::labs(c));
      if (top == h) {
        long s = 0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) s += gl[i * n + j] * x[i] * x[j];
        if (s == 0) {
          IntVector out;
          for (auto c : x) out.emplace_back(c);
          return out;
        }
      }
      std::size_t k = n;
      while (k > 0 && x[k - 1] == h) x[--k] = -h;
      if (k == 0) break;
      ++x[k - 1];
    }
  }
  return std::nullopt;
}

}  // namespace

RatVector solve_diagonal_isotropic(const IntVector& e) {
  IntVector sf;
  std::vector<Integer> root;
  for (const auto& x : e) {
    if (x == 0) throw Error("solve_diagonal_isotropic: zero entry");
    Integer c, k;
    square_split(x, c, k);
    sf.push_back(c);
    root.push_back(k);
  }
  RatVector v = solve_squarefree(sf, merge_primes({Integer(2)}, primes_of(to_rat(sf))));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] /= root[i];
  Rational check = 0;
  for (std::size_t i = 0; i < v.size(); ++i) check += e[i] * v[i] * v[i];
  if (check != 0) throw Error("solve_diagonal_isotropic: verification failed");
  return v;
}

std::optional<IntVector> isotropic_vector(const Lattice& q) {
  if (!is_isotropic(q)) return std::nullopt;
  if (auto small = small_null_vector(q)) return small;
  Diagonalization d = diagonalize(q);
  IntVector e;
  std::vector<Rational> root;
  for (const auto& x : d.entries) {
    Integer c = square_class(x);
    Rational r2 = x / c;
    Rational r = make_rational(isqrt_exact(r2.get_num()), isqrt_exact(r2.get_den()));
    e.push_back(c);
    root.push_back(r);
  }
  RatVector x = solve_diagonal_isotropic(e);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] /= root[i];
  RatVector v = x * d.basis;
  Integer den = common_denominator(v);
  IntVector out;
  Integer g = 0;
  for (const auto& c : v) {
    out.push_back(Rational(c * den).get_num());
    g = gcd(g, out.back());
  }
  for (auto& c : out) c /= g;
  if (q.norm(to_rational(out)) != 0) throw Error("isotropic_vector: verification failed");
  return out;
}

}  // namespace k3lat
