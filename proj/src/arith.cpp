#include "k3lat/arith.hpp"

#include <algorithm>

namespace k3lat {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Integer gcdext(const Integer& a, const Integer& b, Integer& s, Integer& t) {
  Integer g;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Rational mod(const Rational& x, const Integer& m) {
  // x - m * floor(x / m)
  Rational ratio = x / Rational(m);
  Integer fl = floor_div(ratio.get_num(), ratio.get_den());
  Rational r = x - Rational(m * fl);
  r.canonicalize();
  return r;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

namespace {

// Brent's variant of Pollard rho; n is odd, composite and not a prime power
// of a tiny prime (those are removed by trial division first).
Integer pollard_brent(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 64;
    auto f = [&](const Integer& v) {
      Integer out = v * v + c;
      mpz_mod(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
      return out;
    };
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          Integer diff = abs(x - y);
          q = q * diff;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const Integer& n, std::vector<Integer>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  Integer root;
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    factor_into(root, primes);
    factor_into(root, primes);
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

}  // namespace

std::vector<PrimePower> factor(const Integer& n) {
  if (n == 0) throw Error("factor: zero has no factorization");
  Integer m = abs(n);
  std::vector<Integer> primes;
  for (unsigned long p = 2; p < 1000; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      primes.emplace_back(p);
      m /= p;
    }
    if (m == 1) break;
  }
  factor_into(m, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> out;
  for (const auto& p : primes) {
    if (!out.empty() && out.back().prime == p) {
      ++out.back().exponent;
    } else {
      out.push_back({p, 1});
    }
  }
  return out;
}

std::vector<Integer> prime_divisors(const Integer& n) {
  std::vector<Integer> out;
  for (const auto& pp : factor(n)) out.push_back(pp.prime);
  return out;
}

unsigned valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw Error("valuation of zero");
  Integer m = n;
  unsigned v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++v;
  }
  return v;
}

Integer squarefree_part(const Integer& n) {
  if (n == 0) throw Error("squarefree part of zero");
  Integer out = sign(n);
  for (const auto& pp : factor(n)) {
    if (pp.exponent % 2 == 1) out *= pp.prime;
  }
  return out;
}

Integer square_class(const Rational& q) {
  if (q == 0) throw Error("square class of zero");
  return squarefree_part(q.get_num() * q.get_den());
}

bool is_perfect_square(const Integer& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t());
}

std::vector<Integer> merge_primes(std::vector<Integer> a, const std::vector<Integer>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::vector<Integer> primes_of(const std::vector<Rational>& values) {
  std::vector<Integer> out;
  for (const auto& v : values) {
    if (v == 0) continue;
    out = merge_primes(std::move(out), prime_divisors(v.get_num()));
    out = merge_primes(std::move(out), prime_divisors(v.get_den()));
  }
  return out;
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& q) {
  if (is_integer(q)) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace k3lat
