#pragma once

// Exact integer and rational arithmetic on top of GMP, plus the small amount
// of elementary number theory the lattice code needs (factoring, square
// classes, valuations).

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace k3lat {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational make_rational(const Integer& num, const Integer& den);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }
inline int sign(const Integer& n) { return sgn(n); }
inline int sign(const Rational& q) { return sgn(q); }

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Extended gcd: returns g >= 0 with s*a + t*b == g.
Integer gcdext(const Integer& a, const Integer& b, Integer& s, Integer& t);

/// Floor division and the matching nonnegative remainder (b > 0 or b < 0).
Integer floor_div(const Integer& a, const Integer& b);

/// Representative of x modulo m in [0, m), m > 0.
Rational mod(const Rational& x, const Integer& m);

bool is_prime(const Integer& n);

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;
};

/// Prime factorization of |n| in ascending prime order; n must be nonzero.
std::vector<PrimePower> factor(const Integer& n);

/// Distinct primes dividing |n|, ascending.
std::vector<Integer> prime_divisors(const Integer& n);

/// Exponent of the prime p in n (n != 0).
unsigned valuation(const Integer& n, const Integer& p);

/// Signed squarefree integer in the same square class as n (n != 0).
Integer squarefree_part(const Integer& n);

/// Squarefree integer in the square class of a nonzero rational.
Integer square_class(const Rational& q);

bool is_perfect_square(const Integer& n);

/// Union of the primes dividing numerator or denominator of each value.
std::vector<Integer> primes_of(const std::vector<Rational>& values);

/// Sorted, deduplicated merge.
std::vector<Integer> merge_primes(std::vector<Integer> a, const std::vector<Integer>& b);

std::string to_string(const Integer& n);
std::string to_string(const Rational& q);

}  // namespace k3lat
