#pragma once

// Brute-force reference implementations, kept independent of the library's
// algorithms. Small inputs only.

#include <optional>
#include <vector>

#include "k3lat/lattice.hpp"

namespace k3test {

// Nonzero integer vector with all |x_i| <= bound and x^T g x == 0, found by
// enumerating all but the last coordinate and solving for the last one.
std::optional<std::vector<long long>> brute_null_vector(const k3lat::IntMatrix& g, long bound);

// Legendre symbol (a/p) by listing the squares mod p; p an odd prime.
int legendre_by_squares(long a, long p);

// (a, b)_p for p in {2, 3, 5}: a primitive solution of a x^2 + b y^2 = z^2
// modulo p^k, with a, b reduced to valuation 0 or 1 first.
int hilbert_by_congruence(long a, long b, long p);

// Leibniz expansion.
k3lat::Integer leibniz_determinant(const k3lat::IntMatrix& m);

// Least n in [1, limit] with q1 rationally equivalent to q2(n), comparing
// invariants of explicit diagonalizations of both Gram matrices; 0 if none.
long least_scale_exhaustive(const k3lat::Lattice& q1, const k3lat::Lattice& q2, long limit);

}  // namespace k3test
