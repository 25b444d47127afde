#include <doctest.h>

#include "k3lat/matrix.hpp"
#include "k3lat/smith.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace k3lat;
using k3test::Rng;

namespace {

IntMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, long bound) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.uniform(-bound, bound);
  return m;
}

}  // namespace

TEST_SUITE("matrix") {
  TEST_CASE("Bareiss determinant agrees with the Leibniz expansion") {
    Rng rng(11);
    for (int t = 0; t < 60; ++t) {
      std::size_t n = static_cast<std::size_t>(rng.uniform(1, 6));
      IntMatrix m = random_matrix(rng, n, n, 9);
      CHECK(determinant(m) == k3test::leibniz_determinant(m));
      CHECK(determinant(to_rational(m)) == Rational(k3test::leibniz_determinant(m)));
    }
  }

  TEST_CASE("inverse times matrix is the identity") {
    Rng rng(12);
    for (int t = 0; t < 30; ++t) {
      IntMatrix m = random_matrix(rng, 4, 4, 5);
      if (determinant(m) == 0) continue;
      RatMatrix q = to_rational(m);
      CHECK(inverse(q) * q == RatMatrix::identity(4));
    }
  }

  TEST_CASE("Smith normal form of small examples") {
    CHECK(smith_normal_form(IntMatrix::identity(3)).S == IntMatrix::identity(3));
    IntMatrix d{{2, 0}, {0, 4}};
    CHECK(elementary_divisors(d) == IntVector{2, 4});
    IntMatrix u2{{0, 2}, {2, 0}};
    CHECK(elementary_divisors(u2) == IntVector{2, 2});
    IntMatrix swapped{{4, 0}, {0, 6}};
    CHECK(elementary_divisors(swapped) == IntVector{2, 12});
  }

  TEST_CASE("Smith decomposition is exact on random matrices") {
    Rng rng(13);
    for (int t = 0; t < 100; ++t) {
      std::size_t r = static_cast<std::size_t>(rng.uniform(1, 5));
      std::size_t c = static_cast<std::size_t>(rng.uniform(1, 5));
      IntMatrix m = random_matrix(rng, r, c, 20);
      auto snf = smith_normal_form(m);
      CHECK(snf.U * m * snf.V == snf.S);
      CHECK(abs(determinant(snf.U)) == 1);
      CHECK(abs(determinant(snf.V)) == 1);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
          if (i != j) CHECK(snf.S(i, j) == 0);
      auto diag = snf.diagonal();
      for (std::size_t i = 0; i < diag.size(); ++i) {
        CHECK(diag[i] >= 0);
        if (i + 1 < diag.size() && diag[i + 1] != 0)
          CHECK(mpz_divisible_p(diag[i + 1].get_mpz_t(), diag[i].get_mpz_t()) != 0);
      }
      CHECK(snf.rank == rank(to_rational(m)));
      CHECK(smith_normal_form(m).S == snf.S);
    }
  }

  TEST_CASE("Hermite form spans the same row lattice") {
    Rng rng(14);
    for (int t = 0; t < 30; ++t) {
      IntMatrix m = random_matrix(rng, 3, 4, 6);
      IntMatrix h = hermite_form(m);
      auto x = solve_left(to_rational(h), to_rational(m));
      REQUIRE(x);
      CHECK(to_integer(*x).has_value());
      auto y = solve_left(to_rational(m), to_rational(h));
      if (rank(to_rational(m)) == m.rows()) {
        REQUIRE(y);
        CHECK(to_integer(*y).has_value());
      }
    }
  }

  TEST_CASE("left kernel annihilates the matrix") {
    Rng rng(15);
    for (int t = 0; t < 30; ++t) {
      IntMatrix m = random_matrix(rng, 5, 2, 4);
      IntMatrix k = left_kernel(m);
      CHECK(k.rows() == 5 - rank(to_rational(m)));
      IntMatrix z = k * m;
      for (std::size_t i = 0; i < z.rows(); ++i)
        for (std::size_t j = 0; j < z.cols(); ++j) CHECK(z(i, j) == 0);
    }
  }

  TEST_CASE("congruence diagonalization witness") {
    Rng rng(16);
    for (int t = 0; t < 100; ++t) {
      std::size_t n = static_cast<std::size_t>(rng.uniform(1, 6));
      RatMatrix g = k3test::random_form(rng, n, 8).gram();
      auto d = diagonalize_symmetric(g);
      RatMatrix diag(n, n);
      for (std::size_t i = 0; i < n; ++i) diag(i, i) = d.entries[i];
      CHECK(d.basis * g * d.basis.transpose() == diag);
      CHECK(determinant(d.basis) != 0);
    }
  }
}
