#include "k3lat/smith.hpp"

#include <algorithm>

namespace k3lat {

IntVector SmithDecomposition::diagonal() const {
  IntVector d;
  for (std::size_t i = 0; i < rank; ++i) d.push_back(S(i, i));
  return d;
}

namespace {

void negate_row(IntMatrix& m, std::size_t i) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block, first in row-major order.
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          if (pi == rows || abs(a(i, j)) < abs(a(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi == rows) goto done;
      a.swap_rows(t, pi);
      u.swap_rows(t, pi);
      a.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        a.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        a.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // The pivot must divide the whole trailing block.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            a.add_row(t, i, Integer(1));
            u.add_row(t, i, Integer(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a(t, t) < 0) {
      negate_row(a, t);
      negate_row(u, t);
    }
  }
done:
  SmithDecomposition out;
  out.S = std::move(a);
  out.U = std::move(u);
  out.V = std::move(v);
  out.rank = t;
  return out;
}

IntVector elementary_divisors(const IntMatrix& m) { return smith_normal_form(m).diagonal(); }

}  // namespace k3lat
