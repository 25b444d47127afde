#include "k3lat/matrix.hpp"

#include "k3lat/smith.hpp"

namespace k3lat {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

RatVector to_rational(const IntVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

std::optional<IntMatrix> to_integer(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j))) return std::nullopt;
      out(i, j) = m(i, j).get_num();
    }
  return out;
}

std::optional<IntVector> to_integer(const RatVector& v) {
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!is_integer(x)) return std::nullopt;
    out.push_back(x.get_num());
  }
  return out;
}

bool is_integral(const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_integer(m(i, j))) return false;
  return true;
}

Integer common_denominator(const RatMatrix& m) {
  Integer d = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d = lcm(d, m(i, j).get_den());
  return d;
}

Integer common_denominator(const RatVector& v) {
  Integer d = 1;
  for (const auto& x : v) d = lcm(d, x.get_den());
  return d;
}

Rational bilinear(const RatVector& x, const RatMatrix& g, const RatVector& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (x[i] == 0) continue;
    Rational t = 0;
    for (std::size_t j = 0; j < g.cols(); ++j) t += g(i, j) * y[j];
    s += x[i] * t;
  }
  return s;
}

RatMatrix gram_of(const RatMatrix& rows, const RatMatrix& g) {
  return rows * g * rows.transpose();
}

bool is_symmetric(const RatMatrix& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

namespace {

// Row reduction to echelon form; returns pivot columns. When `track` is given
// the same row operations are applied to it.
std::vector<std::size_t> row_reduce(RatMatrix& a, RatMatrix* track = nullptr) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    if (track) track->swap_rows(r, p);
    Rational inv = 1 / a(r, c);
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) *= inv;
    if (track)
      for (std::size_t j = 0; j < track->cols(); ++j) (*track)(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = -a(i, c);
      a.add_row(i, r, f);
      if (track) track->add_row(i, r, f);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Rational determinant(const RatMatrix& m) {
  if (!m.is_square()) throw Error("determinant of a non-square matrix");
  RatMatrix a = m;
  Rational det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = -a(i, c) / a(c, c);
      a.add_row(i, c, f);
    }
  }
  return det;
}

Integer determinant(const IntMatrix& m) {
  // Bareiss fraction-free elimination.
  if (!m.is_square()) throw Error("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int s = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      s = -s;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    prev = a(k, k);
  }
  return s * a(n - 1, n - 1);
}

RatMatrix inverse(const RatMatrix& m) {
  if (!m.is_square()) throw Error("inverse of a non-square matrix");
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(m.rows());
  auto pivots = row_reduce(a, &inv);
  if (pivots.size() != m.rows()) throw Error("inverse of a singular matrix");
  return inv;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return row_reduce(a).size();
}

std::optional<RatMatrix> solve_left(const RatMatrix& basis, const RatMatrix& rows) {
  if (basis.cols() != rows.cols()) throw Error("solve_left: dimension mismatch");
  if (basis.rows() == 0) {
    for (std::size_t i = 0; i < rows.rows(); ++i)
      for (std::size_t j = 0; j < rows.cols(); ++j)
        if (rows(i, j) != 0) return std::nullopt;
    return RatMatrix(rows.rows(), 0);
  }
  RatMatrix echelon = basis;
  auto pivots = row_reduce(echelon);
  if (pivots.size() != basis.rows()) throw Error("solve_left: basis rows are dependent");
  RatMatrix square = select_columns(basis, pivots);
  RatMatrix x = select_columns(rows, pivots) * inverse(square);
  if (!(x * basis == rows)) return std::nullopt;
  return x;
}

IntMatrix hermite_form(const IntMatrix& m) {
  IntMatrix h = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    for (std::size_t i = r + 1; i < h.rows(); ++i) {
      if (h(i, c) == 0) continue;
      Integer a = h(r, c), b = h(i, c), s, t;
      Integer g = gcdext(a, b, s, t);
      Integer ag = a / g, bg = b / g;
      for (std::size_t j = 0; j < h.cols(); ++j) {
        Integer x = h(r, j), y = h(i, j);
        h(r, j) = s * x + t * y;
        h(i, j) = ag * y - bg * x;
      }
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0)
      for (std::size_t j = 0; j < h.cols(); ++j) h(r, j) = -h(r, j);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(h(i, c), h(r, c));
      if (q != 0) h.add_row(i, r, -q);
    }
    ++r;
  }
  IntMatrix out(r, h.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) out(i, j) = h(i, j);
  return out;
}

RatMatrix lattice_basis(const RatMatrix& generators) {
  Integer d = common_denominator(generators);
  IntMatrix scaled(generators.rows(), generators.cols());
  for (std::size_t i = 0; i < generators.rows(); ++i)
    for (std::size_t j = 0; j < generators.cols(); ++j) {
      Rational v = generators(i, j) * d;
      scaled(i, j) = v.get_num();
    }
  IntMatrix h = hermite_form(scaled);
  RatMatrix out(h.rows(), h.cols());
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) out(i, j) = make_rational(h(i, j), d);
  return out;
}

IntMatrix left_kernel(const IntMatrix& m) {
  auto snf = smith_normal_form(m);
  IntMatrix k(m.rows() - snf.rank, m.rows());
  for (std::size_t i = snf.rank; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) k(i - snf.rank, j) = snf.U(i, j);
  return hermite_form(k);
}

RatMatrix block_diagonal(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

RatMatrix vstack(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() > 0 && b.rows() > 0 && a.cols() != b.cols()) throw Error("vstack: column mismatch");
  const std::size_t cols = a.rows() > 0 ? a.cols() : b.cols();
  RatMatrix out(a.rows() + b.rows(), cols);
  for (std::size_t i = 0; i < a.rows(); ++i) out.set_row(i, a.row(i));
  for (std::size_t i = 0; i < b.rows(); ++i) out.set_row(a.rows() + i, b.row(i));
  return out;
}

RatMatrix select_columns(const RatMatrix& m, const std::vector<std::size_t>& cols) {
  RatMatrix out(m.rows(), cols.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(i, cols[j]);
  return out;
}

RatMatrix select_rows(const RatMatrix& m, const std::vector<std::size_t>& rows) {
  RatMatrix out(rows.size(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.set_row(i, m.row(rows[i]));
  return out;
}

SymmetricDiagonalization diagonalize_symmetric(const RatMatrix& g) {
  if (!is_symmetric(g)) throw Error("diagonalize: matrix is not symmetric");
  const std::size_t n = g.rows();
  RatMatrix a = g;
  RatMatrix basis = RatMatrix::identity(n);
  // Congruence by elementary operations: a row operation on the basis is
  // mirrored by the same row and column operation on a.
  auto swap_both = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    a.swap_cols(i, j);
    basis.swap_rows(i, j);
  };
  auto add_both = [&](std::size_t target, std::size_t source, const Rational& f) {
    a.add_row(target, source, f);
    a.add_col(target, source, f);
    basis.add_row(target, source, f);
  };
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t j = k + 1;
      while (j < n && a(j, j) == 0) ++j;
      if (j < n) {
        swap_both(k, j);
      } else {
        j = k + 1;
        while (j < n && a(k, j) == 0) ++j;
        if (j == n) continue;  // zero row: degenerate direction
        add_both(k, j, Rational(1));
      }
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      add_both(i, k, -a(i, k) / a(k, k));
    }
  }
  SymmetricDiagonalization out;
  for (std::size_t i = 0; i < n; ++i) out.entries.push_back(a(i, i));
  out.basis = std::move(basis);
  return out;
}

}  // namespace k3lat
