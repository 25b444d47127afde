#include "k3lat/sublattice.hpp"

#include <algorithm>

#include "k3lat/smith.hpp"

namespace k3lat {

bool is_primitive(const SublatticeEmbedding& s) {
  auto divisors = elementary_divisors(s.integral_coords());
  return std::all_of(divisors.begin(), divisors.end(), [](const Integer& d) { return d == 1; });
}

SublatticeEmbedding primitive_closure(const SublatticeEmbedding& s) {
  // U * C * V = S: the saturation is spanned by the first rank rows of V^{-1}.
  auto snf = smith_normal_form(s.integral_coords());
  bool primitive = true;
  for (std::size_t i = 0; i < snf.rank; ++i)
    if (snf.S(i, i) != 1) primitive = false;
  if (primitive) return s;
  RatMatrix v_inv = inverse(to_rational(snf.V));
  std::vector<std::size_t> first(snf.rank);
  for (std::size_t i = 0; i < snf.rank; ++i) first[i] = i;
  return SublatticeEmbedding(s.ambient(), lattice_basis(select_rows(v_inv, first)));
}

SublatticeEmbedding orthogonal_complement(const SublatticeEmbedding& s) {
  // x * (G * C^T) == 0; column scaling keeps the kernel.
  RatMatrix pairing = s.ambient().gram() * s.coords().transpose();
  IntMatrix m(pairing.rows(), pairing.cols());
  for (std::size_t j = 0; j < pairing.cols(); ++j) {
    Integer d = 1;
    for (std::size_t i = 0; i < pairing.rows(); ++i) d = lcm(d, pairing(i, j).get_den());
    for (std::size_t i = 0; i < pairing.rows(); ++i) m(i, j) = Rational(pairing(i, j) * d).get_num();
  }
  return SublatticeEmbedding(s.ambient(), to_rational(left_kernel(m)));
}

Projection orthogonal_projection(const SublatticeEmbedding& s, const std::vector<std::size_t>& summand) {
  const auto& g = s.ambient().gram();
  const std::size_t n = g.rows();
  std::vector<bool> inside(n, false);
  for (auto i : summand) {
    if (i >= n) throw Error("projection index out of range");
    inside[i] = true;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (inside[i] != inside[j] && g(i, j) != 0) throw Error("index set is not an orthogonal splitting");

  Lattice target(select_rows(select_columns(g, summand), summand));
  RatMatrix image = lattice_basis(select_columns(s.coords(), summand));
  Projection out{SublatticeEmbedding(target, image), false};
  out.injective = image.rows() == s.rank();
  return out;
}

IntVector quotient_group(const SublatticeEmbedding& sub, const SublatticeEmbedding& super) {
  if (!(sub.ambient() == super.ambient())) throw Error("quotient_group: different ambients");
  if (sub.rank() != super.rank()) throw Error("quotient_group: ranks differ, quotient is infinite");
  auto x = solve_left(super.coords(), sub.coords());
  if (!x) throw Error("quotient_group: sub is not in the rational span of super");
  auto xi = to_integer(*x);
  if (!xi) throw Error("quotient_group: sub is not contained in super");
  IntVector out;
  for (const auto& d : elementary_divisors(*xi))
    if (d > 1) out.push_back(d);
  return out;
}

bool is_lambda0(const Lattice& l) {
  static const Lattice kLambda0 = make_named("Lambda0");
  return l == kLambda0;
}

SublatticeEmbedding intersect_with_scaled_dual(const SublatticeEmbedding& s, const Rational& k) {
  if (!is_lambda0(s.ambient())) throw Error("intersect_with_scaled_dual: ambient is not Lambda0");
  if (k <= 0) throw Error("intersect_with_scaled_dual: scale must be positive");
  // x = y * C lies in k*Lambda1 iff y * (C * G / k) is integral.
  const Rational inv_k = 1 / k;
  RatMatrix a = inv_k * (s.coords() * s.ambient().gram());
  Integer d = common_denominator(a);
  IntMatrix scaled(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) scaled(i, j) = Rational(a(i, j) * d).get_num();
  // U * A * V = diag(s_i): y * A in d*Z^n iff (y U^{-1})_i in (d / s_i) Z.
  auto snf = smith_normal_form(scaled);
  RatMatrix y(s.rank(), s.rank());
  for (std::size_t i = 0; i < s.rank(); ++i)
    for (std::size_t j = 0; j < s.rank(); ++j) y(i, j) = make_rational(d * snf.U(i, j), snf.S(i, i));
  return SublatticeEmbedding(s.ambient(), lattice_basis(y * s.coords()));
}

}  // namespace k3lat
