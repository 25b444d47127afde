#include "k3lat/discriminant.hpp"

#include "k3lat/smith.hpp"

namespace k3lat {

Integer FiniteQuadraticModule::order() const {
  Integer n = 1;
  for (const auto& d : invariant_factors) n *= d;
  return n;
}

FiniteQuadraticModule discriminant_group(const Lattice& l) {
  if (!l.is_integral()) throw Error("discriminant group of a non-integral lattice");
  // U * G * V = S gives G^{-1} = V S^{-1} U, so the rows U_i / s_i form a
  // basis of the dual and s_i * (U_i / s_i) a basis of L.
  auto snf = smith_normal_form(l.integral_gram());
  FiniteQuadraticModule out;
  std::vector<std::size_t> nontrivial;
  for (std::size_t i = 0; i < snf.rank; ++i)
    if (snf.S(i, i) > 1) nontrivial.push_back(i);

  const std::size_t n = l.rank();
  out.generators = RatMatrix(nontrivial.size(), n);
  for (std::size_t k = 0; k < nontrivial.size(); ++k) {
    const std::size_t i = nontrivial[k];
    out.invariant_factors.push_back(snf.S(i, i));
    for (std::size_t j = 0; j < n; ++j) out.generators(k, j) = make_rational(snf.U(i, j), snf.S(i, i));
  }

  RatMatrix values = gram_of(out.generators, l.gram());
  out.bilinear_values = RatMatrix(values.rows(), values.cols());
  for (std::size_t i = 0; i < values.rows(); ++i)
    for (std::size_t j = 0; j < values.cols(); ++j) out.bilinear_values(i, j) = mod(values(i, j), 1);
  if (l.is_even()) {
    RatVector q;
    for (std::size_t i = 0; i < values.rows(); ++i) q.push_back(mod(values(i, i), 2));
    out.quadratic_values = std::move(q);
  }
  return out;
}

int p_length(const FiniteQuadraticModule& d, const Integer& p) {
  if (!is_prime(p)) throw Error("p_length: " + p.get_str() + " is not prime");
  int count = 0;
  for (const auto& f : d.invariant_factors)
    if (mpz_divisible_p(f.get_mpz_t(), p.get_mpz_t())) ++count;
  return count;
}

}  // namespace k3lat
