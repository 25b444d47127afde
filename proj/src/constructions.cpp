#include "k3lat/constructions.hpp"

#include <sstream>

#include "k3lat/criteria.hpp"
#include "k3lat/smith.hpp"
#include "k3lat/sublattice.hpp"

namespace k3lat {

namespace {

using Term = std::pair<std::size_t, long>;

IntVector vec(std::initializer_list<Term> terms) {
  IntVector out(lambda0::kRank, Integer(0));
  for (const auto& [index, coeff] : terms) out[index] += coeff;
  return out;
}

IntMatrix rows_of(const std::vector<IntVector>& rows) {
  IntMatrix m(rows.size(), lambda0::kRank);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

std::string matrix_string(const RatMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << to_string(m(i, j));
    os << "]";
  }
  os << "]";
  return os.str();
}

Check check(std::string name, bool passed, std::string detail = {}) { return {std::move(name), passed, std::move(detail)}; }

}  // namespace

IntMatrix u2_cube_rows() {
  using namespace lambda0;
  return rows_of({
      vec({{v(5), -1}, {v(7), 1}, {e(1), 2}, {f(1), 2}}),
      vec({{v(4), -1}}),
      vec({{v(1), 1}, {v(8), 1}, {e(2), 2}, {f(2), 2}}),
      vec({{v(2), 1}}),
      vec({{v(7), 1}, {v(8), 1}, {e(1), 2}, {e(2), 2}, {e(3), 2}, {f(3), 2}}),
      vec({{v(6), 1}}),
  });
}

IntMatrix u2_cube_completion_rows() {
  using namespace lambda0;
  return rows_of({vec({{v(3), 1}}), vec({{v(5), 1}}), vec({{e(1), 1}}), vec({{f(1), 1}}), vec({{e(2), 1}}),
                  vec({{f(2), 1}}), vec({{e(3), 1}}), vec({{f(3), 1}})});
}

IntMatrix double_cover_rows() {
  using namespace lambda0;
  return rows_of({
      vec({{v(3), 1}, {v(7), 1}, {e(1), 2}, {f(1), -2}, {e(2), 4}, {f(2), 2}}),
      vec({{v(2), -1}, {v(6), -1}, {f(2), 2}, {e(3), -2}, {f(3), -2}}),
      vec({{v(1), 1}, {v(3), -1}, {e(1), 4}, {f(1), 2}}),
      vec({{v(4), 1}, {v(8), 1}, {e(1), 2}}),
  });
}

Lattice double_cover_base() {
  return direct_sum({hyperbolic_plane(), Lattice::diagonal({2}), Lattice::diagonal({-2})});
}

bool Report::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

Report verify_u2_cube_sublattice() {
  Report r{"U(2)^3 sublattice of Lambda0", {}};
  const Lattice l0 = make_named("Lambda0");
  const IntMatrix lm = u2_cube_rows();
  const RatMatrix lmq = to_rational(lm);
  const RatMatrix g = gram_of(lmq, l0.gram());

  const RatMatrix block{{0, 2}, {2, -4}};
  for (std::size_t i = 0; i < 3; ++i) {
    RatMatrix b{{g(2 * i, 2 * i), g(2 * i, 2 * i + 1)}, {g(2 * i + 1, 2 * i), g(2 * i + 1, 2 * i + 1)}};
    r.checks.push_back(check("block Gram of (l" + std::to_string(i + 1) + ", m" + std::to_string(i + 1) + ")",
                             b == block, matrix_string(b)));
  }
  bool cross_zero = true;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      if (i / 2 != j / 2 && g(i, j) != 0) cross_zero = false;
  r.checks.push_back(check("cross-block pairings vanish", cross_zero));

  const RatMatrix changed = gram_of(to_rational(u2_cube_isometry()), l0.gram());
  r.checks.push_back(check("m_i -> m_i + l_i gives U(2)^3", changed == make_named("U(2)^3").gram(),
                           matrix_string(changed)));

  // x in 2*Lambda1 iff (x, y) is even for every basis vector y of Lambda0.
  const RatMatrix pairings = lmq * l0.gram();
  bool even = true;
  for (std::size_t i = 0; i < pairings.rows(); ++i)
    for (std::size_t j = 0; j < pairings.cols(); ++j)
      if (!is_integer(pairings(i, j)) || !mpz_even_p(pairings(i, j).get_num_mpz_t())) even = false;
  r.checks.push_back(check("pairings with Lambda0 are even (L in 2 Lambda1)", even));
  SublatticeEmbedding s = embed(l0, lmq);
  r.checks.push_back(check("intersection with 2 Lambda1 is L", same_lattice(intersect_with_scaled_dual(s, 2), s)));

  IntVector divisors = elementary_divisors(lm);
  bool ones = divisors.size() == 6;
  std::string listed;
  for (const auto& d : divisors) {
    if (d != 1) ones = false;
    listed += (listed.empty() ? "" : ",") + d.get_str();
  }
  r.checks.push_back(check("Smith invariant factors all 1 (primitive)", ones, "[" + listed + "]"));

  IntMatrix full(lambda0::kRank, lambda0::kRank);
  const IntMatrix ext = u2_cube_completion_rows();
  for (std::size_t i = 0; i < 6; ++i) full.set_row(i, lm.row(i));
  for (std::size_t i = 0; i < ext.rows(); ++i) full.set_row(6 + i, ext.row(i));
  const Integer det = determinant(full);
  r.checks.push_back(check("completion to a Lambda0 basis has det +-1", abs(det) == 1, "det " + det.get_str()));
  return r;
}

Report verify_double_cover() {
  Report r{"rank-4 sublattice of Lambda0 isometric to T(4)", {}};
  const Lattice l0 = make_named("Lambda0");
  const RatMatrix w = to_rational(double_cover_rows());
  const SublatticeEmbedding m = embed(l0, w);
  const Lattice base = double_cover_base();

  r.checks.push_back(check("(w1, w1) = 0", m.gram()(0, 0) == 0, to_string(m.gram()(0, 0))));
  r.checks.push_back(check("(w1, w2) = 4", m.gram()(0, 1) == 4, to_string(m.gram()(0, 1))));

  r.checks.push_back(check("span(w) is primitive", is_primitive(m)));
  const SublatticeEmbedding inter = intersect_with_scaled_dual(m, 1);
  r.checks.push_back(check("span(w) (x) Q cap Lambda1 = span(w)/2",
                           same_lattice(inter, scale_coords(m, Rational(1, 2)))));

  std::vector<std::size_t> u3_part;
  for (std::size_t i = 8; i < lambda0::kRank; ++i) u3_part.push_back(i);
  r.checks.push_back(check("projection to U^3 is injective", orthogonal_projection(m, u3_part).injective));

  const Fingerprint got = fingerprint(m.lattice());
  const Fingerprint want = fingerprint(scale(base, 4));
  r.checks.push_back(check("Gram(span(w)) has the fingerprint of T(4)", got == want, to_string(got)));

  const ObstructionReport obstruction = double_quotient_obstruction(scale(base, 2));
  r.checks.push_back(check("T(2) is obstructed", obstruction.obstructed,
                           obstruction.reason + ", 2-length " + std::to_string(obstruction.two_length)));

  const QuotientReport q = nikulin_quotient(m);
  const Fingerprint quotient = fingerprint(q.quotient);
  r.checks.push_back(check("quotient lattice has the fingerprint of T(2)", quotient == fingerprint(scale(base, 2)),
                           to_string(quotient)));
  r.checks.push_back(check("quotient chain holds", q.source_in_quotient && q.double_in_source));
  return r;
}

}  // namespace k3lat
