#pragma once

// Explicit sublattices of Lambda0 = E8(2) + U^3 and their verifiers.
//
// Lambda0 coordinates are ordered v1..v8, e1, f1, e2, f2, e3, f3.

#include <string>
#include <vector>

#include "k3lat/lattice.hpp"

namespace k3lat {

namespace lambda0 {
inline std::size_t v(int i) { return static_cast<std::size_t>(i - 1); }
inline std::size_t e(int i) { return static_cast<std::size_t>(8 + 2 * (i - 1)); }
inline std::size_t f(int i) { return static_cast<std::size_t>(9 + 2 * (i - 1)); }
constexpr std::size_t kRank = 14;
}  // namespace lambda0

/// Rows l1, m1, l2, m2, l3, m3 spanning a copy of U(2)^3 in Lambda0:
///   l1 = -v5 + v7 + 2(e1 + f1),          m1 = -v4
///   l2 =  v1 + v8 + 2(e2 + f2),          m2 =  v2
///   l3 =  v7 + v8 + 2(e1 + e2 + e3 + f3), m3 =  v6
IntMatrix u2_cube_rows();

/// v3, v5, e1, f1, e2, f2, e3, f3: completes u2_cube_rows to a basis of Lambda0.
IntMatrix u2_cube_completion_rows();

/// Rows w1..w4 of a rank-4 sublattice of Lambda0 isometric to T(4), T = U + <2> + <-2>:
///   w1 = v3 + v7 + 2(e1 - f1 + 2e2 + f2)
///   w2 = -v2 - v6 + 2(f2 - e3 - f3)
///   w3 = v1 - v3 + 2(2e1 + f1)
///   w4 = v4 + v8 + 2e1
IntMatrix double_cover_rows();

/// U + <2> + <-2>.
Lattice double_cover_base();

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::string title;
  std::vector<Check> checks;

  bool passed() const;
};

/// Isometry type, membership in 2*Lambda1, primitivity and basis completion
/// of the U(2)^3 sublattice.
Report verify_u2_cube_sublattice();

/// Primitivity and Lambda1-intersection of span(w), its isometry type, the
/// 2-length obstruction for T(2), and the quotient fingerprint.
Report verify_double_cover();

}  // namespace k3lat
