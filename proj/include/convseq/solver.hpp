#pragma once

#include <vector>

#include "convseq/numeric.hpp"
#include "convseq/sequences.hpp"

namespace convseq {

/// The m x m system fixing a_0..a_{m-1} from the target limit L and the
/// conditions L_1..L_{m-1} attached to the roots of B(s) - s^m.
struct SolveReport {
  int m = 1;
  std::vector<std::vector<Coefficient>> matrix;
  /// L_1..L_{m-1}, then L.
  std::vector<Coefficient> rhs;
  std::vector<Coefficient> roots_used;
  std::vector<Coefficient> solution;
  Coefficient determinant;
  Coefficient determinant_closed_form;
  bool solved = false;
  /// max_i |(matrix * solution - rhs)_i|.
  double residual = 0.0;
};

/// L = (m - sum j b_j) * lim, the right-hand side that makes lim a_n = lim.
Coefficient limit_rhs(const SequenceSpec& b, int m, const Coefficient& lim);

/// The m - 1 non-unit roots of B(s) - s^m of smallest modulus.
std::vector<Coefficient> default_roots(const SequenceSpec& b, int m);

/// Row i < m-1 has entries sum_{n=c}^{m-1} b_{n-c} root_i^n; the last row
/// uses 1 in place of the root. PreconditionError naming the violated
/// hypothesis when b is not finite, sum b != 1, m = sum j b_j, or a root
/// is 1, repeated, or not a root at all.
SolveReport build_system(const SequenceSpec& b, int m, const std::vector<Coefficient>& roots,
                         const std::vector<Coefficient>& L_vec, const Coefficient& L);

/// Gaussian elimination with partial pivoting; exact when every entry is
/// rational. SingularMatrix on a zero determinant.
SolveReport solve_system(SolveReport report);

/// b_0^m (-1)^{m+1} prod_j (root_j - 1) prod_{i<j} (root_j - root_i).
Coefficient determinant_closed_form(const SequenceSpec& b, int m, const std::vector<Coefficient>& roots);

/// Explicit a_0..a_{m-1} for L_1 = ... = L_{m-1} = 0, via elementary
/// symmetric polynomials of the roots.
std::vector<Coefficient> closed_form_initials(const SequenceSpec& b, int m, const std::vector<Coefficient>& roots,
                                              const Coefficient& L);

}  // namespace convseq
