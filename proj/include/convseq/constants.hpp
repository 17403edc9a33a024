#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "convseq/numeric.hpp"

namespace convseq {

enum class ConstantTarget { ZetaDirect, ZetaMobius, ZetaHasse, PiLeibniz, EulerE };

/// "zeta_direct", "zeta_mobius", "zeta_hasse", "pi_leibniz", "euler_e".
std::string to_string(ConstantTarget target);
/// ParamError for unknown names.
ConstantTarget parse_constant_target(const std::string& name);

struct ConstantRun {
  ConstantTarget target = ConstantTarget::ZetaDirect;
  Coefficient a;
  std::size_t N = 0;
  /// alpha_0(0..N) from the recurrence with m = 1.
  std::vector<Coefficient> alpha_partial;
  /// sum_{j=1}^{n} j b_j for n = 0..N.
  std::vector<Coefficient> b_weighted_tail;
  /// zeta(a) for ZetaDirect and ZetaHasse, 1/zeta(a) for ZetaMobius,
  /// pi/4 for PiLeibniz, e for EulerE.
  Coefficient final_estimate;
  /// The same quantity from the float library.
  Complex reference;
  /// max_n |alpha_0(n) - direct partial sum(n)|.
  double oracle_max_deviation = 0.0;
  /// Exact agreement for exact runs, within 1e-12 relative otherwise.
  bool oracle_match = false;
};

/// Builds the kernel, runs the recurrence and checks every alpha_0(n)
/// against the direct partial-sum formula. Requires N >= 2; Re a > 1 for
/// the Dirichlet and Moebius kernels; a != 1 + 2 pi i n / log 2 for the
/// Hasse kernel (ParamError otherwise). `a` is ignored by PiLeibniz and
/// EulerE.
ConstantRun run_constant(ConstantTarget target, const Coefficient& a, std::size_t N);

/// The partial sums alpha_0(0..N) are supposed to equal, summed directly.
std::vector<Coefficient> direct_partial_sums(ConstantTarget target, const Coefficient& a, std::size_t N);

/// |sum_{j=1}^{N} j b_j - closed form|, where the closed form is
/// 1 - 1/lim alpha_0 (e.g. 1 - 1/zeta(a), 1 - 4/pi, 1 - 1/e).
double weighted_b_identity(ConstantTarget target, const Coefficient& a, std::size_t N);

/// zeta(a) from the float library for real a, else from Borwein's
/// alternating-series algorithm. ParamError at a = 1.
Complex reference_zeta(Complex a);

/// Expected lim alpha_0(n) of the target's kernel.
Complex reference_alpha_limit(ConstantTarget target, const Coefficient& a);

}  // namespace convseq
