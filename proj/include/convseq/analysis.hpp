#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "convseq/numeric.hpp"
#include "convseq/sequences.hpp"
#include "convseq/series.hpp"

namespace convseq {

/// sum_{j=1}^{N} j b_j. For finite b the sum stops at the last stored term.
Coefficient weighted_index_mean(const SequenceSpec& b, std::size_t N);

/// Whether sum b_n = 1: exactly for finite exact b, within tolerance
/// otherwise. `residual` is |sum - 1| as a double.
struct SumCheck {
  Coefficient sum;
  double residual = 0.0;
  bool holds = false;
};
SumCheck check_sums_to_one(const SequenceSpec& b, std::size_t N, double tol = 1e-9);

/// lim alpha_k(n) from b alone, or an empty value with the reason it does
/// not apply.
struct ClosedFormLimit {
  std::optional<Coefficient> value;
  std::string reason;
};
ClosedFormLimit limit_alpha_closed(const SequenceSpec& b, int m, int k, std::size_t N, double tol = 1e-9);

/// Partial sums of M_k at s = 1, i.e. alpha_k(n) itself.
struct NumericLimit {
  Coefficient value;
  bool converged = false;
  /// Largest pairwise distance among the last `window` partial sums.
  double spread = 0.0;
  std::size_t window = 0;
};
NumericLimit limit_alpha_numeric(std::span<const Coefficient> m_coeffs, std::size_t window = 8,
                                 Tolerance tol = {});

enum class RadiusMode { RootTest, RatioTest };

std::string to_string(RadiusMode mode);

struct RadiusEstimate {
  double radius = 0.0;
  RadiusMode mode = RadiusMode::RatioTest;
  /// (n, radius estimate at n) over the window the median was taken from.
  std::vector<std::pair<std::size_t, double>> per_index;
};

/// RootTest: 1 / median |c_n|^{1/n}. RatioTest: median of
/// |c_p / c_n|^{1/(n-p)} for consecutive nonzero c_p, c_n, which reduces
/// to |c_{n-1} / c_n| when there are no zero gaps. Both use the nonzero
/// coefficients in the last half of the index range. For float series,
/// coefficients within 1e3 * eps of the largest count as zero and a trailing
/// run of them shortens the range. InsufficientData when fewer than 8 usable
/// terms remain.
RadiusEstimate estimate_radius(const TruncatedSeries& series, RadiusMode mode);

struct Root {
  Complex value;
  int multiplicity = 1;
  bool at_one = false;
  /// |p(z)| after polishing.
  double residual = 0.0;
};

struct RootReport {
  /// Distinct roots, each listed once with its multiplicity.
  std::vector<Root> roots;
  bool has_repeated = false;
  bool has_unit_root = false;
  double max_residual = 0.0;

  /// Roots other than 1, ordered by modulus.
  std::vector<Complex> non_unit_roots() const;
};

/// Roots of p(s) = sum coeffs[i] s^i. Exact coefficients get an exact
/// square-free decomposition, so multiplicities and the root at 1 are
/// decided exactly; floating coefficients use distance thresholds of 1e-8.
/// DegenerateError for constant polynomials.
RootReport polynomial_roots(const std::vector<Coefficient>& coeffs);

/// Roots of B(s) - s^m for finite b.
RootReport poly_roots(const SequenceSpec& b, int m);

/// B(s) - s^m as an ascending coefficient list (finite b only).
std::vector<Coefficient> denominator_polynomial(const SequenceSpec& b, int m);

struct LimitReport {
  int m = 1;
  std::size_t N = 0;
  std::vector<ClosedFormLimit> closed;
  std::vector<NumericLimit> numeric;
  Coefficient weighted_mean;
  SumCheck sums_to_one;
  /// Ratio-test radius per k, empty when the coefficients are too sparse.
  std::vector<std::optional<RadiusEstimate>> radius_M;
  std::vector<std::optional<RadiusEstimate>> radius_G;
  std::optional<RootReport> denominator_roots;
};

LimitReport analyze_limits(const SequenceSpec& b, int m, std::size_t N, Tolerance tol = {});

}  // namespace convseq
