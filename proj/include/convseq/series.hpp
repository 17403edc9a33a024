#pragma once

#include <cstddef>
#include <vector>

#include "convseq/recurrence.hpp"
#include "convseq/sequences.hpp"

namespace convseq {

/// Power series known through s^order; coefficients past the order are
/// unknown, not zero.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  explicit TruncatedSeries(std::vector<Coefficient> coeffs);

  /// Polynomial padded with zeros (or truncated) to the given order.
  static TruncatedSeries polynomial(std::vector<Coefficient> coeffs, std::size_t order);

  std::size_t order() const { return coeffs_.size() - 1; }
  std::size_t size() const { return coeffs_.size(); }
  const Coefficient& operator[](std::size_t n) const { return coeffs_[n]; }
  const std::vector<Coefficient>& coeffs() const { return coeffs_; }

 private:
  std::vector<Coefficient> coeffs_;
};

/// B(s) through s^N.
TruncatedSeries b_series(const SequenceSpec& b, std::size_t N);

TruncatedSeries series_add(const TruncatedSeries& x, const TruncatedSeries& y);
TruncatedSeries series_sub(const TruncatedSeries& x, const TruncatedSeries& y);
/// Cauchy product truncated at min(order_x, order_y).
TruncatedSeries series_mul(const TruncatedSeries& x, const TruncatedSeries& y);
/// x * s^m, keeping x's order.
TruncatedSeries shift_pow(const TruncatedSeries& x, int m);
/// q with q * den = num through min order, by forward substitution.
/// DivisionByZeroLeadingCoefficient when den_0 = 0.
TruncatedSeries series_div(const TruncatedSeries& num, const TruncatedSeries& den);

/// sum_{n=k}^{m-1} b_{n-k} s^n, the numerator of G alpha_k.
TruncatedSeries galpha_numerator(const SequenceSpec& b, int m, int k, std::size_t N);

/// G alpha_k(s) = numerator_k / (B(s) - s^m).
TruncatedSeries galpha_series(const SequenceSpec& b, int m, int k, std::size_t N);

/// M_k(s) = (1 - s) G alpha_k(s); coefficients are first differences of
/// alpha_k. Computed as ((1 - s) numerator_k) / (B(s) - s^m) so the small
/// differences of a converging alpha_k keep their relative precision.
TruncatedSeries m_series(const SequenceSpec& b, int m, int k, std::size_t N);

/// Every G alpha_k as an AlphaTable tagged with the Series route.
AlphaTable alpha_via_series(const SequenceSpec& b, int m, std::size_t N);

}  // namespace convseq
