#include "convseq/series.hpp"

#include <algorithm>
#include <string>

namespace convseq {

namespace {

void check_k(int m, int k) {
  if (m < 1) throw PreconditionError("m must be >= 1");
  if (k < 0 || k >= m) {
    throw PreconditionError("k must satisfy 0 <= k < m (k=" + std::to_string(k) + ", m=" + std::to_string(m) + ")");
  }
}

TruncatedSeries denominator(const SequenceSpec& b, int m, std::size_t N) {
  auto coeffs = b.prefix(N + 1);
  const auto power = static_cast<std::size_t>(m);
  if (power <= N) coeffs[power] -= Coefficient(1);
  return TruncatedSeries(std::move(coeffs));
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::vector<Coefficient> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw LengthError("a truncated series needs at least one coefficient");
}

TruncatedSeries TruncatedSeries::polynomial(std::vector<Coefficient> coeffs, std::size_t order) {
  coeffs.resize(order + 1, Coefficient(0));
  return TruncatedSeries(std::move(coeffs));
}

TruncatedSeries b_series(const SequenceSpec& b, std::size_t N) { return TruncatedSeries(b.prefix(N + 1)); }

TruncatedSeries series_add(const TruncatedSeries& x, const TruncatedSeries& y) {
  const std::size_t order = std::min(x.order(), y.order());
  std::vector<Coefficient> out;
  out.reserve(order + 1);
  for (std::size_t n = 0; n <= order; ++n) out.push_back(x[n] + y[n]);
  return TruncatedSeries(std::move(out));
}

TruncatedSeries series_sub(const TruncatedSeries& x, const TruncatedSeries& y) {
  const std::size_t order = std::min(x.order(), y.order());
  std::vector<Coefficient> out;
  out.reserve(order + 1);
  for (std::size_t n = 0; n <= order; ++n) out.push_back(x[n] - y[n]);
  return TruncatedSeries(std::move(out));
}

TruncatedSeries series_mul(const TruncatedSeries& x, const TruncatedSeries& y) {
  const std::size_t order = std::min(x.order(), y.order());
  std::vector<Coefficient> out;
  out.reserve(order + 1);
  for (std::size_t n = 0; n <= order; ++n) {
    Accumulator acc;
    for (std::size_t j = 0; j <= n; ++j) {
      if (x[j].is_zero() || y[n - j].is_zero()) continue;
      acc.add_product(x[j], y[n - j]);
    }
    out.push_back(acc.value());
  }
  return TruncatedSeries(std::move(out));
}

TruncatedSeries shift_pow(const TruncatedSeries& x, int m) {
  if (m < 0) throw PreconditionError("shift_pow needs m >= 0");
  const auto shift = static_cast<std::size_t>(m);
  std::vector<Coefficient> out(x.size(), Coefficient(0));
  for (std::size_t n = shift; n < out.size(); ++n) out[n] = x[n - shift];
  return TruncatedSeries(std::move(out));
}

TruncatedSeries series_div(const TruncatedSeries& num, const TruncatedSeries& den) {
  if (den[0].is_zero()) {
    throw DivisionByZeroLeadingCoefficient("series division needs a nonzero constant term in the divisor");
  }
  const std::size_t order = std::min(num.order(), den.order());
  const Coefficient inv_d0 = Coefficient(1) / den[0];
  // Trailing zeros of a polynomial divisor need not be visited.
  std::size_t support = den.size();
  while (support > 1 && den[support - 1].is_zero()) --support;

  std::vector<Coefficient> q;
  q.reserve(order + 1);
  const auto exact = [](const Coefficient& c) { return c.is_exact(); };
  if (std::all_of(den.coeffs().begin(), den.coeffs().begin() + static_cast<std::ptrdiff_t>(support), exact) &&
      std::all_of(num.coeffs().begin(), num.coeffs().begin() + static_cast<std::ptrdiff_t>(order + 1), exact)) {
    ScaledRationals ds, qs;
    for (std::size_t i = 0; i < support; ++i) ds.push_back(den[i].exact());
    const Rational inv = inv_d0.exact();
    for (std::size_t n = 0; n <= order; ++n) {
      const std::size_t top = std::min(n, support - 1);
      const Rational conv = top >= 1 ? convolve_at(ds, qs, n, 1, top) : Rational(0);
      Rational next = (num[n].exact() - conv) * inv;
      qs.push_back(next);
      q.emplace_back(std::move(next));
    }
    return TruncatedSeries(std::move(q));
  }
  for (std::size_t n = 0; n <= order; ++n) {
    Accumulator acc;
    const std::size_t top = std::min(n, support - 1);
    for (std::size_t i = 1; i <= top; ++i) {
      if (den[i].is_zero()) continue;
      acc.add_product(den[i], q[n - i]);
    }
    q.push_back((num[n] - acc.value()) * inv_d0);
  }
  return TruncatedSeries(std::move(q));
}

TruncatedSeries galpha_numerator(const SequenceSpec& b, int m, int k, std::size_t N) {
  check_k(m, k);
  std::vector<Coefficient> coeffs(N + 1, Coefficient(0));
  for (int n = k; n < m && static_cast<std::size_t>(n) <= N; ++n) {
    coeffs[static_cast<std::size_t>(n)] = b.at(static_cast<std::size_t>(n - k));
  }
  return TruncatedSeries(std::move(coeffs));
}

TruncatedSeries galpha_series(const SequenceSpec& b, int m, int k, std::size_t N) {
  return series_div(galpha_numerator(b, m, k, N), denominator(b, m, N));
}

TruncatedSeries m_series(const SequenceSpec& b, int m, int k, std::size_t N) {
  const auto numerator = galpha_numerator(b, m, k, N);
  const auto one_minus_s = TruncatedSeries::polynomial({1, -1}, N);
  return series_div(series_mul(one_minus_s, numerator), denominator(b, m, N));
}

AlphaTable alpha_via_series(const SequenceSpec& b, int m, std::size_t N) {
  AlphaTable table;
  table.m = m;
  table.route = AlphaRoute::Series;
  for (int k = 0; k < m; ++k) table.rows.push_back(galpha_series(b, m, k, N).coeffs());
  return table;
}

}  // namespace convseq
