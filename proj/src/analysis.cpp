#include "convseq/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace convseq {

namespace {

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  if (n % 2 == 1) return xs[n / 2];
  return 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

double distance(const Coefficient& x, const Coefficient& y) { return (x - y).abs(); }

}  // namespace

Coefficient weighted_index_mean(const SequenceSpec& b, std::size_t N) {
  std::size_t top = N;
  if (auto len = b.finite_length()) top = std::min(N, *len - 1);
  Accumulator acc;
  for (std::size_t j = 1; j <= top; ++j) {
    const Coefficient bj = b.at(j);
    if (bj.is_zero()) continue;
    acc.add_product(Coefficient(j), bj);
  }
  return acc.value();
}

SumCheck check_sums_to_one(const SequenceSpec& b, std::size_t N, double tol) {
  std::size_t top = N;
  if (auto len = b.finite_length()) top = *len - 1;
  SumCheck check;
  check.sum = partial_b_sum(b, top);
  const Coefficient diff = check.sum - Coefficient(1);
  check.residual = diff.abs();
  if (b.is_finite() && diff.is_exact()) {
    check.holds = diff.is_zero();
  } else {
    check.holds = check.residual <= tol;
  }
  return check;
}

ClosedFormLimit limit_alpha_closed(const SequenceSpec& b, int m, int k, std::size_t N, double tol) {
  if (m < 1 || k < 0 || k >= m) throw PreconditionError("limit needs 0 <= k < m");
  ClosedFormLimit out;
  const SumCheck sums = check_sums_to_one(b, N, tol);
  if (!sums.holds) {
    out.reason = "sum of b is " + sums.sum.to_string() + ", not 1";
    return out;
  }
  const Coefficient denom = Coefficient(m) - weighted_index_mean(b, N);
  const bool vanishes = denom.is_exact() ? denom.is_zero() : denom.abs() <= tol;
  if (vanishes) {
    out.reason = "m equals sum j*b_j";
    return out;
  }
  Accumulator numer;
  for (int j = k; j < m; ++j) numer.add(b.at(static_cast<std::size_t>(j - k)));
  out.value = numer.value() / denom;
  return out;
}

NumericLimit limit_alpha_numeric(std::span<const Coefficient> m_coeffs, std::size_t window, Tolerance tol) {
  if (window < 2) throw PreconditionError("window must be >= 2");
  if (m_coeffs.size() < window) {
    throw InsufficientData("need at least " + std::to_string(window) + " coefficients, got " +
                           std::to_string(m_coeffs.size()));
  }
  Accumulator acc;
  std::vector<Coefficient> tail;
  tail.reserve(window);
  const std::size_t first_kept = m_coeffs.size() - window;
  for (std::size_t n = 0; n < m_coeffs.size(); ++n) {
    acc.add(m_coeffs[n]);
    if (n >= first_kept) tail.push_back(acc.value());
  }
  NumericLimit out;
  out.value = tail.back();
  out.window = window;
  // Exact partial sums never coincide, so both kinds are judged by distance.
  double scale = 0.0;
  for (const auto& x : tail) scale = std::max(scale, std::abs(x.to_complex()));
  for (std::size_t i = 0; i < tail.size(); ++i) {
    for (std::size_t j = i + 1; j < tail.size(); ++j) out.spread = std::max(out.spread, distance(tail[i], tail[j]));
  }
  out.converged = std::isfinite(out.spread) && out.spread <= std::max(tol.abs, tol.rel * scale);
  return out;
}

std::string to_string(RadiusMode mode) { return mode == RadiusMode::RootTest ? "root_test" : "ratio_test"; }

RadiusEstimate estimate_radius(const TruncatedSeries& series, RadiusMode mode) {
  // Float coefficients carry absolute rounding error near eps * max |c_n|;
  // anything at that level is treated as zero and a noise-only tail is dropped.
  double floor_log = -std::numeric_limits<double>::infinity();
  std::size_t size = series.size();
  bool exact = true;
  for (std::size_t n = 0; n < series.size(); ++n) exact = exact && series[n].is_exact();
  if (!exact) {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < series.size(); ++n) {
      if (!series[n].is_zero()) top = std::max(top, series[n].log_abs());
    }
    floor_log = top + std::log(1e3 * std::numeric_limits<double>::epsilon());
    while (size > 0 && (series[size - 1].is_zero() || series[size - 1].log_abs() <= floor_log)) --size;
  }
  const auto negligible = [&](std::size_t n) { return series[n].is_zero() || series[n].log_abs() <= floor_log; };
  const std::size_t start = std::max<std::size_t>(size / 2, 1);

  RadiusEstimate est;
  est.mode = mode;
  std::vector<double> growth;
  std::optional<std::size_t> prev;
  for (std::size_t n = 0; n < size; ++n) {
    if (negligible(n)) continue;
    if (n >= start) {
      double g = 0.0;
      if (mode == RadiusMode::RootTest) {
        g = std::exp(series[n].log_abs() / static_cast<double>(n));
        growth.push_back(g);
      } else if (prev) {
        const double gap = static_cast<double>(n - *prev);
        g = std::exp((series[n].log_abs() - series[*prev].log_abs()) / gap);
        growth.push_back(g);
      }
      if (g > 0.0) est.per_index.emplace_back(n, 1.0 / g);
    }
    prev = n;
  }
  if (growth.size() < 8) {
    throw InsufficientData("radius estimate needs 8 usable coefficients, found " + std::to_string(growth.size()));
  }
  const double g = median(std::move(growth));
  est.radius = g > 0.0 ? 1.0 / g : std::numeric_limits<double>::infinity();
  return est;
}

LimitReport analyze_limits(const SequenceSpec& b, int m, std::size_t N, Tolerance tol) {
  if (m < 1) throw PreconditionError("m must be >= 1");
  if (N < static_cast<std::size_t>(m)) throw PreconditionError("N must be >= m");
  LimitReport report;
  report.m = m;
  report.N = N;
  report.weighted_mean = weighted_index_mean(b, N);
  report.sums_to_one = check_sums_to_one(b, N);
  const std::size_t window = std::min<std::size_t>(8, N + 1);
  for (int k = 0; k < m; ++k) {
    report.closed.push_back(limit_alpha_closed(b, m, k, N));
    const auto M = m_series(b, m, k, N);
    report.numeric.push_back(limit_alpha_numeric(M.coeffs(), window, tol));
    try {
      report.radius_M.emplace_back(estimate_radius(M, RadiusMode::RatioTest));
    } catch (const InsufficientData&) {
      report.radius_M.emplace_back(std::nullopt);
    }
    try {
      report.radius_G.emplace_back(estimate_radius(galpha_series(b, m, k, N), RadiusMode::RatioTest));
    } catch (const InsufficientData&) {
      report.radius_G.emplace_back(std::nullopt);
    }
  }
  if (b.is_finite()) report.denominator_roots = poly_roots(b, m);
  return report;
}

}  // namespace convseq
