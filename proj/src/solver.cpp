#include "convseq/solver.hpp"

#include <algorithm>
#include <string>

#include "convseq/analysis.hpp"

namespace convseq {

namespace {

constexpr double kRootTol = 1e-8;

Coefficient horner(const std::vector<Coefficient>& p, const Coefficient& z) {
  Coefficient acc(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
  return acc;
}

double horner_scale(const std::vector<Coefficient>& p, const Coefficient& z) {
  const double r = z.abs();
  double acc = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * r + p[i].abs();
  return acc;
}

bool same_point(const Coefficient& x, const Coefficient& y) {
  if (x.is_exact() && y.is_exact()) return x == y;
  return (x - y).abs() < kRootTol;
}

void check_hypotheses(const SequenceSpec& b, int m, const std::vector<Coefficient>& roots) {
  if (!b.is_finite()) throw PreconditionError("the steering system needs a finite b");
  if (m < 1) throw PreconditionError("m must be >= 1");
  if (roots.size() != static_cast<std::size_t>(m - 1)) {
    throw ArityError("expected " + std::to_string(m - 1) + " roots, got " + std::to_string(roots.size()));
  }
  const SumCheck sums = check_sums_to_one(b, *b.finite_length());
  if (!sums.holds) throw PreconditionError("sum of b must be 1, got " + sums.sum.to_string());
  const Coefficient wm = weighted_index_mean(b, *b.finite_length());
  if (same_point(Coefficient(m), wm)) throw PreconditionError("m must differ from sum j*b_j");

  const auto p = denominator_polynomial(b, m);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const auto& r = roots[i];
    if (same_point(r, Coefficient(1))) throw PreconditionError("root " + r.to_string() + " equals 1");
    const Coefficient v = horner(p, r);
    const bool is_root = v.is_exact() ? v.is_zero() : v.abs() <= kRootTol * std::max(1.0, horner_scale(p, r));
    if (!is_root) throw PreconditionError(r.to_string() + " is not a root of B(s) - s^m");
    for (std::size_t j = 0; j < i; ++j) {
      if (same_point(r, roots[j])) throw PreconditionError("roots must be distinct; repeated " + r.to_string());
    }
  }
}

std::vector<Coefficient> row_for(const SequenceSpec& b, int m, const Coefficient& root) {
  std::vector<Coefficient> powers{Coefficient(1)};
  for (int n = 1; n < m; ++n) powers.push_back(powers.back() * root);
  std::vector<Coefficient> row;
  for (int c = 0; c < m; ++c) {
    Accumulator acc;
    for (int n = c; n < m; ++n) acc.add_product(b.at(static_cast<std::size_t>(n - c)), powers[static_cast<std::size_t>(n)]);
    row.push_back(acc.value());
  }
  return row;
}

}  // namespace

Coefficient limit_rhs(const SequenceSpec& b, int m, const Coefficient& lim) {
  const std::size_t N = b.finite_length().value_or(0);
  if (N == 0) throw PreconditionError("limit_rhs needs a finite b");
  return (Coefficient(m) - weighted_index_mean(b, N)) * lim;
}

std::vector<Coefficient> default_roots(const SequenceSpec& b, int m) {
  const auto candidates = poly_roots(b, m).non_unit_roots();
  if (candidates.size() < static_cast<std::size_t>(m - 1)) {
    throw PreconditionError("B(s) - s^m has fewer than m-1 roots other than 1");
  }
  std::vector<Coefficient> out;
  for (int i = 0; i < m - 1; ++i) out.emplace_back(candidates[static_cast<std::size_t>(i)]);
  return out;
}

SolveReport build_system(const SequenceSpec& b, int m, const std::vector<Coefficient>& roots,
                         const std::vector<Coefficient>& L_vec, const Coefficient& L) {
  check_hypotheses(b, m, roots);
  if (L_vec.size() != roots.size()) {
    throw ArityError("expected " + std::to_string(roots.size()) + " values L_j, got " + std::to_string(L_vec.size()));
  }
  SolveReport report;
  report.m = m;
  report.roots_used = roots;
  for (const auto& r : roots) report.matrix.push_back(row_for(b, m, r));
  report.matrix.push_back(row_for(b, m, Coefficient(1)));
  report.rhs = L_vec;
  report.rhs.push_back(L);
  report.determinant_closed_form = determinant_closed_form(b, m, roots);
  return report;
}

SolveReport solve_system(SolveReport report) {
  const auto n = static_cast<std::size_t>(report.m);
  auto a = report.matrix;
  auto rhs = report.rhs;
  Coefficient det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = a[col][col].abs();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col].abs() > best) {
        best = a[r][col].abs();
        pivot = r;
      }
    }
    if (a[pivot][col].is_zero() || (!a[pivot][col].is_exact() && best == 0.0)) {
      throw SingularMatrix("steering matrix is singular (roots not distinct, a root equal to 1, or b_0 = 0)");
    }
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      std::swap(rhs[pivot], rhs[col]);
      det = -det;
    }
    det *= a[col][col];
    const Coefficient inv = Coefficient(1) / a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      const Coefficient f = a[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<Coefficient> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Accumulator acc;
    acc.add(rhs[i]);
    for (std::size_t c = i + 1; c < n; ++c) acc.add_product(-a[i][c], x[c]);
    x[i] = acc.value() / a[i][i];
  }

  report.determinant = det;
  report.solution = x;
  report.solved = true;
  report.residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Accumulator acc;
    for (std::size_t c = 0; c < n; ++c) acc.add_product(report.matrix[i][c], x[c]);
    acc.add(-report.rhs[i]);
    report.residual = std::max(report.residual, acc.value().abs());
  }
  return report;
}

Coefficient determinant_closed_form(const SequenceSpec& b, int m, const std::vector<Coefficient>& roots) {
  Coefficient det = pow(b.at(0), static_cast<unsigned>(m));
  if (m % 2 == 0) det = -det;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    det *= roots[j] - Coefficient(1);
    for (std::size_t i = 0; i < j; ++i) det *= roots[j] - roots[i];
  }
  return det;
}

std::vector<Coefficient> closed_form_initials(const SequenceSpec& b, int m, const std::vector<Coefficient>& roots,
                                              const Coefficient& L) {
  check_hypotheses(b, m, roots);
  // e[t] = t-th elementary symmetric polynomial of the roots.
  std::vector<Coefficient> e{Coefficient(1)};
  for (const auto& r : roots) {
    e.push_back(Coefficient(0));
    for (std::size_t t = e.size() - 1; t > 0; --t) e[t] += r * e[t - 1];
  }
  Coefficient scale = L;
  for (const auto& r : roots) scale /= r - Coefficient(1);

  const auto mm = static_cast<std::size_t>(m);
  const Coefficient inv_b0 = Coefficient(1) / b.at(0);
  std::vector<Coefficient> a;
  Accumulator alternating;
  for (std::size_t i = 0; i < mm; ++i) {
    const Coefficient term = e[mm - 1 - i];
    alternating.add(i % 2 == 0 ? term : -term);
    Accumulator q;
    q.add(scale * alternating.value());
    for (std::size_t c = 0; c < i; ++c) {
      Accumulator bsum;
      for (std::size_t k = 0; k <= i - c; ++k) bsum.add(b.at(k));
      q.add_product(-a[c], bsum.value());
    }
    a.push_back(q.value() * inv_b0);
  }
  return a;
}

}  // namespace convseq
