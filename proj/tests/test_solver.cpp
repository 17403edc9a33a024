#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "convseq/analysis.hpp"
#include "convseq/recurrence.hpp"
#include "convseq/solver.hpp"
#include "support.hpp"

using namespace convseq;
using testing::ints;
using testing::q;

namespace {

const SequenceSpec& example_b() {
  static const auto b = SequenceSpec::finite(ints({5, -4, -3, 3}));
  return b;
}

const double sqrt61 = std::sqrt(61.0);

std::vector<Rational> poly_mul(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  std::vector<Rational> out(x.size() + y.size() - 1, Rational(0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  return out;
}

Rational poly_eval(const std::vector<Rational>& p, const Rational& z) {
  Rational v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * z + p[i];
  return v;
}

// b with B(s) - s^m = (1 - s) prod (1 - s / r_j) Q(s), so the r_j are known
// simple roots and sum b = 1 holds exactly.
struct Constructed {
  SequenceSpec b;
  int m;
  std::vector<Coefficient> roots;
};

Constructed construct(testing::RandomRationals& rng, int m, bool small_roots) {
  for (;;) {
    std::vector<Rational> roots;
    while (static_cast<int>(roots.size()) < m - 1) {
      Rational r = small_roots ? rng.nonzero(4, 5) : rng.nonzero(9, 4);
      if (r == 1 || (small_roots && abs(r) >= 1)) continue;
      bool fresh = true;
      for (const auto& x : roots) fresh = fresh && x != r;
      if (fresh) roots.push_back(r);
    }
    std::vector<Rational> p{Rational(1), Rational(-1)};
    for (const auto& r : roots) p = poly_mul(p, {Rational(1), -1 / r});
    // Q has its root outside the disc of radius 2 when the roots are small.
    std::vector<Rational> Q{rng.nonzero(9, 3)};
    if (rng.integer(0, 1) == 1) {
      const Rational far = small_roots ? Rational(rng.integer(2, 5)) * (rng.integer(0, 1) ? 1 : -1) : rng.nonzero(9, 4);
      Q = poly_mul(Q, {Rational(1), -1 / far});
    }
    if (poly_eval(Q, 1) == 0) continue;
    bool ok = true;
    for (const auto& r : roots) ok = ok && poly_eval(Q, r) != 0;
    if (!ok) continue;
    p = poly_mul(p, Q);
    if (p.size() <= static_cast<std::size_t>(m)) p.resize(static_cast<std::size_t>(m) + 1, Rational(0));
    p[static_cast<std::size_t>(m)] += 1;
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    std::vector<Coefficient> values(p.begin(), p.end());
    if (values.front().is_zero()) continue;
    Constructed c{SequenceSpec::finite(values), m, {}};
    for (const auto& r : roots) c.roots.emplace_back(r);
    return c;
  }
}

}  // namespace

TEST_CASE("matrix for the m = 2 example") {
  const double r = (1 - sqrt61) / 6;
  const auto report = build_system(example_b(), 2, {Coefficient::real(r)}, {q(0)}, limit_rhs(example_b(), 2, q(1)));
  CHECK(near_equal(report.matrix[0][0], Coefficient::real(5 - 4 * r), 1e-15, 1e-15));
  CHECK(near_equal(report.matrix[0][1], Coefficient::real(5 * r), 1e-15, 1e-15));
  CHECK(report.matrix[1][0] == q(1));
  CHECK(report.matrix[1][1] == q(5));
  CHECK(report.rhs[1] == q(3));
}

TEST_CASE("steering constants for the m = 2 example") {
  for (int sign : {-1, 1}) {
    const Coefficient root = Coefficient::real((1 + sign * sqrt61) / 6);
    const auto report = solve_system(build_system(example_b(), 2, {root}, {q(0)}, limit_rhs(example_b(), 2, q(1))));
    CHECK(report.solved);
    CHECK(std::abs(testing::to_double(report.solution[0]) - (11 + sign * sqrt61) / 10) < 1e-10);
    CHECK(std::abs(testing::to_double(report.solution[1]) - (19 - sign * sqrt61) / 50) < 1e-10);
    CHECK(near_equal(report.determinant, report.determinant_closed_form, 1e-9, 0.0));
    CHECK(report.residual < 1e-9);
    const auto closed = closed_form_initials(example_b(), 2, {root}, limit_rhs(example_b(), 2, q(1)));
    for (int k = 0; k < 2; ++k) CHECK(near_equal(closed[k], report.solution[k], 1e-10, 1e-12));
  }
}

TEST_CASE("default roots pick the smallest non-unit root") {
  const auto roots = default_roots(example_b(), 2);
  REQUIRE(roots.size() == 1u);
  CHECK(std::abs(roots[0].to_complex() - Complex((1 - sqrt61) / 6, 0)) < 1e-12);
}

TEST_CASE("m = 1 divides by the limit of alpha_0") {
  const auto report = solve_system(build_system(example_b(), 1, {}, {}, limit_rhs(example_b(), 1, q(1))));
  CHECK(report.solution == std::vector<Coefficient>{q(2, 5)});
  CHECK(report.residual == 0.0);
  const auto lim = limit_alpha_closed(example_b(), 1, 0, 10);
  CHECK(report.solution[0] == q(1) / *lim.value);
}

TEST_CASE("linearity and the homogeneous case") {
  const Coefficient root = Coefficient::real((1 - sqrt61) / 6);
  const auto one = solve_system(build_system(example_b(), 2, {root}, {q(0)}, limit_rhs(example_b(), 2, q(1))));
  const auto two = solve_system(build_system(example_b(), 2, {root}, {q(0)}, limit_rhs(example_b(), 2, q(2))));
  for (int k = 0; k < 2; ++k) CHECK(near_equal(two.solution[k], q(2) * one.solution[k], 1e-12, 1e-15));
  for (const auto& a : closed_form_initials(example_b(), 2, {root}, q(0))) CHECK(std::abs(a.to_complex()) == 0.0);
}

TEST_CASE("hypothesis violations") {
  const auto L = limit_rhs(example_b(), 2, q(1));
  const Coefficient root = Coefficient::real((1 - sqrt61) / 6);
  CHECK_THROWS_AS(build_system(example_b(), 2, {q(1)}, {q(0)}, L), PreconditionError);
  CHECK_THROWS_AS(build_system(example_b(), 2, {q(2)}, {q(0)}, L), PreconditionError);
  CHECK_THROWS_AS(build_system(example_b(), 2, {}, {}, L), ArityError);
  CHECK_THROWS_AS(build_system(example_b(), 2, {root}, {}, L), ArityError);
  CHECK_THROWS_AS(build_system(SequenceSpec::finite(ints({2, 1, -2})), 2, {q(1)}, {q(0)}, L), PreconditionError);
  CHECK_THROWS_AS(build_system(catalog_b("exp_e"), 2, {root}, {q(0)}, L), PreconditionError);
  // sum b = 2.
  CHECK_THROWS_WITH_AS(build_system(SequenceSpec::finite(ints({2, 1, -1})), 1, {}, {}, q(1)),
                       doctest::Contains("sum of b must be 1"), PreconditionError);
  // m = sum j b_j for b = [1, -1, 1], m = 1.
  CHECK_THROWS_WITH_AS(build_system(SequenceSpec::finite(ints({1, -1, 1})), 1, {}, {}, q(1)),
                       doctest::Contains("sum j*b_j"), PreconditionError);

  // Repeated roots: B(s) - s^3 = (1 - s)(1 - 2s)^2.
  const auto doubled = SequenceSpec::finite(ints({1, -5, 8, -3}));
  CHECK_THROWS_WITH_AS(build_system(doubled, 3, {q(1, 2), q(1, 2)}, {q(0), q(0)}, q(1)),
                       doctest::Contains("distinct"), PreconditionError);
}

TEST_CASE("randomized rational roots: exact solve, closed form and determinant") {
  testing::RandomRationals rng(51);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 2 + trial % 3;
    const auto c = construct(rng, m, false);
    std::vector<Coefficient> lj(static_cast<std::size_t>(m - 1), q(0));
    const Coefficient lim(rng.nonzero());
    const auto report = solve_system(build_system(c.b, m, c.roots, lj, limit_rhs(c.b, m, lim)));
    CHECK(report.solved);
    CHECK(report.residual == 0.0);
    CHECK(report.determinant == report.determinant_closed_form);
    CHECK(report.solution[0].is_exact());
    const auto closed = closed_form_initials(c.b, m, c.roots, limit_rhs(c.b, m, lim));
    CHECK(closed == report.solution);

    // Nonzero L_j only changes the rhs; the residual stays exact.
    for (auto& x : lj) x = Coefficient(rng.next());
    const auto general = solve_system(build_system(c.b, m, c.roots, lj, limit_rhs(c.b, m, lim)));
    CHECK(general.residual == 0.0);
  }
}

TEST_CASE("randomized float roots: determinant against the closed form") {
  testing::RandomRationals rng(52);
  int checked = 0;
  for (int trial = 0; checked < 60 && trial < 1000; ++trial) {
    const int m = 2 + trial % 3;
    // Random finite b with sum 1: the last term absorbs the difference.
    std::vector<Coefficient> values{Coefficient(rng.nonzero())};
    const int len = rng.integer(m + 1, m + 4);
    Rational sum = values[0].exact();
    for (int i = 1; i < len - 1; ++i) {
      values.emplace_back(rng.next());
      sum += values.back().exact();
    }
    values.emplace_back(Rational(1 - sum));
    const auto b = SequenceSpec::finite(values);
    const auto roots = poly_roots(b, m);
    if (roots.has_repeated || roots.non_unit_roots().size() < static_cast<std::size_t>(m - 1)) continue;
    if (std::abs(testing::to_double(weighted_index_mean(b, values.size())) - m) < 1e-6) continue;
    const auto chosen = default_roots(b, m);
    const auto report =
        solve_system(build_system(b, m, chosen, std::vector<Coefficient>(m - 1, q(0)), limit_rhs(b, m, q(1))));
    CHECK(near_equal(report.determinant, report.determinant_closed_form, 1e-9, 0.0));
    const auto closed = closed_form_initials(b, m, chosen, limit_rhs(b, m, q(1)));
    double scale = 0;
    for (const auto& a : report.solution) scale = std::max(scale, std::abs(a.to_complex()));
    for (int k = 0; k < m; ++k) CHECK(std::abs(closed[k].to_complex() - report.solution[k].to_complex()) < 1e-10 * std::max(1.0, scale));
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("steering drives a_n to the target") {
  const Coefficient root = Coefficient::real((1 - sqrt61) / 6);
  const auto report = solve_system(build_system(example_b(), 2, {root}, {q(0)}, limit_rhs(example_b(), 2, q(1))));
  const auto a = compute_a(RecurrenceProblem{example_b(), 2, 400}, report.solution);
  CHECK(std::abs(a[400].to_complex() - 1.0) < 5e-3);
  double early = 0, late = 0;
  for (std::size_t n = 300; n < 350; ++n) early = std::max(early, std::abs((a[n] - a[n - 1]).to_complex()));
  for (std::size_t n = 351; n <= 400; ++n) late = std::max(late, std::abs((a[n] - a[n - 1]).to_complex()));
  CHECK(late <= early);
}

TEST_CASE("steering with constructed roots inside the unit disc") {
  // Every root of B(s) - s^m inside the disc is cancelled, so a_n converges
  // geometrically to the requested limit.
  testing::RandomRationals rng(53);
  for (int trial = 0; trial < 12; ++trial) {
    const int m = 2 + trial % 2;
    const auto c = construct(rng, m, true);
    const auto all = poly_roots(c.b, m);
    bool outside = true;
    for (const auto& z : all.non_unit_roots()) {
      bool used = false;
      for (const auto& r : c.roots) used = used || std::abs(r.to_complex() - z) < 1e-9;
      if (!used) outside = outside && std::abs(z) > 1.5;
    }
    if (!outside) continue;
    const Coefficient lim = q(3, 2);
    const auto report = solve_system(
        build_system(c.b, m, c.roots, std::vector<Coefficient>(m - 1, q(0)), limit_rhs(c.b, m, lim)));
    const auto a = compute_a(RecurrenceProblem{c.b, m, 120}, report.solution);
    CHECK(std::abs((a[120] - lim).to_complex()) < 1e-9);
  }
}
