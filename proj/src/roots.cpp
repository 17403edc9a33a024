#include <algorithm>
#include <cmath>
#include <numbers>

#include "convseq/analysis.hpp"

namespace convseq {

namespace {

using RationalPoly = std::vector<Rational>;  // ascending powers
using ComplexPoly = std::vector<Complex>;

constexpr double kMergeDistance = 1e-8;

void trim(RationalPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

std::size_t degree(const RationalPoly& p) { return p.size() - 1; }

RationalPoly derivative(const RationalPoly& p) {
  if (p.size() <= 1) return {Rational(0)};
  RationalPoly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
  trim(d);
  return d;
}

RationalPoly sub(const RationalPoly& x, const RationalPoly& y) {
  RationalPoly out(std::max(x.size(), y.size()), Rational(0));
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += x[i];
  for (std::size_t i = 0; i < y.size(); ++i) out[i] -= y[i];
  trim(out);
  return out;
}

// Quotient and remainder of x / y, y nonzero.
std::pair<RationalPoly, RationalPoly> divmod(RationalPoly x, const RationalPoly& y) {
  trim(x);
  if (x.size() < y.size()) return {{Rational(0)}, x};
  RationalPoly q(x.size() - y.size() + 1, Rational(0));
  const Rational lead = y.back();
  for (std::size_t i = q.size(); i-- > 0;) {
    const Rational c = x[i + degree(y)] / lead;
    q[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) x[i + j] -= c * y[j];
  }
  x.resize(std::max<std::size_t>(degree(y), 1));
  trim(x);
  return {q, x};
}

bool is_zero(const RationalPoly& p) { return p.size() == 1 && p[0] == 0; }

RationalPoly monic(RationalPoly p) {
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

RationalPoly gcd(RationalPoly x, RationalPoly y) {
  trim(x);
  trim(y);
  while (!is_zero(y)) {
    auto r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

RationalPoly exact_div(const RationalPoly& x, const RationalPoly& y) { return divmod(x, y).first; }

// Yun's square-free factorization: p = c * prod factors[i]^(i+1).
std::vector<RationalPoly> square_free_factors(const RationalPoly& p) {
  std::vector<RationalPoly> factors;
  const RationalPoly dp = derivative(p);
  const RationalPoly g = gcd(p, dp);
  RationalPoly w = exact_div(p, g);
  RationalPoly y = exact_div(dp, g);
  RationalPoly z = sub(y, derivative(w));
  while (degree(w) > 0) {
    RationalPoly f = gcd(w, z);
    w = exact_div(w, f);
    y = exact_div(z, f);
    z = sub(y, derivative(w));
    factors.push_back(std::move(f));
  }
  return factors;
}

Rational evaluate(const RationalPoly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

std::pair<Complex, Complex> evaluate_with_derivative(const ComplexPoly& p, Complex z) {
  Complex v = 0.0, d = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) {
    d = d * z + v;
    v = v * z + p[i];
  }
  return {v, d};
}

Complex evaluate(const ComplexPoly& p, Complex z) { return evaluate_with_derivative(p, z).first; }

// Simultaneous Aberth-Ehrlich iteration; p.back() != 0, degree >= 1.
std::vector<Complex> aberth(const ComplexPoly& p) {
  const std::size_t d = p.size() - 1;
  if (d == 1) return {-p[0] / p[1]};

  double radius = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double r = std::pow(std::abs(p[i] / p[d]), 1.0 / static_cast<double>(d - i));
    radius = std::max(radius, r);
  }
  if (radius == 0.0) radius = 1.0;
  std::vector<Complex> z(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d) + 0.4;
    z[k] = std::polar(radius, theta);
  }

  for (int iter = 0; iter < 2000; ++iter) {
    bool moved = false;
    for (std::size_t k = 0; k < d; ++k) {
      const auto [v, dv] = evaluate_with_derivative(p, z[k]);
      if (v == Complex(0.0)) continue;
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        if (j != k && z[j] != z[k]) repulsion += 1.0 / (z[k] - z[j]);
      }
      const Complex ratio = dv == Complex(0.0) ? Complex(1e-3) : v / dv;
      const Complex step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[k] -= step;
      if (std::abs(step) > 1e-15 * std::max(1.0, std::abs(z[k]))) moved = true;
    }
    if (!moved) break;
  }
  return z;
}

Complex polish(const ComplexPoly& p, Complex z) {
  double best = std::abs(evaluate(p, z));
  for (int iter = 0; iter < 8 && best > 0.0; ++iter) {
    const auto [v, dv] = evaluate_with_derivative(p, z);
    if (dv == Complex(0.0)) break;
    const Complex next = z - v / dv;
    const double r = std::abs(evaluate(p, next));
    if (!(r < best)) break;
    z = next;
    best = r;
  }
  return z;
}

ComplexPoly to_complex_poly(const RationalPoly& p) {
  ComplexPoly out;
  out.reserve(p.size());
  for (const auto& c : p) out.emplace_back(rational_to_double(c), 0.0);
  return out;
}

RootReport exact_roots(RationalPoly p, const ComplexPoly& original) {
  RootReport report;
  const auto factors = square_free_factors(p);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    if (degree(f) == 0) continue;
    const auto fc = to_complex_poly(f);
    auto zs = aberth(fc);
    std::optional<std::size_t> unit;
    if (evaluate(f, Rational(1)) == 0) {
      unit = 0;
      for (std::size_t j = 1; j < zs.size(); ++j) {
        if (std::abs(zs[j] - 1.0) < std::abs(zs[*unit] - 1.0)) unit = j;
      }
    }
    for (std::size_t j = 0; j < zs.size(); ++j) {
      Root root;
      root.multiplicity = static_cast<int>(i + 1);
      if (unit && *unit == j) {
        root.value = 1.0;
        root.at_one = true;
      } else {
        root.value = polish(fc, zs[j]);
        if (root.value.imag() != 0.0 && std::abs(root.value.imag()) < 1e-14 * std::abs(root.value)) {
          root.value.imag(0.0);
        }
      }
      root.residual = std::abs(evaluate(original, root.value));
      report.roots.push_back(root);
    }
  }
  return report;
}

RootReport float_roots(const ComplexPoly& p) {
  RootReport report;
  auto zs = aberth(p);
  for (auto& z : zs) z = polish(p, z);
  std::vector<bool> used(zs.size(), false);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (used[i]) continue;
    Root root;
    Complex total = zs[i];
    for (std::size_t j = i + 1; j < zs.size(); ++j) {
      if (!used[j] && std::abs(zs[j] - zs[i]) < kMergeDistance) {
        used[j] = true;
        total += zs[j];
        ++root.multiplicity;
      }
    }
    root.value = total / static_cast<double>(root.multiplicity);
    root.at_one = std::abs(root.value - 1.0) < kMergeDistance;
    root.residual = std::abs(evaluate(p, root.value));
    report.roots.push_back(root);
  }
  return report;
}

}  // namespace

std::vector<Complex> RootReport::non_unit_roots() const {
  std::vector<Complex> out;
  for (const auto& r : roots) {
    if (!r.at_one) out.push_back(r.value);
  }
  std::sort(out.begin(), out.end(), [](Complex x, Complex y) {
    if (std::abs(x) != std::abs(y)) return std::abs(x) < std::abs(y);
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return out;
}

RootReport polynomial_roots(const std::vector<Coefficient>& coeffs) {
  std::size_t size = coeffs.size();
  while (size > 0 && coeffs[size - 1].is_zero()) --size;
  if (size <= 1) throw DegenerateError("polynomial is constant; it has no roots to find");

  const bool exact = std::all_of(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(size),
                                 [](const Coefficient& c) { return c.is_exact(); });
  ComplexPoly cp;
  cp.reserve(size);
  for (std::size_t i = 0; i < size; ++i) cp.push_back(coeffs[i].to_complex());

  RootReport report;
  if (exact) {
    RationalPoly rp;
    rp.reserve(size);
    for (std::size_t i = 0; i < size; ++i) rp.push_back(coeffs[i].exact());
    report = exact_roots(std::move(rp), cp);
  } else {
    report = float_roots(cp);
  }
  for (const auto& r : report.roots) {
    report.has_repeated = report.has_repeated || r.multiplicity > 1;
    report.has_unit_root = report.has_unit_root || r.at_one;
    report.max_residual = std::max(report.max_residual, r.residual);
  }
  return report;
}

std::vector<Coefficient> denominator_polynomial(const SequenceSpec& b, int m) {
  const auto len = b.finite_length();
  if (!len) throw PreconditionError("B(s) - s^m is a polynomial only for finite b");
  if (m < 1) throw PreconditionError("m must be >= 1");
  auto coeffs = b.prefix(std::max(*len, static_cast<std::size_t>(m) + 1));
  coeffs[static_cast<std::size_t>(m)] -= Coefficient(1);
  return coeffs;
}

RootReport poly_roots(const SequenceSpec& b, int m) { return polynomial_roots(denominator_polynomial(b, m)); }

}  // namespace convseq
