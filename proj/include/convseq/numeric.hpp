#pragma once

// The coefficient field shared by every module: exact rationals backed by
// GMP, promoted one way to complex binary64 as soon as a floating operand
// is involved.

#include <complex>
#include <concepts>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "convseq/errors.hpp"

namespace convseq {

using Rational = mpq_class;
using Complex = std::complex<double>;

class Coefficient {
 public:
  Coefficient() : value_(Rational(0)) {}
  template <std::integral I>
  Coefficient(I v) : value_(Rational(static_cast<long>(v))) {}  // NOLINT
  Coefficient(Rational q);  // NOLINT
  Coefficient(Complex z);   // NOLINT

  /// Parses "p", "-p" or "p/q" into an exact rational.
  static Coefficient parse_rational(const std::string& text);
  static Coefficient real(double x) { return Coefficient(Complex(x, 0.0)); }

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  bool is_zero() const;
  bool is_one() const;

  /// Throws std::bad_variant_access when the value is a complex float.
  const Rational& exact() const { return std::get<Rational>(value_); }
  const Complex& floating() const { return std::get<Complex>(value_); }

  /// Rounds to binary64; RangeError if the magnitude exceeds its range.
  Complex to_complex() const;
  double abs() const;
  /// log|x|, finite for exact values far outside binary64 range.
  double log_abs() const;

  /// Canonical text: "p" / "p/q" for rationals, shortest round-trip
  /// decimal ("re", or "re+imi") for complex values.
  std::string to_string() const;

  Coefficient operator-() const;
  Coefficient& operator+=(const Coefficient& rhs);
  Coefficient& operator-=(const Coefficient& rhs);
  Coefficient& operator*=(const Coefficient& rhs);
  Coefficient& operator/=(const Coefficient& rhs);

  friend Coefficient operator+(Coefficient lhs, const Coefficient& rhs) { return lhs += rhs; }
  friend Coefficient operator-(Coefficient lhs, const Coefficient& rhs) { return lhs -= rhs; }
  friend Coefficient operator*(Coefficient lhs, const Coefficient& rhs) { return lhs *= rhs; }
  friend Coefficient operator/(Coefficient lhs, const Coefficient& rhs) { return lhs /= rhs; }

  /// Representation-aware equality: exact values compare exactly, complex
  /// values bitwise, and an exact value never equals a complex one. Use
  /// near_equal for tolerance-based comparison.
  friend bool operator==(const Coefficient& x, const Coefficient& y);

 private:
  std::variant<Rational, Complex> value_;
};

struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;

  /// Reads CONVSEQ_TOL ("rel" or "rel,abs"); falls back to the defaults.
  static Tolerance from_env();
};

/// Exact pairs compare by equality; anything else by
/// |x - y| <= max(abs_tol, rel_tol * max(|x|, |y|)).
bool near_equal(const Coefficient& x, const Coefficient& y, double rel_tol, double abs_tol);
inline bool near_equal(const Coefficient& x, const Coefficient& y, Tolerance tol = {}) {
  return near_equal(x, y, tol.rel, tol.abs);
}

Coefficient promote_to_complex(const Coefficient& x);

/// Correctly rounded (nearest, ties to even) conversion of a rational.
double rational_to_double(const Rational& q);

/// x^e for a non-negative integer exponent.
Coefficient pow(const Coefficient& x, unsigned e);

/// Shortest decimal that round-trips to the same binary64.
std::string format_double(double x);

/// Compensated (Neumaier) accumulator. Exact terms are summed exactly;
/// floating terms are summed per component with a running compensation.
class Accumulator {
 public:
  void add(const Coefficient& x);
  void add_product(const Coefficient& x, const Coefficient& y);
  Coefficient value() const;

 private:
  void add_float(Complex z);

  Rational exact_{0};
  double re_ = 0.0, re_comp_ = 0.0;
  double im_ = 0.0, im_comp_ = 0.0;
  bool has_float_ = false;
};

/// Append-only rationals kept as integer numerators over one shared
/// denominator. Long exact convolutions over them cost one gcd per result
/// instead of one per product.
class ScaledRationals {
 public:
  void push_back(const Rational& q);
  std::size_t size() const { return num_.size(); }
  const mpz_class& numerator(std::size_t i) const { return num_[i]; }
  const mpz_class& denominator() const { return den_; }

 private:
  std::vector<mpz_class> num_;
  mpz_class den_ = 1;
};

/// sum_{i=lo}^{hi} x[i] * y[n-i], exactly.
Rational convolve_at(const ScaledRationals& x, const ScaledRationals& y, std::size_t n, std::size_t lo,
                     std::size_t hi);

}  // namespace convseq
