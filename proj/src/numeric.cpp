#include "convseq/numeric.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string_view>

namespace convseq {

namespace {

Complex checked(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw NumericError("floating operation produced a non-finite value");
  }
  return z;
}

void neumaier(double& sum, double& comp, double v) {
  const double t = sum + v;
  if (std::fabs(sum) >= std::fabs(v)) {
    comp += (sum - t) + v;
  } else {
    comp += (v - t) + sum;
  }
  sum = t;
}

}  // namespace

double rational_to_double(const Rational& q) {
  const int sign = sgn(q);
  if (sign == 0) return 0.0;
  mpz_class num = abs(q.get_num());
  mpz_class den = q.get_den();
  const long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                 static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  if (e > 1100) throw RangeError("rational value exceeds the binary64 range");
  if (e < -1100) return sign < 0 ? -0.0 : 0.0;

  // Scale so the integer quotient carries 54 or 55 significant bits.
  const long shift = 54 - e;
  if (shift > 0) {
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  } else if (shift < 0) {
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
  }
  mpz_class quot, rem;
  mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());

  const auto extra = static_cast<mp_bitcnt_t>(mpz_sizeinbase(quot.get_mpz_t(), 2) - 53);
  mpz_class mant, low;
  mpz_fdiv_q_2exp(mant.get_mpz_t(), quot.get_mpz_t(), extra);
  mpz_fdiv_r_2exp(low.get_mpz_t(), quot.get_mpz_t(), extra);
  mpz_class half = 1;
  mpz_mul_2exp(half.get_mpz_t(), half.get_mpz_t(), extra - 1);

  const int c = cmp(low, half);
  if (c > 0 || (c == 0 && (sgn(rem) != 0 || mpz_odd_p(mant.get_mpz_t())))) {
    ++mant;
  }
  const double result = std::ldexp(mant.get_d(), static_cast<int>(static_cast<long>(extra) - shift));
  if (!std::isfinite(result)) throw RangeError("rational value exceeds the binary64 range");
  return sign < 0 ? -result : result;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

Coefficient::Coefficient(Rational q) : value_(std::move(q)) {
  std::get<Rational>(value_).canonicalize();
}

Coefficient::Coefficient(Complex z) : value_(checked(z)) {}

Coefficient Coefficient::parse_rational(const std::string& text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  const auto slash = body.find('/');
  auto digits_ok = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char ch : s) {
      if (ch < '0' || ch > '9') return false;
    }
    return true;
  };
  const bool ok = slash == std::string_view::npos
                      ? digits_ok(body, true)
                      : digits_ok(body.substr(0, slash), true) && digits_ok(body.substr(slash + 1), false);
  if (!ok) throw DomainError("not a rational literal: '" + text + "'");
  Rational q;
  if (slash == std::string_view::npos) {
    q.get_num().set_str(std::string(body), 10);
    q.get_den() = 1;
  } else {
    q.get_num().set_str(std::string(body.substr(0, slash)), 10);
    q.get_den().set_str(std::string(body.substr(slash + 1)), 10);
    if (sgn(q.get_den()) == 0) throw DomainError("zero denominator in '" + text + "'");
  }
  return Coefficient(std::move(q));
}

bool Coefficient::is_zero() const {
  if (is_exact()) return sgn(exact()) == 0;
  const auto& z = floating();
  return z.real() == 0.0 && z.imag() == 0.0;
}

bool Coefficient::is_one() const {
  if (is_exact()) return exact() == 1;
  const auto& z = floating();
  return z.real() == 1.0 && z.imag() == 0.0;
}

Complex Coefficient::to_complex() const {
  if (is_exact()) return Complex(rational_to_double(exact()), 0.0);
  return floating();
}

double Coefficient::abs() const {
  if (is_exact()) return std::fabs(rational_to_double(exact()));
  return std::abs(floating());
}

double Coefficient::log_abs() const {
  if (is_exact()) {
    const auto& q = exact();
    if (sgn(q) == 0) return -std::numeric_limits<double>::infinity();
    long en = 0, ed = 0;
    const double dn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
    const double dd = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
    return std::log(std::fabs(dn) / dd) + static_cast<double>(en - ed) * std::log(2.0);
  }
  return std::log(std::abs(floating()));
}

std::string Coefficient::to_string() const {
  if (is_exact()) return exact().get_str();
  const auto& z = floating();
  if (z.imag() == 0.0) return format_double(z.real());
  std::string out = format_double(z.real());
  out += std::signbit(z.imag()) ? '-' : '+';
  out += format_double(std::fabs(z.imag()));
  out += 'i';
  return out;
}

Coefficient Coefficient::operator-() const {
  if (is_exact()) return Coefficient(Rational(-exact()));
  return Coefficient(-floating());
}

Coefficient& Coefficient::operator+=(const Coefficient& rhs) {
  if (is_exact() && rhs.is_exact()) {
    std::get<Rational>(value_) += rhs.exact();
  } else {
    value_ = checked(to_complex() + rhs.to_complex());
  }
  return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& rhs) {
  if (is_exact() && rhs.is_exact()) {
    std::get<Rational>(value_) -= rhs.exact();
  } else {
    value_ = checked(to_complex() - rhs.to_complex());
  }
  return *this;
}

Coefficient& Coefficient::operator*=(const Coefficient& rhs) {
  if (is_exact() && rhs.is_exact()) {
    std::get<Rational>(value_) *= rhs.exact();
  } else {
    value_ = checked(to_complex() * rhs.to_complex());
  }
  return *this;
}

Coefficient& Coefficient::operator/=(const Coefficient& rhs) {
  if (rhs.is_zero()) throw NumericError("division by zero");
  if (is_exact() && rhs.is_exact()) {
    std::get<Rational>(value_) /= rhs.exact();
  } else {
    value_ = checked(to_complex() / rhs.to_complex());
  }
  return *this;
}

bool operator==(const Coefficient& x, const Coefficient& y) {
  if (x.is_exact() != y.is_exact()) return false;
  if (x.is_exact()) return x.exact() == y.exact();
  return x.floating() == y.floating();
}

Tolerance Tolerance::from_env() {
  Tolerance tol;
  const char* raw = std::getenv("CONVSEQ_TOL");
  if (raw == nullptr || *raw == '\0') return tol;
  const std::string text(raw);
  try {
    const auto comma = text.find(',');
    tol.rel = std::stod(text.substr(0, comma));
    if (comma != std::string::npos) tol.abs = std::stod(text.substr(comma + 1));
  } catch (const std::exception&) {
    throw ConfigError("CONVSEQ_TOL must be 'rel' or 'rel,abs', got '" + text + "'");
  }
  if (!(tol.rel >= 0.0) || !(tol.abs >= 0.0) || !std::isfinite(tol.rel) || !std::isfinite(tol.abs)) {
    throw ConfigError("CONVSEQ_TOL tolerances must be finite and non-negative");
  }
  return tol;
}

bool near_equal(const Coefficient& x, const Coefficient& y, double rel_tol, double abs_tol) {
  if (x.is_exact() && y.is_exact()) return x.exact() == y.exact();
  const Complex xc = x.to_complex();
  const Complex yc = y.to_complex();
  const double diff = std::abs(xc - yc);
  const double scale = std::max(std::abs(xc), std::abs(yc));
  return diff <= std::max(abs_tol, rel_tol * scale);
}

Coefficient promote_to_complex(const Coefficient& x) {
  return Coefficient(x.to_complex());
}

Coefficient pow(const Coefficient& x, unsigned e) {
  Coefficient result(1);
  Coefficient base = x;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

void Accumulator::add(const Coefficient& x) {
  if (x.is_exact()) {
    exact_ += x.exact();
  } else {
    add_float(x.floating());
  }
}

void Accumulator::add_product(const Coefficient& x, const Coefficient& y) {
  if (x.is_exact() && y.is_exact()) {
    exact_ += x.exact() * y.exact();
  } else {
    add_float(checked(x.to_complex() * y.to_complex()));
  }
}

void Accumulator::add_float(Complex z) {
  has_float_ = true;
  neumaier(re_, re_comp_, z.real());
  neumaier(im_, im_comp_, z.imag());
}

Coefficient Accumulator::value() const {
  if (!has_float_) return Coefficient(exact_);
  double re = re_;
  double re_comp = re_comp_;
  if (sgn(exact_) != 0) neumaier(re, re_comp, rational_to_double(exact_));
  return Coefficient(Complex(re + re_comp, im_ + im_comp_));
}

void ScaledRationals::push_back(const Rational& q) {
  const mpz_class& d = q.get_den();
  if (d != den_) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), den_.get_mpz_t(), d.get_mpz_t());
    mpz_class grow;
    mpz_divexact(grow.get_mpz_t(), d.get_mpz_t(), g.get_mpz_t());
    if (grow != 1) {
      for (auto& n : num_) n *= grow;
      den_ *= grow;
    }
  }
  mpz_class scale;
  mpz_divexact(scale.get_mpz_t(), den_.get_mpz_t(), d.get_mpz_t());
  num_.push_back(q.get_num() * scale);
}

Rational convolve_at(const ScaledRationals& x, const ScaledRationals& y, std::size_t n, std::size_t lo,
                     std::size_t hi) {
  mpz_class sum = 0;
  for (std::size_t i = lo; i <= hi; ++i) {
    const mpz_class& a = x.numerator(i);
    if (sgn(a) == 0) continue;
    mpz_addmul(sum.get_mpz_t(), a.get_mpz_t(), y.numerator(n - i).get_mpz_t());
  }
  Rational out(sum, x.denominator() * y.denominator());
  out.canonicalize();
  return out;
}

}  // namespace convseq
