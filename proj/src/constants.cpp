#include "convseq/constants.hpp"

#include <cmath>
#include <numbers>

#include "convseq/recurrence.hpp"
#include "convseq/sequences.hpp"

namespace convseq {

namespace {

constexpr double kOracleRel = 1e-12;

bool is_exact_integer(const Coefficient& a) {
  return a.is_exact() && a.exact().get_den() == 1 && abs(a.exact().get_num()) <= 4096;
}

// j^{-a}, exact when a is a small integer.
Coefficient inverse_power(const Coefficient& a, unsigned long j) {
  if (is_exact_integer(a)) {
    const long e = a.exact().get_num().get_si();
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), j, static_cast<unsigned long>(std::labs(e)));
    if (e >= 0) return Coefficient(Rational(mpz_class(1), p));
    return Coefficient(Rational(p));
  }
  if (j == 1) return Coefficient(Complex(1.0, 0.0));
  return Coefficient(std::exp(-a.to_complex() * std::log(static_cast<double>(j))));
}

// 2 - 2^{2-a}.
Coefficient hasse_factor(const Coefficient& a) {
  if (is_exact_integer(a)) {
    const long e = 2 - a.exact().get_num().get_si();
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(std::labs(e)));
    const Rational two_pow = e >= 0 ? Rational(p) : Rational(mpz_class(1), p);
    return Coefficient(Rational(2) - two_pow);
  }
  return Coefficient(Complex(2.0) - std::exp((2.0 - a.to_complex()) * std::numbers::ln2));
}

bool uses_exponent(ConstantTarget target) {
  return target == ConstantTarget::ZetaDirect || target == ConstantTarget::ZetaMobius ||
         target == ConstantTarget::ZetaHasse;
}

void check_params(ConstantTarget target, const Coefficient& a, std::size_t N) {
  if (N < 2) throw ParamError("N must be >= 2");
  if (!uses_exponent(target)) return;
  const Complex z = a.to_complex();
  if (target == ConstantTarget::ZetaHasse) {
    // Excluded points a = 1 + 2 pi i n / log 2, where 2 - 2^{2-a} vanishes.
    const double period = 2.0 * std::numbers::pi / std::numbers::ln2;
    const double n = std::nearbyint(z.imag() / period);
    if (std::abs(z - Complex(1.0, n * period)) < 1e-12) {
      throw ParamError("zeta_hasse is undefined at a = 1 + 2*pi*i*n/log(2) (here n = " +
                       std::to_string(static_cast<long long>(n)) + ")");
    }
  } else if (!(z.real() > 1.0)) {
    throw ParamError(to_string(target) + " needs Re a > 1");
  }
}

SequenceSpec kernel(ConstantTarget target, const Coefficient& a) {
  switch (target) {
    case ConstantTarget::ZetaDirect:
      return catalog_b("zeta_direct", {{"a", a}});
    case ConstantTarget::ZetaMobius:
      return catalog_b("zeta_mobius", {{"a", a}});
    case ConstantTarget::ZetaHasse:
      return catalog_b("zeta_hasse", {{"a", a}});
    case ConstantTarget::PiLeibniz:
      return catalog_b("leibniz_pi");
    case ConstantTarget::EulerE:
      return catalog_b("exp_e");
  }
  throw ParamError("unknown constant target");
}

Complex borwein_zeta(Complex s) {
  constexpr int n = 60;
  // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), built from term ratios.
  std::vector<double> d(n + 1);
  double term = 1.0 / n;
  double sum = term;
  d[0] = n * sum;
  for (int i = 1; i <= n; ++i) {
    term *= 4.0 * (n + i - 1) * (n - i + 1) / ((2.0 * i) * (2.0 * i - 1.0));
    sum += term;
    d[i] = n * sum;
  }
  Complex acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const Complex t = (d[k] - d[n]) * std::exp(-s * std::log(static_cast<double>(k + 1)));
    acc += k % 2 == 0 ? t : -t;
  }
  const Complex eta_factor = 1.0 - std::exp((1.0 - s) * std::numbers::ln2);
  return -acc / (d[n] * eta_factor);
}

}  // namespace

std::string to_string(ConstantTarget target) {
  switch (target) {
    case ConstantTarget::ZetaDirect:
      return "zeta_direct";
    case ConstantTarget::ZetaMobius:
      return "zeta_mobius";
    case ConstantTarget::ZetaHasse:
      return "zeta_hasse";
    case ConstantTarget::PiLeibniz:
      return "pi_leibniz";
    case ConstantTarget::EulerE:
      return "euler_e";
  }
  return "?";
}

ConstantTarget parse_constant_target(const std::string& name) {
  for (auto t : {ConstantTarget::ZetaDirect, ConstantTarget::ZetaMobius, ConstantTarget::ZetaHasse,
                 ConstantTarget::PiLeibniz, ConstantTarget::EulerE}) {
    if (to_string(t) == name) return t;
  }
  throw ParamError("unknown constant target '" + name +
                   "' (expected zeta_direct, zeta_mobius, zeta_hasse, pi_leibniz or euler_e)");
}

Complex reference_zeta(Complex a) {
  if (a == Complex(1.0, 0.0)) throw ParamError("zeta has a pole at a = 1");
  if (a.imag() == 0.0) return std::riemann_zeta(a.real());
  return borwein_zeta(a);
}

Complex reference_alpha_limit(ConstantTarget target, const Coefficient& a) {
  switch (target) {
    case ConstantTarget::ZetaDirect:
      return reference_zeta(a.to_complex());
    case ConstantTarget::ZetaMobius:
      return 1.0 / reference_zeta(a.to_complex());
    case ConstantTarget::ZetaHasse:
      return hasse_factor(a).to_complex() * reference_zeta(a.to_complex());
    case ConstantTarget::PiLeibniz:
      return std::numbers::pi / 4.0;
    case ConstantTarget::EulerE:
      return std::numbers::e;
  }
  return 0.0;
}

std::vector<Coefficient> direct_partial_sums(ConstantTarget target, const Coefficient& a, std::size_t N) {
  std::vector<Coefficient> out;
  out.reserve(N + 1);
  Accumulator acc;
  switch (target) {
    case ConstantTarget::ZetaDirect:
      for (unsigned long j = 1; j <= N + 1; ++j) {
        acc.add(inverse_power(a, j));
        out.push_back(acc.value());
      }
      break;
    case ConstantTarget::ZetaMobius:
      for (unsigned long j = 1; j <= N + 1; ++j) {
        if (const int mu = mobius(static_cast<long long>(j)); mu != 0) {
          acc.add_product(Coefficient(mu), inverse_power(a, j));
        }
        out.push_back(acc.value());
      }
      break;
    case ConstantTarget::ZetaHasse: {
      // sum_{k<=n} 2^{-k} sum_{j<=k} C(k,j) (-1)^j (j+1)^{-a}
      std::vector<Coefficient> powers;
      for (unsigned long j = 1; j <= N + 1; ++j) powers.push_back(inverse_power(a, j));
      for (unsigned long k = 0; k <= N; ++k) {
        Accumulator inner;
        mpz_class binom = 1;
        for (unsigned long j = 0; j <= k; ++j) {
          if (j > 0) binom = binom * (k - j + 1) / j;
          const Coefficient c(Rational(j % 2 == 0 ? binom : mpz_class(-binom)));
          inner.add_product(c, powers[j]);
        }
        mpz_class two_k;
        mpz_ui_pow_ui(two_k.get_mpz_t(), 2, k);
        acc.add_product(inner.value(), Coefficient(Rational(mpz_class(1), two_k)));
        out.push_back(acc.value());
      }
      break;
    }
    case ConstantTarget::PiLeibniz:
      for (long j = 1; j <= static_cast<long>(N) + 1; ++j) {
        const Rational t(1, 2 * j - 1);
        acc.add(Coefficient(j % 2 == 1 ? t : Rational(-t)));
        out.push_back(acc.value());
      }
      break;
    case ConstantTarget::EulerE: {
      mpz_class fact = 1;
      for (unsigned long j = 0; j <= N; ++j) {
        if (j > 0) fact *= j;
        acc.add(Coefficient(Rational(mpz_class(1), fact)));
        out.push_back(acc.value());
      }
      break;
    }
  }
  return out;
}

ConstantRun run_constant(ConstantTarget target, const Coefficient& a, std::size_t N) {
  check_params(target, a, N);
  ConstantRun run;
  run.target = target;
  run.a = uses_exponent(target) ? a : Coefficient(0);
  run.N = N;

  const SequenceSpec b = kernel(target, run.a);
  run.alpha_partial = compute_alpha(RecurrenceProblem{b, 1, N}).rows.front();

  run.b_weighted_tail.reserve(N + 1);
  Accumulator weighted;
  run.b_weighted_tail.push_back(Coefficient(0));
  for (std::size_t j = 1; j <= N; ++j) {
    weighted.add_product(Coefficient(j), b.at(j));
    run.b_weighted_tail.push_back(weighted.value());
  }

  const auto direct = direct_partial_sums(target, run.a, N);
  run.oracle_match = true;
  for (std::size_t n = 0; n <= N; ++n) {
    const Coefficient& got = run.alpha_partial[n];
    const double dev = (got - direct[n]).abs();
    run.oracle_max_deviation = std::max(run.oracle_max_deviation, dev);
    if (got.is_exact() && direct[n].is_exact()) {
      run.oracle_match = run.oracle_match && got == direct[n];
    } else {
      run.oracle_match = run.oracle_match && dev <= kOracleRel * std::max(1.0, direct[n].abs());
    }
  }

  const Coefficient& last = run.alpha_partial.back();
  Complex reference = reference_alpha_limit(target, run.a);
  if (target == ConstantTarget::ZetaHasse) {
    run.final_estimate = last / hasse_factor(run.a);
    reference = reference_zeta(run.a.to_complex());
  } else {
    run.final_estimate = last;
  }
  run.reference = reference;
  return run;
}

double weighted_b_identity(ConstantTarget target, const Coefficient& a, std::size_t N) {
  check_params(target, a, N);
  const Coefficient exponent = uses_exponent(target) ? a : Coefficient(0);
  const SequenceSpec b = kernel(target, exponent);
  Accumulator weighted;
  for (std::size_t j = 1; j <= N; ++j) weighted.add_product(Coefficient(j), b.at(j));
  const Complex closed = 1.0 - 1.0 / reference_alpha_limit(target, exponent);
  return std::abs(weighted.value().to_complex() - closed);
}

}  // namespace convseq
