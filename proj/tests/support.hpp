#pragma once

// Test-only helpers: seeded random inputs and oracles that do not share
// code paths with the library.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "convseq/numeric.hpp"
#include "convseq/sequences.hpp"

namespace testing {

using convseq::Coefficient;
using convseq::Rational;

inline Coefficient q(long p, long d = 1) { return Coefficient(Rational(p, d)); }

inline std::vector<Coefficient> ints(std::initializer_list<long> xs) {
  std::vector<Coefficient> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

inline std::vector<Coefficient> rationals(std::initializer_list<const char*> xs) {
  std::vector<Coefficient> out;
  for (const char* x : xs) out.push_back(Coefficient::parse_rational(x));
  return out;
}

class RandomRationals {
 public:
  explicit RandomRationals(unsigned seed) : rng_(seed) {}

  Rational next(long max_num = 9, long max_den = 7) {
    std::uniform_int_distribution<long> num(-max_num, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    Rational out(num(rng_), den(rng_));
    out.canonicalize();
    return out;
  }

  Rational nonzero(long max_num = 9, long max_den = 7) {
    for (;;) {
      Rational r = next(max_num, max_den);
      if (r != 0) return r;
    }
  }

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

/// Checks a against the defining relation a_n = sum_{j=0}^{n+m} b_{n+m-j} a_j
/// for every n with n + m <= N, all in exact rationals.
inline bool satisfies_defining_relation(const std::vector<Rational>& b, int m, const std::vector<Rational>& a) {
  const std::size_t M = static_cast<std::size_t>(m);
  for (std::size_t n = 0; n + M < a.size(); ++n) {
    Rational rhs = 0;
    for (std::size_t j = 0; j <= n + M; ++j) {
      const std::size_t idx = n + M - j;
      if (idx < b.size()) rhs += b[idx] * a[j];
    }
    if (rhs != a[n]) return false;
  }
  return true;
}

inline std::vector<Rational> exact_values(const std::vector<Coefficient>& xs) {
  std::vector<Rational> out;
  for (const auto& x : xs) out.push_back(x.exact());
  return out;
}

inline double to_double(const Coefficient& x) { return x.to_complex().real(); }

}  // namespace testing
