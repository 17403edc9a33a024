#include <array>
#include <cmath>
#include <functional>
#include <mutex>
#include <numbers>
#include <set>

#include "convseq/sequences.hpp"

namespace convseq {

namespace {

template <class F>
class LambdaGenerator final : public TermGenerator {
 public:
  explicit LambdaGenerator(F f) : f_(std::move(f)) {}
  Coefficient term(std::size_t n, std::span<const Coefficient> prefix) const override {
    return f_(n, prefix);
  }

 private:
  F f_;
};

template <class F>
std::shared_ptr<const TermGenerator> make_generator(F f) {
  return std::make_shared<const LambdaGenerator<F>>(std::move(f));
}

Rational inverse(const mpz_class& z) { return Rational(mpz_class(1), z); }

mpz_class factorial(unsigned long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

mpz_class fibonacci(unsigned long n) {
  mpz_class out;
  mpz_fib_ui(out.get_mpz_t(), n);
  return out;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

mpz_class catalan_number(unsigned long n) { return binomial(2 * n, n) / (n + 1); }

mpz_class pow2(unsigned long e) {
  mpz_class out = 1;
  mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), e);
  return out;
}

// Exact running caches of b and of a weight sequence w for self-recurrent
// kernels built from sums of b_j w_{n-j}.
class ConvolutionCache {
 public:
  explicit ConvolutionCache(std::function<Rational(std::size_t)> weight) : weight_(std::move(weight)) {}

  // sum_{j=lo}^{hi} b_j w_{n-j}
  Rational b_first(std::span<const Coefficient> b, std::size_t n, std::size_t lo, std::size_t hi) {
    std::lock_guard lock(mutex_);
    sync(b, n);
    return convolve_at(bs_, ws_, n, lo, hi);
  }

  // sum_{j=lo}^{hi} w_j b_{n-j}
  Rational w_first(std::span<const Coefficient> b, std::size_t n, std::size_t lo, std::size_t hi) {
    std::lock_guard lock(mutex_);
    sync(b, n);
    return convolve_at(ws_, bs_, n, lo, hi);
  }

 private:
  void sync(std::span<const Coefficient> b, std::size_t n) {
    while (bs_.size() < b.size()) bs_.push_back(b[bs_.size()].exact());
    while (ws_.size() <= n) ws_.push_back(weight_(ws_.size()));
  }

  std::function<Rational(std::size_t)> weight_;
  std::mutex mutex_;
  ScaledRationals bs_, ws_;
};

// Exponent `a` of the zeta kernels: exact when it is an integer rational.
class Exponent {
 public:
  explicit Exponent(const Coefficient& a) {
    if (a.is_exact() && a.exact().get_den() == 1 && abs(a.exact().get_num()) <= 4096) {
      exact_ = true;
      integer_ = a.exact().get_num().get_si();
    }
    value_ = a.to_complex();
  }

  bool exact() const { return exact_; }
  Complex value() const { return value_; }

  // k^{-a} for k >= 1.
  Coefficient inverse_power(unsigned long k) const {
    if (exact_) {
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), k, static_cast<unsigned long>(std::labs(integer_)));
      return integer_ >= 0 ? Coefficient(inverse(p)) : Coefficient(Rational(p));
    }
    if (k == 1) return Coefficient(Complex(1.0, 0.0));
    return Coefficient(std::exp(-value_ * std::log(static_cast<double>(k))));
  }

 private:
  bool exact_ = false;
  long integer_ = 0;
  Complex value_;
};

const Coefficient& require_param(const CatalogParams& params, const std::string& key,
                                 const std::string& entry) {
  const auto it = params.find(key);
  if (it == params.end()) throw ParamError(entry + " requires parameter '" + key + "'");
  return it->second;
}

void check_keys(const CatalogParams& params, const std::set<std::string>& allowed, const std::string& entry) {
  for (const auto& [key, value] : params) {
    if (!allowed.contains(key)) throw ParamError(entry + " does not accept parameter '" + key + "'");
  }
}

long integer_param(const CatalogParams& params, const std::string& key, const std::string& entry) {
  const Coefficient& v = require_param(params, key, entry);
  if (v.is_exact() && v.exact().get_den() == 1 && v.exact().get_num().fits_slong_p()) {
    return v.exact().get_num().get_si();
  }
  if (!v.is_exact()) {
    const Complex z = v.floating();
    if (z.imag() == 0.0 && std::nearbyint(z.real()) == z.real() && std::fabs(z.real()) < 1e15) {
      return static_cast<long>(z.real());
    }
  }
  throw ParamError(entry + " parameter '" + key + "' must be an integer");
}

std::vector<Coefficient> integers(std::initializer_list<const char*> values) {
  std::vector<Coefficient> out;
  out.reserve(values.size());
  for (const char* v : values) out.push_back(Coefficient::parse_rational(v));
  return out;
}

// b = s + 1/A(s) for the target sequence A, i.e. the kernel that makes
// alpha_0 = A with m = 1. Prefixes derived from the OEIS entries named in
// each comment (A074664, A308986, A001006, A006922 for b; A000110,
// A001316, A001006, A000594 for the produced sequence).
const std::vector<Coefficient>& bell_table() {
  static const auto table = integers(
      {"1", "0", "-1", "-2", "-6", "-22", "-92", "-426", "-2146", "-11624", "-67146", "-411142",
       "-2656052", "-18035178", "-128318314", "-954086192", "-7396278762", "-59659032142",
       "-499778527628", "-4341025729290", "-39035256389026", "-362878164902216",
       "-3482882959111530", "-34472032118214598", "-351444606388445108", "-3686834538319818762",
       "-39758653019075650282", "-440344396890899828912", "-5004519228191621887722",
       "-58316339964820461888526"});
  return table;
}

const std::vector<Coefficient>& gould_table() {
  static const auto table = integers(
      {"1", "-1", "2", "-4", "10", "-20", "36", "-72", "154", "-308", "596", "-1192", "2420", "-4840",
       "9608", "-19216", "38586", "-77172", "154036", "-308072", "616740", "-1233480", "2465768",
       "-4931536", "9865492", "-19730984", "39457128", "-78914256", "157838120", "-315676240"});
  return table;
}

const std::vector<Coefficient>& motzkin_table() {
  static const auto table = integers(
      {"1", "0", "-1", "-1", "-2", "-4", "-9", "-21", "-51", "-127", "-323", "-835", "-2188",
       "-5798", "-15511", "-41835", "-113634", "-310572", "-853467", "-2356779", "-6536382",
       "-18199284", "-50852019", "-142547559", "-400763223", "-1129760415", "-3192727797",
       "-9043402501", "-25669818476", "-73007772802"});
  return table;
}

const std::vector<Coefficient>& ramanujan_table() {
  static const auto table = integers(
      {"1", "25", "324", "3200", "25650", "176256", "1073720", "5930496", "30178575", "143184000",
       "639249300", "2705114880", "10914317934", "42189811200", "156883829400", "563116739584",
       "1956790259235", "6599620022400", "21651325216200", "69228721526400", "216108718571250",
       "659641645039360", "1971466420726656", "5776331152550400", "16610409114771900",
       "46925988716146176", "130362155499200220", "356418628326241024", "959788304511313500",
       "2547447689037081600"});
  return table;
}

SequenceSpec zeta_direct(const CatalogParams& params) {
  check_keys(params, {"a"}, "zeta_direct");
  const Exponent a(require_param(params, "a", "zeta_direct"));
  std::shared_ptr<ConvolutionCache> cache;
  if (a.exact()) {
    cache = std::make_shared<ConvolutionCache>(
        [a](std::size_t k) { return k == 0 ? Rational(0) : a.inverse_power(k).exact(); });
  }
  return SequenceSpec::generated(
      SequenceKind::SelfRecurrent, "zeta_direct", params,
      make_generator([a, cache](std::size_t n, std::span<const Coefficient> b) -> Coefficient {
        if (n == 0) return 1;
        if (n == 1) return -a.inverse_power(2);
        // b_n = n^{-a} - sum_{j<n} b_j (n+1-j)^{-a}
        if (cache) return Coefficient(Rational(a.inverse_power(n).exact() - cache->b_first(b, n + 1, 0, n - 1)));
        Accumulator acc;
        for (std::size_t j = 0; j < n; ++j) acc.add_product(b[j], a.inverse_power(n + 1 - j));
        return a.inverse_power(n) - acc.value();
      }));
}

SequenceSpec zeta_mobius(const CatalogParams& params) {
  check_keys(params, {"a"}, "zeta_mobius");
  const Exponent a(require_param(params, "a", "zeta_mobius"));
  auto weight = [a](std::size_t k) -> Coefficient {
    if (k == 0) return 0;
    const int mu = mobius(static_cast<long long>(k));
    return mu == 0 ? Coefficient(0) : Coefficient(mu) * a.inverse_power(k);
  };
  std::shared_ptr<ConvolutionCache> cache;
  if (a.exact()) {
    cache = std::make_shared<ConvolutionCache>([weight](std::size_t k) { return weight(k).exact(); });
  }
  return SequenceSpec::generated(
      SequenceKind::SelfRecurrent, "zeta_mobius", params,
      make_generator([a, weight, cache](std::size_t n, std::span<const Coefficient> b) -> Coefficient {
        if (n == 0) return 1;
        if (n == 1) return a.inverse_power(2);
        // b_n = mu(n) n^{-a} - sum_{j<n} b_j mu(n+1-j) (n+1-j)^{-a}
        if (cache) return Coefficient(Rational(weight(n).exact() - cache->b_first(b, n + 1, 0, n - 1)));
        Accumulator acc;
        for (std::size_t j = 0; j < n; ++j) {
          const Coefficient w = weight(n + 1 - j);
          if (!w.is_zero()) acc.add_product(b[j], w);
        }
        return weight(n) - acc.value();
      }));
}

// h_k = 2^{-k} sum_j C(k,j) (-1)^j (j+1)^{-a}, the Hasse inner sums.
class HasseTerms {
 public:
  explicit HasseTerms(Exponent a) : a_(a) {}

  Coefficient at(std::size_t k) const {
    std::lock_guard lock(mutex_);
    while (cache_.size() <= k) cache_.push_back(compute(cache_.size()));
    return cache_[k];
  }

 private:
  Coefficient compute(std::size_t k) const {
    Accumulator acc;
    for (std::size_t j = 0; j <= k; ++j) {
      Coefficient c(Rational(binomial(k, j)));
      if (j % 2 == 1) c = -c;
      acc.add_product(c, a_.inverse_power(j + 1));
    }
    return acc.value() * Coefficient(inverse(pow2(k)));
  }

  Exponent a_;
  mutable std::mutex mutex_;
  mutable std::vector<Coefficient> cache_;
};

SequenceSpec zeta_hasse(const CatalogParams& params) {
  check_keys(params, {"a"}, "zeta_hasse");
  const Exponent a(require_param(params, "a", "zeta_hasse"));
  auto h = std::make_shared<HasseTerms>(a);
  std::shared_ptr<ConvolutionCache> cache;
  if (a.exact()) cache = std::make_shared<ConvolutionCache>([h](std::size_t k) { return h->at(k).exact(); });
  return SequenceSpec::generated(
      SequenceKind::SelfRecurrent, "zeta_hasse", params,
      make_generator([h, cache](std::size_t n, std::span<const Coefficient> b) -> Coefficient {
        if (n == 0) return 1;
        if (n == 1) return -h->at(1);
        // b_n = h_{n-1} - sum_{l<n} b_l h_{n-l}
        if (cache) return Coefficient(Rational(h->at(n - 1).exact() - cache->b_first(b, n, 0, n - 1)));
        Accumulator acc;
        for (std::size_t l = 0; l < n; ++l) acc.add_product(b[l], h->at(n - l));
        return h->at(n - 1) - acc.value();
      }));
}

SequenceSpec leibniz_pi(const CatalogParams& params) {
  check_keys(params, {}, "leibniz_pi");
  // w_j = (-1)^{j+1} / (2j+1)
  auto cache = std::make_shared<ConvolutionCache>([](std::size_t j) {
    return j == 0 ? Rational(0) : Rational(j % 2 == 1 ? 1 : -1, 2 * static_cast<long>(j) + 1);
  });
  return SequenceSpec::generated(
      SequenceKind::SelfRecurrent, "leibniz_pi", params,
      make_generator([cache](std::size_t n, std::span<const Coefficient> b) -> Coefficient {
        if (n == 0) return 1;
        if (n == 1) return Coefficient(Rational(1, 3));
        const Rational lead(n % 2 == 1 ? 1 : -1, 2 * static_cast<long>(n) - 1);
        return Coefficient(Rational(lead + cache->w_first(b, n, 1, n)));
      }));
}

SequenceSpec exp_e(const CatalogParams& params) {
  check_keys(params, {}, "exp_e");
  auto cache = std::make_shared<ConvolutionCache>([](std::size_t j) { return inverse(factorial(j)); });
  return SequenceSpec::generated(
      SequenceKind::SelfRecurrent, "exp_e", params,
      make_generator([cache](std::size_t n, std::span<const Coefficient> b) -> Coefficient {
        if (n == 0) return 1;
        if (n == 1) return -1;
        // b_n = 1/(n-1)! - sum_{j=1}^{n} b_{n-j} / j!
        return Coefficient(Rational(inverse(factorial(n - 1)) - cache->w_first(b, n, 1, n)));
      }));
}

SequenceSpec euler_identity(const CatalogParams& params) {
  check_keys(params, {}, "euler_identity");
  return SequenceSpec::generated(
      SequenceKind::Catalog, "euler_identity", params,
      make_generator([](std::size_t n, std::span<const Coefficient>) -> Coefficient {
        constexpr double pi = std::numbers::pi;
        double t = 1.0;  // pi^{2n} / (2n)!
        for (std::size_t k = 1; k <= n; ++k) {
          t *= pi * pi / static_cast<double>((2 * k - 1) * (2 * k));
        }
        const double sign = n % 2 == 0 ? -1.0 : 1.0;
        return Coefficient(sign * t * Complex(1.0, pi / static_cast<double>(2 * n + 1)));
      }));
}

SequenceSpec arcsin_central(const CatalogParams& params) {
  check_keys(params, {}, "arcsin_central");
  return SequenceSpec::generated(
      SequenceKind::Catalog, "arcsin_central", params,
      make_generator([](std::size_t n, std::span<const Coefficient>) -> Coefficient {
        // (n!)^2 / (2n+1)! exactly, then the 3*sqrt(3)/(2*pi) prefactor.
        const mpz_class f = factorial(n);
        const Rational ratio(f * f, factorial(2 * n + 1));
        const double scale = 3.0 * std::numbers::sqrt3 / (2.0 * std::numbers::pi);
        return Coefficient::real(scale * rational_to_double(Rational(ratio)));
      }));
}

SequenceSpec fibonacci_geometric(const CatalogParams& params) {
  check_keys(params, {}, "fibonacci_geometric");
  return SequenceSpec::generated(
      SequenceKind::Catalog, "fibonacci_geometric", params,
      make_generator([](std::size_t n, std::span<const Coefficient>) -> Coefficient {
        return Coefficient(Rational(fibonacci(n + 1), pow2(n + 2)));
      }));
}

SequenceSpec catalan_prob(const CatalogParams& params) {
  check_keys(params, {}, "catalan_prob");
  return SequenceSpec::generated(
      SequenceKind::Catalog, "catalan_prob", params,
      make_generator([](std::size_t n, std::span<const Coefficient>) -> Coefficient {
        return Coefficient(Rational(catalan_number(n), pow2(2 * n + 1)));
      }));
}

SequenceSpec fibonacci_phi(const CatalogParams& params) {
  check_keys(params, {}, "fibonacci_phi");
  return SequenceSpec::generated(
      SequenceKind::Catalog, "fibonacci_phi", params,
      make_generator([](std::size_t n, std::span<const Coefficient>) -> Coefficient {
        // F(n+1) phi^{-n} = (phi - psi (psi/phi)^n) / sqrt(5), psi = -1/phi.
        constexpr double phi = std::numbers::phi;
        constexpr double psi = -1.0 / phi;
        const double value = (phi - psi * std::pow(psi / phi, static_cast<double>(n))) / std::sqrt(5.0);
        return Coefficient::real(value);
      }));
}

SequenceSpec sine(const CatalogParams& params) {
  check_keys(params, {}, "sine");
  return SequenceSpec::generated(
      SequenceKind::Catalog, "sine", params,
      make_generator([](std::size_t n, std::span<const Coefficient>) -> Coefficient {
        return Coefficient::real(std::sin(static_cast<double>(n + 1)));
      }));
}

SequenceSpec famous(const CatalogParams& params) {
  const long id = integer_param(params, "id", "famous");
  const bool takes_k = id == 14 || id == 15;
  check_keys(params, takes_k ? std::set<std::string>{"id", "k"} : std::set<std::string>{"id"}, "famous");

  auto finite = [&](std::vector<Coefficient> values) {
    return SequenceSpec::finite(std::move(values)).with_provenance("famous", params);
  };
  auto closed = [&](auto f) {
    return SequenceSpec::generated(SequenceKind::Catalog, "famous", params, make_generator(f));
  };
  auto recurrent = [&](auto f) {
    return SequenceSpec::generated(SequenceKind::SelfRecurrent, "famous", params, make_generator(f));
  };

  switch (id) {
    case 1:  // Lucas (2a)
      return closed([](std::size_t n, std::span<const Coefficient>) -> Coefficient {
        if (n == 0) return 1;
        if (n == 1) return Coefficient(Rational(1, 2));
        return Coefficient(Rational(mpz_class(-5), pow2(n)));
      });
    case 2:  // Woodall
      return recurrent([](std::size_t n, std::span<const Coefficient> b) -> Coefficient {
        static const std::array<long, 4> seed{1, -6, 26, -84};
        if (n < seed.size()) return seed[n];
        return Coefficient(-2) * b[n - 1] + Coefficient(4) * b[n - 2];
      });
    case 3:  // lazy caterer
      return recurrent([](std::size_t n, std::span<const Coefficient> b) -> Coefficient {
        static const std::array<long, 4> seed{1, -1, 0, 1};
        if (n < seed.size()) return seed[n];
        return -b[n - 3];
      });
    case 4:  // Pell, shifted
      return finite({1, -1, -1});
    case 5:  // natural numbers
      return finite({1, -1, 1});
    case 6:  // Bell
      return finite(bell_table());
    case 7:  // Catalan
      return closed([](std::size_t n, std::span<const Coefficient>) -> Coefficient {
        if (n == 0) return 1;
        if (n == 1) return 0;
        return Coefficient(Rational(-catalan_number(n - 1)));
      });
    case 8:  // Fine, shifted
      return closed([](std::size_t n, std::span<const Coefficient>) -> Coefficient {
        if (n <= 1) return 1;
        return Coefficient(Rational(-catalan_number(n - 1)));
      });
    case 9:  // Les Marvin
      return recurrent([](std::size_t n, std::span<const Coefficient> b) -> Coefficient {
        static const std::array<long, 5> seed{1, -1, 0, -1, 3};
        if (n < seed.size()) return seed[n];
        return b[n - 2] - b[n - 3];
      });
    case 10:  // Gould
      return finite(gould_table());
    case 11:  // Motzkin
      return finite(motzkin_table());
    case 12:  // Padovan
      return closed([](std::size_t n, std::span<const Coefficient>) -> Coefficient {
        if (n <= 1) return 1;
        return n % 2 == 0 ? 0 : -1;
      });
    case 13:  // Ramanujan tau
      return finite(ramanujan_table());
    case 14: {  // k^n
      const long k = integer_param(params, "k", "famous(14)");
      if (k < 0) throw ParamError("famous(14) requires k >= 0");
      return finite({1, 1 - k});
    }
    case 15: {  // k-generalized Fibonacci
      const long k = integer_param(params, "k", "famous(15)");
      if (k < 0 || k > 100000) throw ParamError("famous(15) requires 0 <= k <= 100000");
      std::vector<Coefficient> values{1, 0};
      values.insert(values.end(), static_cast<std::size_t>(k), Coefficient(-1));
      return finite(std::move(values));
    }
    default:
      throw ParamError("famous id must be in 1..15, got " + std::to_string(id));
  }
}

using Builder = SequenceSpec (*)(const CatalogParams&);

const std::map<std::string, Builder>& registry() {
  static const std::map<std::string, Builder> entries{
      {"zeta_direct", zeta_direct},
      {"zeta_mobius", zeta_mobius},
      {"zeta_hasse", zeta_hasse},
      {"leibniz_pi", leibniz_pi},
      {"exp_e", exp_e},
      {"euler_identity", euler_identity},
      {"arcsin_central", arcsin_central},
      {"fibonacci_geometric", fibonacci_geometric},
      {"catalan_prob", catalan_prob},
      {"fibonacci_phi", fibonacci_phi},
      {"sine", sine},
      {"famous", famous},
  };
  return entries;
}

}  // namespace

SequenceSpec catalog_b(const std::string& name, const CatalogParams& params) {
  const auto& entries = registry();
  const auto it = entries.find(name);
  if (it == entries.end()) throw UnknownCatalogEntry("unknown catalog entry '" + name + "'");
  return it->second(params);
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& [name, builder] : registry()) names.push_back(name);
  return names;
}

bool catalog_sums_to_one(const std::string& name) {
  static const std::set<std::string> entries{
      "zeta_direct", "zeta_mobius",   "zeta_hasse",          "leibniz_pi",   "exp_e",
      "euler_identity", "arcsin_central", "fibonacci_geometric", "catalan_prob"};
  return entries.contains(name);
}

}  // namespace convseq
