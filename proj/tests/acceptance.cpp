// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include "convseq/config.hpp"
#include "support.hpp"

using namespace convseq;
using testing::ints;
using testing::q;
using testing::rationals;

namespace {

constexpr double pi = std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail << " [exception: " << e.what() << "]";
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!v.pass) ++failures;
  std::cout << (v.pass ? "PASS" : "FAIL") << " " << id << " " << title << " (" << seconds << " s)" << v.detail.str()
            << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const SequenceSpec& example_b() {
  static const auto b = SequenceSpec::finite(ints({5, -4, -3, 3}));
  return b;
}

std::vector<Coefficient> random_finite(testing::RandomRationals& rng) {
  std::vector<Coefficient> values{Coefficient(rng.nonzero())};
  const int len = rng.integer(1, 6);
  for (int i = 1; i < len; ++i) values.emplace_back(rng.next());
  return values;
}

bool rows_agree(const std::vector<Coefficient>& x, const std::vector<Coefficient>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t n = 0; n < x.size(); ++n) {
    if (x[n].is_exact() && y[n].is_exact()) {
      if (x[n] != y[n]) return false;
    } else if (!near_equal(x[n], y[n], 1e-9, 1e-12)) {
      return false;
    }
  }
  return true;
}

double relative_error(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

int main() {
  std::cout.precision(6);

  criterion(1, "exact alpha table for b=[5,-4,-3,3], m=2 through index 7", [](Verdict& v) {
    const auto start = std::chrono::steady_clock::now();
    const auto alpha = compute_alpha(RecurrenceProblem{example_b(), 2, 7});
    v.require(alpha.rows[0] == rationals({"1", "0", "4/5", "1/25", "84/125", "56/625", "1829/3125", "2136/15625"}),
              "alpha_0");
    v.require(alpha.rows[1] ==
                  rationals({"0", "1", "4/5", "36/25", "149/125", "1016/625", "4344/3125", "26521/15625"}),
              "alpha_1");
    v.require(seconds_since(start) < 1.0, "runtime < 1 s");
  });

  criterion(2, "direct and series routes agree (200 random problems + catalog)", [](Verdict& v) {
    const auto start = std::chrono::steady_clock::now();
    testing::RandomRationals rng(2024);
    int mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const auto b = SequenceSpec::finite(random_finite(rng));
      const int m = rng.integer(1, 3);
      const auto N = static_cast<std::size_t>(rng.integer(m, 60));
      const auto alpha = compute_alpha(RecurrenceProblem{b, m, N});
      for (int k = 0; k < m; ++k) {
        if (galpha_series(b, m, k, N).coeffs() != alpha.rows[static_cast<std::size_t>(k)]) ++mismatches;
      }
    }
    v.require(mismatches == 0, std::to_string(mismatches) + " random mismatches");

    std::vector<std::pair<std::string, CatalogParams>> cases = {
        {"zeta_direct", {{"a", Coefficient(2)}}},
        {"zeta_direct", {{"a", Coefficient(Complex(2.0, 1.0))}}},
        {"zeta_mobius", {{"a", Coefficient(2)}}},
        {"zeta_mobius", {{"a", Coefficient::real(2.5)}}},
        {"zeta_hasse", {{"a", Coefficient(2)}}},
        {"zeta_hasse", {{"a", Coefficient(Complex(0.5, 14.134725))}}},
        {"leibniz_pi", {}},
        {"exp_e", {}},
        {"euler_identity", {}},
        {"arcsin_central", {}},
        {"fibonacci_geometric", {}},
        {"catalan_prob", {}},
        {"fibonacci_phi", {}},
        {"sine", {}},
    };
    for (long id = 1; id <= 15; ++id) {
      CatalogParams p{{"id", Coefficient(id)}};
      if (id == 14 || id == 15) p.emplace("k", Coefficient(3));
      cases.emplace_back("famous", p);
    }
    int catalog_mismatches = 0;
    for (const auto& [name, params] : cases) {
      const auto b = catalog_b(name, params);
      for (int m : {1, 2, 3}) {
        const auto alpha = compute_alpha(RecurrenceProblem{b, m, 60});
        for (int k = 0; k < m; ++k) {
          if (!rows_agree(galpha_series(b, m, k, 60).coeffs(), alpha.rows[static_cast<std::size_t>(k)])) {
            ++catalog_mismatches;
            v.detail << " [" << name << " m=" << m << " k=" << k << "]";
          }
        }
      }
    }
    v.require(catalog_mismatches == 0, "catalog cases");
    const double elapsed = seconds_since(start);
    v.require(elapsed < 30.0, "runtime < 30 s");
    v.detail << " random=200 catalog=" << cases.size();
  });

  criterion(3, "reconstruction identity a_n = sum_k alpha_k(n) a_k on the random corpus", [](Verdict& v) {
    testing::RandomRationals rng(2024);
    int mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const auto values = random_finite(rng);
      const auto b = SequenceSpec::finite(values);
      const int m = rng.integer(1, 3);
      const auto N = static_cast<std::size_t>(rng.integer(m, 60));
      std::vector<Coefficient> initials;
      for (int k = 0; k < m; ++k) initials.emplace_back(rng.next());
      const RecurrenceProblem problem{b, m, N};
      const auto a = compute_a(problem, initials);
      if (reconstruct_a(compute_alpha(problem), initials) != a) ++mismatches;
      if (!testing::satisfies_defining_relation(testing::exact_values(values), m, testing::exact_values(a))) {
        ++mismatches;
      }
    }
    v.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  });

  criterion(4, "closed and numeric limits", [](Verdict& v) {
    v.require(limit_alpha_closed(example_b(), 2, 0, 10).value == q(1, 3), "closed 1/3");
    v.require(limit_alpha_closed(example_b(), 2, 1, 10).value == q(5, 3), "closed 5/3");

    const auto arcsin = limit_alpha_numeric(m_series(catalog_b("arcsin_central"), 1, 0, 400).coeffs());
    const double arcsin_target = 27 / (-18 + 8 * std::sqrt(3.0) * pi);
    const double arcsin_err = std::abs(arcsin.value.to_complex().real() - arcsin_target);
    v.require(arcsin_err < 1e-4, "arcsin_central within 1e-4");

    const auto euler = limit_alpha_numeric(m_series(catalog_b("euler_identity"), 1, 0, 400).coeffs());
    const Complex z = euler.value.to_complex();
    const double euler_err = std::abs(z - Complex(1.13480, -1.35906));
    const double modulus_err = std::abs(std::abs(z) - 2 * std::sqrt((1 + pi * pi) / (4 + pi * pi)));
    v.require(euler_err < 1e-3, "Euler-identity limit within 1e-3");
    v.require(modulus_err < 1e-6, "Euler-identity modulus within 1e-6");
    v.detail << " arcsin_err=" << arcsin_err << " euler_err=" << euler_err << " modulus_err=" << modulus_err;
  });

  criterion(5, "radius and ratio estimates within 0.5%", [](Verdict& v) {
    auto timed = [&](const std::string& label, double want, const std::function<double()>& estimate) {
      const auto start = std::chrono::steady_clock::now();
      const double got = estimate();
      const double t = seconds_since(start);
      const double err = relative_error(got, want);
      v.require(err < 5e-3, label + " within 0.5%");
      v.require(t < 5.0, label + " < 5 s");
      v.detail << " " << label << "=" << got << " (rel " << err << ")";
    };
    timed("example2_differences", 6 / (-1 + std::sqrt(61.0)), [] {
      return 1 / estimate_radius(m_series(example_b(), 2, 0, 400), RadiusMode::RatioTest).radius;
    });
    timed("fibonacci_geometric", 2 / (std::sqrt(13.0) - 3), [] {
      return 1 / estimate_radius(galpha_series(catalog_b("fibonacci_geometric"), 1, 0, 400), RadiusMode::RatioTest)
                     .radius;
    });
    const auto g = galpha_series(catalog_b("fibonacci_geometric"), 1, 0, 7);
    std::vector<Coefficient> scaled;
    for (const auto& c : g.coeffs()) scaled.push_back(q(4) * c);
    v.require(scaled == ints({4, 14, 47, 156, 516, 1705, 5632, 18602}), "4 alpha_0 prefix");
    timed("catalan_prob", std::numbers::phi, [] {
      return 1 / estimate_radius(galpha_series(catalog_b("catalan_prob"), 1, 0, 400), RadiusMode::RatioTest).radius;
    });
    timed("arcsin_central", 0.27502, [] {
      return 1 / estimate_radius(m_series(catalog_b("arcsin_central"), 1, 0, 400), RadiusMode::RatioTest).radius;
    });
  });

  criterion(6, "steering solver", [](Verdict& v) {
    const double s61 = std::sqrt(61.0);
    const auto L = limit_rhs(example_b(), 2, q(1));
    double worst = 0;
    for (int sign : {-1, 1}) {
      const auto report =
          solve_system(build_system(example_b(), 2, {Coefficient::real((1 + sign * s61) / 6)}, {q(0)}, L));
      worst = std::max(worst, std::abs(report.solution[0].to_complex().real() - (11 + sign * s61) / 10));
      worst = std::max(worst, std::abs(report.solution[1].to_complex().real() - (19 - sign * s61) / 50));
    }
    v.require(worst < 1e-10, "Example 2 constants within 1e-10");

    testing::RandomRationals rng(606);
    int checked = 0;
    double det_worst = 0;
    for (int trial = 0; checked < 90 && trial < 5000; ++trial) {
      const int m = 2 + checked % 3;
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
      if (std::abs(weighted_index_mean(b, values.size()).to_complex().real() - m) < 1e-6) continue;
      const auto report = solve_system(build_system(b, m, default_roots(b, m),
                                                    std::vector<Coefficient>(static_cast<std::size_t>(m - 1), q(0)),
                                                    limit_rhs(b, m, q(1))));
      const double rel = std::abs((report.determinant - report.determinant_closed_form).to_complex()) /
                         std::abs(report.determinant_closed_form.to_complex());
      det_worst = std::max(det_worst, rel);
      ++checked;
    }
    v.require(checked == 90, "90 random instances");
    v.require(det_worst < 1e-9, "determinant within 1e-9");

    const auto report = solve_system(build_system(example_b(), 2, {Coefficient::real((1 - s61) / 6)}, {q(0)}, L));
    const auto a = compute_a(RecurrenceProblem{example_b(), 2, 400}, report.solution);
    const double end_err = std::abs(a[400].to_complex() - 1.0);
    v.require(end_err < 5e-3, "a_400 within 5e-3 of 1");
    v.detail << " constants_err=" << worst << " det_rel=" << det_worst << " a400_err=" << end_err;
  });

  criterion(7, "constants pipelines", [](Verdict& v) {
    const auto direct = run_constant(ConstantTarget::ZetaDirect, Coefficient(2), 1000);
    bool monotone = true;
    for (std::size_t n = 1; n <= 1000; ++n) monotone = monotone && direct.alpha_partial[n].exact() > direct.alpha_partial[n - 1].exact();
    const double zeta_err = std::abs(direct.final_estimate.to_complex().real() - pi * pi / 6);
    v.require(direct.oracle_match, "zeta_direct oracle");
    v.require(monotone, "zeta_direct monotone");
    v.require(zeta_err < 1e-3, "zeta_direct within 1e-3 at N=1000");

    const auto leibniz = run_constant(ConstantTarget::PiLeibniz, Coefficient(0), 3);
    v.require(leibniz.alpha_partial[0] == q(1) && leibniz.alpha_partial[1] == q(2, 3) &&
                  leibniz.alpha_partial[2] == q(13, 15),
              "Leibniz prefix");
    const auto bl = catalog_b("leibniz_pi");
    v.require(bl.at(1) == q(1, 3) && bl.at(2) == q(-19, 45) && bl.at(3) == q(128, 945), "Leibniz b terms");

    const auto e = run_constant(ConstantTarget::EulerE, Coefficient(0), 3);
    v.require(e.alpha_partial == rationals({"1", "2", "5/2", "8/3"}), "e prefix");
    const auto be = catalog_b("exp_e");
    v.require(be.at(1) == q(-1) && be.at(2) == q(3, 2) && be.at(3) == q(-2, 3) && be.at(4) == q(5, 24), "e b terms");

    const auto hasse0 = run_constant(ConstantTarget::ZetaHasse, Coefficient(0), 60);
    bool ones = true;
    for (const auto& x : hasse0.alpha_partial) ones = ones && x == q(1);
    v.require(ones, "Hasse a=0 gives alpha = 1");
    const auto hasse2 = run_constant(ConstantTarget::ZetaHasse, Coefficient(2), 60);
    const double hasse_err = std::abs(hasse2.final_estimate.to_complex().real() - pi * pi / 6);
    v.require(hasse_err < 1e-6, "Hasse a=2 within 1e-6 at N=60");
    v.detail << " zeta_direct_err=" << zeta_err << " hasse_err=" << hasse_err;
  });

  criterion(8, "non-convergence for b=[2,1,-2]", [](Verdict& v) {
    const auto b = SequenceSpec::finite(ints({2, 1, -2}));
    const auto alpha = compute_alpha(RecurrenceProblem{b, 1, 60});
    bool alternating = true;
    for (std::size_t n = 0; n <= 60; ++n) alternating = alternating && alpha.rows[0][n] == q(n % 2 == 0 ? 1 : 0);
    v.require(alternating, "alpha_0 = 1,0,1,0,...");
    v.require(!limit_alpha_numeric(m_series(b, 1, 0, 60).coeffs()).converged, "converged=false");
  });

  criterion(9, "figure data: row counts, finite values, byte-identical reruns", [](Verdict& v) {
    struct Figure {
      Json b;
      int dim;
    };
    const std::vector<Figure> figures = {
        {Json::parse("[-3,2,-1,3]"), 2},   {Json::parse("[3,-1,0,2,-3]"), 2}, {Json::parse("[3,1,-3,-2,2]"), 2},
        {Json::parse("[2,0,0,-3,2]"), 2},  {Json("sine"), 2},                 {Json("fibonacci_phi"), 2},
        {Json::parse("[3,0,-3,-2,3]"), 3},
    };
    for (const auto& fig : figures) {
      for (std::size_t N : {50u, 100u, 200u}) {
        auto render = [&] {
          const RunConfig c = parse_config(Json{{"b", fig.b}, {"N", N}, {"commands", Json::array()}});
          return execute_command(c, {"plotdata", Json{{"dim", fig.dim}}}, OutputFormat::Csv);
        };
        const std::string first = render();
        const std::string second = render();
        const std::string label = fig.b.dump() + " N=" + std::to_string(N);
        v.require(first == second, label + " byte-identical");
        std::istringstream lines(first);
        std::string line;
        std::getline(lines, line);
        std::size_t rows = 0;
        bool finite = true;
        while (std::getline(lines, line)) {
          ++rows;
          std::istringstream fields(line);
          std::string field;
          std::getline(fields, field, ',');
          while (std::getline(fields, field, ',')) finite = finite && std::isfinite(std::stod(field));
        }
        v.require(rows == N + 1, label + " rows");
        v.require(finite, label + " finite");
      }
    }
  });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
