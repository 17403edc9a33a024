#include "convseq/io.hpp"

#include <cmath>
#include <sstream>

namespace convseq {

namespace {

Rational rational_field(const Json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_string()) return Rational(v.get<std::string>(), 10);
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ConfigError(std::string("rational field '") + key + "' must be a decimal string");
}

Json optional_coefficient(const std::optional<Coefficient>& x) {
  return x ? coefficient_to_json(*x) : Json(nullptr);
}

Json radius_to_json(const std::optional<RadiusEstimate>& est) {
  if (!est) return nullptr;
  Json per = Json::array();
  for (const auto& [n, r] : est->per_index) per.push_back({n, r});
  return {{"radius", est->radius}, {"mode", to_string(est->mode)}, {"per_index", per}};
}

Json complex_to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::string radius_cell(const std::optional<RadiusEstimate>& est) {
  return est ? format_double(est->radius) : "";
}

}  // namespace

Json coefficient_to_json(const Coefficient& x) {
  if (x.is_exact()) {
    return {{"num", x.exact().get_num().get_str()}, {"den", x.exact().get_den().get_str()}};
  }
  return complex_to_json(x.floating());
}

Coefficient coefficient_from_json(const Json& j) {
  try {
    if (j.is_number_integer()) return Coefficient(j.get<long long>());
    if (j.is_number_float()) return Coefficient::real(j.get<double>());
    if (j.is_string()) return Coefficient::parse_rational(j.get<std::string>());
    if (j.is_object()) {
      if (j.contains("num")) {
        if (j.size() != 2 || !j.contains("den")) throw ConfigError("a rational needs exactly 'num' and 'den'");
        const Rational den = rational_field(j, "den");
        if (den == 0) throw ConfigError("rational with zero denominator");
        return Coefficient(Rational(rational_field(j, "num") / den));
      }
      if (j.contains("re")) {
        for (const auto& [key, value] : j.items()) {
          if (key != "re" && key != "im") throw ConfigError("unexpected key '" + key + "' in complex value");
        }
        const double re = j.at("re").get<double>();
        const double im = j.contains("im") ? j.at("im").get<double>() : 0.0;
        return Coefficient(Complex(re, im));
      }
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed coefficient: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("malformed coefficient: ") + e.what());
  } catch (const NumericError& e) {
    throw ConfigError(std::string("malformed coefficient: ") + e.what());
  }
  throw ConfigError("cannot read a coefficient from " + j.dump());
}

std::vector<Coefficient> coefficients_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("expected an array of coefficients, got " + j.dump());
  std::vector<Coefficient> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(coefficient_from_json(x));
  return out;
}

Json coefficients_to_json(std::span<const Coefficient> xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(coefficient_to_json(x));
  return out;
}

SequenceSpec sequence_from_json(const Json& j) {
  if (j.is_array()) return SequenceSpec::finite(coefficients_from_json(j));
  if (j.is_string()) return catalog_b(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("b must be an array, a catalog name or an object with 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "finite") {
    for (const auto& [key, value] : j.items()) {
      if (key != "kind" && key != "values") throw ConfigError("unknown key '" + key + "' in finite b");
    }
    if (!j.contains("values")) throw ConfigError("finite b needs 'values'");
    return SequenceSpec::finite(coefficients_from_json(j.at("values")));
  }
  if (kind == "catalog" || kind == "self_recurrent") {
    for (const auto& [key, value] : j.items()) {
      if (key != "kind" && key != "name" && key != "params") throw ConfigError("unknown key '" + key + "' in catalog b");
    }
    if (!j.contains("name")) throw ConfigError("catalog b needs 'name'");
    CatalogParams params;
    if (j.contains("params")) {
      if (!j.at("params").is_object()) throw ConfigError("catalog params must be an object");
      for (const auto& [key, value] : j.at("params").items()) params.emplace(key, coefficient_from_json(value));
    }
    return catalog_b(j.at("name").get<std::string>(), params);
  }
  throw ConfigError("unknown b kind '" + kind + "'");
}

Json sequence_to_json(const SequenceSpec& b) {
  if (!b.name().empty()) {
    Json params = Json::object();
    for (const auto& [key, value] : b.params()) params[key] = coefficient_to_json(value);
    return {{"kind", "catalog"}, {"name", b.name()}, {"params", params}};
  }
  return {{"kind", "finite"}, {"values", coefficients_to_json(b.prefix(*b.finite_length()))}};
}

Json alpha_to_json(const AlphaTable& alpha) {
  Json rows = Json::array();
  for (const auto& row : alpha.rows) rows.push_back(coefficients_to_json(row));
  return {{"m", alpha.m},
          {"N", alpha.length() == 0 ? 0 : alpha.length() - 1},
          {"route", alpha.route == AlphaRoute::Direct ? "direct" : "series"},
          {"alpha", rows}};
}

Json limit_report_to_json(const LimitReport& report) {
  Json limits = Json::array();
  for (int k = 0; k < report.m; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const auto& numeric = report.numeric[i];
    limits.push_back({{"k", k},
                      {"closed", optional_coefficient(report.closed[i].value)},
                      {"closed_reason", report.closed[i].reason},
                      {"numeric", coefficient_to_json(numeric.value)},
                      {"converged", numeric.converged},
                      {"spread", numeric.spread},
                      {"window", numeric.window},
                      {"radius_M", radius_to_json(report.radius_M[i])},
                      {"radius_G", radius_to_json(report.radius_G[i])}});
  }
  Json roots = nullptr;
  if (report.denominator_roots) {
    roots = Json::array();
    for (const auto& r : report.denominator_roots->roots) {
      roots.push_back({{"re", r.value.real()},
                       {"im", r.value.imag()},
                       {"multiplicity", r.multiplicity},
                       {"at_one", r.at_one},
                       {"residual", r.residual}});
    }
  }
  return {{"m", report.m},
          {"N", report.N},
          {"weighted_mean", coefficient_to_json(report.weighted_mean)},
          {"sums_to_one",
           {{"holds", report.sums_to_one.holds},
            {"sum", coefficient_to_json(report.sums_to_one.sum)},
            {"residual", report.sums_to_one.residual}}},
          {"limits", limits},
          {"denominator_roots", roots}};
}

Json solve_report_to_json(const SolveReport& report) {
  Json matrix = Json::array();
  for (const auto& row : report.matrix) matrix.push_back(coefficients_to_json(row));
  return {{"m", report.m},
          {"matrix", matrix},
          {"rhs", coefficients_to_json(report.rhs)},
          {"roots_used", coefficients_to_json(report.roots_used)},
          {"solution", coefficients_to_json(report.solution)},
          {"determinant", coefficient_to_json(report.determinant)},
          {"determinant_closed_form", coefficient_to_json(report.determinant_closed_form)},
          {"solved", report.solved},
          {"residual", report.residual}};
}

Json constant_run_to_json(const ConstantRun& run) {
  return {{"target", to_string(run.target)},
          {"a", coefficient_to_json(run.a)},
          {"N", run.N},
          {"alpha_partial", coefficients_to_json(run.alpha_partial)},
          {"b_weighted_tail", coefficients_to_json(run.b_weighted_tail)},
          {"final_estimate", coefficient_to_json(run.final_estimate)},
          {"reference", complex_to_json(run.reference)},
          {"oracle_max_deviation", run.oracle_max_deviation},
          {"oracle_match", run.oracle_match}};
}

std::string alpha_to_csv(const AlphaTable& alpha) {
  std::ostringstream out;
  out << "n";
  for (int k = 0; k < alpha.m; ++k) out << ",alpha_" << k;
  out << "\n";
  for (std::size_t n = 0; n < alpha.length(); ++n) {
    out << n;
    for (int k = 0; k < alpha.m; ++k) out << "," << alpha.at(k, n).to_string();
    out << "\n";
  }
  return out.str();
}

std::string sequence_to_csv(std::span<const Coefficient> a, const std::string& column) {
  std::ostringstream out;
  out << "n," << column << "\n";
  for (std::size_t n = 0; n < a.size(); ++n) out << n << "," << a[n].to_string() << "\n";
  return out.str();
}

std::string limit_report_to_csv(const LimitReport& report) {
  std::ostringstream out;
  out << "k,closed,numeric,converged,radius_M,radius_G\n";
  for (int k = 0; k < report.m; ++k) {
    const auto i = static_cast<std::size_t>(k);
    out << k << "," << (report.closed[i].value ? report.closed[i].value->to_string() : "") << ","
        << report.numeric[i].value.to_string() << "," << (report.numeric[i].converged ? "true" : "false") << ","
        << radius_cell(report.radius_M[i]) << "," << radius_cell(report.radius_G[i]) << "\n";
  }
  return out.str();
}

std::string solve_report_to_csv(const SolveReport& report) { return sequence_to_csv(report.solution, "a"); }

std::string constant_run_to_csv(const ConstantRun& run) {
  std::ostringstream out;
  out << "n,alpha_0,weighted_b\n";
  for (std::size_t n = 0; n < run.alpha_partial.size(); ++n) {
    out << n << "," << run.alpha_partial[n].to_string() << "," << run.b_weighted_tail[n].to_string() << "\n";
  }
  return out.str();
}

std::string plot_decimal(const Coefficient& x) {
  if (x.is_exact()) return format_double(rational_to_double(x.exact()));
  const Complex z = x.floating();
  if (z.imag() != 0.0) throw DomainError("plot data needs real values, got " + x.to_string());
  return format_double(z.real());
}

}  // namespace convseq
