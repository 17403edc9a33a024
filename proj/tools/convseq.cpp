#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "convseq/config.hpp"

namespace {

using namespace convseq;

SequenceSpec parse_b(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception&) {
    // Not JSON: a bare catalog name such as fibonacci_geometric.
    return catalog_b(text);
  }
  return sequence_from_json(j);
}

Json parse_json_arg(const std::string& text, const std::string& flag) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ConfigError(flag + " is not valid JSON: " + e.what());
  }
}

Coefficient exponent(double re, double im) {
  if (im == 0.0 && std::nearbyint(re) == re && std::fabs(re) <= 4096.0) return Coefficient(static_cast<long>(re));
  return Coefficient(Complex(re, im));
}

struct Job {
  RunConfig config;
  Command command;
};

// Runs one command built from flags; same exit codes as `run`.
int emit(const std::function<Job()>& build, const std::string& name, const std::string& format,
         const std::string& out_path) {
  try {
    const auto [config, command] = build();
    OutputFormat f;
    if (format.empty()) {
      f = (command.name == "alpha" || command.name == "a" || command.name == "plotdata") ? OutputFormat::Csv
                                                                                          : OutputFormat::Json;
    } else if (format == "csv") {
      f = OutputFormat::Csv;
    } else if (format == "json") {
      f = OutputFormat::Json;
    } else {
      throw ConfigError("--format must be json or csv");
    }
    const std::string text = execute_command(config, command, f);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      file << text;
      if (!file) throw std::runtime_error("cannot write " + out_path);
    }
    return 0;
  } catch (const PreconditionViolation& e) {
    std::cerr << "error: " << name << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << name << ": " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convolution-recurrence toolkit: alpha tables, limits, steering solves, constants, plot data"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Execute a JSON config");
  run_cmd->add_option("config", config_path, "Config file")->required();

  std::string b_text, format, out_path, initials_text, roots_text, lj_text, limit_text = "1", route = "direct";
  std::string target;
  int m = 1, dim = 2, k = 0;
  std::size_t n = 0;
  double a_re = 2.0, a_im = 0.0;

  auto add_common = [&](CLI::App* sub, bool needs_n) {
    sub->add_option("-b,--b", b_text, "b as JSON (array or object) or a catalog name")->required();
    sub->add_option("-m,--m", m, "Shift m >= 1");
    auto* opt = sub->add_option("-n,--n", n, "Truncation index N");
    if (needs_n) opt->required();
    sub->add_option("--format", format, "json or csv");
    sub->add_option("-o,--out", out_path, "Output file (stdout when omitted)");
  };

  auto* alpha_cmd = app.add_subcommand("alpha", "Basis sequences alpha_k(0..N)");
  add_common(alpha_cmd, true);
  alpha_cmd->add_option("--route", route, "direct or series");

  auto* a_cmd = app.add_subcommand("a", "The sequence a from its initial values");
  add_common(a_cmd, true);
  a_cmd->add_option("--initials", initials_text, "JSON array of m initial values")->required();

  auto* limits_cmd = app.add_subcommand("limits", "Closed and numeric limits, radii, roots");
  add_common(limits_cmd, true);

  auto* solve_cmd = app.add_subcommand("solve", "Initial values steering a_n to a target limit");
  add_common(solve_cmd, false);
  solve_cmd->add_option("--limit", limit_text, "Target limit (JSON coefficient)");
  solve_cmd->add_option("--roots", roots_text, "JSON array of m-1 roots of B(s)-s^m");
  solve_cmd->add_option("--lj", lj_text, "JSON array of the m-1 values L_j (zeros by default)");

  auto* const_cmd = app.add_subcommand("constants", "Partial sums for zeta, 1/zeta, pi/4 and e");
  const_cmd->add_option("--target", target, "zeta_direct, zeta_mobius, zeta_hasse, pi_leibniz, euler_e")->required();
  const_cmd->add_option("--a-re", a_re, "Real part of the zeta exponent");
  const_cmd->add_option("--a-im", a_im, "Imaginary part of the zeta exponent");
  const_cmd->add_option("-n,--n", n, "Truncation index N")->required();
  const_cmd->add_option("--format", format, "json or csv");
  const_cmd->add_option("-o,--out", out_path, "Output file (stdout when omitted)");

  auto* plot_cmd = app.add_subcommand("plotdata", "Orbit pairs or triples of consecutive alpha_k values");
  add_common(plot_cmd, true);
  plot_cmd->add_option("--dim", dim, "2 or 3");
  plot_cmd->add_option("-k,--k", k, "Which alpha_k");

  auto* catalog_cmd = app.add_subcommand("catalog", "List catalog kernels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage problems are input errors; --help still exits 0.
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (run_cmd->parsed()) return convseq::run(std::filesystem::path(config_path), std::cout, std::cerr);
  if (catalog_cmd->parsed()) {
    for (const auto& name : catalog_names()) std::cout << name << "\n";
    return 0;
  }

  auto base = [&](std::size_t N) {
    RunConfig c;
    c.b = parse_b(b_text);
    c.m = m;
    c.N = N;
    return c;
  };

  if (alpha_cmd->parsed()) {
    return emit([&] { return Job{base(n), {"alpha", {{"route", route}}}}; }, "alpha", format, out_path);
  }
  if (a_cmd->parsed()) {
    return emit(
        [&] {
          auto c = base(n);
          c.initials = coefficients_from_json(parse_json_arg(initials_text, "--initials"));
          return Job{c, {"a", Json::object()}};
        },
        "a", format, out_path);
  }
  if (limits_cmd->parsed()) {
    return emit([&] { return Job{base(n), {"limits", Json::object()}}; }, "limits", format, out_path);
  }
  if (solve_cmd->parsed()) {
    return emit(
        [&] {
          Json options = Json::object();
          options["limit"] = parse_json_arg(limit_text, "--limit");
          if (!roots_text.empty()) options["roots"] = parse_json_arg(roots_text, "--roots");
          if (!lj_text.empty()) options["L_j"] = parse_json_arg(lj_text, "--lj");
          return Job{base(std::max<std::size_t>(n, static_cast<std::size_t>(std::max(m, 1)))), {"solve", options}};
        },
        "solve", format, out_path);
  }
  if (const_cmd->parsed()) {
    return emit(
        [&] {
          RunConfig c;
          c.N = n;
          return Job{c, {"constants", {{"target", target}, {"a", coefficient_to_json(exponent(a_re, a_im))}}}};
        },
        "constants", format, out_path);
  }
  if (plot_cmd->parsed()) {
    return emit([&] { return Job{base(n), {"plotdata", {{"dim", dim}, {"k", k}}}}; }, "plotdata", format, out_path);
  }
  return 1;
}
