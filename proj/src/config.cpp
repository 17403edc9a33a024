#include "convseq/config.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "convseq/series.hpp"

namespace convseq {

namespace {

const std::map<std::string, std::set<std::string>>& command_options() {
  static const std::map<std::string, std::set<std::string>> options = {
      {"alpha", {"route"}},
      {"a", {}},
      {"limits", {}},
      {"solve", {"limit", "L_j", "roots"}},
      {"constants", {"target", "a"}},
      {"plotdata", {"dim", "k"}},
  };
  return options;
}

OutputFormat default_format(const std::string& command) {
  if (command == "alpha" || command == "a" || command == "plotdata") return OutputFormat::Csv;
  return OutputFormat::Json;
}

std::size_t non_negative(const Json& j, const std::string& key) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ConfigError("'" + key + "' must be a non-negative integer");
  }
  return static_cast<std::size_t>(j.get<long long>());
}

Command parse_command(const Json& j) {
  Command cmd;
  if (j.is_string()) {
    cmd.name = j.get<std::string>();
  } else if (j.is_object() && j.size() == 1) {
    cmd.name = j.begin().key();
    cmd.options = j.begin().value();
    if (!cmd.options.is_object()) throw ConfigError("options of command '" + cmd.name + "' must be an object");
  } else {
    throw ConfigError("a command is a name or a single-key object, got " + j.dump());
  }
  const auto it = command_options().find(cmd.name);
  if (it == command_options().end()) throw ConfigError("unknown command '" + cmd.name + "'");
  for (const auto& [key, value] : cmd.options.items()) {
    if (!it->second.contains(key)) throw ConfigError("command '" + cmd.name + "' does not accept '" + key + "'");
  }
  return cmd;
}

OutputFormat parse_format(const Json& j) {
  const auto s = j.get<std::string>();
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw ConfigError("output format must be 'json' or 'csv', got '" + s + "'");
}

std::string extension(OutputFormat f) { return f == OutputFormat::Json ? "json" : "csv"; }

std::string render(const Json& j) { return j.dump(2) + "\n"; }

std::string run_alpha(const RunConfig& c, const Command& cmd, OutputFormat f) {
  const std::string route = cmd.options.value("route", "direct");
  AlphaTable alpha;
  if (route == "direct") {
    alpha = compute_alpha(RecurrenceProblem{c.b, c.m, c.N});
  } else if (route == "series") {
    RecurrenceProblem{c.b, c.m, c.N}.validate();
    alpha = alpha_via_series(c.b, c.m, c.N);
  } else {
    throw ConfigError("alpha route must be 'direct' or 'series'");
  }
  return f == OutputFormat::Json ? render(alpha_to_json(alpha)) : alpha_to_csv(alpha);
}

std::string run_a(const RunConfig& c, OutputFormat f) {
  if (!c.initials) throw ConfigError("command 'a' needs 'initials'");
  const auto a = compute_a(RecurrenceProblem{c.b, c.m, c.N}, *c.initials);
  return f == OutputFormat::Json ? render(Json{{"a", coefficients_to_json(a)}}) : sequence_to_csv(a);
}

std::string run_limits(const RunConfig& c, OutputFormat f) {
  const auto report = analyze_limits(c.b, c.m, c.N, Tolerance::from_env());
  return f == OutputFormat::Json ? render(limit_report_to_json(report)) : limit_report_to_csv(report);
}

std::string run_solve(const RunConfig& c, const Command& cmd, OutputFormat f) {
  const Coefficient lim = cmd.options.contains("limit") ? coefficient_from_json(cmd.options.at("limit")) : Coefficient(1);
  const auto roots = cmd.options.contains("roots") ? coefficients_from_json(cmd.options.at("roots")) : default_roots(c.b, c.m);
  std::vector<Coefficient> lj(static_cast<std::size_t>(std::max(c.m - 1, 0)), Coefficient(0));
  if (cmd.options.contains("L_j")) lj = coefficients_from_json(cmd.options.at("L_j"));
  auto report = solve_system(build_system(c.b, c.m, roots, lj, limit_rhs(c.b, c.m, lim)));
  return f == OutputFormat::Json ? render(solve_report_to_json(report)) : solve_report_to_csv(report);
}

std::string run_constants(const RunConfig& c, const Command& cmd, OutputFormat f) {
  if (!cmd.options.contains("target")) throw ConfigError("command 'constants' needs 'target'");
  const auto target = parse_constant_target(cmd.options.at("target").get<std::string>());
  Coefficient a(0);
  if (cmd.options.contains("a")) {
    a = coefficient_from_json(cmd.options.at("a"));
  } else if (target == ConstantTarget::ZetaDirect || target == ConstantTarget::ZetaMobius ||
             target == ConstantTarget::ZetaHasse) {
    throw ParamError(to_string(target) + " requires parameter 'a'");
  }
  const auto result = run_constant(target, a, c.N);
  return f == OutputFormat::Json ? render(constant_run_to_json(result)) : constant_run_to_csv(result);
}

std::string run_plot(const RunConfig& c, const Command& cmd, OutputFormat f) {
  const auto dim = static_cast<int>(cmd.options.contains("dim") ? non_negative(cmd.options.at("dim"), "dim") : 2);
  const auto k = static_cast<int>(cmd.options.contains("k") ? non_negative(cmd.options.at("k"), "k") : 0);
  if (dim != 2 && dim != 3) throw ConfigError("plotdata dim must be 2 or 3");
  if (k >= c.m) throw ConfigError("plotdata k must be below m");
  const auto alpha = compute_alpha(RecurrenceProblem{c.b, c.m, c.N + static_cast<std::size_t>(dim) - 1});
  const auto rows = plot_data(alpha.rows[static_cast<std::size_t>(k)], dim, c.N);
  if (f == OutputFormat::Csv) return plot_to_csv(rows);
  Json out = Json::array();
  for (const auto& row : rows) {
    Json r = Json::array({row.n});
    for (const auto& v : row.values) r.push_back(std::stod(plot_decimal(v)));
    out.push_back(r);
  }
  return render(Json{{"dim", dim}, {"rows", out}});
}

}  // namespace

RunConfig parse_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> allowed = {"b", "m", "N", "initials", "commands", "output"};
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  for (const char* key : {"b", "N", "commands"}) {
    if (!j.contains(key)) throw ConfigError(std::string("config needs '") + key + "'");
  }
  RunConfig c;
  c.N = non_negative(j.at("N"), "N");
  if (j.contains("m")) {
    c.m = static_cast<int>(non_negative(j.at("m"), "m"));
    if (c.m < 1) throw ConfigError("'m' must be >= 1");
  }
  if (j.contains("initials")) c.initials = coefficients_from_json(j.at("initials"));
  if (!j.at("commands").is_array()) throw ConfigError("'commands' must be an array");
  for (const auto& cmd : j.at("commands")) c.commands.push_back(parse_command(cmd));
  if (j.contains("output")) {
    const auto& out = j.at("output");
    if (!out.is_object()) throw ConfigError("'output' must be an object");
    for (const auto& [key, value] : out.items()) {
      if (key != "path" && key != "format") throw ConfigError("unknown output key '" + key + "'");
    }
    if (out.contains("path")) c.output_dir = out.at("path").get<std::string>();
    if (out.contains("format")) c.format = parse_format(out.at("format"));
  }
  // Last, so schema problems are reported before b's own checks run.
  c.b = sequence_from_json(j.at("b"));
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  try {
    return parse_config(j);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config has a wrongly typed field: ") + e.what());
  }
}

std::string execute_command(const RunConfig& config, const Command& command, OutputFormat format) {
  try {
    if (command.name == "alpha") return run_alpha(config, command, format);
    if (command.name == "a") return run_a(config, format);
    if (command.name == "limits") return run_limits(config, format);
    if (command.name == "solve") return run_solve(config, command, format);
    if (command.name == "constants") return run_constants(config, command, format);
    if (command.name == "plotdata") return run_plot(config, command, format);
  } catch (const Json::exception& e) {
    throw ConfigError("command '" + command.name + "' has a wrongly typed option: " + e.what());
  }
  throw ConfigError("unknown command '" + command.name + "'");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::map<std::string, int> seen;
  for (const auto& command : config.commands) {
    const OutputFormat format = config.format.value_or(default_format(command.name));
    try {
      const std::string text = execute_command(config, command, format);
      if (config.output_dir) {
        std::filesystem::create_directories(*config.output_dir);
        const int count = ++seen[command.name];
        const std::string stem = count == 1 ? command.name : command.name + "_" + std::to_string(count);
        const auto file = *config.output_dir / (stem + "." + extension(format));
        std::ofstream f(file, std::ios::binary);
        f << text;
        if (!f) throw std::runtime_error("cannot write " + file.string());
      } else {
        if (config.commands.size() > 1) out << "# " << command.name << "\n";
        out << text;
      }
    } catch (const PreconditionViolation& e) {
      err << "error: " << command.name << ": " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      err << "internal error: " << command.name << ": " << e.what() << "\n";
      return 1;
    }
  }
  return 0;
}

int run(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = load_config(config_path);
  } catch (const PreconditionViolation& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return run(config, out, err);
}

std::vector<PlotRow> plot_data(std::span<const Coefficient> row, int dim, std::size_t N) {
  if (dim != 2 && dim != 3) throw DomainError("plot dimension must be 2 or 3");
  const auto d = static_cast<std::size_t>(dim);
  if (row.size() < N + d) {
    throw LengthError("plot of N=" + std::to_string(N) + " in dimension " + std::to_string(dim) + " needs " +
                      std::to_string(N + d) + " terms, got " + std::to_string(row.size()));
  }
  std::vector<PlotRow> rows;
  rows.reserve(N + 1);
  for (std::size_t n = 0; n <= N; ++n) rows.push_back({n, {row.begin() + static_cast<std::ptrdiff_t>(n),
                                                           row.begin() + static_cast<std::ptrdiff_t>(n + d)}});
  return rows;
}

std::string plot_to_csv(const std::vector<PlotRow>& rows) {
  std::ostringstream out;
  const bool three = !rows.empty() && rows.front().values.size() == 3;
  out << (three ? "n,x,y,z\n" : "n,x,y\n");
  for (const auto& row : rows) {
    out << row.n;
    for (const auto& v : row.values) out << "," << plot_decimal(v);
    out << "\n";
  }
  return out.str();
}

}  // namespace convseq
