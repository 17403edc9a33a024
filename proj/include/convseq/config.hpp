#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "convseq/io.hpp"

namespace convseq {

enum class OutputFormat { Json, Csv };

/// One requested command. `options` holds the command's own settings, e.g.
/// {"limit": 1} for solve or {"dim": 3} for plotdata.
struct Command {
  std::string name;
  Json options = Json::object();
};

struct RunConfig {
  SequenceSpec b = SequenceSpec::finite({1});
  int m = 1;
  std::size_t N = 0;
  std::optional<std::vector<Coefficient>> initials;
  std::vector<Command> commands;
  /// Directory receiving <command>.<ext>; stdout when empty.
  std::optional<std::filesystem::path> output_dir;
  /// Per-command default (csv for tables, json for reports) when unset.
  std::optional<OutputFormat> format;
};

/// Validates the schema before anything is computed; unknown keys and
/// unknown commands raise ConfigError.
RunConfig parse_config(const Json& j);
RunConfig load_config(const std::filesystem::path& path);

/// Renders one command's result in the requested format.
std::string execute_command(const RunConfig& config, const Command& command, OutputFormat format);

/// Runs every command in order. Returns 0 on success, 2 when a hypothesis or
/// input check fails (the message names it), 1 on internal errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);
int run(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);

struct PlotRow {
  std::size_t n = 0;
  std::vector<Coefficient> values;
};

/// (n, x(n), x(n+1)[, x(n+2)]) for n = 0..N. LengthError when the row is
/// shorter than N + dim.
std::vector<PlotRow> plot_data(std::span<const Coefficient> row, int dim, std::size_t N);

/// CSV with header `n,x,y` or `n,x,y,z`.
std::string plot_to_csv(const std::vector<PlotRow>& rows);

}  // namespace convseq
