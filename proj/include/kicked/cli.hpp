#ifndef KICKED_CLI_HPP
#define KICKED_CLI_HPP

// Scenario configs and the subcommands behind the `kicked` tool. Commands
// return their report and files as strings so callers can compare runs.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kicked/kick_sim.hpp"
#include "kicked/params.hpp"
#include "kicked/three_level.hpp"

namespace kicked::cli {

enum class SystemKind { two_level, three_level };

// A swept parameter: `count` evenly spaced values from start to stop.
struct Axis {
  std::string param;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  std::vector<double> values() const;
};

struct ScheduleEntry {
  SegmentMode mode = SegmentMode::free;
  double amount = 0.0;  // time for free segments, periods for kicked ones
};

struct ScenarioConfig {
  std::string figure;  // preset id, empty for plain scenarios
  SystemKind kind = SystemKind::two_level;
  TwoLevelParams sys2;
  ThreeLevelParams sys3;
  Impulse2 kick2;
  Impulse3 kick3;
  double period = 0.0;
  std::string period_auto;  // regime after "auto:", empty for a fixed period
  KickStyle style = KickStyle::frequency;
  int samples_per_period = 20;
  double horizon = 0.0;  // kick periods; 0 picks a command default
  std::vector<ScheduleEntry> schedule;
  std::optional<PeriodGrid> grid;
  std::vector<Axis> axes;
  std::string target;  // "state2" or "state3" for selective transitions
  double goal = 0.9;
  std::string output_path = ".";
  std::string output_format = "csv";
};

// Parses YAML text. Errors carry Errc::InvalidConfig and "<source>:<line>:".
ScenarioConfig parse_config(const std::string& text, const std::string& source = "<config>");
ScenarioConfig load_config(const std::string& path);
std::string dump_config(const ScenarioConfig& config);

struct RunOptions {
  int threads = 1;
  int samples_per_period = 0;  // overrides the config when positive
};

struct CommandOutput {
  std::string report;
  std::vector<std::pair<std::string, std::string>> files;  // name, contents
};

// Period of the config, resolving "auto:<regime>" to the smallest matching T.
double resolve_period(const ScenarioConfig& config, const RunOptions& options);

CommandOutput cmd_eff2(const ScenarioConfig& config, const RunOptions& options);
CommandOutput cmd_sweep3(const ScenarioConfig& config, const RunOptions& options);
CommandOutput cmd_inversion(const ScenarioConfig& config, const RunOptions& options);
CommandOutput cmd_squarewave(const ScenarioConfig& config, const RunOptions& options);
CommandOutput cmd_figure(const ScenarioConfig& config, const RunOptions& options);

const std::vector<std::string>& figure_ids();
bool is_figure_id(const std::string& id);
// Preset config with the table parameters of the figure.
ScenarioConfig figure_preset(const std::string& id);

}  // namespace kicked::cli

#endif  // KICKED_CLI_HPP
