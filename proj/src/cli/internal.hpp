#ifndef KICKED_CLI_INTERNAL_HPP
#define KICKED_CLI_INTERNAL_HPP

#include <sstream>
#include <string>
#include <vector>

#include "kicked/cli.hpp"
#include "kicked/csv.hpp"
#include "kicked/error.hpp"

namespace kicked::cli::detail {

inline std::string row(const std::vector<double>& values) { return join_row(values) + "\n"; }

inline std::string trajectory_text(const Trajectory& tr) {
  std::ostringstream os;
  write_trajectory_csv(os, tr);
  return os.str();
}

inline void require_kind(const ScenarioConfig& c, SystemKind kind, const char* command) {
  if (c.kind != kind) {
    throw Error(Errc::InvalidConfig, std::string(command) + " needs a " +
                                         (kind == SystemKind::two_level ? "two_level" : "three_level") +
                                         " system");
  }
}

// Copy of the config with one swept parameter replaced.
ScenarioConfig with_param(const ScenarioConfig& c, const std::string& param, double value);

int samples(const ScenarioConfig& c, const RunOptions& o);

// eff2 sweep table over the first axis (period, f-functions, effective
// Hamiltonian, style limit per row).
std::string eff2_table(const ScenarioConfig& c, const RunOptions& o);

}  // namespace kicked::cli::detail

#endif  // KICKED_CLI_INTERNAL_HPP
