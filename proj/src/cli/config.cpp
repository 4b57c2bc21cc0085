#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

#include "kicked/cli.hpp"
#include "kicked/csv.hpp"
#include "kicked/error.hpp"

namespace kicked::cli {

namespace {

const std::vector<std::string> kRegimes = {"resonance", "one_photon", "two_photon", "full_resonance"};
const std::vector<std::string> kAxisParams = {"period", "delta1", "delta1p", "omega1p", "theta1p"};

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& msg) const {
    const int line = node.Mark().is_null() ? 0 : node.Mark().line + 1;
    throw Error(Errc::InvalidConfig, source_ + ":" + std::to_string(line) + ": " + msg);
  }

  void require_map(const YAML::Node& node, const std::string& what) const {
    if (!node.IsMap()) fail(node, what + " must be a mapping");
  }

  void allow_keys(const YAML::Node& node, const std::string& what, std::initializer_list<const char*> keys) const {
    require_map(node, what);
    for (const auto& kv : node) {
      const std::string key = kv.first.as<std::string>();
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
        fail(kv.first, "unknown key '" + key + "' in " + what);
      }
    }
  }

  std::string text(const YAML::Node& node, const std::string& what) const {
    if (!node.IsScalar()) fail(node, what + " must be a scalar");
    return node.Scalar();
  }

  // Plain decimals or multiples of pi such as "pi", "-pi/3", "2pi".
  double number(const YAML::Node& node, const std::string& what) const {
    std::string s = text(node, what);
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    try {
      const auto at = s.find("pi");
      if (at == std::string::npos) return parse_double(s);
      std::string coef = s.substr(0, at);
      if (!coef.empty() && coef.back() == '*') coef.pop_back();
      double value = std::numbers::pi;
      if (coef == "-") {
        value = -value;
      } else if (!coef.empty() && coef != "+") {
        value *= parse_double(coef);
      }
      const std::string rest = s.substr(at + 2);
      if (!rest.empty()) {
        if (rest.front() != '/') fail(node, what + " is not a number: '" + node.Scalar() + "'");
        value /= parse_double(rest.substr(1));
      }
      if (!std::isfinite(value)) fail(node, what + " must be finite");
      return value;
    } catch (const Error& e) {
      if (e.code() == Errc::InvalidConfig) throw;
      fail(node, what + " is not a number: '" + node.Scalar() + "'");
    }
  }

  int integer(const YAML::Node& node, const std::string& what) const {
    const double x = number(node, what);
    if (x != std::floor(x) || std::abs(x) > 1e9) fail(node, what + " must be an integer");
    return static_cast<int>(x);
  }

  void maybe(const YAML::Node& map, const char* key, double& out, const std::string& what) const {
    if (map[key]) out = number(map[key], what + "." + key);
  }

 private:
  std::string source_;
};

void read_two_level(const Reader& r, const YAML::Node& n, const std::string& what, double& delta, double& omega,
                    double& theta) {
  r.maybe(n, "delta1", delta, what);
  r.maybe(n, "omega1", omega, what);
  r.maybe(n, "theta1", theta, what);
}

void read_three_level(const Reader& r, const YAML::Node& n, const std::string& what, double& d1, double& d2,
                      double& o1, double& o2, double& t1, double& t2) {
  r.maybe(n, "delta1", d1, what);
  r.maybe(n, "delta2", d2, what);
  r.maybe(n, "omega1", o1, what);
  r.maybe(n, "omega2", o2, what);
  r.maybe(n, "theta1", t1, what);
  r.maybe(n, "theta2", t2, what);
}

void parse_system(const Reader& r, const YAML::Node& n, ScenarioConfig& c) {
  r.require_map(n, "system");
  if (!n["kind"]) r.fail(n, "system.kind is required");
  const std::string kind = r.text(n["kind"], "system.kind");
  if (kind == "two_level") {
    c.kind = SystemKind::two_level;
    r.allow_keys(n, "system", {"kind", "delta1", "omega1", "theta1"});
    read_two_level(r, n, "system", c.sys2.delta1, c.sys2.omega1, c.sys2.theta1);
  } else if (kind == "three_level") {
    c.kind = SystemKind::three_level;
    r.allow_keys(n, "system", {"kind", "delta1", "delta2", "omega1", "omega2", "theta1", "theta2"});
    auto& s = c.sys3;
    read_three_level(r, n, "system", s.delta1, s.delta2, s.omega1, s.omega2, s.theta1, s.theta2);
  } else {
    r.fail(n["kind"], "system.kind must be two_level or three_level");
  }
}

void parse_kick(const Reader& r, const YAML::Node& n, ScenarioConfig& c) {
  if (c.kind == SystemKind::two_level) {
    r.allow_keys(n, "kick", {"period", "style", "delta1", "omega1", "theta1"});
    read_two_level(r, n, "kick", c.kick2.delta, c.kick2.omega, c.kick2.theta);
  } else {
    r.allow_keys(n, "kick", {"period", "delta1", "delta2", "omega1", "omega2", "theta1", "theta2"});
    auto& k = c.kick3;
    read_three_level(r, n, "kick", k.delta1, k.delta2, k.omega1, k.omega2, k.theta1, k.theta2);
  }
  if (n["style"]) {
    const std::string style = r.text(n["style"], "kick.style");
    if (style == "frequency") {
      c.style = KickStyle::frequency;
    } else if (style == "amplitude") {
      c.style = KickStyle::amplitude;
    } else if (style == "phase") {
      c.style = KickStyle::phase;
    } else {
      r.fail(n["style"], "kick.style must be frequency, amplitude or phase");
    }
  }
  if (n["period"]) {
    const std::string p = r.text(n["period"], "kick.period");
    if (p.rfind("auto:", 0) == 0) {
      c.period_auto = p.substr(5);
      if (std::find(kRegimes.begin(), kRegimes.end(), c.period_auto) == kRegimes.end()) {
        r.fail(n["period"], "unknown period rule '" + p + "'");
      }
      if (c.kind == SystemKind::two_level && c.period_auto != "resonance") {
        r.fail(n["period"], "two-level configs only support auto:resonance");
      }
    } else {
      c.period = r.number(n["period"], "kick.period");
      if (!(c.period > 0.0)) r.fail(n["period"], "kick.period must be positive");
    }
  }
}

void parse_run(const Reader& r, const YAML::Node& n, ScenarioConfig& c) {
  r.allow_keys(n, "run", {"samples_per_period", "horizon", "schedule", "grid", "axes", "target", "goal"});
  if (n["samples_per_period"]) {
    c.samples_per_period = r.integer(n["samples_per_period"], "run.samples_per_period");
    if (c.samples_per_period < 1) r.fail(n["samples_per_period"], "run.samples_per_period must be at least 1");
  }
  if (n["horizon"]) {
    c.horizon = r.number(n["horizon"], "run.horizon");
    if (!(c.horizon >= 0.0)) r.fail(n["horizon"], "run.horizon must be non-negative");
  }
  if (n["schedule"]) {
    const YAML::Node& list = n["schedule"];
    if (!list.IsSequence()) r.fail(list, "run.schedule must be a list");
    for (const auto& item : list) {
      r.allow_keys(item, "schedule entry", {"mode", "time", "periods"});
      if (!item["mode"]) r.fail(item, "schedule entry needs a mode");
      const std::string mode = r.text(item["mode"], "schedule mode");
      ScheduleEntry e;
      if (mode == "free") {
        if (!item["time"] || item["periods"]) r.fail(item, "free segments take a time");
        e.amount = r.number(item["time"], "schedule time");
      } else if (mode == "kicked") {
        if (!item["periods"] || item["time"]) r.fail(item, "kicked segments take a number of periods");
        e.mode = SegmentMode::kicked;
        e.amount = r.integer(item["periods"], "schedule periods");
      } else {
        r.fail(item["mode"], "schedule mode must be free or kicked");
      }
      if (e.amount < 0.0) r.fail(item, "schedule amounts must be non-negative");
      c.schedule.push_back(e);
    }
  }
  if (n["grid"]) {
    const YAML::Node& g = n["grid"];
    r.allow_keys(g, "run.grid", {"start", "stop", "step"});
    if (!g["start"] || !g["stop"] || !g["step"]) r.fail(g, "run.grid needs start, stop and step");
    PeriodGrid grid{r.number(g["start"], "grid.start"), r.number(g["stop"], "grid.stop"),
                    r.number(g["step"], "grid.step")};
    if (!(grid.step > 0.0)) r.fail(g["step"], "grid.step must be positive");
    if (!(grid.start > 0.0) && grid.stop >= grid.start) r.fail(g["start"], "grid periods must be positive");
    c.grid = grid;
  }
  if (n["axes"]) {
    const YAML::Node& list = n["axes"];
    if (!list.IsSequence()) r.fail(list, "run.axes must be a list");
    for (const auto& item : list) {
      r.allow_keys(item, "axis", {"param", "start", "stop", "count"});
      if (!item["param"] || !item["start"] || !item["stop"] || !item["count"]) {
        r.fail(item, "axis needs param, start, stop and count");
      }
      Axis a{r.text(item["param"], "axis.param"), r.number(item["start"], "axis.start"),
             r.number(item["stop"], "axis.stop"), r.integer(item["count"], "axis.count")};
      if (std::find(kAxisParams.begin(), kAxisParams.end(), a.param) == kAxisParams.end()) {
        r.fail(item["param"], "unknown axis parameter '" + a.param + "'");
      }
      if (a.count < 0) r.fail(item["count"], "axis.count must be non-negative");
      c.axes.push_back(a);
    }
  }
  if (n["target"]) {
    c.target = r.text(n["target"], "run.target");
    if (c.target != "state2" && c.target != "state3") r.fail(n["target"], "run.target must be state2 or state3");
  }
  if (n["goal"]) {
    c.goal = r.number(n["goal"], "run.goal");
    if (!(c.goal >= 0.0 && c.goal <= 1.0)) r.fail(n["goal"], "run.goal must lie in [0, 1]");
  }
}

void parse_output(const Reader& r, const YAML::Node& n, ScenarioConfig& c) {
  r.allow_keys(n, "output", {"path", "format"});
  if (n["path"]) c.output_path = r.text(n["path"], "output.path");
  if (n["format"]) {
    c.output_format = r.text(n["format"], "output.format");
    if (c.output_format != "csv") r.fail(n["format"], "output.format must be csv");
  }
}

void validate_physics(const Reader& r, const YAML::Node& root, const ScenarioConfig& c) {
  try {
    if (c.kind == SystemKind::two_level) {
      validate(c.sys2);
      validate(c.kick2);
    } else {
      validate(c.sys3);
      validate(c.kick3);
    }
  } catch (const Error& e) {
    r.fail(root["system"], e.what());
  }
}

std::string num(double x) { return format_double(x); }

}  // namespace

std::vector<double> Axis::values() const {
  std::vector<double> out;
  if (count <= 0) return out;
  if (count == 1) return {start};
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(start + (stop - start) * i / (count - 1));
  return out;
}

ScenarioConfig parse_config(const std::string& text, const std::string& source) {
  const Reader r(source);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw Error(Errc::InvalidConfig, source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  try {
    r.allow_keys(root, "config", {"figure", "system", "kick", "run", "output"});
    ScenarioConfig c;
    if (root["figure"]) {
      c.figure = r.text(root["figure"], "figure");
      if (!is_figure_id(c.figure)) r.fail(root["figure"], "unknown figure id '" + c.figure + "'");
    }
    if (!root["system"]) r.fail(root, "missing system block");
    parse_system(r, root["system"], c);
    if (root["kick"]) parse_kick(r, root["kick"], c);
    if (root["run"]) parse_run(r, root["run"], c);
    if (root["output"]) parse_output(r, root["output"], c);
    validate_physics(r, root, c);
    return c;
  } catch (const YAML::Exception& e) {
    throw Error(Errc::InvalidConfig, source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidConfig, path + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string dump_config(const ScenarioConfig& c) {
  std::ostringstream os;
  os << "# units: frequencies in Omega1, times in 1/Omega1, angles in radians\n";
  if (!c.figure.empty()) os << "figure: " << c.figure << "\n";
  os << "system:\n";
  if (c.kind == SystemKind::two_level) {
    os << "  kind: two_level\n"
       << "  delta1: " << num(c.sys2.delta1) << "\n"
       << "  omega1: " << num(c.sys2.omega1) << "\n"
       << "  theta1: " << num(c.sys2.theta1) << "\n";
  } else {
    const auto& s = c.sys3;
    os << "  kind: three_level\n"
       << "  delta1: " << num(s.delta1) << "\n  delta2: " << num(s.delta2) << "\n"
       << "  omega1: " << num(s.omega1) << "\n  omega2: " << num(s.omega2) << "\n"
       << "  theta1: " << num(s.theta1) << "\n  theta2: " << num(s.theta2) << "\n";
  }
  os << "kick:\n";
  if (!c.period_auto.empty()) {
    os << "  period: auto:" << c.period_auto << "\n";
  } else if (c.period > 0.0) {
    os << "  period: " << num(c.period) << "\n";
  }
  if (c.kind == SystemKind::two_level) {
    const char* style = c.style == KickStyle::frequency ? "frequency"
                        : c.style == KickStyle::amplitude ? "amplitude"
                                                          : "phase";
    os << "  style: " << style << "\n"
       << "  delta1: " << num(c.kick2.delta) << "\n"
       << "  omega1: " << num(c.kick2.omega) << "\n"
       << "  theta1: " << num(c.kick2.theta) << "\n";
  } else {
    const auto& k = c.kick3;
    os << "  delta1: " << num(k.delta1) << "\n  delta2: " << num(k.delta2) << "\n"
       << "  omega1: " << num(k.omega1) << "\n  omega2: " << num(k.omega2) << "\n"
       << "  theta1: " << num(k.theta1) << "\n  theta2: " << num(k.theta2) << "\n";
  }
  os << "run:\n"
     << "  samples_per_period: " << c.samples_per_period << "\n"
     << "  horizon: " << num(c.horizon) << "\n";
  if (!c.schedule.empty()) {
    os << "  schedule:\n";
    for (const ScheduleEntry& e : c.schedule) {
      if (e.mode == SegmentMode::free) {
        os << "    - {mode: free, time: " << num(e.amount) << "}\n";
      } else {
        os << "    - {mode: kicked, periods: " << num(e.amount) << "}\n";
      }
    }
  }
  if (c.grid) {
    os << "  grid: {start: " << num(c.grid->start) << ", stop: " << num(c.grid->stop)
       << ", step: " << num(c.grid->step) << "}\n";
  }
  if (!c.axes.empty()) {
    os << "  axes:\n";
    for (const Axis& a : c.axes) {
      os << "    - {param: " << a.param << ", start: " << num(a.start) << ", stop: " << num(a.stop)
         << ", count: " << a.count << "}\n";
    }
  }
  if (!c.target.empty()) os << "  target: " << c.target << "\n";
  os << "  goal: " << num(c.goal) << "\n";
  os << "output:\n"
     << "  path: " << c.output_path << "\n"
     << "  format: " << c.output_format << "\n";
  return os.str();
}

}  // namespace kicked::cli
