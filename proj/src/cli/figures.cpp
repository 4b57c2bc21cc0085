#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "internal.hpp"
#include "kicked/mat_core.hpp"
#include "kicked/parallel.hpp"
#include "kicked/propagators.hpp"
#include "kicked/squarewave.hpp"
#include "kicked/two_level.hpp"

namespace kicked::cli {

using detail::row;

namespace {

constexpr double kPi = std::numbers::pi;

ScenarioConfig two_level_preset(const std::string& id, double delta1, double period, double omega1p,
                                double delta1p, double theta1p) {
  ScenarioConfig c;
  c.figure = id;
  c.kind = SystemKind::two_level;
  c.sys2 = {delta1, 1.0, 0.0};
  c.kick2 = {delta1p, omega1p, theta1p};
  c.period = period;
  return c;
}

ScenarioConfig ladder_preset(const std::string& id, double omega1p, double theta1p) {
  ScenarioConfig c;
  c.figure = id;
  c.kind = SystemKind::three_level;
  c.sys3 = {60.0, 40.0, 1.0, 2.0, 0.0, 0.0};
  c.kick3 = {60.0, 40.0, omega1p, 2.0, theta1p, 0.0};
  c.grid = PeriodGrid{0.005, 0.15, 0.001};
  c.samples_per_period = 8;
  return c;
}

const Axis& axis_named(const ScenarioConfig& c, const std::string& param) {
  for (const Axis& a : c.axes) {
    if (a.param == param) return a;
  }
  throw Error(Errc::InvalidConfig, "figure " + c.figure + " needs an axis for '" + param + "'");
}

std::string named(const std::string& id, const std::string& suffix) { return id + suffix + ".csv"; }

// Kicked trajectory from the ground state over a whole number of periods.
Trajectory kicked_run(const ScenarioConfig& c, double period, int periods, int spp) {
  KickSchedule s{period, {Segment::kicked_for(periods, period)}};
  if (c.kind == SystemKind::two_level) return evolve(c.sys2, c.kick2, s, spp);
  return evolve(c.sys3, c.kick3, s, spp);
}

CommandOutput figure_eff2(const ScenarioConfig& c, const RunOptions& o) {
  if (c.axes.empty()) throw Error(Errc::InvalidConfig, "figure " + c.figure + " needs an axis");
  std::ostringstream os;
  os << "figure " << c.figure << ": effective parameters vs " << c.axes.front().param << " ("
     << c.axes.front().count << " points)\n";
  return {os.str(), {{named(c.figure, ""), detail::eff2_table(c, o)}}};
}

CommandOutput figure_frozen(const ScenarioConfig& c, const RunOptions& o) {
  const double t = resolve_period(c, o);
  const int periods = c.horizon > 0.0 ? static_cast<int>(std::ceil(c.horizon)) : 500;
  const Trajectory tr = kicked_run(c, t, periods, detail::samples(c, o));
  double p2 = 0.0;
  for (const auto& p : tr.populations) p2 = std::max(p2, p(1));
  const EffectiveHamiltonian2 eff = effective_hamiltonian(c.sys2, {t, c.kick2});
  std::ostringstream os;
  os << "figure " << c.figure << ": " << periods << " kick periods\nomega_eff: " << format_double(eff.omega_eff)
     << "\np2_max: " << format_double(p2) << "\n";
  return {os.str(), {{named(c.figure, ""), detail::trajectory_text(tr)}}};
}

// P2^d maps over pairs of swept parameters; other parameters stay at the config values.
CommandOutput figure_validity(const ScenarioConfig& c, const RunOptions& o) {
  static const std::vector<std::pair<std::string, std::string>> panels = {
      {"omega1p", "period"},  {"delta1p", "period"},  {"theta1p", "period"},
      {"omega1p", "delta1p"}, {"delta1p", "theta1p"}, {"theta1p", "omega1p"}};
  const int spp = detail::samples(c, o);
  const double horizon_periods = c.horizon > 0.0 ? c.horizon : 1000.0;
  CommandOutput out;
  std::ostringstream os;
  os << "figure " << c.figure << ": P2^d maps over " << horizon_periods << " kick periods\n";
  const char* letters = "abcdef";
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const std::vector<double> xs = axis_named(c, panels[p].first).values();
    const std::vector<double> ys = axis_named(c, panels[p].second).values();
    std::vector<double> values(xs.size() * ys.size());
    parallel_for(values.size(), o.threads, [&](std::size_t i) {
      ScenarioConfig q = detail::with_param(c, panels[p].first, xs[i / ys.size()]);
      q = detail::with_param(q, panels[p].second, ys[i % ys.size()]);
      const double t = q.period;
      values[i] = validity_deviation(q.sys2, {t, q.kick2}, horizon_periods * t, t / spp);
    });
    std::string csv = panels[p].first + "," + panels[p].second + ",p2d\n";
    for (std::size_t i = 0; i < values.size(); ++i) csv += row({xs[i / ys.size()], ys[i % ys.size()], values[i]});
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (!values.empty()) {
      os << "panel " << letters[p] << ": min " << format_double(*lo) << " max " << format_double(*hi) << "\n";
    }
    out.files.emplace_back(named(c.figure, std::string(1, letters[p])), csv);
  }
  out.report = os.str();
  return out;
}

CommandOutput figure_ladder_coupling(const ScenarioConfig& c, const RunOptions& o) {
  const auto sys = ThreeLevelSpecialParams::from_general(c.sys3);
  const std::vector<double> xs = axis_named(c, "delta1p").values();
  std::vector<std::string> rows(xs.size());
  parallel_for(xs.size(), o.threads, [&](std::size_t i) {
    const SpecialImpulse kick{xs[i], c.kick3.omega1, c.kick3.theta1};
    const std::vector<double> ts = special_resonance_periods(sys, kick, 4);
    if (ts.empty()) {
      rows[i] = row({xs[i], std::nan(""), 0.0, std::nan("")});
      return;
    }
    const EffectiveHamiltonian3 eff = effective_hamiltonian_special(sys, kick, ts.front());
    rows[i] = row({xs[i], ts.front(), eff.omega_eff, eff.theta_eff});
  });
  std::string csv = "delta1p,period,omega_eff,theta_eff\n";
  for (const std::string& r : rows) csv += r;
  std::ostringstream os;
  os << "figure " << c.figure << ": three-level effective coupling vs kick detuning (" << xs.size()
     << " points)\n";
  return {os.str(), {{named(c.figure, ""), csv}}};
}

CommandOutput figure_ladder_dynamics(const ScenarioConfig& c, const RunOptions& o) {
  const auto sys = ThreeLevelSpecialParams::from_general(c.sys3);
  const auto kick = SpecialImpulse::from_general(c.kick3);
  const double t = resolve_period(c, o);
  const EffectiveHamiltonian3 eff = effective_hamiltonian_special(sys, kick, t);
  if (!(eff.omega_eff > 0.0)) throw Error(Errc::FrozenDynamics, "figure " + c.figure + ": no effective coupling");
  const double rabi = 2.0 * kPi / (std::sqrt(2.0) * eff.omega_eff);
  const int periods = c.horizon > 0.0 ? static_cast<int>(std::ceil(c.horizon))
                                      : static_cast<int>(std::ceil(10.0 * rabi / t));
  const Trajectory tr = kicked_run(c, t, periods, detail::samples(c, o));

  const Eigen::Matrix3cd step_eff = expm_hermitian(eff.matrix(), t);
  const Eigen::Matrix3cd step_kick = one_period_propagator(c.sys3, KickParams3{t, c.kick3});
  Eigen::Vector3cd psi = Eigen::Vector3cd::UnitX();
  Eigen::Vector3cd psi_eff = psi;
  std::string csv = "t,P1_kicked,P2_kicked,P3_kicked,P1_eff,P2_eff,P3_eff\n";
  double worst = 0.0;
  for (int n = 0; n <= periods; ++n) {
    const Eigen::Vector3d p = psi.cwiseAbs2();
    const Eigen::Vector3d q = psi_eff.cwiseAbs2();
    worst = std::max(worst, (p - q).cwiseAbs().maxCoeff());
    csv += row({n * t, p(0), p(1), p(2), q(0), q(1), q(2)});
    psi = step_kick * psi;
    psi_eff = step_eff * psi_eff;
  }
  const ConsistencyReport rep = consistency_check(g_coefficients(sys, kick), t);
  std::ostringstream os;
  os << "figure " << c.figure << ": period " << format_double(t) << "\nomega_eff: " << format_double(eff.omega_eff)
     << "\ntheta_eff: " << format_double(eff.theta_eff) << "\nperiods: " << periods
     << "\nmax_stroboscopic_deviation: " << format_double(worst)
     << "\nconsistency: " << (rep.pass ? "pass" : "fail") << "\n";
  return {os.str(), {{named(c.figure, "_stroboscopic"), csv}, {named(c.figure, ""), detail::trajectory_text(tr)}}};
}

// Regime maps vs T and one kick parameter, the T line at the config kick, and
// trajectories at the two listed periods.
CommandOutput figure_regimes(const ScenarioConfig& c, const RunOptions& o) {
  if (!c.grid) throw Error(Errc::InvalidConfig, "figure " + c.figure + " needs run.grid");
  const std::string param = c.figure == "figS4" ? "omega1p" : "theta1p";
  const std::vector<double> ys = axis_named(c, param).values();
  const std::vector<double> ts = c.grid->values();
  const int spp = detail::samples(c, o);
  const int horizon = static_cast<int>(std::ceil(c.horizon));

  std::vector<SweepPoint> map(ys.size() * ts.size());
  parallel_for(map.size(), o.threads, [&](std::size_t i) {
    const ScenarioConfig q = detail::with_param(c, param, ys[i / ts.size()]);
    map[i] = sweep_point(q.sys3, q.kick3, ts[i % ts.size()], horizon, spp);
  });
  std::string map_csv = param + ",period,p1_min,p2_max,p3_max,regime\n";
  for (std::size_t i = 0; i < map.size(); ++i) {
    const SweepPoint& p = map[i];
    map_csv += join_row({ys[i / ts.size()], p.period, p.p1_min, p.p2_max, p.p3_max}) + "," +
               regime_name(p.regime) + "\n";
  }

  SweepOptions so;
  so.horizon_periods = horizon;
  so.samples_per_period = spp;
  so.threads = o.threads;
  std::string line_csv = "period,p1_min,p2_max,p3_max,regime\n";
  for (const SweepPoint& p : sweep_period(c.sys3, c.kick3, *c.grid, so)) {
    line_csv += join_row({p.period, p.p1_min, p.p2_max, p.p3_max}) + "," + regime_name(p.regime) + "\n";
  }

  CommandOutput out;
  std::ostringstream os;
  os << "figure " << c.figure << ": regime map " << ys.size() << " x " << ts.size() << "\n";
  out.files.emplace_back(named(c.figure, "_map"), map_csv);
  out.files.emplace_back(named(c.figure, "_line"), line_csv);
  const char* letters = "fg";
  const std::vector<double> panel_ts = axis_named(c, "period").values();
  for (std::size_t k = 0; k < panel_ts.size() && k < 2; ++k) {
    const double t = panel_ts[k];
    const int periods = horizon > 0 ? horizon : default_sweep_horizon(c.sys3, t);
    const Trajectory tr = kicked_run(c, t, periods, spp);
    double p1 = 1.0, p2 = 0.0, p3 = 0.0;
    for (const auto& p : tr.populations) {
      p1 = std::min(p1, p(0));
      p2 = std::max(p2, p(1));
      p3 = std::max(p3, p(2));
    }
    os << "panel " << letters[k] << ": period " << format_double(t) << " regime "
       << regime_name(classify(p1, p2, p3)) << " p2_max " << format_double(p2) << " p3_max " << format_double(p3)
       << "\n";
    out.files.emplace_back(named(c.figure, std::string(1, letters[k])), detail::trajectory_text(tr));
  }
  out.report = os.str();
  return out;
}

CommandOutput figure_inversion(const ScenarioConfig& c, const RunOptions& o) {
  CommandOutput out = cmd_inversion(c, o);
  for (auto& f : out.files) f.first = named(c.figure, "");
  out.report = "figure " + c.figure + ": population inversion\n" + out.report;
  return out;
}

CommandOutput figure_square_map(const ScenarioConfig& c, const RunOptions& o) {
  const std::vector<double> xs = axis_named(c, "delta1").values();
  const std::vector<double> ys = axis_named(c, "delta1p").values();
  std::vector<SquareWaveDesign> designs(xs.size() * ys.size());
  parallel_for(designs.size(), o.threads, [&](std::size_t i) {
    const TwoLevelParams sys{xs[i / ys.size()], c.sys2.omega1, c.sys2.theta1};
    const Impulse2 kick{ys[i % ys.size()], c.kick2.omega, c.kick2.theta};
    designs[i] = design_square_wave(sys, kick);
  });
  std::string csv = "delta1,delta1p,period,segment_duration,branch_k,omega_eff,omega_eff_square\n";
  double peak = 0.0;
  for (std::size_t i = 0; i < designs.size(); ++i) {
    const SquareWaveDesign& d = designs[i];
    peak = std::max(peak, d.omega_eff_square / c.sys2.omega1);
    csv += row({xs[i / ys.size()], ys[i % ys.size()], d.spec.T, d.spec.Tprime, static_cast<double>(d.spec.branch_k),
                d.omega_eff, d.omega_eff_square});
  }
  std::ostringstream os;
  os << "figure " << c.figure << ": square-wave coupling map " << xs.size() << " x " << ys.size()
     << "\nmax_omega_eff_square: " << format_double(peak) << "\n";
  return {os.str(), {{named(c.figure, ""), csv}}};
}

CommandOutput figure_square_compare(const ScenarioConfig& c, const RunOptions& o) {
  CommandOutput out = cmd_squarewave(c, o);
  for (auto& f : out.files) {
    f.first = f.first == "squarewave.csv" ? named(c.figure, "") : c.figure + "_schedule.txt";
  }
  out.report = "figure " + c.figure + ": square wave vs resonance pulse\n" + out.report;
  return out;
}

// The detuning root condition drawn as y1 = E1' against the branches n pi - phi3.
CommandOutput figure_root_curves(const ScenarioConfig& c, const RunOptions& o) {
  const Axis& axis = axis_named(c, "delta1p");
  const std::vector<double> xs = axis.values();
  const double t = resolve_period(c, o);
  const auto& s = c.sys2;
  const double e1 = s.energy();
  const double w = c.kick2.omega;
  const double top = std::sqrt(w * w + std::max(axis.start * axis.start, axis.stop * axis.stop) / 4.0);
  const int branches = static_cast<int>(std::ceil(top / kPi)) + 1;
  std::string csv = "delta1p,y1";
  for (int n = 1; n <= branches; ++n) csv += ",y2_" + std::to_string(n);
  csv += "\n";
  for (double x : xs) {
    const Impulse2 kick{x, w, c.kick2.theta};
    const double ek = kick.energy();
    const double cross = 2.0 * s.omega1 * w * std::sin(s.theta1 - kick.theta) * std::sin(e1 * t);
    const double phi3 = std::atan(s.delta1 * ek * std::sin(e1 * t) / (x * e1 * std::cos(e1 * t) + cross));
    std::vector<double> values{x, ek};
    for (int n = 1; n <= branches; ++n) values.push_back(n * kPi - phi3);
    csv += row(values);
  }
  const std::vector<double> roots = resonance_detuning(s, t, w, c.kick2.theta, {axis.start, axis.stop});
  std::string roots_csv = "delta1p,y1\n";
  for (double r : roots) roots_csv += row({r, Impulse2{r, w, c.kick2.theta}.energy()});
  std::ostringstream os;
  os << "figure " << c.figure << ": " << roots.size() << " resonance detunings in [" << format_double(axis.start)
     << ", " << format_double(axis.stop) << "]\n";
  return {os.str(), {{named(c.figure, ""), csv}, {named(c.figure, "_roots"), roots_csv}}};
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"fig1a", "fig1b", "fig1c", "fig1d", "fig2a",  "fig2b",
                                               "fig2c", "fig3",  "fig4a", "fig4b", "figS4",  "figS6",
                                               "fig3sa", "fig3sb", "fig7a", "fig7b", "figS1"};
  return ids;
}

bool is_figure_id(const std::string& id) {
  const auto& ids = figure_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

ScenarioConfig figure_preset(const std::string& id) {
  ScenarioConfig c;
  if (id == "fig1a") {
    c = two_level_preset(id, 40.0, 0.0, 6.0, 40.0, 0.0);
    c.axes = {{"period", 0.001, 0.2, 200}};
  } else if (id == "fig1b") {
    c = two_level_preset(id, 40.0, 0.08, 0.0, 40.0, 0.0);
    c.style = KickStyle::amplitude;
    c.axes = {{"omega1p", 0.0, 20.0, 201}};
  } else if (id == "fig1c") {
    c = two_level_preset(id, 40.0, 0.08, 6.0, 0.0, 0.0);
    c.axes = {{"delta1p", 0.0, 100.0, 201}};
  } else if (id == "fig1d") {
    c = two_level_preset(id, 40.0, 0.0982, 1.0, 40.0, 0.0);
    c.style = KickStyle::phase;
    c.axes = {{"theta1p", -kPi, kPi, 201}};
  } else if (id == "fig2a") {
    c = two_level_preset(id, 100.0, 0.0628, 1.0, 56.5133, 0.0);
    c.horizon = 500.0;
  } else if (id == "fig2b") {
    c = two_level_preset(id, 100.0, 0.0, 1.0, 0.0, 0.0);
    c.period_auto = "resonance";
    c.axes = {{"delta1p", 1.0, 80.0, 400}};
  } else if (id == "fig2c") {
    c = two_level_preset(id, 40.0, 0.0, 0.0, 40.0, 0.0);
    c.period_auto = "resonance";
    c.style = KickStyle::amplitude;
    c.axes = {{"omega1p", 0.1, 20.0, 200}};
  } else if (id == "fig3") {
    c = two_level_preset(id, 40.0, 0.05, 1.0, 40.0, 0.0);
    c.samples_per_period = 8;
    c.horizon = 1000.0;
    c.axes = {{"period", 0.01, 0.1, 40},
              {"omega1p", 0.0, 10.0, 40},
              {"delta1p", 0.0, 80.0, 40},
              {"theta1p", -kPi, kPi, 40}};
  } else if (id == "fig4a" || id == "fig4b") {
    c.figure = id;
    c.kind = SystemKind::three_level;
    c.sys3 = {100.0, 200.0, 1.0, 1.0, 0.0, 0.0};
    c.kick3 = {18.0, 36.0, 1.0, 1.0, 0.0, 0.0};
    if (id == "fig4a") {
      c.axes = {{"delta1p", 0.5, 60.0, 120}};
    } else {
      c.period_auto = "resonance";
      c.samples_per_period = 4;
    }
  } else if (id == "figS4") {
    c = ladder_preset(id, 1.5, 0.0);
    c.axes = {{"omega1p", 0.5, 2.5, 21}, {"period", 0.0424, 0.104, 2}};
  } else if (id == "figS6") {
    c = ladder_preset(id, 1.0, kPi);
    c.axes = {{"theta1p", -kPi, kPi, 21}, {"period", 0.04318, 0.1046, 2}};
  } else if (id == "fig3sa" || id == "fig3sb") {
    const bool a = id == "fig3sa";
    c = two_level_preset(id, a ? 20.0 : 35.0, a ? 0.1359 : 0.0506, a ? 5.0 : 4.0, a ? 20.0 : 35.0, 0.0);
    c.style = KickStyle::amplitude;
    c.schedule = {{SegmentMode::free, 2.0}, {SegmentMode::kicked, a ? 4.0 : 12.0}, {SegmentMode::free, 4.0}};
  } else if (id == "fig7a") {
    c = two_level_preset(id, 1000.0, 0.0, 1.0, 12.3, 0.0);
    c.period_auto = "resonance";
    c.axes = {{"delta1", 100.0, 1000.0, 60}, {"delta1p", 1.0, 20.0, 80}};
  } else if (id == "fig7b") {
    c = two_level_preset(id, 1000.0, 0.0, 1.0, 12.3, 0.0);
    c.period_auto = "resonance";
  } else if (id == "figS1") {
    c = two_level_preset(id, 40.0, 0.05, 3.0, 0.0, kPi / 3.0);
    c.axes = {{"delta1p", 0.0, 60.0, 601}};
  } else {
    throw Error(Errc::InvalidParameter, "unknown figure id '" + id + "'");
  }
  return c;
}

CommandOutput cmd_figure(const ScenarioConfig& c, const RunOptions& o) {
  const std::string& id = c.figure;
  if (!is_figure_id(id)) throw Error(Errc::InvalidParameter, "unknown figure id '" + id + "'");
  if (id == "fig1a" || id == "fig1b" || id == "fig1c" || id == "fig1d" || id == "fig2b" || id == "fig2c") {
    return figure_eff2(c, o);
  }
  if (id == "fig2a") return figure_frozen(c, o);
  if (id == "fig3") return figure_validity(c, o);
  if (id == "fig4a") return figure_ladder_coupling(c, o);
  if (id == "fig4b") return figure_ladder_dynamics(c, o);
  if (id == "figS4" || id == "figS6") return figure_regimes(c, o);
  if (id == "fig3sa" || id == "fig3sb") return figure_inversion(c, o);
  if (id == "fig7a") return figure_square_map(c, o);
  if (id == "fig7b") return figure_square_compare(c, o);
  return figure_root_curves(c, o);
}

}  // namespace kicked::cli
