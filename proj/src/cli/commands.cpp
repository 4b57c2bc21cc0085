#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "internal.hpp"
#include "kicked/parallel.hpp"
#include "kicked/squarewave.hpp"
#include "kicked/two_level.hpp"

namespace kicked::cli {

namespace detail {

ScenarioConfig with_param(const ScenarioConfig& c, const std::string& param, double value) {
  ScenarioConfig out = c;
  const bool two = c.kind == SystemKind::two_level;
  if (param == "period") {
    out.period = value;
    out.period_auto.clear();
  } else if (param == "delta1") {
    (two ? out.sys2.delta1 : out.sys3.delta1) = value;
  } else if (param == "delta1p") {
    (two ? out.kick2.delta : out.kick3.delta1) = value;
  } else if (param == "omega1p") {
    (two ? out.kick2.omega : out.kick3.omega1) = value;
  } else if (param == "theta1p") {
    (two ? out.kick2.theta : out.kick3.theta1) = value;
  } else {
    throw Error(Errc::InvalidConfig, "unknown axis parameter '" + param + "'");
  }
  return out;
}

int samples(const ScenarioConfig& c, const RunOptions& o) {
  return o.samples_per_period > 0 ? o.samples_per_period : c.samples_per_period;
}

namespace {

double style_limit(const ScenarioConfig& c) {
  try {
    return omega_eff_limit(c.sys2, c.kick2);
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

std::string eff2_table(const ScenarioConfig& c, const RunOptions& o) {
  const Axis& axis = c.axes.front();
  const std::vector<double> xs = axis.values();
  const bool by_period = axis.param == "period";
  std::vector<std::string> rows(xs.size());
  parallel_for(xs.size(), o.threads, [&](std::size_t i) {
    const ScenarioConfig p = with_param(c, axis.param, xs[i]);
    validate(p.kick2);
    const double t = resolve_period(p, o);
    const FFunctions f = f_functions(p.sys2, {t, p.kick2});
    const EffectiveHamiltonian2 eff = effective_hamiltonian(p.sys2, {t, p.kick2});
    std::vector<double> values{xs[i], t, f.f1, f.f2, f.f3, f.f4, eff.delta_eff, eff.omega_eff, eff.theta_eff,
                               style_limit(p)};
    if (by_period) values.erase(values.begin());
    rows[i] = row(values);
  });
  std::string out = (by_period ? "" : axis.param + ",") + "period,f1,f2,f3,f4,delta_eff,omega_eff,theta_eff,limit\n";
  for (const std::string& r : rows) out += r;
  return out;
}

}  // namespace detail

using detail::row;

namespace {

constexpr double kPi = std::numbers::pi;

std::string list_text(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + format_double(xs[i]);
  return out.empty() ? "none" : out;
}

SweepOptions sweep_options(const ScenarioConfig& c, const RunOptions& o) {
  SweepOptions s;
  s.horizon_periods = static_cast<int>(std::ceil(c.horizon));
  s.samples_per_period = detail::samples(c, o);
  s.threads = o.threads;
  return s;
}

Regime regime_from_name(const std::string& name) {
  if (name == "one_photon") return Regime::one_photon;
  if (name == "two_photon") return Regime::two_photon;
  if (name == "full_resonance") return Regime::full_resonance;
  throw Error(Errc::InvalidConfig, "unknown regime '" + name + "'");
}

}  // namespace

double resolve_period(const ScenarioConfig& c, const RunOptions& o) {
  if (c.period_auto.empty()) {
    if (!(c.period > 0.0)) throw Error(Errc::InvalidConfig, "kick.period is required");
    return c.period;
  }
  if (c.kind == SystemKind::two_level) return first_resonance(c.sys2, c.kick2).period;
  if (c.period_auto == "resonance") {
    const auto sys = ThreeLevelSpecialParams::from_general(c.sys3);
    const auto kick = SpecialImpulse::from_general(c.kick3);
    const std::vector<double> ts = special_resonance_periods(sys, kick, 4);
    if (ts.empty()) throw Error(Errc::NoSolution, "no resonance period for this kick");
    return ts.front();
  }
  if (!c.grid) throw Error(Errc::InvalidConfig, "auto:" + c.period_auto + " needs run.grid");
  const Regime want = regime_from_name(c.period_auto);
  for (const SweepPoint& p : sweep_period(c.sys3, c.kick3, *c.grid, sweep_options(c, o))) {
    if (p.regime == want) return p.period;
  }
  throw Error(Errc::NoSolution, "no grid period in the " + c.period_auto + " regime");
}

CommandOutput cmd_eff2(const ScenarioConfig& c, const RunOptions& o) {
  detail::require_kind(c, SystemKind::two_level, "eff2");
  CommandOutput out;
  std::ostringstream os;
  const auto& s = c.sys2;
  const auto& k = c.kick2;
  os << "system: delta1=" << format_double(s.delta1) << " omega1=" << format_double(s.omega1)
     << " theta1=" << format_double(s.theta1) << "\n";
  os << "kick: delta1=" << format_double(k.delta) << " omega1=" << format_double(k.omega)
     << " theta1=" << format_double(k.theta) << "\n";
  if (!c.axes.empty()) {
    out.files.emplace_back("eff2.csv", detail::eff2_table(c, o));
    os << "sweep: " << c.axes.front().param << " with " << c.axes.front().values().size() << " points\n";
  }
  if (c.axes.empty() || !c.period_auto.empty() || c.period > 0.0) {
    const double t = resolve_period(c, o);
    const FFunctions f = f_functions(s, {t, k});
    const EffectiveHamiltonian2 eff = effective_hamiltonian(s, {t, k});
    os << "period: " << format_double(t) << "\n";
    os << "f: f1=" << format_double(f.f1) << " f2=" << format_double(f.f2) << " f3=" << format_double(f.f3)
       << " f4=" << format_double(f.f4) << "\n";
    os << "effective: delta_eff=" << format_double(eff.delta_eff) << " omega_eff=" << format_double(eff.omega_eff)
       << " theta_eff=" << format_double(eff.theta_eff) << "\n";
    const double m = k.energy() / kPi;
    const bool at_point = std::round(m) >= 1.0 && std::abs(m - std::round(m)) < 1e-4;
    if (at_point) {
      os << "destruction_of_coupling: yes (E1' = " << static_cast<int>(std::round(m)) << " pi)\n";
    } else {
      os << "destruction_of_coupling: no\n";
    }
  }
  os << "resonance_periods: " << list_text(resonance_periods(s, k, 5)) << "\n";
  os << "cdc_points: " << list_text(cdc_points(k.omega, 12)) << "\n";
  const char* style = c.style == KickStyle::frequency ? "frequency"
                      : c.style == KickStyle::amplitude ? "amplitude"
                                                        : "phase";
  try {
    os << "limit (" << style << " kick): " << format_double(omega_eff_limit(s, k)) << "\n";
  } catch (const Error& e) {
    os << "limit (" << style << " kick): undefined (" << errc_name(e.code()) << ")\n";
  }
  if (c.style == KickStyle::phase) {
    os << "limit_estimate: " << format_double(phase_kick_limit_estimate(s, k.theta)) << "\n";
  }
  out.report = os.str();
  return out;
}

CommandOutput cmd_sweep3(const ScenarioConfig& c, const RunOptions& o) {
  detail::require_kind(c, SystemKind::three_level, "sweep3");
  if (!c.grid) throw Error(Errc::InvalidConfig, "sweep3 needs run.grid");
  const std::vector<SweepPoint> pts = sweep_period(c.sys3, c.kick3, *c.grid, sweep_options(c, o));
  std::string csv = "period,p1_min,p2_max,p3_max,regime\n";
  for (const SweepPoint& p : pts) {
    csv += join_row({p.period, p.p1_min, p.p2_max, p.p3_max}) + "," + regime_name(p.regime) + "\n";
  }
  std::ostringstream os;
  os << "points: " << pts.size() << "\n";
  for (Regime r : {Regime::one_photon, Regime::two_photon, Regime::full_resonance}) {
    const auto it = std::find_if(pts.begin(), pts.end(), [&](const SweepPoint& p) { return p.regime == r; });
    os << regime_name(r) << ": " << (it == pts.end() ? std::string("none") : format_double(it->period)) << "\n";
  }
  return {os.str(), {{"sweep3.csv", csv}}};
}

CommandOutput cmd_inversion(const ScenarioConfig& c, const RunOptions& o) {
  const int spp = detail::samples(c, o);
  std::ostringstream os;
  CommandOutput out;
  if (c.kind == SystemKind::three_level) {
    if (c.target.empty()) throw Error(Errc::InvalidConfig, "three-level inversion needs run.target");
    const double t = resolve_period(c, o);
    TransitionOptions opts;
    opts.samples_per_period = spp;
    double before = 0.0, after = 0.0;
    bool seen_kicks = false;
    for (const ScheduleEntry& e : c.schedule) {
      if (e.mode == SegmentMode::kicked) {
        seen_kicks = true;
      } else {
        (seen_kicks ? after : before) += e.amount;
      }
    }
    if (!c.schedule.empty()) {
      opts.free_before = before;
      opts.free_after = after;
    }
    const TargetState target = c.target == "state2" ? TargetState::state2 : TargetState::state3;
    const SelectiveTransition r = selective_transition(c.sys3, c.kick3, t, t, target, c.goal, opts);
    double p2 = 0.0, p3 = 0.0;
    for (const auto& p : r.trajectory.populations) {
      p2 = std::max(p2, p(1));
      p3 = std::max(p3, p(2));
    }
    os << "period: " << format_double(t) << "\nkicks: " << r.kicks << "\np2_max: " << format_double(p2)
       << "\np3_max: " << format_double(p3) << "\n";
    out.files.emplace_back("transition.csv", detail::trajectory_text(r.trajectory));
    out.report = os.str();
    return out;
  }
  double before = 2.0, after = 4.0;
  int kicks = -1;
  if (!c.schedule.empty()) {
    before = after = 0.0;
    int kicked_entries = 0;
    for (const ScheduleEntry& e : c.schedule) {
      if (e.mode == SegmentMode::kicked) {
        ++kicked_entries;
        kicks = e.amount > 0 ? static_cast<int>(e.amount) : -1;
      } else {
        (kicked_entries ? after : before) += e.amount;
      }
    }
    if (kicked_entries != 1) throw Error(Errc::InvalidConfig, "inversion schedule needs exactly one kicked segment");
  }
  const double t = resolve_period(c, o);
  const InversionResult r = population_inversion(c.sys2, {t, c.kick2}, before, after, spp, kicks);
  os << "period: " << format_double(t) << "\nn_eff: " << format_double(r.n_eff) << "\nkicks: " << r.kicks
     << "\nfinal_p2: " << format_double(r.final_p2)
     << "\nresidual_oscillation: " << format_double(r.residual_oscillation) << "\n";
  out.files.emplace_back("inversion.csv", detail::trajectory_text(r.trajectory));
  out.report = os.str();
  return out;
}

CommandOutput cmd_squarewave(const ScenarioConfig& c, const RunOptions& o) {
  detail::require_kind(c, SystemKind::two_level, "squarewave");
  const SquareWaveDesign d = design_square_wave(c.sys2, c.kick2);
  const int spp = detail::samples(c, o);
  const PulseComparison cmp = compare_square_wave(c.sys2, d.spec, kPi / (2.0 * c.sys2.omega1), spp);
  std::string csv = "t_res,P1_square,P2_square,P1_res,P2_res\n";
  for (std::size_t i = 0; i < cmp.square.size(); ++i) {
    const auto& p = cmp.square.populations[i];
    csv += row({cmp.reference_times[i], p(0), p(1), 1.0 - cmp.reference_p2[i], cmp.reference_p2[i]});
  }
  const int periods = c.horizon > 0.0 ? static_cast<int>(std::ceil(c.horizon)) : 10;
  std::ostringstream sched;
  write_pulse_schedule(sched, pulse_schedule(c.sys2, d.spec, periods));
  std::ostringstream os;
  os << "period: " << format_double(d.spec.T) << "\nsegment_duration: " << format_double(d.spec.Tprime)
     << "\nsquare_period: " << format_double(d.spec.Ts) << "\nbranch_k: " << d.spec.branch_k
     << "\nsegment: delta=" << format_double(d.spec.segment.delta) << " omega="
     << format_double(d.spec.segment.omega) << " theta=" << format_double(d.spec.segment.theta)
     << "\nomega_eff: " << format_double(d.omega_eff) << "\nomega_eff_square: " << format_double(d.omega_eff_square)
     << "\ndeviation: " << format_double(cmp.deviation) << "\n";
  return {os.str(), {{"squarewave.csv", csv}, {"squarewave_schedule.txt", sched.str()}}};
}

}  // namespace kicked::cli
