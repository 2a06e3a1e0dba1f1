#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eomsim/calendar.hpp"
#include "eomsim/core/costs.hpp"
#include "eomsim/core/types.hpp"
#include "eomsim/core/validation.hpp"
#include "eomsim/diagnostics.hpp"
#include "eomsim/dispatch.hpp"
#include "eomsim/energy_market.hpp"
#include "eomsim/feasibility.hpp"
#include "eomsim/forecast.hpp"
#include "eomsim/heat_market.hpp"
#include "eomsim/report.hpp"
#include "eomsim/reserve_market.hpp"

namespace eomsim {

struct VreFeed {
  std::string name;
  TimeSeries series;
};

struct SimulationConfig {
  std::string scenario_name = "reference";
  Fleet fleet;
  FuelPriceSet prices;
  TimeSeries demand;
  std::vector<VreFeed> vre;
  std::optional<TimeSeries> net_exports;
  std::optional<TimeSeries> heat_demand;
  std::optional<TimeSeries> activation;
  ReserveRequirements reserve;
  PriceBounds bounds;
  double unserved_heat_penalty = kDefaultUnservedHeatPenalty;
  TradingCalendar calendar;
  std::vector<std::pair<std::string, std::string>> input_hashes;
  bool record_unit_trace = false;
  bool check_invariants = true;
};

/// Everything the main phase needs from the preparation phase.
struct Preparation {
  TimeSeries residual;
  TimeSeries vre_total;
  TimeSeries net_exports;
  MeritOrder merit;
  TimeSeries pfc;
  double pfc_p25 = 0.0;
  double pfc_p75 = 0.0;
};

/// Collects every input problem so a run can abort before interval 0.
inline std::vector<std::string> validate_config(const SimulationConfig& c) {
  std::vector<std::string> out;
  for (const auto& v : validate_fleet(c.fleet)) out.push_back("unit '" + v.unit_id + "' field " + v.field + ": " + v.message);
  for (const auto& p : c.fleet.plants) {
    if (!c.prices.has(p.fuel)) out.push_back("no fuel price for '" + std::string(to_string(p.fuel)) + "' (unit '" + p.id + "')");
  }
  if (c.demand.empty()) out.push_back("demand series is empty");
  const auto aligned = [&](const TimeSeries& s, const std::string& name) {
    if (!s.aligned_with(c.demand)) out.push_back(name + " series is not aligned with demand (year/start/length)");
  };
  for (const auto& f : c.vre) aligned(f.series, "VRE '" + f.name + "'");
  if (c.net_exports) aligned(*c.net_exports, "net export");
  if (c.heat_demand) {
    aligned(*c.heat_demand, "heat demand");
    if (std::any_of(c.heat_demand->values.begin(), c.heat_demand->values.end(), [](double v) { return !(v >= 0.0); })) {
      out.push_back("heat demand must be >= 0 everywhere");
    }
  }
  if (c.activation) aligned(*c.activation, "reserve activation");
  const auto finite = [&](const TimeSeries& s, const std::string& name) {
    if (std::any_of(s.values.begin(), s.values.end(), [](double v) { return !std::isfinite(v); })) {
      out.push_back(name + " series contains non-finite values");
    }
  };
  finite(c.demand, "demand");
  for (const auto& f : c.vre) finite(f.series, "VRE '" + f.name + "'");
  if (c.demand.first_interval + c.demand.size() > TimeSeries::intervals_in_year(c.demand.year)) {
    out.push_back("demand series runs past the end of its year");
  }
  if (!(c.bounds.floor < c.bounds.cap)) out.push_back("price floor must be below cap");
  if (!(c.reserve.positive_mw >= 0.0) || !(c.reserve.negative_mw >= 0.0)) out.push_back("reserve requirements must be >= 0");
  if (c.reserve.block_intervals < 1) out.push_back("reserve block length must be >= 1 interval");
  return out;
}

inline Preparation prepare(const SimulationConfig& c, Diagnostics* diag = nullptr) {
  Preparation p;
  p.net_exports = c.net_exports ? *c.net_exports
                                : TimeSeries::constant(c.demand.year, c.demand.first_interval, c.demand.size(), 0.0);
  std::vector<TimeSeries> feeds;
  for (const auto& f : c.vre) feeds.push_back(f.series);
  p.residual = residual_load(c.demand, feeds, p.net_exports);
  p.vre_total = TimeSeries::constant(c.demand.year, c.demand.first_interval, c.demand.size(), 0.0);
  for (const auto& f : feeds) {
    for (std::size_t t = 0; t < f.size(); ++t) p.vre_total[t] += f[t];
  }
  p.merit = build_merit_order(c.fleet.plants, c.prices);
  p.pfc = price_forward_curve(p.merit, p.residual, c.bounds, diag);
  p.pfc_p25 = percentile(p.pfc.values, 25.0);
  p.pfc_p75 = percentile(p.pfc.values, 75.0);
  return p;
}

/// Warm start: units that the static merit order would run at interval 0
/// start online at their merit share (clamped to their stable range); all
/// counters are saturated so no unit is locked by history it never had.
inline std::vector<PlantState> initial_states(const std::vector<PlantUnit>& plants, const MeritOrder& merit,
                                              double residual0) {
  std::map<std::string, double> share;
  double before = 0.0;
  for (const auto& e : merit.entries()) {
    if (before < residual0) share[e.unit_id] = std::min(e.capacity, residual0 - before);
    before = e.cumulative_capacity;
  }
  std::vector<PlantState> states(plants.size());
  for (std::size_t i = 0; i < plants.size(); ++i) {
    const auto& p = plants[i];
    auto& s = states[i];
    s.intervals_in_current_state = std::max(p.min_uptime, p.min_downtime);
    if (auto it = share.find(p.id); it != share.end()) {
      s.online = true;
      s.output = std::clamp(it->second, p.min_stable_output, p.nominal_capacity);
    }
  }
  return states;
}

/// On/off decision for one portfolio after clearing. Units that must run
/// stay on; running units with an award stay on. Offline units with an award
/// start only while the units already on cannot reach the portfolio award,
/// largest award first (ties by member order).
inline std::vector<bool> commit_portfolio(const std::vector<std::size_t>& members,
                                          const std::vector<PlantState>& states,
                                          const std::vector<FeasibleRange>& ranges,
                                          const std::vector<double>& accepted) {
  std::vector<bool> on(members.size(), false);
  double award = 0.0, reach = 0.0;
  std::vector<std::size_t> starters;
  for (std::size_t m = 0; m < members.size(); ++m) {
    const std::size_t i = members[m];
    award += accepted[i];
    const bool awarded = ranges[i].can_run() && accepted[i] > kDispatchTolerance;
    if (ranges[i].must_be_online || (states[i].online && awarded)) {
      on[m] = true;
      reach += ranges[i].hi;
    } else if (awarded) {
      starters.push_back(m);
    }
  }
  std::stable_sort(starters.begin(), starters.end(),
                   [&](std::size_t a, std::size_t b) { return accepted[members[a]] > accepted[members[b]]; });
  for (std::size_t m : starters) {
    if (reach >= award - kDispatchTolerance) break;
    on[m] = true;
    reach += ranges[members[m]].hi;
  }
  return on;
}

/// Runs the preparation phase and then, for every interval: heat clearing,
/// reserve procurement at block starts, energy-only clearing, portfolio
/// re-optimization with reserve deployment, and the state update.
inline SimulationReport run_simulation(const SimulationConfig& config) {
  if (auto problems = validate_config(config); !problems.empty()) throw ValidationError(std::move(problems));

  Diagnostics diag;
  const auto& plants = config.fleet.plants;
  const Preparation prep = prepare(config, &diag);
  const std::size_t horizon = config.demand.size();
  const std::size_t n_units = plants.size();
  const std::size_t block_len = static_cast<std::size_t>(config.reserve.block_intervals);

  std::vector<double> vc(n_units);
  for (std::size_t i = 0; i < n_units; ++i) vc[i] = variable_cost(plants[i], config.prices);

  std::map<std::string, std::vector<std::size_t>> portfolios;
  for (std::size_t i = 0; i < n_units; ++i) portfolios[plants[i].owner_id].push_back(i);

  std::vector<PlantState> states =
      initial_states(plants, prep.merit, horizon > 0 ? prep.residual[0] : 0.0);
  std::vector<StorageUnit> storage = config.fleet.storage;

  SimulationReport report;
  report.scenario_name = config.scenario_name;
  report.year = config.demand.year;
  report.input_hashes = config.input_hashes;
  report.unserved_heat_penalty = config.unserved_heat_penalty;
  report.price_forward_curve = prep.pfc.values;
  for (const auto& p : plants) {
    report.installed_mw[p.fuel] += p.nominal_capacity;
    report.unit_ids.push_back(p.id);
    report.unit_fuels.push_back(p.fuel);
  }
  report.records.reserve(horizon);
  if (config.record_unit_trace) report.unit_trace.reserve(horizon * n_units);

  ReserveClearing reserve;
  std::vector<FeasibleRange> ranges(n_units);
  std::vector<double> accepted(n_units);
  std::vector<double> setpoints(n_units);
  std::vector<Bid> bids;
  std::vector<std::ptrdiff_t> bid_owner;  // >= 0 plant index, < 0 storage -(index + 1)

  for (std::size_t t = 0; t < horizon; ++t) {
    IntervalRecord rec;
    rec.interval = config.demand.first_interval + t;
    rec.demand_mw = config.demand[t];
    rec.vre_mw = prep.vre_total[t];
    rec.net_exports_mw = prep.net_exports[t];
    rec.residual_mw = prep.residual[t];

    const bool block_start = rec.interval % block_len == 0 || t == 0;
    if (block_start) {
      for (auto& s : states) s.reserved_positive = s.reserved_negative = 0.0;
      reserve = {};
    }

    // (1) district heat
    rec.heat_demand_mw = config.heat_demand ? (*config.heat_demand)[t] : 0.0;
    const HeatAward heat = clear_heat(plants, states, rec.heat_demand_mw, config.prices);
    rec.heat_unserved_mw = heat.unserved_heat;

    // (2) control reserve, procured per block
    if (block_start) {
      const ReserveBlock block{t, std::min(horizon, t + block_len - rec.interval % block_len)};
      std::vector<ReserveBid> reserve_bids;
      for (std::size_t i = 0; i < n_units; ++i) {
        auto b = formulate_reserve_bids(plants[i], states[i], prep.pfc, block, config.prices);
        reserve_bids.insert(reserve_bids.end(), b.begin(), b.end());
      }
      reserve = clear_reserve(reserve_bids, config.reserve.positive_mw, config.reserve.negative_mw);
      apply_reserve_awards(reserve, plants, states);
      rec.reserve_payment_eur = reserve.total_payment();
    }
    rec.reserve_shortfall_positive_mw = reserve.shortfall_positive;
    rec.reserve_shortfall_negative_mw = reserve.shortfall_negative;

    // (3) energy-only market
    bids.clear();
    bid_owner.clear();
    for (std::size_t i = 0; i < n_units; ++i) {
      ranges[i] = feasible_output_range(plants[i], states[i]);
      for (auto& b : formulate_energy_bids(plants[i], states[i], ranges[i], config.prices, prep.pfc, t, config.bounds)) {
        bids.push_back(std::move(b));
        bid_owner.push_back(static_cast<std::ptrdiff_t>(i));
      }
    }
    for (std::size_t k = 0; k < storage.size(); ++k) {
      for (auto& b : formulate_storage_bids(storage[k], prep.pfc_p25, prep.pfc_p75)) {
        bids.push_back(std::move(b));
        bid_owner.push_back(-static_cast<std::ptrdiff_t>(k) - 1);
      }
    }
    const ClearingResult clearing = clear_energy(bids, rec.residual_mw, config.bounds);
    rec.clearing_price = clearing.clearing_price;
    rec.deficit_mw = clearing.deficit;
    rec.surplus_mw = clearing.surplus_vre;

    std::fill(accepted.begin(), accepted.end(), 0.0);
    std::vector<double> charge(storage.size(), 0.0), discharge(storage.size(), 0.0);
    for (std::size_t b = 0; b < bids.size(); ++b) {
      if (bid_owner[b] >= 0) {
        accepted[static_cast<std::size_t>(bid_owner[b])] += clearing.accepted[b];
      } else {
        const auto k = static_cast<std::size_t>(-bid_owner[b] - 1);
        (bids[b].side == BidSide::demand ? charge[k] : discharge[k]) += clearing.accepted[b];
      }
    }

    // (4) portfolio re-optimization, reserve deployment, state update
    for (const auto& [owner, members] : portfolios) {
      const std::vector<bool> commit = commit_portfolio(members, states, ranges, accepted);
      std::vector<RebalanceUnit> boxes;
      double awarded = 0.0;
      for (std::size_t m = 0; m < members.size(); ++m) {
        const std::size_t i = members[m];
        awarded += accepted[i];
        boxes.push_back({plants[i].id, vc[i], commit[m] ? ranges[i].lo : 0.0, commit[m] ? ranges[i].hi : 0.0});
      }
      const RebalanceResult rb = portfolio_rebalance(boxes, awarded, &diag);
      for (std::size_t m = 0; m < members.size(); ++m) setpoints[members[m]] = rb.setpoints[m];
      rec.imbalance_mw += rb.imbalance;
    }

    const double signal = config.activation ? (*config.activation)[t] : 0.0;
    const ReserveDeployment deployment = deploy_reserve(reserve.awards, signal, &diag);
    rec.reserve_deployed_mw = deployment.deployed;
    rec.activation_clipped_mw = deployment.clipped;

    for (std::size_t i = 0; i < n_units; ++i) {
      const auto it = deployment.activation.find(plants[i].id);
      const double act = it == deployment.activation.end() ? 0.0 : it->second;
      const StateTransition step = advance_state(plants[i], states[i], setpoints[i], act);
      if (config.check_invariants) {
        if (auto why = unit_state_violation(plants[i], step.state); !why.empty()) {
          throw ContractViolation("interval " + std::to_string(rec.interval) + ", unit '" + plants[i].id + "': " + why);
        }
      }
      states[i] = step.state;
      const auto f = fuel_index(plants[i].fuel);
      rec.thermal_mw += states[i].net_output();
      rec.generation_mwh[f] += step.ledger.generation_mwh;
      rec.startups[f] += step.ledger.started ? 1 : 0;
      rec.startup_cost_eur += step.ledger.startup_cost;
      rec.fuel_cost_eur += step.ledger.fuel_mwh_th * config.prices.price(plants[i].fuel);
      rec.co2_t += step.ledger.co2_t;
      if (config.record_unit_trace) {
        const auto& s = states[i];
        report.unit_trace.push_back({s.output, s.activation, s.reserved_positive, s.reserved_negative, s.committed_heat,
                                     s.online, step.ledger.started});
      }
    }

    for (std::size_t k = 0; k < storage.size(); ++k) {
      auto& s = storage[k];
      s.state_of_charge += charge[k] * kIntervalHours * s.round_trip_efficiency - discharge[k] * kIntervalHours;
      s.state_of_charge = std::clamp(s.state_of_charge, 0.0, s.energy_capacity);
      rec.storage_charge_mw += charge[k];
      rec.storage_discharge_mw += discharge[k];
    }

    report.records.push_back(rec);
  }

  TradingCalendar calendar = config.calendar;
  report.aggregates = compute_aggregates(report, calendar);
  for (const auto& [kind, count] : diag.counts()) {
    report.diagnostics.push_back(kind + ": " + std::to_string(count));
  }
  return report;
}

}  // namespace eomsim
