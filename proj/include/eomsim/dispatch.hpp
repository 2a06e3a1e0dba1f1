#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "eomsim/core/costs.hpp"
#include "eomsim/core/types.hpp"
#include "eomsim/diagnostics.hpp"
#include "eomsim/feasibility.hpp"

namespace eomsim {

inline constexpr double kDispatchTolerance = 1e-6;  // MW

/// One unit's box for the portfolio optimization. Units that stay off use
/// lo = hi = 0.
struct RebalanceUnit {
  std::string id;
  double variable_cost = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

struct RebalanceResult {
  std::vector<double> setpoints;  // same order as the input units
  double imbalance = 0.0;         // sum(setpoints) - awarded_total
};

/// Splits a portfolio's market award over its units at least variable cost.
///
/// The objective sum(vc_i * x_i) is separable and linear, the constraints are
/// boxes lo_i <= x_i <= hi_i plus one equality on the sum. Any feasible point
/// starts from the floors; moving a MW from a dearer unit to a cheaper one
/// with headroom never raises cost, so filling the bands cheapest-first
/// (ties by id) reaches the optimum (fractional knapsack argument).
///
/// If the award lies outside [sum(lo), sum(hi)] the nearest total is
/// produced and the gap is returned as imbalance.
inline RebalanceResult portfolio_rebalance(std::span<const RebalanceUnit> units, double awarded_total,
                                           Diagnostics* diag = nullptr) {
  RebalanceResult out;
  out.setpoints.resize(units.size());
  double remaining = awarded_total;
  for (std::size_t i = 0; i < units.size(); ++i) {
    out.setpoints[i] = units[i].lo;
    remaining -= units[i].lo;
  }
  if (remaining > 0.0) {
    std::vector<std::size_t> order(units.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (units[a].variable_cost != units[b].variable_cost) return units[a].variable_cost < units[b].variable_cost;
      return units[a].id < units[b].id;
    });
    for (std::size_t i : order) {
      if (remaining <= 0.0) break;
      const double add = std::min(remaining, units[i].hi - units[i].lo);
      if (add <= 0.0) continue;
      out.setpoints[i] += add;
      remaining -= add;
    }
  }
  out.imbalance = -remaining;
  if (diag && std::abs(out.imbalance) > kDispatchTolerance) {
    diag->note(out.imbalance > 0 ? "imbalance_overgeneration" : "imbalance_undersupply",
               std::to_string(std::abs(out.imbalance)) + " MW");
  }
  return out;
}

/// Convenience form: boxes from feasible ranges; `online_next[i]` false
/// keeps unit i at zero.
inline RebalanceResult portfolio_rebalance(std::span<const PlantUnit> units,
                                           std::span<const FeasibleRange> ranges,
                                           std::span<const bool> online_next, double awarded_total,
                                           const FuelPriceSet& prices, Diagnostics* diag = nullptr) {
  std::vector<RebalanceUnit> boxes;
  boxes.reserve(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    RebalanceUnit b{units[i].id, variable_cost(units[i], prices), 0.0, 0.0};
    if (online_next[i]) {
      b.lo = ranges[i].lo;
      b.hi = ranges[i].hi;
    }
    boxes.push_back(std::move(b));
  }
  return portfolio_rebalance(boxes, awarded_total, diag);
}

struct CostLedgerEntry {
  bool started = false;
  bool stopped = false;
  double startup_cost = 0.0;    // EUR
  double generation_mwh = 0.0;  // net electric
  double fuel_mwh_th = 0.0;
  double co2_t = 0.0;
};

struct StateTransition {
  PlantState state;
  CostLedgerEntry ledger;
};

/// Moves a unit to its final operating point for the interval. `state` is
/// the start-of-interval state carrying this interval's heat commitment and
/// reserve bands. Throws ContractViolation for infeasible set points.
inline StateTransition advance_state(const PlantUnit& plant, const PlantState& state, double setpoint,
                                     double activation) {
  const auto fail = [&](const std::string& why) {
    throw ContractViolation("advance_state(" + plant.id + "): " + why);
  };
  const FeasibleRange range = feasible_output_range(plant, state);
  const bool run = setpoint > kDispatchTolerance;

  if (run) {
    if (!range.can_run()) fail("unit cannot start yet");
    if (!range.contains(setpoint, kDispatchTolerance)) {
      fail("set point " + std::to_string(setpoint) + " outside [" + std::to_string(range.lo) + ", " +
           std::to_string(range.hi) + "]");
    }
  } else {
    if (range.must_be_online) fail("unit must stay online");
    if (std::abs(setpoint) > kDispatchTolerance) fail("negative set point");
    if (activation != 0.0) fail("activation on an offline unit");
  }
  if (activation > state.reserved_positive + kDispatchTolerance ||
      -activation > state.reserved_negative + kDispatchTolerance) {
    fail("activation exceeds awarded reserve band");
  }

  StateTransition out{state, {}};
  PlantState& next = out.state;
  next.online = run;
  next.output = run ? setpoint : 0.0;
  next.activation = run ? activation : 0.0;
  next.intervals_in_current_state = run == state.online ? state.intervals_in_current_state + 1 : 1;

  auto& ledger = out.ledger;
  ledger.started = run && !state.online;
  ledger.stopped = !run && state.online;
  ledger.startup_cost = ledger.started ? plant.startup_cost : 0.0;
  ledger.generation_mwh = next.net_output() * kIntervalHours;
  ledger.fuel_mwh_th = ledger.generation_mwh / plant.efficiency;
  ledger.co2_t = ledger.fuel_mwh_th * plant.thermal_emission_factor;
  return out;
}

/// Operating-state invariants of one unit after an interval; empty when all
/// hold. Reserve bands are checked against the scheduled output, the net
/// output (with activation) against the technical limits.
inline std::string unit_state_violation(const PlantUnit& plant, const PlantState& s,
                                        double tol = kDispatchTolerance) {
  if (!s.online) {
    if (s.output != 0.0 || s.activation != 0.0 || s.has_obligation()) return "offline unit carries output or obligations";
    return {};
  }
  if (s.output + s.reserved_positive > plant.nominal_capacity + tol) return "output + positive reserve above nominal";
  if (s.output - s.reserved_negative < plant.min_stable_output - tol) return "output - negative reserve below min stable";
  if (s.net_output() > plant.nominal_capacity + tol) return "net output above nominal";
  if (s.net_output() < plant.min_stable_output - tol) return "net output below min stable";
  if (plant.power_to_heat_ratio * s.committed_heat > s.output + tol) return "heat-forced output not delivered";
  if (s.intervals_in_current_state < 1) return "state counter below 1";
  return {};
}

}  // namespace eomsim
