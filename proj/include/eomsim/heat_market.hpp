#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "eomsim/core/costs.hpp"
#include "eomsim/core/types.hpp"
#include "eomsim/feasibility.hpp"

namespace eomsim {

inline constexpr double kDefaultUnservedHeatPenalty = 100.0;  // EUR/MWh_th

struct HeatAward {
  std::map<std::string, double> served;  // MW_th per CHP unit
  double unserved_heat = 0.0;            // MW_th

  double served_total() const {
    double s = 0.0;
    for (const auto& [id, mw] : served) s += mw;
    return s;
  }
};

/// Cost of the electricity a unit of heat forces, EUR per MWh thermal.
inline double heat_marginal_cost(const PlantUnit& plant, const FuelPriceSet& prices) {
  if (!plant.is_chp()) throw DomainError("heat_marginal_cost: unit '" + plant.id + "' is not a CHP unit");
  return variable_cost(plant, prices) * plant.power_to_heat_ratio;
}

/// Heat a CHP unit can serve next interval: its thermal capacity, limited so
/// that the forced electric output stays within the unit's reachable range.
inline double heat_capability(const PlantUnit& plant, const PlantState& state) {
  if (!plant.is_chp()) return 0.0;
  PlantState free = state;
  free.committed_heat = 0.0;
  const FeasibleRange range = feasible_output_range(plant, free);
  if (!range.can_run() || range.hi <= 0.0) return 0.0;
  return std::max(0.0, std::min(plant.chp_heat_capacity, range.hi / plant.power_to_heat_ratio));
}

/// Fills aggregate district-heat demand from the cheapest CHP units first
/// (ties by id) and records each unit's heat commitment in `states`.
inline HeatAward clear_heat(std::span<const PlantUnit> units, std::span<PlantState> states,
                            double heat_demand, const FuelPriceSet& prices) {
  if (units.size() != states.size()) throw InputError("clear_heat: units and states differ in length");
  if (!(heat_demand >= 0.0)) throw InputError("clear_heat: heat demand must be >= 0");

  std::vector<std::size_t> chp;
  std::vector<double> cost(units.size(), 0.0);
  for (std::size_t i = 0; i < units.size(); ++i) {
    states[i].committed_heat = 0.0;
    if (units[i].is_chp()) {
      chp.push_back(i);
      cost[i] = heat_marginal_cost(units[i], prices);
    }
  }
  std::sort(chp.begin(), chp.end(), [&](std::size_t a, std::size_t b) {
    if (cost[a] != cost[b]) return cost[a] < cost[b];
    return units[a].id < units[b].id;
  });

  HeatAward award;
  double remaining = heat_demand;
  for (std::size_t i : chp) {
    const double take = std::min(remaining, heat_capability(units[i], states[i]));
    award.served[units[i].id] = take;
    states[i].committed_heat = take;
    remaining -= take;
  }
  award.unserved_heat = std::max(0.0, remaining);
  return award;
}

}  // namespace eomsim
