#pragma once

#include "eomsim/core/types.hpp"

namespace eomsim {

/// Short-run marginal cost in EUR/MWh electric: fuel and CO2 scaled by the
/// electric efficiency, plus other variable O&M. CHP heat does not alter it.
inline double variable_cost(const PlantUnit& plant, const FuelPriceSet& prices) {
  const double fuel = prices.price(plant.fuel);
  return fuel / plant.efficiency +
         prices.co2_price * plant.thermal_emission_factor / plant.efficiency +
         plant.other_variable_cost;
}

/// tCO2 per MWh electric.
inline double specific_emissions(const PlantUnit& plant) {
  return plant.thermal_emission_factor / plant.efficiency;
}

}  // namespace eomsim
