#pragma once

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "eomsim/eomsim.hpp"

namespace eomsim::test {

/// A plain, always-valid unit; tests override what they exercise.
inline PlantUnit make_unit(std::string id, double nominal = 100.0, double min_stable = 40.0,
                           FuelKind fuel = FuelKind::natural_gas) {
  PlantUnit u;
  u.id = std::move(id);
  u.name = u.id;
  u.fuel = fuel;
  u.owner_id = "owner";
  u.nominal_capacity = nominal;
  u.min_stable_output = min_stable;
  u.efficiency = 0.5;
  u.ramp_up = nominal;
  u.ramp_down = nominal;
  u.min_uptime = 1;
  u.min_downtime = 1;
  u.startup_cost = 0.0;
  u.other_variable_cost = 0.0;
  u.thermal_emission_factor = 0.2;
  u.reserve_eligible = false;
  u.commissioning_year = 2000;
  return u;
}

/// Unit whose variable cost equals `vc` under flat_prices(): fuel price
/// 10 EUR/MWh_th, efficiency 0.5, no CO2, the rest as other variable cost.
inline PlantUnit unit_with_cost(std::string id, double vc, double nominal = 100.0, double min_stable = 40.0) {
  PlantUnit u = make_unit(std::move(id), nominal, min_stable);
  u.other_variable_cost = vc - 20.0;
  return u;
}

inline FuelPriceSet flat_prices(double fuel = 10.0, double co2 = 0.0) {
  FuelPriceSet p;
  for (FuelKind f : kAllFuels) p.set(f, fuel);
  p.co2_price = co2;
  return p;
}

inline TimeSeries series(std::vector<double> values, int year = 2017, std::size_t first = 0) {
  return TimeSeries{year, first, SeriesUnit::MW, std::move(values)};
}

inline PlantState online_state(double output, int intervals = 1000) {
  PlantState s;
  s.online = true;
  s.output = output;
  s.intervals_in_current_state = intervals;
  return s;
}

inline PlantState offline_state(int intervals = 1000) {
  PlantState s;
  s.online = false;
  s.intervals_in_current_state = intervals;
  return s;
}

/// Minimal engine configuration: no reserve, no VRE, given demand.
inline SimulationConfig basic_config(std::vector<PlantUnit> plants, std::vector<double> demand, int year = 2017,
                                     std::size_t first = 0) {
  SimulationConfig c;
  c.scenario_name = "test";
  c.fleet.plants = std::move(plants);
  c.prices = flat_prices();
  c.demand = series(std::move(demand), year, first);
  c.reserve = {0.0, 0.0, kDefaultReserveBlockIntervals};
  return c;
}

inline std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("eomsim_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

/// Fixed 10-unit, four-week system (January 2017) used for the directional
/// scenario checks. 9 GW thermal: 2 GW lignite, 1.5 GW hard coal, 1.5 GW
/// nuclear, 3 GW gas, 0.6 GW oil, 0.4 GW biomass. Demand peaks near 7.6 GW;
/// wind and solar are smooth closed-form profiles with windy nights that
/// push residual load below zero.
inline SimulationConfig ten_unit_fixture() {
  const auto unit = [](std::string id, FuelKind fuel, double nom, double ms, double eff, double ef, double ramp,
                       int up, int down, double startup, double other) {
    PlantUnit u = make_unit(std::move(id), nom, ms, fuel);
    u.efficiency = eff;
    u.thermal_emission_factor = ef;
    u.ramp_up = u.ramp_down = ramp;
    u.min_uptime = up;
    u.min_downtime = down;
    u.startup_cost = startup;
    u.other_variable_cost = other;
    u.owner_id = "owner_" + u.id.substr(0, 1);
    u.reserve_eligible = true;
    return u;
  };
  std::vector<PlantUnit> plants = {
      unit("L1", FuelKind::lignite, 1000, 400, 0.40, 0.404, 150, 16, 16, 60000, 4.0),
      unit("L2", FuelKind::lignite, 1000, 400, 0.38, 0.404, 150, 16, 16, 60000, 4.0),
      unit("C1", FuelKind::hard_coal, 800, 300, 0.44, 0.337, 200, 12, 12, 40000, 3.0),
      unit("C2", FuelKind::hard_coal, 700, 280, 0.40, 0.337, 200, 12, 12, 35000, 3.0),
      unit("N1", FuelKind::nuclear, 1500, 900, 0.33, 0.0, 100, 32, 32, 150000, 8.0),
      unit("G1", FuelKind::natural_gas, 1200, 450, 0.58, 0.201, 600, 4, 4, 30000, 2.0),
      unit("G2", FuelKind::natural_gas, 1000, 400, 0.55, 0.201, 500, 4, 4, 25000, 2.0),
      unit("G3", FuelKind::natural_gas, 800, 200, 0.38, 0.201, 800, 1, 1, 8000, 2.0),
      unit("O1", FuelKind::oil, 600, 150, 0.35, 0.280, 600, 1, 1, 5000, 3.0),
      unit("B1", FuelKind::other_thermal, 400, 120, 0.30, 0.0, 100, 8, 8, 10000, 5.0),
  };
  const std::size_t n = 28 * kIntervalsPerDay;
  std::vector<double> demand(n), wind(n), solar(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double hour = static_cast<double>(t % kIntervalsPerDay) * kIntervalHours;
    const double day = static_cast<double>(t / kIntervalsPerDay);
    const int weekday = static_cast<int>(t / kIntervalsPerDay + 0) % 7;  // 2017-01-01 is a Sunday
    const bool weekend = weekday == 0 || weekday == 6;
    const double daily = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (hour - 4.0) / 24.0);
    demand[t] = (weekend ? 0.85 : 1.0) * (5200.0 + 2400.0 * daily);
    const double front = 0.5 + 0.5 * std::sin(2.0 * std::numbers::pi * (day + hour / 24.0) / 4.5);
    wind[t] = 6200.0 * std::pow(front, 3.0);
    const double sun = std::sin(std::numbers::pi * (hour - 8.0) / 8.5);
    solar[t] = hour > 8.0 && hour < 16.5 ? 2500.0 * sun : 0.0;
  }
  SimulationConfig c;
  c.scenario_name = "fixture_reference";
  c.fleet.plants = std::move(plants);
  c.prices.set(FuelKind::lignite, 4.0)
      .set(FuelKind::hard_coal, 9.0)
      .set(FuelKind::natural_gas, 18.0)
      .set(FuelKind::oil, 30.0)
      .set(FuelKind::nuclear, 3.0)
      .set(FuelKind::other_thermal, 12.0);
  c.prices.co2_price = 6.0;
  c.demand = series(std::move(demand));
  c.vre.push_back({"wind", series(std::move(wind))});
  c.vre.push_back({"solar", series(std::move(solar))});
  c.reserve = {300.0, 300.0, kDefaultReserveBlockIntervals};
  return c;
}

}  // namespace eomsim::test
