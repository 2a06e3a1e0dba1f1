#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "eomsim/calendar.hpp"
#include "eomsim/engine.hpp"

namespace eomsim::synthetic {

/// Knobs for a generated system. Everything derives from `seed`.
struct Options {
  std::uint64_t seed = 1;
  int year = 2017;
  std::size_t first_interval = 0;
  std::size_t intervals = TimeSeries::intervals_in_year(2017);
  std::size_t units = 20;
  std::size_t storage_units = 2;
  std::size_t owners = 5;
  double chp_share = 0.25;
  double reserve_share = 0.6;
  double vre_share = 0.3;  // scales installed wind (0.7 x peak) and solar (0.55 x peak)
  double demand_to_capacity = 0.85;  // peak demand relative to installed thermal capacity
  /// When set, units of each listed fuel are drawn until its capacity (MW)
  /// is reached and `units` is ignored.
  std::vector<std::pair<FuelKind, double>> capacity_mix_mw;
};

/// Installed thermal capacity of a large national system (MW).
inline std::vector<std::pair<FuelKind, double>> national_mix() {
  return {{FuelKind::lignite, 21200},    {FuelKind::hard_coal, 25000}, {FuelKind::nuclear, 11400},
          {FuelKind::natural_gas, 29600}, {FuelKind::oil, 4400},        {FuelKind::other_thermal, 5000}};
}

/// Draws with integer arithmetic on top of mt19937_64 so the sequence does
/// not depend on the standard library's distribution implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool chance(double p) { return uniform() < p; }
  double normal() {
    const double u1 = std::max(uniform(), 1e-300);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * uniform());
  }

private:
  std::mt19937_64 gen_;
};

inline FuelPriceSet default_prices() {
  FuelPriceSet p;
  p.set(FuelKind::lignite, 4.0)
      .set(FuelKind::hard_coal, 10.0)
      .set(FuelKind::natural_gas, 20.0)
      .set(FuelKind::oil, 35.0)
      .set(FuelKind::nuclear, 3.0)
      .set(FuelKind::other_thermal, 15.0);
  p.co2_price = 6.0;
  return p;
}

inline PlantUnit random_unit(Rng& rng, const std::string& id, const Options& o, std::size_t owners,
                             std::optional<FuelKind> fuel = std::nullopt) {
  static constexpr FuelKind kFuels[] = {FuelKind::lignite,     FuelKind::hard_coal,   FuelKind::hard_coal,
                                        FuelKind::natural_gas, FuelKind::natural_gas, FuelKind::natural_gas,
                                        FuelKind::oil,         FuelKind::nuclear,     FuelKind::other_thermal};
  PlantUnit u;
  u.id = id;
  u.name = "Synthetic " + id;
  u.fuel = kFuels[rng.integer(0, 8)];
  if (fuel) u.fuel = *fuel;
  u.owner_id = "owner_" + std::to_string(rng.integer(1, static_cast<int>(owners)));
  u.nominal_capacity = std::round(rng.uniform(150.0, 900.0));
  u.min_stable_output = std::round(u.nominal_capacity * rng.uniform(0.25, 0.5));
  switch (u.fuel) {
    case FuelKind::lignite: u.efficiency = rng.uniform(0.33, 0.43); u.thermal_emission_factor = 0.404; break;
    case FuelKind::hard_coal: u.efficiency = rng.uniform(0.36, 0.46); u.thermal_emission_factor = 0.337; break;
    case FuelKind::natural_gas: u.efficiency = rng.uniform(0.35, 0.60); u.thermal_emission_factor = 0.201; break;
    case FuelKind::oil: u.efficiency = rng.uniform(0.30, 0.40); u.thermal_emission_factor = 0.280; break;
    case FuelKind::nuclear: u.efficiency = 0.33; u.thermal_emission_factor = 0.0; break;
    case FuelKind::other_thermal: u.efficiency = rng.uniform(0.30, 0.40); u.thermal_emission_factor = 0.3; break;
  }
  u.ramp_up = std::round(u.nominal_capacity * rng.uniform(0.1, 1.0));
  u.ramp_down = std::round(u.nominal_capacity * rng.uniform(0.1, 1.0));
  u.min_uptime = rng.integer(4, 32);
  u.min_downtime = rng.integer(8, 32);
  u.startup_cost = std::round(u.nominal_capacity * rng.uniform(10.0, 60.0));
  u.other_variable_cost = std::round(rng.uniform(1.0, 6.0) * 10.0) / 10.0;
  if (rng.chance(o.chp_share)) {
    u.chp_heat_capacity = std::round(u.nominal_capacity * rng.uniform(0.2, 0.6));
    u.power_to_heat_ratio = std::round(rng.uniform(0.5, 1.2) * 100.0) / 100.0;
  }
  u.reserve_eligible = rng.chance(o.reserve_share);
  u.commissioning_year = rng.integer(1970, 2015);
  return u;
}

/// Demand with daily, weekly and seasonal shape plus noise, scaled to the
/// requested peak.
inline TimeSeries demand_profile(Rng& rng, const Options& o, double peak_mw) {
  TimeSeries s = TimeSeries::constant(o.year, o.first_interval, o.intervals, 0.0);
  double noise = 0.0;
  for (std::size_t t = 0; t < o.intervals; ++t) {
    const std::size_t idx = o.first_interval + t;
    const auto when = interval_time(o.year, idx);
    const double hour = when.minute_of_day / 60.0;
    const double day = static_cast<double>(idx / kIntervalsPerDay);
    const double seasonal = 1.0 + 0.12 * std::cos(2.0 * std::numbers::pi * day / 365.0);
    const double daily = 0.82 + 0.18 * std::sin(std::numbers::pi * std::clamp((hour - 6.0) / 16.0, 0.0, 1.0));
    const double weekly = (when.weekday == 0 || when.weekday == 6) ? 0.85 : 1.0;
    noise = 0.95 * noise + 0.01 * rng.normal();
    s[t] = peak_mw * seasonal * daily * weekly * (1.0 + noise) / 1.12;
  }
  return s;
}

/// Wind as a persistent Gaussian weather state through a saturating power
/// curve (capacity factor below 0.8, mean about 0.2, windier in winter).
/// Solar as a clear-sky bell with seasonal height and cloud noise.
/// Installed capacities are in MW.
inline TimeSeries wind_profile(Rng& rng, const Options& o, double installed_mw) {
  TimeSeries s = TimeSeries::constant(o.year, o.first_interval, o.intervals, 0.0);
  constexpr double phi = 0.995;
  const double kick = std::sqrt(1.0 - phi * phi);
  double z = rng.normal();
  for (std::size_t t = 0; t < o.intervals; ++t) {
    const double day = static_cast<double>((o.first_interval + t) / kIntervalsPerDay);
    const double season = 0.35 * std::cos(2.0 * std::numbers::pi * day / 365.0);
    z = phi * z + kick * rng.normal();
    s[t] = installed_mw * 0.78 / (1.0 + std::exp(-(1.5 * z - 1.2 + season)));
  }
  return s;
}

inline TimeSeries solar_profile(Rng& rng, const Options& o, double installed_mw) {
  TimeSeries s = TimeSeries::constant(o.year, o.first_interval, o.intervals, 0.0);
  double cloud = 0.7;
  for (std::size_t t = 0; t < o.intervals; ++t) {
    const std::size_t idx = o.first_interval + t;
    const double hour = (idx % kIntervalsPerDay) * kIntervalHours;
    const double day = static_cast<double>(idx / kIntervalsPerDay);
    const double length = 12.0 + 4.0 * std::sin(2.0 * std::numbers::pi * (day - 80.0) / 365.0);
    const double height = 0.5 + 0.3 * std::cos(2.0 * std::numbers::pi * (day - 172.0) / 365.0);
    const double x = (hour - (12.0 - length / 2.0)) / length;
    cloud = std::clamp(cloud + 0.05 * (0.7 - cloud) + 0.05 * rng.normal(), 0.1, 1.0);
    s[t] = (x > 0.0 && x < 1.0) ? installed_mw * height * cloud * std::sin(std::numbers::pi * x) : 0.0;
  }
  return s;
}

/// A complete, valid run configuration with CHP, reserve, storage, heat and
/// activation series.
inline SimulationConfig make_config(const Options& o) {
  Rng rng(o.seed);
  SimulationConfig c;
  c.scenario_name = "synthetic_" + std::to_string(o.seed);
  c.prices = default_prices();
  double capacity = 0.0, heat_capacity = 0.0;
  const auto add = [&](std::optional<FuelKind> fuel) {
    char id[16];
    std::snprintf(id, sizeof id, "U%02zu", c.fleet.plants.size() + 1);
    c.fleet.plants.push_back(random_unit(rng, id, o, o.owners, fuel));
    capacity += c.fleet.plants.back().nominal_capacity;
    heat_capacity += c.fleet.plants.back().chp_heat_capacity;
    return c.fleet.plants.back().nominal_capacity;
  };
  if (o.capacity_mix_mw.empty()) {
    for (std::size_t i = 0; i < o.units; ++i) add(std::nullopt);
  } else {
    for (const auto& [fuel, target] : o.capacity_mix_mw) {
      for (double built = 0.0; built < target;) built += add(fuel);
    }
  }
  for (std::size_t k = 0; k < o.storage_units; ++k) {
    StorageUnit s;
    s.id = "S" + std::to_string(k + 1);
    s.owner_id = "storage_" + std::to_string(k + 1);
    s.power_capacity = std::round(rng.uniform(50.0, 300.0));
    s.energy_capacity = s.power_capacity * rng.integer(4, 8);
    s.round_trip_efficiency = std::round(rng.uniform(0.7, 0.85) * 100.0) / 100.0;
    s.state_of_charge = s.energy_capacity / 2.0;
    c.fleet.storage.push_back(s);
  }
  const double peak = o.demand_to_capacity * capacity;
  c.demand = demand_profile(rng, o, peak);
  const double vre_scale = o.vre_share / 0.3;
  c.vre.push_back({"wind", wind_profile(rng, o, 0.7 * peak * vre_scale)});
  c.vre.push_back({"solar", solar_profile(rng, o, 0.55 * peak * vre_scale)});

  TimeSeries exports = TimeSeries::constant(o.year, o.first_interval, o.intervals, 0.0);
  TimeSeries heat = TimeSeries::constant(o.year, o.first_interval, o.intervals, 0.0, SeriesUnit::MW_th);
  TimeSeries activation = TimeSeries::constant(o.year, o.first_interval, o.intervals, 0.0);
  const double reserve = std::round(0.05 * capacity);
  double walk = 0.0;
  for (std::size_t t = 0; t < o.intervals; ++t) {
    const std::size_t idx = o.first_interval + t;
    const double day = static_cast<double>(idx / kIntervalsPerDay);
    exports[t] = 0.03 * capacity * std::sin(2.0 * std::numbers::pi * (idx % kIntervalsPerDay) / kIntervalsPerDay);
    heat[t] = heat_capacity * std::clamp(0.55 + 0.35 * std::cos(2.0 * std::numbers::pi * day / 365.0) +
                                             0.05 * rng.normal(), 0.0, 1.0);
    walk = std::clamp(0.9 * walk + 0.25 * reserve * rng.normal(), -1.2 * reserve, 1.2 * reserve);
    activation[t] = std::round(walk);
  }
  c.net_exports = exports;
  c.heat_demand = heat;
  c.activation = activation;
  c.reserve = {reserve, reserve, kDefaultReserveBlockIntervals};
  return c;
}

}  // namespace eomsim::synthetic
