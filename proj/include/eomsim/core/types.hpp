#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eomsim/core/errors.hpp"

namespace eomsim {

inline constexpr int kIntervalMinutes = 15;
inline constexpr double kIntervalHours = 0.25;
inline constexpr int kIntervalsPerDay = 96;

enum class FuelKind { lignite, hard_coal, natural_gas, oil, nuclear, other_thermal };

inline constexpr std::array<FuelKind, 6> kAllFuels = {
    FuelKind::lignite, FuelKind::hard_coal, FuelKind::natural_gas,
    FuelKind::oil,     FuelKind::nuclear,   FuelKind::other_thermal};

inline constexpr std::string_view to_string(FuelKind fuel) {
  switch (fuel) {
    case FuelKind::lignite: return "lignite";
    case FuelKind::hard_coal: return "hard_coal";
    case FuelKind::natural_gas: return "natural_gas";
    case FuelKind::oil: return "oil";
    case FuelKind::nuclear: return "nuclear";
    case FuelKind::other_thermal: return "other_thermal";
  }
  return "other_thermal";
}

inline std::optional<FuelKind> parse_fuel(std::string_view text) {
  for (FuelKind fuel : kAllFuels) {
    if (to_string(fuel) == text) return fuel;
  }
  return std::nullopt;
}

inline constexpr std::size_t fuel_index(FuelKind fuel) { return static_cast<std::size_t>(fuel); }

/// Static description of one thermal unit. Field order matches the fleet CSV.
struct PlantUnit {
  std::string id;
  std::string name;
  FuelKind fuel = FuelKind::other_thermal;
  std::string owner_id;
  double nominal_capacity = 0.0;         // MW net electric
  double min_stable_output = 0.0;        // MW
  double efficiency = 1.0;               // electric, LHV basis
  double ramp_up = 0.0;                  // MW per interval
  double ramp_down = 0.0;                // MW per interval
  int min_uptime = 1;                    // intervals
  int min_downtime = 1;                  // intervals
  double startup_cost = 0.0;             // EUR per start
  double other_variable_cost = 0.0;      // EUR/MWh_el
  double thermal_emission_factor = 0.0;  // tCO2 per MWh_th input
  double chp_heat_capacity = 0.0;        // MW_th, 0 for non-CHP
  double power_to_heat_ratio = 0.0;      // MW_el forced per MW_th served
  bool reserve_eligible = false;
  int commissioning_year = 0;

  bool is_chp() const noexcept { return chp_heat_capacity > 0.0; }
};

struct StorageUnit {
  std::string id;
  std::string owner_id;
  double power_capacity = 0.0;         // MW, symmetric
  double energy_capacity = 0.0;        // MWh
  double round_trip_efficiency = 1.0;  // applied on charging
  double state_of_charge = 0.0;        // MWh
};

struct Fleet {
  std::vector<PlantUnit> plants;
  std::vector<StorageUnit> storage;
};

/// Fuel prices in EUR per MWh thermal plus the CO2 certificate price.
class FuelPriceSet {
public:
  FuelPriceSet() = default;

  FuelPriceSet& set(FuelKind fuel, double eur_per_mwh_th) {
    prices_[fuel_index(fuel)] = eur_per_mwh_th;
    return *this;
  }

  bool has(FuelKind fuel) const { return prices_[fuel_index(fuel)].has_value(); }

  double price(FuelKind fuel) const {
    const auto& p = prices_[fuel_index(fuel)];
    if (!p) throw ConfigError("no fuel price configured for fuel '" + std::string(to_string(fuel)) + "'");
    return *p;
  }

  double co2_price = 0.0;  // EUR per tCO2

private:
  std::array<std::optional<double>, kAllFuels.size()> prices_{};
};

enum class SeriesUnit { MW, MW_th, MWh_th, EUR_per_MWh, dimensionless };

/// Quarter-hour sequence for (part of) one calendar year. `first_interval`
/// is the index of values[0] counted from January 1st 00:00.
struct TimeSeries {
  int year = 2017;
  std::size_t first_interval = 0;
  SeriesUnit unit = SeriesUnit::MW;
  std::vector<double> values;

  static constexpr bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }
  static constexpr std::size_t intervals_in_year(int y) {
    return static_cast<std::size_t>(kIntervalsPerDay) * (is_leap(y) ? 366u : 365u);
  }

  std::size_t size() const noexcept { return values.size(); }
  bool empty() const noexcept { return values.empty(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }

  bool is_full_year() const { return first_interval == 0 && values.size() == intervals_in_year(year); }

  bool aligned_with(const TimeSeries& other) const {
    return year == other.year && first_interval == other.first_interval && size() == other.size();
  }

  static TimeSeries constant(int year, std::size_t first, std::size_t count, double value,
                             SeriesUnit unit = SeriesUnit::MW) {
    return TimeSeries{year, first, unit, std::vector<double>(count, value)};
  }
};

/// Dynamic state of one unit. `output` is the scheduled market output that
/// ramp limits apply to; `activation` is reserve deployment on top of it.
struct PlantState {
  bool online = false;
  double output = 0.0;
  double activation = 0.0;
  int intervals_in_current_state = 1;
  double committed_heat = 0.0;
  double reserved_positive = 0.0;
  double reserved_negative = 0.0;

  double net_output() const noexcept { return output + activation; }
  bool has_obligation() const noexcept {
    return committed_heat > 0.0 || reserved_positive > 0.0 || reserved_negative > 0.0;
  }
};

}  // namespace eomsim
