#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eomsim/calendar.hpp"
#include "eomsim/core/types.hpp"

namespace eomsim {

/// Outcome of one quarter hour.
struct IntervalRecord {
  std::size_t interval = 0;  // index within the year
  double demand_mw = 0.0;
  double vre_mw = 0.0;
  double net_exports_mw = 0.0;
  double residual_mw = 0.0;
  double clearing_price = 0.0;
  double deficit_mw = 0.0;
  double surplus_mw = 0.0;
  double thermal_mw = 0.0;  // net, including reserve activation
  double storage_charge_mw = 0.0;
  double storage_discharge_mw = 0.0;
  double imbalance_mw = 0.0;        // delivered set points minus market award
  double reserve_deployed_mw = 0.0;  // signed
  double activation_clipped_mw = 0.0;
  double reserve_shortfall_positive_mw = 0.0;
  double reserve_shortfall_negative_mw = 0.0;
  double heat_demand_mw = 0.0;
  double heat_unserved_mw = 0.0;
  double startup_cost_eur = 0.0;
  double fuel_cost_eur = 0.0;
  double co2_t = 0.0;
  double reserve_payment_eur = 0.0;
  std::array<double, kAllFuels.size()> generation_mwh{};
  std::array<int, kAllFuels.size()> startups{};
};

/// Per-unit operating point of one interval (optional trace).
struct UnitSnapshot {
  double output = 0.0;
  double activation = 0.0;
  double reserved_positive = 0.0;
  double reserved_negative = 0.0;
  double committed_heat = 0.0;
  bool online = false;
  bool started = false;
};

struct EventStats {
  std::size_t intervals = 0;
  double max_power = 0.0;  // same unit as the series (MW)
  double energy = 0.0;     // power unit x hours (MWh)
};

struct PriceStats {
  double base = 0.0;
  std::optional<double> peak;
  std::optional<double> off_peak;
};

struct ReportAggregates {
  EventStats deficit;
  EventStats negative_residual;
  PriceStats prices;
  std::map<FuelKind, double> generation_twh;
  std::map<FuelKind, int> startups;
  std::map<FuelKind, double> full_load_hours;
  double startup_cost_eur = 0.0;
  double fuel_cost_eur = 0.0;
  double co2_t = 0.0;
  double reserve_payment_eur = 0.0;
  double heat_unserved_mwh = 0.0;
  double heat_penalty_eur = 0.0;
  double imbalance_abs_mwh = 0.0;
  double activation_clipped_mwh = 0.0;
};

struct SimulationReport {
  std::string scenario_name;
  int year = 2017;
  std::vector<IntervalRecord> records;
  std::map<FuelKind, double> installed_mw;  // fuels present in the fleet
  std::vector<std::string> unit_ids;
  std::vector<FuelKind> unit_fuels;
  std::vector<UnitSnapshot> unit_trace;  // interval-major, empty unless requested
  std::vector<double> price_forward_curve;  // preparation-phase PFC, one value per record
  std::vector<std::pair<std::string, std::string>> input_hashes;
  std::vector<std::string> diagnostics;
  double unserved_heat_penalty = 0.0;
  ReportAggregates aggregates;

  const UnitSnapshot& snapshot(std::size_t t, std::size_t unit) const {
    return unit_trace[t * unit_ids.size() + unit];
  }
};

namespace detail {

template <typename Get>
EventStats event_stats(const std::vector<IntervalRecord>& records, Get get) {
  EventStats s;
  for (const auto& r : records) {
    const double v = get(r);
    if (v > 0.0) {
      ++s.intervals;
      s.max_power = std::max(s.max_power, v);
      s.energy += v * kIntervalHours;
    }
  }
  return s;
}

}  // namespace detail

inline EventStats deficit_stats(const SimulationReport& report) {
  return detail::event_stats(report.records, [](const IntervalRecord& r) { return r.deficit_mw; });
}

inline EventStats negative_residual_stats(const SimulationReport& report) {
  return detail::event_stats(report.records, [](const IntervalRecord& r) { return r.surplus_mw; });
}

/// Base, peak (workdays 08:00-18:00) and off-peak mean prices. An empty
/// partition is reported as absent.
inline PriceStats price_stats(const SimulationReport& report, const TradingCalendar& calendar) {
  PriceStats s;
  double all = 0.0, peak = 0.0, off = 0.0;
  std::size_t n_peak = 0, n_off = 0;
  for (const auto& r : report.records) {
    all += r.clearing_price;
    if (calendar.is_peak(report.year, r.interval)) {
      peak += r.clearing_price;
      ++n_peak;
    } else {
      off += r.clearing_price;
      ++n_off;
    }
  }
  if (!report.records.empty()) s.base = all / static_cast<double>(report.records.size());
  if (n_peak > 0) s.peak = peak / static_cast<double>(n_peak);
  if (n_off > 0) s.off_peak = off / static_cast<double>(n_off);
  return s;
}

/// TWh per fuel present in the fleet.
inline std::map<FuelKind, double> generation_by_fuel(const SimulationReport& report) {
  std::map<FuelKind, double> out;
  for (const auto& [fuel, mw] : report.installed_mw) out[fuel] = 0.0;
  for (const auto& r : report.records) {
    for (auto& [fuel, twh] : out) twh += r.generation_mwh[fuel_index(fuel)];
  }
  for (auto& [fuel, v] : out) v /= 1e6;
  return out;
}

inline std::map<FuelKind, int> startups_by_fuel(const SimulationReport& report) {
  std::map<FuelKind, int> out;
  for (const auto& [fuel, mw] : report.installed_mw) out[fuel] = 0;
  for (const auto& r : report.records) {
    for (auto& [fuel, n] : out) n += r.startups[fuel_index(fuel)];
  }
  return out;
}

/// Generation divided by installed capacity of one fuel, h per horizon.
inline double full_load_hours(const SimulationReport& report, const std::vector<PlantUnit>& fleet, FuelKind fuel) {
  double capacity = 0.0;
  for (const auto& u : fleet) {
    if (u.fuel == fuel) capacity += u.nominal_capacity;
  }
  if (capacity <= 0.0) return 0.0;
  double mwh = 0.0;
  for (const auto& r : report.records) mwh += r.generation_mwh[fuel_index(fuel)];
  return mwh / capacity;
}

inline ReportAggregates compute_aggregates(const SimulationReport& report, const TradingCalendar& calendar) {
  ReportAggregates a;
  a.deficit = deficit_stats(report);
  a.negative_residual = negative_residual_stats(report);
  a.prices = price_stats(report, calendar);
  a.generation_twh = generation_by_fuel(report);
  a.startups = startups_by_fuel(report);
  for (const auto& [fuel, mw] : report.installed_mw) {
    a.full_load_hours[fuel] = mw > 0.0 ? a.generation_twh[fuel] * 1e6 / mw : 0.0;
  }
  for (const auto& r : report.records) {
    a.startup_cost_eur += r.startup_cost_eur;
    a.fuel_cost_eur += r.fuel_cost_eur;
    a.co2_t += r.co2_t;
    a.reserve_payment_eur += r.reserve_payment_eur;
    a.heat_unserved_mwh += r.heat_unserved_mw * kIntervalHours;
    a.imbalance_abs_mwh += std::abs(r.imbalance_mw) * kIntervalHours;
    a.activation_clipped_mwh += r.activation_clipped_mw * kIntervalHours;
  }
  a.heat_penalty_eur = a.heat_unserved_mwh * report.unserved_heat_penalty;
  return a;
}

}  // namespace eomsim
