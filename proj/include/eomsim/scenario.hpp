#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eomsim/core/costs.hpp"
#include "eomsim/core/types.hpp"
#include "eomsim/diagnostics.hpp"
#include "eomsim/forecast.hpp"
#include "eomsim/reserve_market.hpp"

namespace eomsim {

struct CapacityAddition {
  FuelKind fuel = FuelKind::natural_gas;
  double total_gw = 0.0;
  double unit_size_mw = 500.0;
  std::optional<PlantUnit> unit_template;  // falls back to generic_template(fuel)
};

/// Either a multiplicative factor or a reference/target installed capacity.
struct VreScaling {
  double factor = 1.0;
  std::optional<double> reference_gw;
  std::optional<double> target_gw;
};

struct ScenarioSpec {
  std::string name = "reference";
  int year = 2017;
  std::map<FuelKind, double> decommission_gw;
  std::vector<CapacityAddition> additions;
  std::map<std::string, VreScaling> vre_scaling;  // keyed by VRE source name
  double demand_scaling = 1.0;
  FuelPriceSet fuel_prices;
  ReserveRequirements reserve;
  PriceBounds bounds;
  double unserved_heat_penalty = 100.0;
  std::vector<int> holidays;  // day of year, 0-based
};

struct DecommissionResult {
  std::vector<PlantUnit> fleet;
  std::vector<PlantUnit> removed;  // in removal order

  double removed_mw() const {
    double s = 0.0;
    for (const auto& u : removed) s += u.nominal_capacity;
    return s;
  }
};

inline double installed_mw(const std::vector<PlantUnit>& fleet, FuelKind fuel) {
  double s = 0.0;
  for (const auto& u : fleet) {
    if (u.fuel == fuel) s += u.nominal_capacity;
  }
  return s;
}

/// Removes whole units of `fuel`, dirtiest specific emissions first (ties by
/// id), until at least `target_gw` is gone. The last unit may overshoot.
inline DecommissionResult apply_decommissioning(const std::vector<PlantUnit>& fleet, FuelKind fuel,
                                                double target_gw) {
  constexpr double tol = 1e-9;  // MW
  const double target_mw = target_gw * 1000.0;
  if (!(target_mw >= 0.0)) throw ScenarioError("decommissioning target must be >= 0");
  const double installed = installed_mw(fleet, fuel);
  if (target_mw > installed + tol) {
    throw ScenarioError("decommissioning target " + std::to_string(target_gw) + " GW exceeds installed " +
                        std::string(to_string(fuel)) + " capacity " + std::to_string(installed / 1000.0) +
                        " GW");
  }

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    if (fleet[i].fuel == fuel) candidates.push_back(i);
  }
  std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
    const double ea = specific_emissions(fleet[a]);
    const double eb = specific_emissions(fleet[b]);
    if (ea != eb) return ea > eb;
    return fleet[a].id < fleet[b].id;
  });

  std::vector<bool> drop(fleet.size(), false);
  DecommissionResult out;
  double removed = 0.0;
  for (std::size_t i : candidates) {
    if (removed >= target_mw - tol) break;
    drop[i] = true;
    removed += fleet[i].nominal_capacity;
    out.removed.push_back(fleet[i]);
  }
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    if (!drop[i]) out.fleet.push_back(fleet[i]);
  }
  return out;
}

/// Default parameters for new-build units. Ramps, minimum stable output and
/// start-up cost scale with the unit size when the template is instantiated.
inline PlantUnit generic_template(FuelKind fuel) {
  PlantUnit t;
  t.fuel = fuel;
  t.owner_id = "new_entrant";
  t.min_uptime = 2;
  t.min_downtime = 2;
  t.reserve_eligible = true;
  switch (fuel) {
    case FuelKind::natural_gas:
      t.efficiency = 0.58;
      t.thermal_emission_factor = 0.201;
      break;
    case FuelKind::hard_coal:
      t.efficiency = 0.46;
      t.thermal_emission_factor = 0.337;
      break;
    case FuelKind::lignite:
      t.efficiency = 0.43;
      t.thermal_emission_factor = 0.404;
      break;
    case FuelKind::oil:
      t.efficiency = 0.40;
      t.thermal_emission_factor = 0.280;
      break;
    case FuelKind::nuclear:
      t.efficiency = 0.33;
      t.thermal_emission_factor = 0.0;
      break;
    case FuelKind::other_thermal:
      t.efficiency = 0.40;
      t.thermal_emission_factor = 0.0;
      break;
  }
  return t;
}

/// Appends ceil(total / unit_size) identical units. Size-dependent fields
/// follow the generic rule: ramp = nominal per interval, min stable = 40 %,
/// start-up cost = 30 EUR per MW.
inline std::vector<PlantUnit> add_generic_capacity(std::vector<PlantUnit> fleet, FuelKind fuel, double total_gw,
                                                   double unit_size_mw,
                                                   std::optional<PlantUnit> unit_template = std::nullopt,
                                                   Diagnostics* diag = nullptr, int commissioning_year = 0) {
  if (!(unit_size_mw > 0.0)) throw ScenarioError("unit size must be > 0");
  if (!(total_gw >= 0.0)) throw ScenarioError("added capacity must be >= 0");
  const double total_mw = total_gw * 1000.0;
  const auto count = static_cast<std::size_t>(std::ceil(total_mw / unit_size_mw - 1e-9));
  if (count == 0) return fleet;

  PlantUnit base = unit_template.value_or(generic_template(fuel));
  base.fuel = fuel;
  base.nominal_capacity = unit_size_mw;
  if (!unit_template) {
    base.ramp_up = unit_size_mw;
    base.ramp_down = unit_size_mw;
    base.min_stable_output = 0.4 * unit_size_mw;
    base.startup_cost = 30.0 * unit_size_mw;
    base.commissioning_year = commissioning_year;
  }

  std::size_t serial = 0;
  const auto taken = [&](const std::string& id) {
    return std::any_of(fleet.begin(), fleet.end(), [&](const PlantUnit& u) { return u.id == id; });
  };
  for (std::size_t n = 0; n < count; ++n) {
    PlantUnit u = base;
    do {
      char buf[64];
      std::snprintf(buf, sizeof buf, "new_%s_%03zu", std::string(to_string(fuel)).c_str(), ++serial);
      u.id = buf;
    } while (taken(u.id));
    u.name = u.id;
    fleet.push_back(std::move(u));
  }
  const double overshoot = static_cast<double>(count) * unit_size_mw - total_mw;
  if (diag && overshoot > 1e-9) {
    diag->note("capacity_overshoot", std::to_string(overshoot) + " MW " + std::string(to_string(fuel)) +
                                         " added beyond target");
  }
  return fleet;
}

/// Linear rescaling of a feed-in profile to a new installed capacity.
inline TimeSeries scale_vre(const TimeSeries& profile, double installed_ref_gw, double installed_target_gw) {
  if (!(installed_ref_gw > 0.0)) throw ScenarioError("reference installed VRE capacity must be > 0");
  TimeSeries out = profile;
  const double factor = installed_target_gw / installed_ref_gw;
  for (auto& v : out.values) v *= factor;
  return out;
}

inline double scaling_factor(const VreScaling& s) {
  if (s.reference_gw && s.target_gw) {
    if (!(*s.reference_gw > 0.0)) throw ScenarioError("reference installed VRE capacity must be > 0");
    return *s.target_gw / *s.reference_gw;
  }
  return s.factor;
}

/// Applies decommissioning (per fuel, in fuel enumeration order) and then
/// capacity additions. Pure: equal inputs give equal fleets.
inline std::vector<PlantUnit> apply_fleet_changes(const ScenarioSpec& spec, std::vector<PlantUnit> fleet,
                                                  Diagnostics* diag = nullptr,
                                                  std::vector<PlantUnit>* removed = nullptr) {
  for (FuelKind fuel : kAllFuels) {
    auto it = spec.decommission_gw.find(fuel);
    if (it == spec.decommission_gw.end() || it->second <= 0.0) continue;
    auto result = apply_decommissioning(fleet, fuel, it->second);
    if (diag) {
      diag->note("decommissioned", std::string(to_string(fuel)) + ": " + std::to_string(result.removed.size()) +
                                       " units, " + std::to_string(result.removed_mw()) + " MW");
    }
    if (removed) removed->insert(removed->end(), result.removed.begin(), result.removed.end());
    fleet = std::move(result.fleet);
  }
  for (const auto& add : spec.additions) {
    fleet = add_generic_capacity(std::move(fleet), add.fuel, add.total_gw, add.unit_size_mw, add.unit_template, diag,
                                 spec.year);
  }
  return fleet;
}

}  // namespace eomsim
