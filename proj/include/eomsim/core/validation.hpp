#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "eomsim/core/types.hpp"

namespace eomsim {

struct Violation {
  std::string unit_id;
  std::string field;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
  friend bool operator<(const Violation& a, const Violation& b) {
    return std::tie(a.unit_id, a.field, a.message) < std::tie(b.unit_id, b.field, b.message);
  }
};

using ValidationReport = std::vector<Violation>;

namespace detail {

inline void check(ValidationReport& out, bool ok, const std::string& id, const char* field,
                  const char* message) {
  if (!ok) out.push_back({id, field, message});
}

}  // namespace detail

inline ValidationReport validate_unit(const PlantUnit& u) {
  ValidationReport out;
  using detail::check;
  const auto finite = [](double v) { return std::isfinite(v); };
  check(out, !u.id.empty(), u.id, "id", "id must not be empty");
  check(out, finite(u.nominal_capacity) && u.nominal_capacity > 0.0, u.id, "nominal_capacity",
        "nominal_capacity must be > 0");
  check(out, finite(u.min_stable_output) && u.min_stable_output > 0.0, u.id, "min_stable_output",
        "min_stable_output must be > 0");
  check(out, !(u.min_stable_output > u.nominal_capacity), u.id, "min_stable_output",
        "min_stable_output must not exceed nominal_capacity");
  check(out, finite(u.efficiency) && u.efficiency > 0.0 && u.efficiency <= 1.0, u.id, "efficiency",
        "efficiency must lie in (0, 1]");
  check(out, finite(u.ramp_up) && u.ramp_up > 0.0, u.id, "ramp_up", "ramp_up must be > 0");
  check(out, finite(u.ramp_down) && u.ramp_down > 0.0, u.id, "ramp_down", "ramp_down must be > 0");
  check(out, u.min_uptime >= 1, u.id, "min_uptime", "min_uptime must be >= 1");
  check(out, u.min_downtime >= 1, u.id, "min_downtime", "min_downtime must be >= 1");
  check(out, finite(u.startup_cost) && u.startup_cost >= 0.0, u.id, "startup_cost",
        "startup_cost must be >= 0");
  check(out, finite(u.other_variable_cost), u.id, "other_variable_cost",
        "other_variable_cost must be finite");
  check(out, finite(u.thermal_emission_factor) && u.thermal_emission_factor >= 0.0, u.id,
        "thermal_emission_factor", "thermal_emission_factor must be >= 0");
  check(out, finite(u.chp_heat_capacity) && u.chp_heat_capacity >= 0.0, u.id, "chp_heat_capacity",
        "chp_heat_capacity must be >= 0");
  check(out, finite(u.power_to_heat_ratio) && u.power_to_heat_ratio >= 0.0, u.id,
        "power_to_heat_ratio", "power_to_heat_ratio must be >= 0");
  check(out, (u.power_to_heat_ratio == 0.0) == (u.chp_heat_capacity == 0.0), u.id,
        "power_to_heat_ratio", "power_to_heat_ratio must be 0 exactly when chp_heat_capacity is 0");
  return out;
}

inline ValidationReport validate_unit(const StorageUnit& s) {
  ValidationReport out;
  using detail::check;
  check(out, !s.id.empty(), s.id, "id", "id must not be empty");
  check(out, std::isfinite(s.power_capacity) && s.power_capacity > 0.0, s.id, "power_capacity",
        "power_capacity must be > 0");
  check(out, std::isfinite(s.energy_capacity) && s.energy_capacity >= 0.0, s.id, "energy_capacity",
        "energy_capacity must be >= 0");
  check(out, s.round_trip_efficiency > 0.0 && s.round_trip_efficiency <= 1.0, s.id,
        "round_trip_efficiency", "round_trip_efficiency must lie in (0, 1]");
  check(out, s.state_of_charge >= 0.0 && s.state_of_charge <= s.energy_capacity, s.id,
        "state_of_charge", "state_of_charge must lie in [0, energy_capacity]");
  return out;
}

/// Lists every type-invariant violation and every duplicated id. The result
/// is sorted, so it does not depend on unit order.
inline ValidationReport validate_fleet(const std::vector<PlantUnit>& plants,
                                       const std::vector<StorageUnit>& storage = {}) {
  ValidationReport out;
  std::map<std::string, int> seen;
  for (const auto& p : plants) {
    auto v = validate_unit(p);
    out.insert(out.end(), v.begin(), v.end());
    ++seen[p.id];
  }
  for (const auto& s : storage) {
    auto v = validate_unit(s);
    out.insert(out.end(), v.begin(), v.end());
    ++seen[s.id];
  }
  for (const auto& [id, count] : seen) {
    if (count > 1) out.push_back({id, "id", "duplicate id (" + std::to_string(count) + " units)"});
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline ValidationReport validate_fleet(const Fleet& fleet) {
  return validate_fleet(fleet.plants, fleet.storage);
}

}  // namespace eomsim
