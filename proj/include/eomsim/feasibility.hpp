#pragma once

#include <algorithm>

#include "eomsim/core/types.hpp"

namespace eomsim {

/// Output envelope of a unit for the next interval.
///
/// [lo, hi] is the range the unit may occupy if it is online in the next
/// interval. For an offline unit that may start this is the start range;
/// for an offline unit still inside its minimum downtime it is [0, 0].
struct FeasibleRange {
  bool online = false;
  bool can_shut_down = false;
  bool can_start = false;
  bool must_be_online = false;
  double lo = 0.0;
  double hi = 0.0;

  bool can_run() const noexcept { return online || can_start; }
  bool contains(double mw, double tol = 1e-9) const noexcept { return mw >= lo - tol && mw <= hi + tol; }
};

/// Electric output forced by the unit's heat commitment (backpressure).
inline double heat_forced_output(const PlantUnit& plant, const PlantState& state) {
  return plant.power_to_heat_ratio * state.committed_heat;
}

inline FeasibleRange feasible_output_range(const PlantUnit& plant, const PlantState& state) {
  FeasibleRange r;
  r.online = state.online;
  const double forced = heat_forced_output(plant, state);
  const double reserve_floor = plant.min_stable_output + state.reserved_negative;
  const double reserve_ceiling = plant.nominal_capacity - state.reserved_positive;
  if (state.online) {
    r.lo = std::max({plant.min_stable_output, state.output - plant.ramp_down, forced, reserve_floor});
    r.hi = std::min(reserve_ceiling, state.output + plant.ramp_up);
    r.can_shut_down = state.intervals_in_current_state >= plant.min_uptime && !state.has_obligation();
    r.must_be_online = !r.can_shut_down;
  } else {
    r.can_start = state.intervals_in_current_state >= plant.min_downtime;
    if (r.can_start) {
      r.lo = std::max({plant.min_stable_output, forced, reserve_floor});
      r.hi = std::min(reserve_ceiling, plant.min_stable_output + plant.ramp_up);
      r.must_be_online = state.has_obligation();
    }
  }
  return r;
}

}  // namespace eomsim
