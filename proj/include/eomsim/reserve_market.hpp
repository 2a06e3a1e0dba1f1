#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "eomsim/core/costs.hpp"
#include "eomsim/core/types.hpp"
#include "eomsim/diagnostics.hpp"
#include "eomsim/feasibility.hpp"

namespace eomsim {

enum class ReserveDirection { positive, negative };

inline constexpr std::string_view to_string(ReserveDirection d) {
  return d == ReserveDirection::positive ? "positive" : "negative";
}

inline constexpr double kReserveEnergyMarkup = 0.20;
inline constexpr int kDefaultReserveBlockIntervals = 16;  // 4 h products

struct ReserveRequirements {
  double positive_mw = 2000.0;
  double negative_mw = 2000.0;
  int block_intervals = kDefaultReserveBlockIntervals;
};

struct ReserveBid {
  std::string unit_id;
  ReserveDirection direction = ReserveDirection::positive;
  double capacity = 0.0;        // MW
  double capacity_price = 0.0;  // EUR per MW per block
  double energy_price = 0.0;    // EUR/MWh
};

struct ReserveAward {
  std::string unit_id;
  ReserveDirection direction = ReserveDirection::positive;
  double offered = 0.0;
  double awarded = 0.0;
  double capacity_price = 0.0;
  double energy_price = 0.0;
  double payment = 0.0;  // pay-as-bid, EUR
};

struct ReserveClearing {
  std::vector<ReserveAward> awards;
  double shortfall_positive = 0.0;
  double shortfall_negative = 0.0;

  double awarded(ReserveDirection d) const {
    double s = 0.0;
    for (const auto& a : awards) {
      if (a.direction == d) s += a.awarded;
    }
    return s;
  }
  double total_payment() const {
    double s = 0.0;
    for (const auto& a : awards) s += a.payment;
    return s;
  }
};

/// Interval range [begin, end) of one reserve product, as indices into the
/// run's series.
struct ReserveBlock {
  std::size_t begin = 0;
  std::size_t end = 0;

  double hours() const { return static_cast<double>(end - begin) * kIntervalHours; }
};

inline double block_average(const TimeSeries& series, ReserveBlock block) {
  const std::size_t end = std::min(block.end, series.size());
  if (block.begin >= end) return 0.0;
  double s = 0.0;
  for (std::size_t t = block.begin; t < end; ++t) s += series[t];
  return s / static_cast<double>(end - block.begin);
}

/// Bids of one unit for the product starting now. `state` must carry the
/// current interval's heat commitment and no reservations.
///
/// Expected output is the top of the reachable range when the block's
/// average forward price covers variable cost, otherwise the bottom. The
/// capacity price is the out-of-merit loss of standing by for the block.
inline std::vector<ReserveBid> formulate_reserve_bids(const PlantUnit& plant, const PlantState& state,
                                                      const TimeSeries& pfc, ReserveBlock block,
                                                      const FuelPriceSet& prices) {
  std::vector<ReserveBid> bids;
  if (!plant.reserve_eligible) return bids;
  const FeasibleRange range = feasible_output_range(plant, state);
  if (!range.can_run() || range.hi < range.lo) return bids;

  const double vc = variable_cost(plant, prices);
  const double avg_pfc = block_average(pfc, block);
  const bool in_merit = avg_pfc >= vc;
  const double expected = in_merit ? range.hi : range.lo;
  const double capacity_price = std::max(0.0, vc - avg_pfc) * block.hours();

  const double positive = std::min(plant.ramp_up, plant.nominal_capacity - expected);
  if (positive > 1e-9) {
    bids.push_back({plant.id, ReserveDirection::positive, positive, capacity_price,
                    vc * (1.0 + kReserveEnergyMarkup)});
  }
  if (state.online) {
    const double negative = expected - plant.min_stable_output;
    if (negative > 1e-9) {
      bids.push_back({plant.id, ReserveDirection::negative, negative, capacity_price,
                      vc * (1.0 - kReserveEnergyMarkup)});
    }
  }
  return bids;
}

/// Pay-as-bid procurement: cheapest capacity price first (ties by unit id),
/// marginal bid partially accepted.
inline ReserveClearing clear_reserve(std::span<const ReserveBid> bids, double requirement_positive,
                                     double requirement_negative) {
  if (!(requirement_positive >= 0.0) || !(requirement_negative >= 0.0)) {
    throw InputError("clear_reserve: requirements must be >= 0");
  }
  ReserveClearing result;
  for (ReserveDirection dir : {ReserveDirection::positive, ReserveDirection::negative}) {
    std::vector<const ReserveBid*> book;
    for (const auto& b : bids) {
      if (b.direction == dir && b.capacity > 0.0) book.push_back(&b);
    }
    std::sort(book.begin(), book.end(), [](const ReserveBid* a, const ReserveBid* b) {
      if (a->capacity_price != b->capacity_price) return a->capacity_price < b->capacity_price;
      return a->unit_id < b->unit_id;
    });
    double remaining = dir == ReserveDirection::positive ? requirement_positive : requirement_negative;
    for (const ReserveBid* b : book) {
      if (remaining <= 0.0) break;
      const double take = std::min(remaining, b->capacity);
      result.awards.push_back({b->unit_id, dir, b->capacity, take, b->capacity_price, b->energy_price,
                               take * b->capacity_price});
      remaining -= take;
    }
    (dir == ReserveDirection::positive ? result.shortfall_positive : result.shortfall_negative) =
        std::max(0.0, remaining);
  }
  return result;
}

/// Writes the awarded bands into the matching unit states.
inline void apply_reserve_awards(const ReserveClearing& clearing, std::span<const PlantUnit> units,
                                 std::span<PlantState> states) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < units.size(); ++i) index[units[i].id] = i;
  for (const auto& a : clearing.awards) {
    auto it = index.find(a.unit_id);
    if (it == index.end()) throw InputError("reserve award for unknown unit '" + a.unit_id + "'");
    auto& st = states[it->second];
    (a.direction == ReserveDirection::positive ? st.reserved_positive : st.reserved_negative) += a.awarded;
  }
}

struct ReserveDeployment {
  std::map<std::string, double> activation;  // signed MW per unit
  double deployed = 0.0;                     // signed MW total
  double clipped = 0.0;                      // |signal| beyond procured band
};

/// Splits the signed activation signal over awarded bands in energy-price
/// merit order: cheapest first for positive, highest price first for negative.
inline ReserveDeployment deploy_reserve(std::span<const ReserveAward> awards, double activation,
                                        Diagnostics* diag = nullptr) {
  ReserveDeployment out;
  for (const auto& a : awards) out.activation.emplace(a.unit_id, 0.0);
  if (activation == 0.0) return out;

  const auto dir = activation > 0.0 ? ReserveDirection::positive : ReserveDirection::negative;
  std::vector<const ReserveAward*> book;
  for (const auto& a : awards) {
    if (a.direction == dir && a.awarded > 0.0) book.push_back(&a);
  }
  std::sort(book.begin(), book.end(), [dir](const ReserveAward* a, const ReserveAward* b) {
    if (a->energy_price != b->energy_price) {
      return dir == ReserveDirection::positive ? a->energy_price < b->energy_price
                                               : a->energy_price > b->energy_price;
    }
    return a->unit_id < b->unit_id;
  });

  const double sign = dir == ReserveDirection::positive ? 1.0 : -1.0;
  double remaining = std::abs(activation);
  for (const ReserveAward* a : book) {
    if (remaining <= 0.0) break;
    const double take = std::min(remaining, a->awarded);
    out.activation[a->unit_id] += sign * take;
    out.deployed += sign * take;
    remaining -= take;
  }
  if (remaining > 1e-9) {
    out.clipped = remaining;
    if (diag) {
      diag->note("reserve_activation_clipped", std::to_string(remaining) + " MW " +
                                                   std::string(to_string(dir)) + " beyond procured band");
    }
  }
  return out;
}

}  // namespace eomsim
