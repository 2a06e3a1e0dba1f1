#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "eomsim/core/costs.hpp"
#include "eomsim/core/types.hpp"
#include "eomsim/feasibility.hpp"
#include "eomsim/forecast.hpp"

namespace eomsim {

enum class BidSegment { must_run, flexible, storage_charge, storage_discharge };
enum class BidSide { supply, demand };

inline constexpr std::string_view to_string(BidSegment s) {
  switch (s) {
    case BidSegment::must_run: return "must_run";
    case BidSegment::flexible: return "flexible";
    case BidSegment::storage_charge: return "storage_charge";
    case BidSegment::storage_discharge: return "storage_discharge";
  }
  return "flexible";
}

inline constexpr int kMaxOpportunityHorizon = 96;  // one day of intervals

struct Bid {
  std::string unit_id;
  BidSegment segment = BidSegment::flexible;
  double quantity = 0.0;  // MW
  double price = 0.0;     // EUR/MWh
  BidSide side = BidSide::supply;
};

/// Outcome of one energy-only auction. `accepted[i]` belongs to the i-th bid
/// of the book passed to clear_energy.
struct ClearingResult {
  double clearing_price = 0.0;
  std::vector<double> accepted;
  double deficit = 0.0;
  double surplus_vre = 0.0;

  double accepted_supply(std::span<const Bid> bids) const { return sum_side(bids, BidSide::supply); }
  double accepted_demand(std::span<const Bid> bids) const { return sum_side(bids, BidSide::demand); }

  std::map<std::string, double> by_unit(std::span<const Bid> bids, BidSide side) const {
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < bids.size(); ++i) {
      if (bids[i].side == side) out[bids[i].unit_id] += accepted[i];
    }
    return out;
  }

private:
  double sum_side(std::span<const Bid> bids, BidSide side) const {
    double s = 0.0;
    for (std::size_t i = 0; i < bids.size(); ++i) {
      if (bids[i].side == side) s += accepted[i];
    }
    return s;
  }
};

/// Number of contiguous intervals from `t` on which the forward price covers
/// `vc`, at least 1 and at most one day.
inline int profitable_run_length(const TimeSeries& pfc, std::size_t t, double vc) {
  int n = 0;
  for (std::size_t i = t; i < pfc.size() && n < kMaxOpportunityHorizon && pfc[i] >= vc; ++i) ++n;
  return std::max(n, 1);
}

/// Two-part bid of a thermal unit for interval `t`.
///
/// Online units offer their unavoidable level (range.lo) as must-run and the
/// rest of the range, less capacity held for positive reserve, as flexible at
/// variable cost. Must-run is discounted by the restart cost it avoids over
/// the minimum downtime, down to the price floor.
/// Offline units free to start offer their start range in one bid carrying
/// the start-up cost spread over the expected profitable run.
inline std::vector<Bid> formulate_energy_bids(const PlantUnit& plant, const PlantState& state,
                                              const FeasibleRange& range, const FuelPriceSet& prices,
                                              const TimeSeries& pfc, std::size_t t,
                                              const PriceBounds& bounds) {
  std::vector<Bid> bids;
  if (!range.can_run()) return bids;
  const double vc = variable_cost(plant, prices);

  if (!range.online && !range.must_be_online) {
    const double q = range.hi;
    if (q <= 0.0) return bids;
    const int run = profitable_run_length(pfc, t, vc);
    const double price = vc + plant.startup_cost / (run * kIntervalHours * q);
    bids.push_back({plant.id, BidSegment::flexible, q, bounds.clamp(price), BidSide::supply});
    return bids;
  }

  const double must_run = range.lo;
  const double avoided_off_energy = plant.min_downtime * kIntervalHours * plant.min_stable_output;
  double must_run_price = vc;
  if (plant.startup_cost > 0.0) {
    must_run_price = avoided_off_energy > 0.0 ? std::max(bounds.floor, vc - plant.startup_cost / avoided_off_energy)
                                              : bounds.floor;
  }
  if (must_run > 0.0) {
    bids.push_back({plant.id, BidSegment::must_run, must_run, bounds.clamp(must_run_price), BidSide::supply});
  }
  const double flexible =
      std::min(range.hi, plant.nominal_capacity - state.reserved_positive) - must_run;
  if (flexible > 1e-9) {
    bids.push_back({plant.id, BidSegment::flexible, flexible, bounds.clamp(vc), BidSide::supply});
  }
  return bids;
}

inline double storage_charge_limit(const StorageUnit& s) {
  return std::clamp((s.energy_capacity - s.state_of_charge) / kIntervalHours, 0.0, s.power_capacity);
}

inline double storage_discharge_limit(const StorageUnit& s) {
  return std::clamp(s.state_of_charge / kIntervalHours, 0.0, s.power_capacity);
}

/// Storage buys at the low quartile and sells at the high quartile of the
/// forward curve, within power and state-of-charge limits.
inline std::vector<Bid> formulate_storage_bids(const StorageUnit& storage, double pfc_p25, double pfc_p75) {
  std::vector<Bid> bids;
  if (const double q = storage_charge_limit(storage); q > 0.0) {
    bids.push_back({storage.id, BidSegment::storage_charge, q, pfc_p25, BidSide::demand});
  }
  if (const double q = storage_discharge_limit(storage); q > 0.0) {
    bids.push_back({storage.id, BidSegment::storage_discharge, q, pfc_p75, BidSide::supply});
  }
  return bids;
}

namespace detail {

/// Accepts `amount` MW over demand bids, highest price first (ties by id).
inline void fill_demand(std::span<const Bid> bids, const std::vector<std::size_t>& demand_order,
                        double min_price, double amount, std::vector<double>& accepted) {
  for (std::size_t i : demand_order) {
    if (amount <= 0.0) break;
    if (bids[i].price < min_price) continue;
    const double take = std::min(amount, bids[i].quantity);
    accepted[i] = take;
    amount -= take;
  }
}

}  // namespace detail

/// Uniform-price clearing against price-inelastic residual demand plus
/// elastic storage charging.
///
/// Supply fills demand in ascending price order (ties by id); the price is
/// that of the marginal accepted supply bid and equal-priced marginal bids
/// are rationed pro rata. Unserved demand is a deficit priced at the cap.
/// Residual <= 0 prices at the floor, where only floor-priced supply may
/// clear, and only against storage charging.
inline ClearingResult clear_energy(std::span<const Bid> bids, double residual_demand, const PriceBounds& bounds) {
  if (!std::isfinite(residual_demand)) throw InputError("clear_energy: residual demand must be finite");
  ClearingResult out;
  out.accepted.assign(bids.size(), 0.0);

  std::vector<std::size_t> supply, demand;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (!(bids[i].quantity > 0.0)) continue;
    (bids[i].side == BidSide::supply ? supply : demand).push_back(i);
  }
  std::stable_sort(supply.begin(), supply.end(), [&](std::size_t a, std::size_t b) {
    if (bids[a].price != bids[b].price) return bids[a].price < bids[b].price;
    return bids[a].unit_id < bids[b].unit_id;
  });
  std::stable_sort(demand.begin(), demand.end(), [&](std::size_t a, std::size_t b) {
    if (bids[a].price != bids[b].price) return bids[a].price > bids[b].price;
    return bids[a].unit_id < bids[b].unit_id;
  });

  if (residual_demand <= 0.0) {
    out.clearing_price = bounds.floor;
    out.surplus_vre = -residual_demand;
    double floor_supply = 0.0;
    for (std::size_t i : supply) {
      if (bids[i].price <= bounds.floor) floor_supply += bids[i].quantity;
    }
    double charge = 0.0;
    for (std::size_t i : demand) charge += bids[i].quantity;
    const double matched = std::min(floor_supply, charge);
    if (matched > 0.0) {
      const double share = matched / floor_supply;
      for (std::size_t i : supply) {
        if (bids[i].price <= bounds.floor) out.accepted[i] = bids[i].quantity * share;
      }
      detail::fill_demand(bids, demand, bounds.floor, matched, out.accepted);
    }
    return out;
  }

  // Demand at a candidate price: inelastic part plus storage willing to pay it.
  const auto demand_at = [&](double price) {
    double d = residual_demand;
    for (std::size_t i : demand) {
      if (bids[i].price >= price) d += bids[i].quantity;
    }
    return d;
  };

  double cumulative = 0.0;
  double previous_price = bounds.floor;
  std::size_t k = 0;
  while (k < supply.size()) {
    const double level_price = bids[supply[k]].price;
    std::size_t level_end = k;
    double level_qty = 0.0;
    while (level_end < supply.size() && bids[supply[level_end]].price == level_price) {
      level_qty += bids[supply[level_end]].quantity;
      ++level_end;
    }
    const double d = demand_at(level_price);
    if (cumulative + level_qty >= d) {
      if (d > cumulative) {
        const double share = (d - cumulative) / level_qty;
        for (std::size_t j = k; j < level_end; ++j) out.accepted[supply[j]] = bids[supply[j]].quantity * share;
        out.clearing_price = level_price;
        detail::fill_demand(bids, demand, level_price, d - residual_demand, out.accepted);
      } else {
        // Storage demand between the previous level and this one is marginal.
        out.clearing_price = previous_price;
        detail::fill_demand(bids, demand, previous_price, cumulative - residual_demand, out.accepted);
      }
      return out;
    }
    for (std::size_t j = k; j < level_end; ++j) out.accepted[supply[j]] = bids[supply[j]].quantity;
    cumulative += level_qty;
    previous_price = level_price;
    k = level_end;
  }

  // Every supply bid is accepted and demand is still open.
  if (cumulative < residual_demand) {
    out.deficit = residual_demand - cumulative;
    out.clearing_price = bounds.cap;
  } else {
    out.clearing_price = previous_price;
    detail::fill_demand(bids, demand, previous_price, cumulative - residual_demand, out.accepted);
  }
  return out;
}

}  // namespace eomsim
