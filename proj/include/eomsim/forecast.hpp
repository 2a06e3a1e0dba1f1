#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "eomsim/core/costs.hpp"
#include "eomsim/core/types.hpp"
#include "eomsim/diagnostics.hpp"

namespace eomsim {

struct PriceBounds {
  double floor = -3000.0;  // EUR/MWh
  double cap = 3000.0;     // EUR/MWh

  double clamp(double price) const { return std::clamp(price, floor, cap); }
};

inline void require_valid(const PriceBounds& b) {
  if (!(b.floor < b.cap)) throw ConfigError("price bounds require floor < cap");
}

/// demand + net_exports - sum(vre), pointwise. May be negative.
inline TimeSeries residual_load(const TimeSeries& demand, std::span<const TimeSeries> vre_feeds,
                                const TimeSeries& net_exports) {
  if (!demand.aligned_with(net_exports)) {
    throw InputError("residual_load: net export series is not aligned with demand");
  }
  for (const auto& feed : vre_feeds) {
    if (!demand.aligned_with(feed)) throw InputError("residual_load: VRE series is not aligned with demand");
  }
  TimeSeries out{demand.year, demand.first_interval, SeriesUnit::MW, demand.values};
  for (std::size_t t = 0; t < out.size(); ++t) {
    double v = demand[t] + net_exports[t];
    for (const auto& feed : vre_feeds) v -= feed[t];
    out[t] = v;
  }
  return out;
}

struct MeritEntry {
  std::string unit_id;
  double capacity = 0.0;
  double marginal_cost = 0.0;
  double cumulative_capacity = 0.0;
};

/// Static supply stack sorted by marginal cost (ties by unit id).
class MeritOrder {
public:
  MeritOrder() = default;
  explicit MeritOrder(std::vector<MeritEntry> entries) : entries_(std::move(entries)) {
    std::stable_sort(entries_.begin(), entries_.end(), [](const MeritEntry& a, const MeritEntry& b) {
      if (a.marginal_cost != b.marginal_cost) return a.marginal_cost < b.marginal_cost;
      return a.unit_id < b.unit_id;
    });
    double cum = 0.0;
    for (auto& e : entries_) {
      cum += e.capacity;
      e.cumulative_capacity = cum;
    }
  }

  const std::vector<MeritEntry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  double total_capacity() const noexcept { return entries_.empty() ? 0.0 : entries_.back().cumulative_capacity; }

  /// First entry whose cumulative capacity is >= load, or nullptr if the
  /// stack is too short.
  const MeritEntry* marginal_entry(double load) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), load,
                               [](const MeritEntry& e, double x) { return e.cumulative_capacity < x; });
    return it == entries_.end() ? nullptr : &*it;
  }

private:
  std::vector<MeritEntry> entries_;
};

inline MeritOrder build_merit_order(std::span<const PlantUnit> fleet, const FuelPriceSet& prices) {
  std::vector<MeritEntry> entries;
  entries.reserve(fleet.size());
  for (const auto& p : fleet) entries.push_back({p.id, p.nominal_capacity, variable_cost(p, prices), 0.0});
  return MeritOrder(std::move(entries));
}

/// Year-ahead price expectation from the static merit order. Residual <= 0
/// prices at the floor, residual beyond the stack at the cap.
inline TimeSeries price_forward_curve(const MeritOrder& merit, const TimeSeries& residual,
                                      const PriceBounds& bounds, Diagnostics* diag = nullptr) {
  TimeSeries pfc{residual.year, residual.first_interval, SeriesUnit::EUR_per_MWh,
                 std::vector<double>(residual.size())};
  std::size_t capped_empty = 0;
  for (std::size_t t = 0; t < residual.size(); ++t) {
    const double r = residual[t];
    if (r <= 0.0) {
      pfc[t] = bounds.floor;
    } else if (const MeritEntry* e = merit.marginal_entry(r)) {
      pfc[t] = bounds.clamp(e->marginal_cost);
    } else {
      if (merit.empty()) ++capped_empty;
      pfc[t] = bounds.cap;
    }
  }
  if (diag && capped_empty > 0) {
    diag->note("pfc_empty_merit_order",
               std::to_string(capped_empty) + " intervals with positive residual priced at cap (no units)");
  }
  return pfc;
}

/// Linear interpolation between closest ranks (p in [0, 100]).
inline double percentile(std::vector<double> values, double p) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double rank = std::clamp(p, 0.0, 100.0) / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

}  // namespace eomsim
