#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eomsim/calendar.hpp"
#include "eomsim/io/csv.hpp"
#include "eomsim/report.hpp"

namespace eomsim::io {

struct OutputOptions {
  bool dump_pfc = false;
  bool dump_dispatch = false;  // needs a report recorded with the unit trace
};

inline std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

/// metric,value rows; the first block mirrors the deficit / negative-residual
/// and base / peak / off-peak tables.
inline std::vector<std::pair<std::string, std::string>> summary_rows(const SimulationReport& r) {
  const auto& a = r.aggregates;
  std::vector<std::pair<std::string, std::string>> rows = {
      {"scenario", r.scenario_name},
      {"year", std::to_string(r.year)},
      {"intervals", std::to_string(r.records.size())},
      {"deficit_intervals", std::to_string(a.deficit.intervals)},
      {"deficit_max_GW", format_number(a.deficit.max_power / 1000.0)},
      {"deficit_energy_GWh", format_number(a.deficit.energy / 1000.0)},
      {"negative_residual_intervals", std::to_string(a.negative_residual.intervals)},
      {"negative_residual_max_GW", format_number(a.negative_residual.max_power / 1000.0)},
      {"negative_residual_energy_GWh", format_number(a.negative_residual.energy / 1000.0)},
      {"price_base_EUR_MWh", format_number(a.prices.base)},
      {"price_peak_EUR_MWh", optional_number(a.prices.peak)},
      {"price_off_peak_EUR_MWh", optional_number(a.prices.off_peak)},
  };
  for (const auto& [fuel, h] : a.full_load_hours) {
    rows.emplace_back("full_load_hours_" + std::string(to_string(fuel)), format_number(h));
  }
  rows.emplace_back("startup_cost_EUR", format_number(a.startup_cost_eur));
  rows.emplace_back("fuel_cost_EUR", format_number(a.fuel_cost_eur));
  rows.emplace_back("co2_t", format_number(a.co2_t));
  rows.emplace_back("reserve_payment_EUR", format_number(a.reserve_payment_eur));
  rows.emplace_back("heat_unserved_MWh", format_number(a.heat_unserved_mwh));
  rows.emplace_back("heat_penalty_EUR", format_number(a.heat_penalty_eur));
  rows.emplace_back("imbalance_abs_MWh", format_number(a.imbalance_abs_mwh));
  rows.emplace_back("activation_clipped_MWh", format_number(a.activation_clipped_mwh));
  return rows;
}

inline void write_summary(std::ostream& out, const SimulationReport& r) {
  out << "metric,value\n";
  for (const auto& [k, v] : summary_rows(r)) out << k << ',' << csv_escape(v) << '\n';
}

inline void write_intervals(std::ostream& out, const SimulationReport& r) {
  std::vector<FuelKind> fuels;
  for (const auto& [fuel, mw] : r.installed_mw) fuels.push_back(fuel);
  out << "timestamp,residual_MW,clearing_price,deficit_MW,surplus_MW,demand_MW,vre_MW,net_exports_MW,thermal_MW,"
         "storage_charge_MW,storage_discharge_MW,reserve_deployed_MW,imbalance_MW,reserve_shortfall_pos_MW,"
         "reserve_shortfall_neg_MW,heat_demand_MW,heat_unserved_MW";
  for (FuelKind f : fuels) out << ",gen_" << to_string(f) << "_MWh";
  out << '\n';
  for (const auto& rec : r.records) {
    out << interval_time(r.year, rec.interval).iso();
    for (double v : {rec.residual_mw, rec.clearing_price, rec.deficit_mw, rec.surplus_mw, rec.demand_mw, rec.vre_mw,
                     rec.net_exports_mw, rec.thermal_mw, rec.storage_charge_mw, rec.storage_discharge_mw,
                     rec.reserve_deployed_mw, rec.imbalance_mw, rec.reserve_shortfall_positive_mw,
                     rec.reserve_shortfall_negative_mw, rec.heat_demand_mw, rec.heat_unserved_mw}) {
      out << ',' << format_number(v);
    }
    for (FuelKind f : fuels) out << ',' << format_number(rec.generation_mwh[fuel_index(f)]);
    out << '\n';
  }
}

inline void write_generation_by_fuel(std::ostream& out, const SimulationReport& r) {
  const auto& a = r.aggregates;
  out << "fuel,installed_MW,generation_TWh,full_load_hours,startups\n";
  for (const auto& [fuel, mw] : r.installed_mw) {
    out << to_string(fuel) << ',' << format_number(mw) << ',' << format_number(a.generation_twh.at(fuel)) << ','
        << format_number(a.full_load_hours.at(fuel)) << ',' << a.startups.at(fuel) << '\n';
  }
}

inline void write_pfc(std::ostream& out, const SimulationReport& r) {
  out << "timestamp,residual_MW,price_EUR_MWh\n";
  for (std::size_t t = 0; t < r.records.size(); ++t) {
    out << interval_time(r.year, r.records[t].interval).iso() << ',' << format_number(r.records[t].residual_mw) << ','
        << format_number(r.price_forward_curve.at(t)) << '\n';
  }
}

inline void write_dispatch(std::ostream& out, const SimulationReport& r) {
  if (r.unit_trace.size() != r.records.size() * r.unit_ids.size()) {
    throw ContractViolation("dispatch dump needs a report with the unit trace recorded");
  }
  out << "timestamp,unit_id,output_MW,online,startup\n";
  for (std::size_t t = 0; t < r.records.size(); ++t) {
    const std::string stamp = interval_time(r.year, r.records[t].interval).iso();
    for (std::size_t i = 0; i < r.unit_ids.size(); ++i) {
      const auto& s = r.snapshot(t, i);
      out << stamp << ',' << csv_escape(r.unit_ids[i]) << ',' << format_number(s.output + s.activation) << ','
          << (s.online ? 1 : 0) << ',' << (s.started ? 1 : 0) << '\n';
    }
  }
}

/// Run metadata. Deliberately free of wall-clock time and host details so
/// repeated runs produce identical files.
inline nlohmann::ordered_json metadata(const SimulationReport& r) {
  nlohmann::ordered_json m;
  m["scenario"] = r.scenario_name;
  m["year"] = r.year;
  m["first_interval"] = r.records.empty() ? 0 : r.records.front().interval;
  m["intervals"] = r.records.size();
  m["units"] = r.unit_ids.size();
  auto& hashes = m["input_sha256"] = nlohmann::ordered_json::object();
  for (const auto& [label, hex] : r.input_hashes) hashes[label] = hex;
  m["diagnostics"] = r.diagnostics;
  return m;
}

namespace detail {

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  writer(out);
  if (!out) throw InputError("write failed for '" + path.string() + "'");
}

}  // namespace detail

inline void write_run(const std::filesystem::path& dir, const SimulationReport& r, const OutputOptions& opt = {}) {
  std::filesystem::create_directories(dir);
  detail::write_file(dir / "summary.csv", [&](std::ostream& o) { write_summary(o, r); });
  detail::write_file(dir / "intervals.csv", [&](std::ostream& o) { write_intervals(o, r); });
  detail::write_file(dir / "generation_by_fuel.csv", [&](std::ostream& o) { write_generation_by_fuel(o, r); });
  detail::write_file(dir / "metadata.json", [&](std::ostream& o) { o << metadata(r).dump(2) << '\n'; });
  if (opt.dump_pfc) detail::write_file(dir / "pfc.csv", [&](std::ostream& o) { write_pfc(o, r); });
  if (opt.dump_dispatch) detail::write_file(dir / "dispatch.csv", [&](std::ostream& o) { write_dispatch(o, r); });
}

inline std::map<std::string, std::string> read_summary(const std::filesystem::path& path) {
  const CsvTable t = read_csv(path.string());
  if (t.header.size() != 2 || t.header[0] != "metric" || t.header[1] != "value") {
    throw InputError(path.string() + ": not a run summary");
  }
  std::map<std::string, std::string> out;
  for (const auto& row : t.rows) out[row[0]] = row[1];
  return out;
}

inline const std::vector<std::string>& comparison_columns() {
  static const std::vector<std::string> cols = {
      "deficit_intervals",           "deficit_max_GW",           "deficit_energy_GWh",
      "negative_residual_intervals", "negative_residual_max_GW", "negative_residual_energy_GWh",
      "price_base_EUR_MWh",          "price_peak_EUR_MWh",       "price_off_peak_EUR_MWh"};
  return cols;
}

/// One row per run directory (in the given order): deficit and
/// negative-residual key figures followed by the mean prices.
inline void write_comparison(std::ostream& out, const std::vector<std::filesystem::path>& runs) {
  out << "scenario";
  for (const auto& c : comparison_columns()) out << ',' << c;
  out << '\n';
  for (const auto& dir : runs) {
    const auto s = read_summary(dir / "summary.csv");
    const auto name = s.find("scenario");
    out << csv_escape(name == s.end() ? dir.filename().string() : name->second);
    for (const auto& c : comparison_columns()) {
      const auto it = s.find(c);
      out << ',' << (it == s.end() ? "" : csv_escape(it->second));
    }
    out << '\n';
  }
}

}  // namespace eomsim::io
