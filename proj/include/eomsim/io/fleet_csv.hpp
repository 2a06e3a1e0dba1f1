#pragma once

#include <array>
#include <fstream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "eomsim/core/types.hpp"
#include "eomsim/io/csv.hpp"

namespace eomsim::io {

inline constexpr std::array<std::string_view, 18> kFleetColumns = {
    "id",           "name",           "fuel",          "owner_id",           "nominal_capacity",
    "min_stable_output", "efficiency", "ramp_up",      "ramp_down",          "min_uptime",
    "min_downtime", "startup_cost",   "other_variable_cost", "thermal_emission_factor", "chp_heat_capacity",
    "power_to_heat_ratio", "reserve_eligible", "commissioning_year"};

inline constexpr std::array<std::string_view, 6> kStorageColumns = {
    "id", "owner_id", "power_capacity", "energy_capacity", "round_trip_efficiency", "state_of_charge"};

template <std::size_t N>
void require_header(const CsvTable& t, const std::array<std::string_view, N>& expected, const std::string& source) {
  bool ok = t.header.size() == N;
  for (std::size_t i = 0; ok && i < N; ++i) ok = t.header[i] == expected[i];
  if (!ok) {
    std::string want;
    for (auto c : expected) want += (want.empty() ? "" : ",") + std::string(c);
    throw InputError(source + ": header must be exactly: " + want);
  }
}

inline std::vector<PlantUnit> parse_fleet(const CsvTable& t, const std::string& source) {
  require_header(t, kFleetColumns, source);
  std::vector<PlantUnit> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& f = t.rows[r];
    const std::string at = source + ":" + std::to_string(t.line_numbers[r]);
    PlantUnit u;
    u.id = f[0];
    u.name = f[1];
    const auto fuel = parse_fuel(f[2]);
    if (!fuel) throw InputError(at + ": unknown fuel '" + f[2] + "'");
    u.fuel = *fuel;
    u.owner_id = f[3];
    u.nominal_capacity = parse_double(f[4], at);
    u.min_stable_output = parse_double(f[5], at);
    u.efficiency = parse_double(f[6], at);
    u.ramp_up = parse_double(f[7], at);
    u.ramp_down = parse_double(f[8], at);
    u.min_uptime = parse_int(f[9], at);
    u.min_downtime = parse_int(f[10], at);
    u.startup_cost = parse_double(f[11], at);
    u.other_variable_cost = parse_double(f[12], at);
    u.thermal_emission_factor = parse_double(f[13], at);
    u.chp_heat_capacity = parse_double(f[14], at);
    u.power_to_heat_ratio = parse_double(f[15], at);
    u.reserve_eligible = parse_bool(f[16], at);
    u.commissioning_year = parse_int(f[17], at);
    out.push_back(std::move(u));
  }
  return out;
}

inline std::vector<PlantUnit> read_fleet_csv(const std::string& path) { return parse_fleet(read_csv(path), path); }

inline std::vector<StorageUnit> parse_storage(const CsvTable& t, const std::string& source) {
  require_header(t, kStorageColumns, source);
  std::vector<StorageUnit> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& f = t.rows[r];
    const std::string at = source + ":" + std::to_string(t.line_numbers[r]);
    out.push_back({f[0], f[1], parse_double(f[2], at), parse_double(f[3], at), parse_double(f[4], at),
                   parse_double(f[5], at)});
  }
  return out;
}

inline std::vector<StorageUnit> read_storage_csv(const std::string& path) {
  return parse_storage(read_csv(path), path);
}

inline void write_fleet_csv(std::ostream& out, const std::vector<PlantUnit>& fleet) {
  for (std::size_t i = 0; i < kFleetColumns.size(); ++i) out << (i ? "," : "") << kFleetColumns[i];
  out << '\n';
  for (const auto& u : fleet) {
    out << csv_escape(u.id) << ',' << csv_escape(u.name) << ',' << to_string(u.fuel) << ',' << csv_escape(u.owner_id)
        << ',' << format_number(u.nominal_capacity) << ',' << format_number(u.min_stable_output) << ','
        << format_number(u.efficiency) << ',' << format_number(u.ramp_up) << ',' << format_number(u.ramp_down) << ','
        << u.min_uptime << ',' << u.min_downtime << ',' << format_number(u.startup_cost) << ','
        << format_number(u.other_variable_cost) << ',' << format_number(u.thermal_emission_factor) << ','
        << format_number(u.chp_heat_capacity) << ',' << format_number(u.power_to_heat_ratio) << ','
        << (u.reserve_eligible ? "true" : "false") << ',' << u.commissioning_year << '\n';
  }
}

inline void write_storage_csv(std::ostream& out, const std::vector<StorageUnit>& storage) {
  for (std::size_t i = 0; i < kStorageColumns.size(); ++i) out << (i ? "," : "") << kStorageColumns[i];
  out << '\n';
  for (const auto& s : storage) {
    out << csv_escape(s.id) << ',' << csv_escape(s.owner_id) << ',' << format_number(s.power_capacity) << ','
        << format_number(s.energy_capacity) << ',' << format_number(s.round_trip_efficiency) << ','
        << format_number(s.state_of_charge) << '\n';
  }
}

}  // namespace eomsim::io
