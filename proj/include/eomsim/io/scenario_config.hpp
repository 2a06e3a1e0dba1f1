#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "eomsim/calendar.hpp"
#include "eomsim/engine.hpp"
#include "eomsim/io/fleet_csv.hpp"
#include "eomsim/io/hash.hpp"
#include "eomsim/io/series_csv.hpp"
#include "eomsim/scenario.hpp"

namespace eomsim::io {

using json = nlohmann::json;

/// Series file names, relative to the series directory.
struct SeriesFiles {
  std::string demand = "demand.csv";
  std::map<std::string, std::string> vre;  // empty: every vre_<name>.csv in the directory
  std::optional<std::string> net_exports;  // default net_exports.csv if present
  std::optional<std::string> heat_demand;  // default heat_demand.csv if present
  std::optional<std::string> activation;   // default activation.csv if present
  bool explicit_vre = false;
};

struct ScenarioFile {
  ScenarioSpec spec;
  SeriesFiles series;
};

namespace detail {

inline void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where,
                       std::vector<std::string>& problems) {
  if (!obj.is_object()) {
    problems.push_back(where + ": expected an object");
    return;
  }
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) problems.push_back(where + ": unknown key '" + key + "'");
  }
}

inline std::optional<double> number(const json& obj, const std::string& key, const std::string& where,
                                    std::vector<std::string>& problems) {
  if (!obj.contains(key)) return std::nullopt;
  const auto& v = obj.at(key);
  if (!v.is_number()) {
    problems.push_back(where + "." + key + ": expected a number");
    return std::nullopt;
  }
  return v.get<double>();
}

inline std::optional<FuelKind> fuel_key(const std::string& text, const std::string& where,
                                        std::vector<std::string>& problems) {
  auto fuel = parse_fuel(text);
  if (!fuel) problems.push_back(where + ": unknown fuel '" + text + "'");
  return fuel;
}

/// Overrides on a generic unit; size-dependent defaults are already applied.
inline PlantUnit unit_template(const json& t, FuelKind fuel, double unit_size_mw, int year, const std::string& where,
                               std::vector<std::string>& problems) {
  PlantUnit u = generic_template(fuel);
  u.nominal_capacity = unit_size_mw;
  u.ramp_up = u.ramp_down = unit_size_mw;
  u.min_stable_output = 0.4 * unit_size_mw;
  u.startup_cost = 30.0 * unit_size_mw;
  u.commissioning_year = year;
  check_keys(t,
             {"owner_id", "min_stable_output", "efficiency", "ramp_up", "ramp_down", "min_uptime", "min_downtime",
              "startup_cost", "other_variable_cost", "thermal_emission_factor", "chp_heat_capacity",
              "power_to_heat_ratio", "reserve_eligible"},
             where, problems);
  if (!t.is_object()) return u;
  const auto num = [&](const char* key, double& field) {
    if (auto v = number(t, key, where, problems)) field = *v;
  };
  const auto integer = [&](const char* key, int& field) {
    if (!t.contains(key)) return;
    if (!t.at(key).is_number_integer()) {
      problems.push_back(where + "." + key + ": expected an integer");
      return;
    }
    field = t.at(key).get<int>();
  };
  num("min_stable_output", u.min_stable_output);
  num("efficiency", u.efficiency);
  num("ramp_up", u.ramp_up);
  num("ramp_down", u.ramp_down);
  integer("min_uptime", u.min_uptime);
  integer("min_downtime", u.min_downtime);
  num("startup_cost", u.startup_cost);
  num("other_variable_cost", u.other_variable_cost);
  num("thermal_emission_factor", u.thermal_emission_factor);
  num("chp_heat_capacity", u.chp_heat_capacity);
  num("power_to_heat_ratio", u.power_to_heat_ratio);
  if (t.contains("owner_id")) {
    if (t.at("owner_id").is_string()) u.owner_id = t.at("owner_id").get<std::string>();
    else problems.push_back(where + ".owner_id: expected a string");
  }
  if (t.contains("reserve_eligible")) {
    if (t.at("reserve_eligible").is_boolean()) u.reserve_eligible = t.at("reserve_eligible").get<bool>();
    else problems.push_back(where + ".reserve_eligible: expected true/false");
  }
  return u;
}

inline std::optional<std::string> file_name(const json& obj, const std::string& key, const std::string& where,
                                            std::vector<std::string>& problems) {
  if (!obj.contains(key)) return std::nullopt;
  if (!obj.at(key).is_string()) {
    problems.push_back(where + "." + key + ": expected a file name");
    return std::nullopt;
  }
  return obj.at(key).get<std::string>();
}

}  // namespace detail

/// Parses a scenario document. All problems are collected and reported
/// together as a ValidationError.
inline ScenarioFile parse_scenario(const json& doc, const std::string& source) {
  std::vector<std::string> problems;
  ScenarioFile out;
  ScenarioSpec& spec = out.spec;
  const std::string root = source;

  detail::check_keys(doc,
                     {"name", "year", "fuel_prices", "decommission_GW", "add_capacity", "vre_scaling",
                      "demand_scaling", "reserve", "price_bounds", "unserved_heat_penalty", "holidays", "series"},
                     root, problems);
  if (!doc.is_object()) throw ValidationError(std::move(problems));

  if (doc.contains("name")) {
    if (doc["name"].is_string()) spec.name = doc["name"].get<std::string>();
    else problems.push_back(root + ".name: expected a string");
  }
  if (doc.contains("year")) {
    if (doc["year"].is_number_integer()) spec.year = doc["year"].get<int>();
    else problems.push_back(root + ".year: expected an integer");
  }

  if (!doc.contains("fuel_prices")) {
    problems.push_back(root + ": missing 'fuel_prices'");
  } else if (!doc["fuel_prices"].is_object()) {
    problems.push_back(root + ".fuel_prices: expected an object");
  } else {
    for (const auto& [key, value] : doc["fuel_prices"].items()) {
      const std::string where = root + ".fuel_prices." + key;
      if (!value.is_number()) {
        problems.push_back(where + ": expected a number");
        continue;
      }
      if (key == "co2") {
        spec.fuel_prices.co2_price = value.get<double>();
      } else if (auto fuel = detail::fuel_key(key, where, problems)) {
        spec.fuel_prices.set(*fuel, value.get<double>());
      }
    }
  }

  if (doc.contains("decommission_GW")) {
    const auto& d = doc["decommission_GW"];
    if (!d.is_object()) problems.push_back(root + ".decommission_GW: expected an object");
    else {
      for (const auto& [key, value] : d.items()) {
        const std::string where = root + ".decommission_GW." + key;
        auto fuel = detail::fuel_key(key, where, problems);
        if (!value.is_number() || value.get<double>() < 0.0) problems.push_back(where + ": expected a number >= 0");
        else if (fuel) spec.decommission_gw[*fuel] = value.get<double>();
      }
    }
  }

  if (doc.contains("add_capacity")) {
    const auto& adds = doc["add_capacity"];
    if (!adds.is_array()) problems.push_back(root + ".add_capacity: expected an array");
    else {
      for (std::size_t i = 0; i < adds.size(); ++i) {
        const std::string where = root + ".add_capacity[" + std::to_string(i) + "]";
        const auto& a = adds[i];
        detail::check_keys(a, {"fuel", "total_GW", "unit_size_MW", "template"}, where, problems);
        if (!a.is_object()) continue;
        CapacityAddition add;
        std::optional<FuelKind> fuel;
        if (a.contains("fuel") && a["fuel"].is_string()) fuel = detail::fuel_key(a["fuel"].get<std::string>(), where, problems);
        else problems.push_back(where + ": missing fuel");
        auto total = detail::number(a, "total_GW", where, problems);
        if (!total || *total < 0.0) problems.push_back(where + ": total_GW must be a number >= 0");
        if (auto size = detail::number(a, "unit_size_MW", where, problems)) add.unit_size_mw = *size;
        if (!(add.unit_size_mw > 0.0)) problems.push_back(where + ": unit_size_MW must be > 0");
        if (!fuel || !total) continue;
        add.fuel = *fuel;
        add.total_gw = *total;
        if (a.contains("template")) {
          add.unit_template =
              detail::unit_template(a["template"], *fuel, add.unit_size_mw, spec.year, where + ".template", problems);
        }
        spec.additions.push_back(std::move(add));
      }
    }
  }

  if (doc.contains("vre_scaling")) {
    const auto& v = doc["vre_scaling"];
    if (!v.is_object()) problems.push_back(root + ".vre_scaling: expected an object");
    else {
      for (const auto& [key, value] : v.items()) {
        const std::string where = root + ".vre_scaling." + key;
        detail::check_keys(value, {"factor", "reference_GW", "target_GW"}, where, problems);
        if (!value.is_object()) continue;
        VreScaling s;
        if (auto f = detail::number(value, "factor", where, problems)) s.factor = *f;
        s.reference_gw = detail::number(value, "reference_GW", where, problems);
        s.target_gw = detail::number(value, "target_GW", where, problems);
        if (s.reference_gw.has_value() != s.target_gw.has_value()) {
          problems.push_back(where + ": reference_GW and target_GW go together");
        } else if (s.reference_gw && value.contains("factor")) {
          problems.push_back(where + ": give either factor or reference_GW/target_GW");
        } else if (s.reference_gw && !(*s.reference_gw > 0.0)) {
          problems.push_back(where + ": reference_GW must be > 0");
        } else if (!(s.factor >= 0.0) || (s.target_gw && *s.target_gw < 0.0)) {
          problems.push_back(where + ": scaling must be >= 0");
        }
        spec.vre_scaling[key] = s;
      }
    }
  }

  if (auto f = detail::number(doc, "demand_scaling", root, problems)) {
    spec.demand_scaling = *f;
    if (!(*f >= 0.0)) problems.push_back(root + ".demand_scaling: must be >= 0");
  }

  if (doc.contains("reserve")) {
    const auto& r = doc["reserve"];
    const std::string where = root + ".reserve";
    detail::check_keys(r, {"positive_MW", "negative_MW", "block_intervals"}, where, problems);
    if (r.is_object()) {
      if (auto v = detail::number(r, "positive_MW", where, problems)) spec.reserve.positive_mw = *v;
      if (auto v = detail::number(r, "negative_MW", where, problems)) spec.reserve.negative_mw = *v;
      if (r.contains("block_intervals")) {
        if (r["block_intervals"].is_number_integer() && r["block_intervals"].get<int>() >= 1) {
          spec.reserve.block_intervals = r["block_intervals"].get<int>();
        } else {
          problems.push_back(where + ".block_intervals: expected an integer >= 1");
        }
      }
      if (spec.reserve.positive_mw < 0.0 || spec.reserve.negative_mw < 0.0) {
        problems.push_back(where + ": requirements must be >= 0");
      }
    }
  }

  if (doc.contains("price_bounds")) {
    const auto& b = doc["price_bounds"];
    const std::string where = root + ".price_bounds";
    detail::check_keys(b, {"floor", "cap"}, where, problems);
    if (b.is_object()) {
      if (auto v = detail::number(b, "floor", where, problems)) spec.bounds.floor = *v;
      if (auto v = detail::number(b, "cap", where, problems)) spec.bounds.cap = *v;
      if (!(spec.bounds.floor < spec.bounds.cap)) problems.push_back(where + ": floor must be below cap");
    }
  }

  if (auto v = detail::number(doc, "unserved_heat_penalty", root, problems)) spec.unserved_heat_penalty = *v;

  if (doc.contains("holidays")) {
    const auto& h = doc["holidays"];
    if (!h.is_array()) problems.push_back(root + ".holidays: expected an array of dates");
    else {
      for (const auto& d : h) {
        const auto stamp = d.is_string() ? parse_timestamp(d.get<std::string>()) : std::nullopt;
        if (!stamp || stamp->first != spec.year || stamp->second % kIntervalsPerDay != 0) {
          problems.push_back(root + ".holidays: '" + d.dump() + "' is not a YYYY-MM-DD date in " +
                             std::to_string(spec.year));
          continue;
        }
        spec.holidays.push_back(static_cast<int>(stamp->second / kIntervalsPerDay));
      }
    }
  }

  if (doc.contains("series")) {
    const auto& s = doc["series"];
    const std::string where = root + ".series";
    detail::check_keys(s, {"demand", "vre", "net_exports", "heat_demand", "activation"}, where, problems);
    if (s.is_object()) {
      if (auto f = detail::file_name(s, "demand", where, problems)) out.series.demand = *f;
      out.series.net_exports = detail::file_name(s, "net_exports", where, problems);
      out.series.heat_demand = detail::file_name(s, "heat_demand", where, problems);
      out.series.activation = detail::file_name(s, "activation", where, problems);
      if (s.contains("vre")) {
        out.series.explicit_vre = true;
        if (!s["vre"].is_object()) problems.push_back(where + ".vre: expected an object of name: file");
        else {
          for (const auto& [name, file] : s["vre"].items()) {
            if (file.is_string()) out.series.vre[name] = file.get<std::string>();
            else problems.push_back(where + ".vre." + name + ": expected a file name");
          }
        }
      }
    }
  }

  if (!problems.empty()) throw ValidationError(std::move(problems));
  return out;
}

inline ScenarioFile read_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_scenario(doc, path);
}

/// File locations of one run.
struct RunInputs {
  std::string scenario;
  std::string fleet;
  std::string series_dir;
  std::optional<std::string> storage;
};

/// Resolves the series file set against a directory listing.
inline SeriesFiles resolve_series(SeriesFiles files, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!files.explicit_vre && fs::is_directory(dir)) {
    std::vector<fs::path> entries;
    for (const auto& e : fs::directory_iterator(dir)) entries.push_back(e.path());
    std::sort(entries.begin(), entries.end());
    for (const auto& p : entries) {
      const std::string name = p.filename().string();
      if (name.rfind("vre_", 0) == 0 && p.extension() == ".csv") {
        files.vre[name.substr(4, name.size() - 8)] = name;
      }
    }
  }
  const auto optional = [&](std::optional<std::string>& f, const char* fallback) {
    if (!f && fs::exists(dir / fallback)) f = fallback;
  };
  optional(files.net_exports, "net_exports.csv");
  optional(files.heat_demand, "heat_demand.csv");
  optional(files.activation, "activation.csv");
  return files;
}

/// Loads every input of a run, applies the scenario transforms and records
/// the SHA-256 of each file read. Hash labels are file names only, so the
/// same inputs in another directory give the same metadata.
inline SimulationConfig load_run(const RunInputs& in, Diagnostics* diag = nullptr) {
  namespace fs = std::filesystem;
  const ScenarioFile scenario = read_scenario_file(in.scenario);
  const ScenarioSpec& spec = scenario.spec;
  const fs::path dir(in.series_dir);
  const SeriesFiles files = resolve_series(scenario.series, dir);

  SimulationConfig c;
  c.scenario_name = spec.name;
  c.prices = spec.fuel_prices;
  c.reserve = spec.reserve;
  c.bounds = spec.bounds;
  c.unserved_heat_penalty = spec.unserved_heat_penalty;
  c.calendar = TradingCalendar(std::set<int>(spec.holidays.begin(), spec.holidays.end()));

  const auto hash = [&](const std::string& label, const std::string& path) {
    c.input_hashes.emplace_back(label, sha256_file(path));
  };
  hash("scenario:" + fs::path(in.scenario).filename().string(), in.scenario);
  hash("fleet:" + fs::path(in.fleet).filename().string(), in.fleet);

  const auto base_fleet = read_fleet_csv(in.fleet);
  if (auto v = validate_fleet(base_fleet, {}); !v.empty()) {
    std::vector<std::string> items;
    for (const auto& x : v) items.push_back(in.fleet + ": unit '" + x.unit_id + "' field " + x.field + ": " + x.message);
    throw ValidationError(std::move(items));
  }
  c.fleet.plants = apply_fleet_changes(spec, base_fleet, diag);
  if (in.storage) {
    hash("storage:" + fs::path(*in.storage).filename().string(), *in.storage);
    c.fleet.storage = read_storage_csv(*in.storage);
  }

  const auto series = [&](const std::string& label, const std::string& file, SeriesUnit unit) {
    const std::string path = (dir / file).string();
    hash(label + ":" + file, path);
    TimeSeries s = read_series_csv(path, unit);
    if (s.year != spec.year) {
      throw ValidationError({path + ": series year " + std::to_string(s.year) + " differs from scenario year " +
                             std::to_string(spec.year)});
    }
    return s;
  };
  c.demand = series("demand", files.demand, SeriesUnit::MW);
  for (auto& v : c.demand.values) v *= spec.demand_scaling;
  for (const auto& [name, file] : files.vre) {
    TimeSeries s = series("vre", file, SeriesUnit::MW);
    if (auto it = spec.vre_scaling.find(name); it != spec.vre_scaling.end()) {
      const double f = scaling_factor(it->second);
      for (auto& v : s.values) v *= f;
    }
    c.vre.push_back({name, std::move(s)});
  }
  std::vector<std::string> unknown;
  for (const auto& [name, s] : spec.vre_scaling) {
    if (!files.vre.contains(name)) unknown.push_back(in.scenario + ": vre_scaling names unknown source '" + name + "'");
  }
  if (!unknown.empty()) throw ValidationError(std::move(unknown));
  if (files.net_exports) c.net_exports = series("net_exports", *files.net_exports, SeriesUnit::MW);
  if (files.heat_demand) c.heat_demand = series("heat_demand", *files.heat_demand, SeriesUnit::MW_th);
  if (files.activation) c.activation = series("activation", *files.activation, SeriesUnit::MW);
  return c;
}

}  // namespace eomsim::io
