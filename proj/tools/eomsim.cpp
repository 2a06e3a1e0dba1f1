// Command-line front end: simulate one scenario, compare finished runs, or
// write a synthetic input set.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "eomsim/eomsim.hpp"
#include "eomsim/io/fleet_csv.hpp"
#include "eomsim/io/outputs.hpp"
#include "eomsim/io/scenario_config.hpp"
#include "eomsim/io/series_csv.hpp"
#include "eomsim/synthetic.hpp"

namespace fs = std::filesystem;
using namespace eomsim;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitFailure = 1;

struct SimulateArgs {
  io::RunInputs inputs;
  std::string out;
  std::string storage;
  bool dump_pfc = false;
  bool dump_dispatch = false;
  bool quiet = false;
};

int simulate(const SimulateArgs& a) {
  io::RunInputs in = a.inputs;
  if (!a.storage.empty()) in.storage = a.storage;
  Diagnostics load_diag;
  SimulationConfig config = io::load_run(in, &load_diag);
  config.record_unit_trace = a.dump_dispatch;
  SimulationReport report = run_simulation(config);
  for (const auto& [kind, n] : load_diag.counts()) report.diagnostics.push_back(kind + ": " + std::to_string(n));
  io::write_run(a.out, report, {a.dump_pfc, a.dump_dispatch});
  if (!a.quiet) {
    const auto& g = report.aggregates;
    std::cout << report.scenario_name << ": " << report.records.size() << " intervals, base price "
              << io::format_number(g.prices.base) << " EUR/MWh, deficit " << g.deficit.intervals << " intervals / "
              << io::format_number(g.deficit.energy / 1000.0) << " GWh -> " << a.out << '\n';
  }
  return 0;
}

struct SynthArgs {
  std::string out;
  std::uint64_t seed = 1;
  std::size_t units = 20;
  int year = 2017;
  std::size_t days = 0;
  std::string preset = "small";
};

int synth(const SynthArgs& a) {
  synthetic::Options o;
  o.seed = a.seed;
  o.units = a.units;
  o.year = a.year;
  if (a.preset == "national") o.capacity_mix_mw = synthetic::national_mix();
  o.intervals = a.days > 0 ? a.days * kIntervalsPerDay : TimeSeries::intervals_in_year(a.year);
  const SimulationConfig c = synthetic::make_config(o);

  const fs::path dir(a.out);
  fs::create_directories(dir / "series");
  const auto write = [](const fs::path& p, auto&& fn) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw InputError("cannot write '" + p.string() + "'");
    fn(f);
  };
  write(dir / "fleet.csv", [&](std::ostream& f) { io::write_fleet_csv(f, c.fleet.plants); });
  write(dir / "storage.csv", [&](std::ostream& f) { io::write_storage_csv(f, c.fleet.storage); });
  write(dir / "series" / "demand.csv", [&](std::ostream& f) { io::write_series_csv(f, c.demand, "demand_MW"); });
  for (const auto& v : c.vre) {
    write(dir / "series" / ("vre_" + v.name + ".csv"), [&](std::ostream& f) { io::write_series_csv(f, v.series, v.name + "_MW"); });
  }
  write(dir / "series" / "net_exports.csv", [&](std::ostream& f) { io::write_series_csv(f, *c.net_exports, "net_exports_MW"); });
  write(dir / "series" / "heat_demand.csv", [&](std::ostream& f) { io::write_series_csv(f, *c.heat_demand, "heat_MW_th"); });
  write(dir / "series" / "activation.csv", [&](std::ostream& f) { io::write_series_csv(f, *c.activation, "activation_MW"); });

  nlohmann::ordered_json s;
  s["name"] = "synthetic";
  s["year"] = a.year;
  auto& prices = s["fuel_prices"];
  for (FuelKind f : kAllFuels) prices[std::string(to_string(f))] = c.prices.price(f);
  prices["co2"] = c.prices.co2_price;
  s["reserve"] = {{"positive_MW", c.reserve.positive_mw},
                  {"negative_MW", c.reserve.negative_mw},
                  {"block_intervals", c.reserve.block_intervals}};
  write(dir / "scenario.json", [&](std::ostream& f) { f << s.dump(2) << '\n'; });
  std::cout << "wrote " << c.fleet.plants.size() << " units, " << c.demand.size() << " intervals to " << a.out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agent-based energy-only market simulator (quarter-hour resolution)"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run one scenario and write a run directory");
  sim_cmd->add_option("--scenario", sim.inputs.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  sim_cmd->add_option("--fleet", sim.inputs.fleet, "Fleet CSV")->required()->check(CLI::ExistingFile);
  sim_cmd->add_option("--series", sim.inputs.series_dir, "Directory with the time-series CSVs")
      ->required()
      ->check(CLI::ExistingDirectory);
  sim_cmd->add_option("--out", sim.out, "Output directory")->required();
  sim_cmd->add_option("--storage", sim.storage, "Storage CSV")->check(CLI::ExistingFile);
  sim_cmd->add_flag("--dump-pfc", sim.dump_pfc, "Also write pfc.csv");
  sim_cmd->add_flag("--dump-dispatch", sim.dump_dispatch, "Also write the per-unit dispatch.csv");
  sim_cmd->add_flag("-q,--quiet", sim.quiet, "No summary line");

  std::vector<std::string> runs;
  std::string compare_out;
  auto* cmp_cmd = app.add_subcommand("compare", "Tabulate key figures of finished runs");
  cmp_cmd->add_option("--runs", runs, "Run directories")->required()->check(CLI::ExistingDirectory);
  cmp_cmd->add_option("--out", compare_out, "Output CSV")->required();

  SynthArgs syn;
  auto* syn_cmd = app.add_subcommand("synth", "Write a synthetic fleet, series and scenario");
  syn_cmd->add_option("--out", syn.out, "Output directory")->required();
  syn_cmd->add_option("--seed", syn.seed, "Random seed");
  syn_cmd->add_option("--units", syn.units, "Number of thermal units")->check(CLI::Range(1, 10000));
  syn_cmd->add_option("--year", syn.year, "Calendar year");
  syn_cmd->add_option("--days", syn.days, "Horizon in days from January 1st (default: whole year)");
  syn_cmd->add_option("--preset", syn.preset, "small: --units random units; national: about 97 GW in a fixed fuel mix")
      ->check(CLI::IsMember({"small", "national"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim_cmd) return simulate(sim);
    if (*cmp_cmd) {
      std::vector<fs::path> dirs(runs.begin(), runs.end());
      std::ofstream out(compare_out, std::ios::binary);
      if (!out) throw InputError("cannot write '" + compare_out + "'");
      io::write_comparison(out, dirs);
      return 0;
    }
    if (*syn_cmd) return synth(syn);
  } catch (const ValidationError& e) {
    std::cerr << "input validation failed:\n";
    for (const auto& item : e.items()) std::cerr << "  - " << item << '\n';
    return kExitValidation;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
