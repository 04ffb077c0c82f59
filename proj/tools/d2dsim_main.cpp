// d2dsim: single-cell D2D underlay simulator.
//
// Runs Monte Carlo sweeps of the joint channel and power allocators over
// random topologies and fading draws, and writes one CSV/JSON row per
// (sweep value, algorithm). See README.md for the config schema.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "d2d/config.hpp"
#include "d2d/metrics.hpp"
#include "d2d/table_io.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-cell D2D underlay channel/power allocation simulator"};

  std::string config_path;
  std::vector<std::string> algorithm_flags;
  std::string out_path;
  std::string format_flag;
  std::uint64_t seed_flag = 0;
  int realizations_flag = 0;
  int jobs_flag = 0;
  bool dry_run = false;

  app.add_option("--config", config_path, "Config file ([cell]/[game]/[sweep]/[output] sections)");
  app.add_option("--algorithm", algorithm_flags, "Algorithm(s) to run: ca, greedy, ca-fixed (repeatable)");
  auto* seed_opt = app.add_option("--seed", seed_flag, "Base RNG seed");
  auto* reals_opt = app.add_option("--realizations", realizations_flag, "Realizations per sweep point");
  app.add_option("--out", out_path, "Output file path");
  app.add_option("--format", format_flag, "Output format: csv or json");
  app.add_option("--jobs", jobs_flag, "Worker threads (default: hardware concurrency)");
  app.add_flag("--dry-run", dry_run, "Validate and print the resolved configuration, write nothing");

  CLI11_PARSE(app, argc, argv);

  try {
    d2d::RunConfig cfg;
    bool seed_from_file = false;
    if (!config_path.empty()) {
      cfg = d2d::parse_config(read_file(config_path), &seed_from_file);
    } else {
      cfg = d2d::default_config();
    }

    // Seed precedence: --seed, then the config file, then D2DSIM_SEED, then
    // the built-in default.
    if (seed_opt->count() > 0) {
      cfg.sweep.cell.rng_seed = seed_flag;
    } else if (!seed_from_file) {
      if (const char* env = std::getenv("D2DSIM_SEED")) {
        try {
          cfg.sweep.cell.rng_seed = std::stoull(env);
        } catch (const std::exception&) {
          std::cerr << "error: D2DSIM_SEED is not a valid seed: " << env << "\n";
          return 1;
        }
      }
    }
    if (reals_opt->count() > 0) {
      if (realizations_flag < 1) {
        std::cerr << "error: --realizations must be >= 1\n";
        return 1;
      }
      cfg.sweep.realizations = realizations_flag;
    }
    if (!algorithm_flags.empty()) {
      cfg.sweep.algorithms.clear();
      for (const auto& name : algorithm_flags) {
        const auto a = d2d::algorithm_from_name(name);
        if (!a) {
          std::cerr << "error: unknown algorithm '" << name << "'\n";
          return 1;
        }
        cfg.sweep.algorithms.push_back(*a);
      }
    }
    if (!out_path.empty()) cfg.output_path = out_path;
    if (!format_flag.empty()) {
      if (format_flag == "csv") cfg.output_format = d2d::OutputFormat::csv;
      else if (format_flag == "json") cfg.output_format = d2d::OutputFormat::json;
      else {
        std::cerr << "error: --format must be csv or json\n";
        return 1;
      }
    }
    if (jobs_flag > 0) cfg.sweep.jobs = jobs_flag;
    cfg.sweep.validate();

    if (dry_run) {
      std::cout << d2d::serialize_config(cfg);
      std::cout << "# dry run: nothing written\n";
      return 0;
    }

    const std::vector<d2d::SweepRow> rows = d2d::run_sweep(cfg.sweep);

    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open output file: " << cfg.output_path << "\n";
      return 1;
    }
    if (cfg.output_format == d2d::OutputFormat::csv) {
      d2d::write_csv(out, rows);
    } else {
      d2d::write_json(out, rows);
    }
    out.flush();
    if (!out) {
      std::cerr << "error: failed writing " << cfg.output_path << "\n";
      return 1;
    }

    long long nonconverged = 0;
    for (const auto& row : rows) nonconverged += row.nonconverged;
    std::cout << "wrote " << rows.size() << " rows to " << cfg.output_path;
    if (nonconverged > 0) std::cout << " (nonconverged solves: " << nonconverged << ")";
    std::cout << "\n";
    return 0;
  } catch (const d2d::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
