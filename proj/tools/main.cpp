// urasim: one-hot coded unsourced random access with RFFI message
// authentication -- closed-form analysis, Monte Carlo simulation, and
// operating-point search.

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "experiment.hpp"

namespace {

using urasim::cli::ExperimentSpec;

struct Flags {
  std::optional<std::string> config;
  std::optional<int> bits, dl, di, dtot;
  std::optional<double> ebn0_db, pmd, pfa, target_pupe;
  std::optional<std::int64_t> rounds;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> impairment, sampling, axis, format, output;
  std::optional<double> search_lo_db, search_hi_db, grid_step_db, tol_db;
  std::vector<double> values;
  bool values_given = false;
};

void attach_flags(CLI::App* sub, Flags& flags) {
  sub->add_option("--config", flags.config, "JSON config file; flags override its values");
  sub->add_option("--bits", flags.bits, "message width B; N = 2^B channel uses");
  sub->add_option("--dl", flags.dl, "active legitimate devices per round");
  sub->add_option("--di", flags.di, "illegitimate devices per round");
  sub->add_option("--dtot", flags.dtot, "registered-device count (bookkeeping only)");
  sub->add_option("--ebn0-db", flags.ebn0_db, "operating Eb/N0 in dB");
  sub->add_option("--pmd", flags.pmd, "RFFI miss-detection probability");
  sub->add_option("--pfa", flags.pfa, "RFFI false-alarm probability");
  sub->add_option("--rounds", flags.rounds, "Monte Carlo rounds");
  sub->add_option("--seed", flags.seed, "master RNG seed");
  sub->add_option("--impairment", flags.impairment, "front end: ideal|pa");
  sub->add_option("--sampling", flags.sampling, "idle channel uses: sparse|dense");
  sub->add_option("--target-pupe", flags.target_pupe, "PUPE target for solver paths");
  auto* values = sub->add_option("--values", flags.values, "sweep axis values");
  values->delimiter(',');
  sub->callback([values, &flags] { flags.values_given = values->count() > 0; });
  sub->add_option("--axis", flags.axis, "sweep axis: dl|di|ebn0_db|pfa");
  sub->add_option("--search-lo-db", flags.search_lo_db, "solver lower bound (dB)");
  sub->add_option("--search-hi-db", flags.search_hi_db, "solver upper bound (dB)");
  sub->add_option("--grid-step-db", flags.grid_step_db, "solver coarse grid step (dB)");
  sub->add_option("--tol-db", flags.tol_db, "solver bisection tolerance (dB)");
  sub->add_option("--output", flags.output, "artifact path (written atomically)");
  sub->add_option("--format", flags.format, "artifact format: csv|json");
}

ExperimentSpec build_spec(urasim::cli::Command command, const Flags& flags) {
  ExperimentSpec spec;
  spec.command = command;

  if (flags.config) {
    std::ifstream in(*flags.config);
    if (!in) throw std::invalid_argument("config: cannot read '" + *flags.config + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("config: " + std::string(e.what()));
    }
    urasim::cli::apply_json(j, spec);
    spec.command = command;  // the subcommand always wins
  }

  if (flags.bits) spec.system.bits = *flags.bits;
  if (flags.dl) spec.system.d_l = *flags.dl;
  if (flags.di) spec.system.d_i = *flags.di;
  if (flags.dtot) spec.system.d_tot = *flags.dtot;
  if (flags.ebn0_db) spec.system.ebn0_db = *flags.ebn0_db;
  if (flags.pmd) spec.system.rffi.p_md = *flags.pmd;
  if (flags.pfa) spec.system.rffi.p_fa = *flags.pfa;
  if (flags.rounds) spec.system.rounds = *flags.rounds;
  if (flags.seed) spec.system.seed = *flags.seed;
  if (flags.impairment) spec.system.impairment = urasim::cli::impairment_from_string(*flags.impairment);
  if (flags.sampling) spec.system.sampling = urasim::cli::sampling_from_string(*flags.sampling);
  if (flags.target_pupe) spec.target_pupe = *flags.target_pupe;
  if (flags.axis) spec.axis = urasim::cli::axis_from_string(*flags.axis);
  if (flags.values_given) spec.values = flags.values;
  if (flags.search_lo_db) spec.solver.search_lo_db = *flags.search_lo_db;
  if (flags.search_hi_db) spec.solver.search_hi_db = *flags.search_hi_db;
  if (flags.grid_step_db) spec.solver.grid_step_db = *flags.grid_step_db;
  if (flags.tol_db) spec.solver.tol_db = *flags.tol_db;
  if (flags.output) spec.output_path = *flags.output;
  if (flags.format) spec.format = urasim::cli::format_from_string(*flags.format);
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-hot coded unsourced random access: analysis and simulation toolkit"};
  app.require_subcommand(1);

  Flags flags;
  struct SubSpec {
    const char* name;
    const char* description;
    urasim::cli::Command command;
  };
  const SubSpec subs[] = {
      {"analyze", "closed-form error/spoofing probabilities at one operating point",
       urasim::cli::Command::analyze},
      {"simulate", "Monte Carlo PUPE/spoofing estimate with analytical companion values",
       urasim::cli::Command::simulate},
      {"solve", "minimum Eb/N0 meeting a PUPE target", urasim::cli::Command::solve},
      {"sweep", "one row per axis value; solves the operating point when --target-pupe is set",
       urasim::cli::Command::sweep},
      {"transition", "smallest D_L where the expected list size stops exceeding the cap",
       urasim::cli::Command::transition},
  };
  for (const SubSpec& sub : subs) attach_flags(app.add_subcommand(sub.name, sub.description), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    for (const SubSpec& sub : subs) {
      if (app.got_subcommand(sub.name)) {
        return urasim::cli::run_main(build_spec(sub.command, flags), std::cout);
      }
    }
    std::cerr << "error: no subcommand selected\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
