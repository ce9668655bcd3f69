#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "urasim/analytics.hpp"
#include "urasim/simkit.hpp"

namespace urasim::cli {

enum class Command { analyze, simulate, solve, sweep, transition };
enum class OutputFormat { csv, json };

/// One fully resolved experiment: what to run and where the result goes.
/// Serializes to the JSON config-file format and back without loss.
struct ExperimentSpec {
  Command command = Command::analyze;
  sim::SystemConfig system;
  analytics::SolverConfig solver;          // search range; target_pupe below wins
  std::optional<double> target_pupe;       // enables solve-at-target behavior
  sim::SweepAxis axis = sim::SweepAxis::d_l;
  std::vector<double> values;              // sweep points
  std::string output_path;                 // empty: no artifact written
  OutputFormat format = OutputFormat::csv;

  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

std::string to_string(Command command);
std::string to_string(OutputFormat format);
std::string to_string(sim::SweepAxis axis);
std::string to_string(sim::ImpairmentMode mode);
std::string to_string(sim::ChannelSampling sampling);

Command command_from_string(const std::string& token);
OutputFormat format_from_string(const std::string& token);
sim::SweepAxis axis_from_string(const std::string& token);
sim::ImpairmentMode impairment_from_string(const std::string& token);
sim::ChannelSampling sampling_from_string(const std::string& token);

nlohmann::ordered_json spec_to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const nlohmann::json& j);

/// Partial update from a config file: only keys present in `j` are applied.
/// Unknown keys are rejected.
void apply_json(const nlohmann::json& j, ExperimentSpec& spec);

/// Command-aware validation; throws std::invalid_argument naming the field.
void validate_spec(const ExperimentSpec& spec);

/// One output row. Unset fields render as empty CSV cells / omitted JSON
/// keys; they are never written as zeros.
struct ResultRow {
  std::string command;
  std::optional<int> bits;
  std::optional<std::uint64_t> n;
  std::optional<int> d_l;
  std::optional<int> d_i;
  std::optional<int> d_tot;
  std::optional<double> ebn0_db;  // operating point of the analytic/MC columns
  std::optional<double> p_md;
  std::optional<double> p_fa;
  std::optional<std::string> impairment;
  std::optional<std::string> sampling;
  std::optional<std::int64_t> rounds;
  std::optional<std::uint64_t> seed;
  std::optional<double> target_pupe;
  std::optional<double> p_sym_err;
  std::optional<double> p_a;
  std::optional<double> p_b;
  std::optional<double> p_c;
  std::optional<double> p_total;
  std::optional<double> pupe_analytical;
  std::optional<double> spoof_analytical;
  std::optional<double> pupe_hat;
  std::optional<double> stderr_pupe;
  std::optional<double> spoof_hat;
  std::optional<double> stderr_spoof;
  std::optional<double> min_ebn0_db;
  bool infeasible = false;           // solve/sweep: target unreachable
  bool transition_searched = false;  // row came from the transition command
  std::optional<int> transition_dl;
};

/// Fixed CSV column order; render_csv always emits this header first.
extern const char* const kCsvHeader;

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

std::string render_csv(const std::vector<ResultRow>& rows);
/// JSON lines: one object per row.
std::string render_json(const std::vector<ResultRow>& rows);

/// Shortest round-trippable decimal representation.
std::string format_double(double value);

/// Writes via a temporary file and rename so readers never see a torn file.
void write_atomic(const std::string& path, const std::string& content);

/// Full pipeline: validate, run, render, optionally write the artifact, and
/// echo a summary to `out`. Returns the process exit code.
int run_main(const ExperimentSpec& spec, std::ostream& out);

}  // namespace urasim::cli
