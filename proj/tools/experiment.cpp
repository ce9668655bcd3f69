#include "experiment.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "urasim/rng.hpp"

namespace urasim::cli {

namespace {

constexpr int kTransitionSweepMax = 512;

[[noreturn]] void bad_token(const char* field, const std::string& token, const char* expected) {
  throw std::invalid_argument(std::string(field) + ": unknown value '" + token + "' (expected " +
                              expected + ")");
}

}  // namespace

std::string to_string(Command command) {
  switch (command) {
    case Command::analyze: return "analyze";
    case Command::simulate: return "simulate";
    case Command::solve: return "solve";
    case Command::sweep: return "sweep";
    case Command::transition: return "transition";
  }
  return "?";
}

std::string to_string(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

std::string to_string(sim::SweepAxis axis) {
  switch (axis) {
    case sim::SweepAxis::d_l: return "dl";
    case sim::SweepAxis::d_i: return "di";
    case sim::SweepAxis::ebn0_db: return "ebn0_db";
    case sim::SweepAxis::p_fa: return "pfa";
  }
  return "?";
}

std::string to_string(sim::ImpairmentMode mode) {
  return mode == sim::ImpairmentMode::ideal ? "ideal" : "pa";
}

std::string to_string(sim::ChannelSampling sampling) {
  return sampling == sim::ChannelSampling::sparse ? "sparse" : "dense";
}

Command command_from_string(const std::string& token) {
  if (token == "analyze") return Command::analyze;
  if (token == "simulate") return Command::simulate;
  if (token == "solve") return Command::solve;
  if (token == "sweep") return Command::sweep;
  if (token == "transition") return Command::transition;
  bad_token("command", token, "analyze|simulate|solve|sweep|transition");
}

OutputFormat format_from_string(const std::string& token) {
  if (token == "csv") return OutputFormat::csv;
  if (token == "json") return OutputFormat::json;
  bad_token("format", token, "csv|json");
}

sim::SweepAxis axis_from_string(const std::string& token) {
  if (token == "dl") return sim::SweepAxis::d_l;
  if (token == "di") return sim::SweepAxis::d_i;
  if (token == "ebn0_db" || token == "ebn0-db") return sim::SweepAxis::ebn0_db;
  if (token == "pfa") return sim::SweepAxis::p_fa;
  bad_token("axis", token, "dl|di|ebn0_db|pfa");
}

sim::ImpairmentMode impairment_from_string(const std::string& token) {
  if (token == "ideal") return sim::ImpairmentMode::ideal;
  if (token == "pa") return sim::ImpairmentMode::pa_nonlinear;
  bad_token("impairment", token, "ideal|pa");
}

sim::ChannelSampling sampling_from_string(const std::string& token) {
  if (token == "sparse") return sim::ChannelSampling::sparse;
  if (token == "dense") return sim::ChannelSampling::dense;
  bad_token("sampling", token, "sparse|dense");
}

nlohmann::ordered_json spec_to_json(const ExperimentSpec& spec) {
  nlohmann::ordered_json j;
  j["command"] = to_string(spec.command);
  j["system"] = {
      {"bits", spec.system.bits},
      {"dl", spec.system.d_l},
      {"di", spec.system.d_i},
      {"dtot", spec.system.d_tot},
      {"ebn0_db", spec.system.ebn0_db},
      {"pmd", spec.system.rffi.p_md},
      {"pfa", spec.system.rffi.p_fa},
      {"impairment", to_string(spec.system.impairment)},
      {"sampling", to_string(spec.system.sampling)},
      {"rounds", spec.system.rounds},
      {"seed", spec.system.seed},
  };
  j["solver"] = {
      {"search_lo_db", spec.solver.search_lo_db},
      {"search_hi_db", spec.solver.search_hi_db},
      {"grid_step_db", spec.solver.grid_step_db},
      {"tol_db", spec.solver.tol_db},
  };
  if (spec.target_pupe) j["target_pupe"] = *spec.target_pupe;
  j["sweep"] = {{"axis", to_string(spec.axis)}, {"values", spec.values}};
  j["output"] = spec.output_path;
  j["format"] = to_string(spec.format);
  return j;
}

namespace {

template <typename T>
void take(const nlohmann::json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> known,
                    const char* scope) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) {
      throw std::invalid_argument(std::string("config: unknown key '") + key + "' in " + scope);
    }
  }
}

}  // namespace

void apply_json(const nlohmann::json& j, ExperimentSpec& spec) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be a JSON object");
  reject_unknown(j, {"command", "system", "solver", "target_pupe", "sweep", "output", "format"},
                 "top level");
  if (j.contains("command")) spec.command = command_from_string(j.at("command").get<std::string>());
  if (j.contains("system")) {
    const auto& s = j.at("system");
    reject_unknown(s, {"bits", "dl", "di", "dtot", "ebn0_db", "pmd", "pfa", "impairment",
                       "sampling", "rounds", "seed"}, "system");
    take(s, "bits", spec.system.bits);
    take(s, "dl", spec.system.d_l);
    take(s, "di", spec.system.d_i);
    take(s, "dtot", spec.system.d_tot);
    take(s, "ebn0_db", spec.system.ebn0_db);
    take(s, "pmd", spec.system.rffi.p_md);
    take(s, "pfa", spec.system.rffi.p_fa);
    if (s.contains("impairment")) {
      spec.system.impairment = impairment_from_string(s.at("impairment").get<std::string>());
    }
    if (s.contains("sampling")) {
      spec.system.sampling = sampling_from_string(s.at("sampling").get<std::string>());
    }
    take(s, "rounds", spec.system.rounds);
    take(s, "seed", spec.system.seed);
  }
  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    reject_unknown(s, {"search_lo_db", "search_hi_db", "grid_step_db", "tol_db"}, "solver");
    take(s, "search_lo_db", spec.solver.search_lo_db);
    take(s, "search_hi_db", spec.solver.search_hi_db);
    take(s, "grid_step_db", spec.solver.grid_step_db);
    take(s, "tol_db", spec.solver.tol_db);
  }
  if (j.contains("target_pupe")) spec.target_pupe = j.at("target_pupe").get<double>();
  if (j.contains("sweep")) {
    const auto& s = j.at("sweep");
    reject_unknown(s, {"axis", "values"}, "sweep");
    if (s.contains("axis")) spec.axis = axis_from_string(s.at("axis").get<std::string>());
    take(s, "values", spec.values);
  }
  take(j, "output", spec.output_path);
  if (j.contains("format")) spec.format = format_from_string(j.at("format").get<std::string>());
}

ExperimentSpec spec_from_json(const nlohmann::json& j) {
  ExperimentSpec spec;
  apply_json(j, spec);
  return spec;
}

void validate_spec(const ExperimentSpec& spec) {
  const auto& sys = spec.system;
  if (sys.bits < 1 || sys.bits > codec::kMaxBits) {
    throw std::invalid_argument("bits: must be in [1, " + std::to_string(codec::kMaxBits) + "]");
  }
  if (sys.d_i < 0) throw std::invalid_argument("di: must be >= 0");
  if (sys.d_tot < 0) throw std::invalid_argument("dtot: must be >= 0");
  if (!(sys.rffi.p_md >= 0.0 && sys.rffi.p_md <= 1.0)) {
    throw std::invalid_argument("pmd: must be in [0, 1]");
  }
  if (!(sys.rffi.p_fa >= 0.0 && sys.rffi.p_fa <= 1.0)) {
    throw std::invalid_argument("pfa: must be in [0, 1]");
  }
  if (spec.target_pupe && !(*spec.target_pupe > 0.0 && *spec.target_pupe <= 1.0)) {
    throw std::invalid_argument("target_pupe: must be in (0, 1]");
  }

  switch (spec.command) {
    case Command::analyze:
      if (sys.d_l < 1) throw std::invalid_argument("dl: must be >= 1");
      if (std::isnan(sys.ebn0_db)) throw std::invalid_argument("ebn0_db: must not be NaN");
      break;
    case Command::simulate:
      sim::validate(sys);
      if (!std::isfinite(sys.ebn0_db)) {
        throw std::invalid_argument("ebn0_db: must be finite for simulation");
      }
      break;
    case Command::solve:
      if (sys.d_l < 1) throw std::invalid_argument("dl: must be >= 1");
      if (!spec.target_pupe) throw std::invalid_argument("target_pupe: required for solve");
      break;
    case Command::sweep:
      if (spec.values.empty()) throw std::invalid_argument("values: required for sweep");
      break;
    case Command::transition:
      if (!spec.target_pupe) throw std::invalid_argument("target_pupe: required for transition");
      break;
  }
}

const char* const kCsvHeader =
    "command,bits,n,dl,di,dtot,ebn0_db,p_md,p_fa,impairment,sampling,rounds,seed,target_pupe,"
    "p_sym_err,p_a,p_b,p_c,p_total,pupe_analytical,spoof_analytical,"
    "pupe_hat,stderr_pupe,spoof_hat,stderr_spoof,min_ebn0_db,transition_dl";

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

namespace {

ResultRow echo_common(const ExperimentSpec& spec) {
  ResultRow row;
  row.command = to_string(spec.command);
  row.bits = spec.system.bits;
  row.n = spec.system.n();
  row.d_l = spec.system.d_l;
  row.d_i = spec.system.d_i;
  row.d_tot = spec.system.d_tot;
  row.p_md = spec.system.rffi.p_md;
  row.p_fa = spec.system.rffi.p_fa;
  row.target_pupe = spec.target_pupe;
  return row;
}

void fill_analytics(ResultRow& row, const analytics::AnalyticalPoint& point) {
  row.p_sym_err = point.p_sym_err;
  row.p_a = point.p_a;
  row.p_b = point.p_b;
  row.p_c = point.p_c;
  row.p_total = point.p_total;
  row.pupe_analytical = point.pupe;
  row.spoof_analytical = point.spoof;
}

void fill_estimate(ResultRow& row, const sim::EstimateReport& report) {
  fill_analytics(row, report.analytical);
  row.pupe_hat = report.pupe_hat;
  row.stderr_pupe = report.stderr_pupe;
  row.spoof_hat = report.spoof_hat;
  row.stderr_spoof = report.stderr_spoof;
  row.rounds = report.rounds_run;
}

void fill_sim_echo(ResultRow& row, const sim::SystemConfig& sys) {
  row.impairment = to_string(sys.impairment);
  row.sampling = to_string(sys.sampling);
  row.seed = sys.seed;
}

analytics::SolverConfig solver_with_target(const ExperimentSpec& spec) {
  analytics::SolverConfig config = spec.solver;
  config.target_pupe = *spec.target_pupe;
  return config;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  validate_spec(spec);
  const auto& sys = spec.system;
  std::vector<ResultRow> rows;

  switch (spec.command) {
    case Command::analyze: {
      ResultRow row = echo_common(spec);
      row.ebn0_db = sys.ebn0_db;
      fill_analytics(row, analytics::pupe_analytical(sys.d_l, sys.d_i, sys.n(), sys.ebn0_db,
                                                     sys.bits, sys.rffi.p_md, sys.rffi.p_fa));
      rows.push_back(std::move(row));
      break;
    }
    case Command::simulate: {
      ResultRow row = echo_common(spec);
      row.ebn0_db = sys.ebn0_db;
      fill_sim_echo(row, sys);
      fill_estimate(row, sim::estimate(sys));
      rows.push_back(std::move(row));
      break;
    }
    case Command::solve: {
      ResultRow row = echo_common(spec);
      const auto solved = analytics::min_ebn0_for_pupe(solver_with_target(spec), sys.d_l,
                                                       sys.d_i, sys.bits, sys.rffi.p_md,
                                                       sys.rffi.p_fa);
      if (solved) {
        row.min_ebn0_db = *solved;
        row.ebn0_db = *solved;
        fill_analytics(row, analytics::pupe_analytical(sys.d_l, sys.d_i, sys.n(), *solved,
                                                       sys.bits, sys.rffi.p_md, sys.rffi.p_fa));
      } else {
        row.infeasible = true;
      }
      rows.push_back(std::move(row));
      break;
    }
    case Command::sweep: {
      for (std::size_t i = 0; i < spec.values.size(); ++i) {
        sim::SystemConfig point = sim::apply_axis(sys, spec.axis, spec.values[i], i);
        ExperimentSpec point_spec = spec;
        point_spec.system = point;
        ResultRow row = echo_common(point_spec);
        fill_sim_echo(row, point);
        if (spec.target_pupe) {
          const auto solved = analytics::min_ebn0_for_pupe(solver_with_target(spec), point.d_l,
                                                           point.d_i, point.bits,
                                                           point.rffi.p_md, point.rffi.p_fa);
          if (!solved) {
            row.infeasible = true;
            rows.push_back(std::move(row));
            continue;
          }
          row.min_ebn0_db = *solved;
          point.ebn0_db = *solved;
        }
        row.ebn0_db = point.ebn0_db;
        fill_estimate(row, sim::estimate(point));
        rows.push_back(std::move(row));
      }
      break;
    }
    case Command::transition: {
      ResultRow row = echo_common(spec);
      row.d_l.reset();  // swept internally
      row.transition_searched = true;
      row.transition_dl = analytics::regime_transition_dl(sys.d_i, sys.bits, sys.rffi.p_md,
                                                          sys.rffi.p_fa,
                                                          solver_with_target(spec),
                                                          kTransitionSweepMax);
      rows.push_back(std::move(row));
      break;
    }
  }
  return rows;
}

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    quoted += c;
    if (c == '"') quoted += '"';
  }
  quoted += '"';
  return quoted;
}

template <typename T>
std::string cell(const std::optional<T>& value) {
  if (!value) return "";
  if constexpr (std::is_same_v<T, double>) {
    return format_double(*value);
  } else if constexpr (std::is_same_v<T, std::string>) {
    return csv_escape(*value);
  } else {
    return std::to_string(*value);
  }
}

std::string min_ebn0_cell(const ResultRow& row) {
  if (row.infeasible) return "infeasible";
  return cell(row.min_ebn0_db);
}

std::string transition_cell(const ResultRow& row) {
  if (!row.transition_searched) return "";
  if (!row.transition_dl) return "none-found";
  return std::to_string(*row.transition_dl);
}

}  // namespace

std::string render_csv(const std::vector<ResultRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const ResultRow& row : rows) {
    const std::string fields[] = {
        csv_escape(row.command), cell(row.bits),        cell(row.n),
        cell(row.d_l),           cell(row.d_i),         cell(row.d_tot),
        cell(row.ebn0_db),       cell(row.p_md),        cell(row.p_fa),
        cell(row.impairment),    cell(row.sampling),    cell(row.rounds),
        cell(row.seed),          cell(row.target_pupe), cell(row.p_sym_err),
        cell(row.p_a),           cell(row.p_b),         cell(row.p_c),
        cell(row.p_total),       cell(row.pupe_analytical), cell(row.spoof_analytical),
        cell(row.pupe_hat),      cell(row.stderr_pupe), cell(row.spoof_hat),
        cell(row.stderr_spoof),  min_ebn0_cell(row),    transition_cell(row),
    };
    bool first = true;
    for (const std::string& field : fields) {
      if (!first) out += ',';
      out += field;
      first = false;
    }
    out += '\n';
  }
  return out;
}

namespace {

template <typename T>
void put(nlohmann::ordered_json& j, const char* key, const std::optional<T>& value) {
  if (value) j[key] = *value;
}

}  // namespace

std::string render_json(const std::vector<ResultRow>& rows) {
  std::string out;
  for (const ResultRow& row : rows) {
    nlohmann::ordered_json j;
    j["command"] = row.command;
    put(j, "bits", row.bits);
    put(j, "n", row.n);
    put(j, "dl", row.d_l);
    put(j, "di", row.d_i);
    put(j, "dtot", row.d_tot);
    put(j, "ebn0_db", row.ebn0_db);
    put(j, "p_md", row.p_md);
    put(j, "p_fa", row.p_fa);
    put(j, "impairment", row.impairment);
    put(j, "sampling", row.sampling);
    put(j, "rounds", row.rounds);
    put(j, "seed", row.seed);
    put(j, "target_pupe", row.target_pupe);
    put(j, "p_sym_err", row.p_sym_err);
    put(j, "p_a", row.p_a);
    put(j, "p_b", row.p_b);
    put(j, "p_c", row.p_c);
    put(j, "p_total", row.p_total);
    put(j, "pupe_analytical", row.pupe_analytical);
    put(j, "spoof_analytical", row.spoof_analytical);
    put(j, "pupe_hat", row.pupe_hat);
    put(j, "stderr_pupe", row.stderr_pupe);
    put(j, "spoof_hat", row.spoof_hat);
    put(j, "stderr_spoof", row.stderr_spoof);
    put(j, "min_ebn0_db", row.min_ebn0_db);
    if (row.infeasible) j["infeasible"] = true;
    if (row.transition_searched) {
      j["transition_dl"] = row.transition_dl ? nlohmann::ordered_json(*row.transition_dl)
                                             : nlohmann::ordered_json(nullptr);
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target{path};
  const fs::path temp{path + ".tmp"};
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("output: cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("output: failed while writing '" + path + "'");
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp);
    throw std::runtime_error("output: cannot move temporary file onto '" + path + "': " +
                             ec.message());
  }
}

namespace {

void print_summary(const ExperimentSpec& spec, const std::vector<ResultRow>& rows,
                   std::ostream& out) {
  for (const ResultRow& row : rows) {
    out << row.command;
    if (row.d_l) out << " dl=" << *row.d_l;
    if (row.d_i) out << " di=" << *row.d_i;
    if (row.ebn0_db) out << " ebn0_db=" << format_double(*row.ebn0_db);
    if (row.pupe_analytical) out << " pupe=" << format_double(*row.pupe_analytical);
    if (row.spoof_analytical) out << " spoof=" << format_double(*row.spoof_analytical);
    if (row.pupe_hat) out << " pupe_hat=" << format_double(*row.pupe_hat);
    if (row.spoof_hat) out << " spoof_hat=" << format_double(*row.spoof_hat);
    if (row.min_ebn0_db) out << " min_ebn0_db=" << format_double(*row.min_ebn0_db);
    if (row.infeasible) out << " infeasible";
    if (row.transition_searched) {
      out << " transition_dl="
          << (row.transition_dl ? std::to_string(*row.transition_dl) : "none-found");
    }
    out << '\n';
  }
  if (!spec.output_path.empty()) {
    out << "wrote " << rows.size() << " row(s) to " << spec.output_path << '\n';
  }
}

}  // namespace

int run_main(const ExperimentSpec& spec, std::ostream& out) {
  const auto rows = run_experiment(spec);
  const std::string rendered =
      spec.format == OutputFormat::csv ? render_csv(rows) : render_json(rows);
  if (!spec.output_path.empty()) write_atomic(spec.output_path, rendered);
  print_summary(spec, rows, out);
  return 0;
}

}  // namespace urasim::cli
