#include "urasim/simkit.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

#include "urasim/channel.hpp"
#include "urasim/rng.hpp"

namespace urasim::sim {

void validate(const SystemConfig& config) {
  if (config.bits < 1 || config.bits > codec::kMaxBits) {
    throw std::invalid_argument("bits: must be in [1, " + std::to_string(codec::kMaxBits) + "]");
  }
  if (config.d_l < 1) throw std::invalid_argument("dl: must be >= 1");
  if (config.d_i < 0) throw std::invalid_argument("di: must be >= 0");
  if (config.d_tot < 0) throw std::invalid_argument("dtot: must be >= 0");
  if (std::isnan(config.ebn0_db)) throw std::invalid_argument("ebn0_db: must not be NaN");
  if (!(config.rffi.p_md >= 0.0 && config.rffi.p_md <= 1.0)) {
    throw std::invalid_argument("pmd: must be in [0, 1]");
  }
  if (!(config.rffi.p_fa >= 0.0 && config.rffi.p_fa <= 1.0)) {
    throw std::invalid_argument("pfa: must be in [0, 1]");
  }
  if (config.rounds < 1) throw std::invalid_argument("rounds: must be >= 1");
  if (std::cmp_greater(config.d_l + config.d_i, config.n())) {
    std::cerr << "warning: dl + di exceeds N = " << config.n()
              << "; collisions will dominate\n";
  }
  if (config.d_tot > 0 && config.d_l > config.d_tot) {
    std::cerr << "warning: dl exceeds dtot (more active than registered devices)\n";
  }
}

namespace {

rf::DeviceRegistry make_registry(const SystemConfig& config, std::mt19937_64& rng) {
  const int total = config.d_l + config.d_i;
  std::vector<rf::DeviceProfile> profiles;
  if (config.impairment == ImpairmentMode::pa_nonlinear) {
    profiles = rf::sample_population(total, rng);
  } else {
    profiles.reserve(static_cast<std::size_t>(total));
    for (int i = 0; i < total; ++i) {
      profiles.push_back(rf::DeviceProfile{static_cast<std::uint32_t>(i)});
    }
  }
  // Devices [0, d_l) are the active legitimate ones this round.
  for (int i = 0; i < total; ++i) {
    profiles[static_cast<std::size_t>(i)].legitimate = i < config.d_l;
  }
  return rf::DeviceRegistry{std::move(profiles),
                            config.impairment == ImpairmentMode::ideal};
}

}  // namespace

RoundTally run_round(const SystemConfig& config, std::uint64_t round_index) {
  auto rng = make_stream(config.seed, round_index);
  const auto params = channel::derive_params(config.ebn0_db, config.bits);
  const auto registry = make_registry(config, rng);

  const int total = config.d_l + config.d_i;
  std::uniform_int_distribution<std::uint32_t> pick(
      0, static_cast<std::uint32_t>(config.n() - 1));
  std::vector<channel::DeviceMessage> messages;
  messages.reserve(static_cast<std::size_t>(total));
  for (int id = 0; id < total; ++id) {
    messages.emplace_back(static_cast<std::uint32_t>(id),
                          codec::MessagePayload{pick(rng), config.bits});
  }

  const auto occupancy = channel::assign_round(config.bits, messages);
  const auto observations = config.sampling == ChannelSampling::dense
                                ? channel::observe_dense(occupancy, registry, params, rng)
                                : channel::observe(occupancy, registry, params, rng);
  const auto idle = config.sampling == ChannelSampling::dense
                        ? receiver::IdleHandling::materialized
                        : receiver::IdleHandling::statistical;
  const auto list = receiver::recover_round(observations, occupancy, registry, params,
                                            config.rffi, config.d_l, idle, rng);

  RoundTally tally;
  for (const auto& entry : list.entries) {
    switch (entry.tag) {
      case receiver::EntryTag::type_a: ++tally.legit_recovered; break;
      case receiver::EntryTag::type_b: ++tally.illegit_accepted; break;
      case receiver::EntryTag::type_c: ++tally.noise_accepted; break;
    }
  }
  return tally;
}

namespace {

double binomial_stderr(double p_hat, double trials) {
  if (trials <= 0.0) return 0.0;
  return std::sqrt(std::max(p_hat * (1.0 - p_hat), 0.0) / trials);
}

}  // namespace

EstimateReport estimate(const SystemConfig& config) {
  validate(config);

  std::int64_t legit_recovered = 0;
  std::int64_t illegit_accepted = 0;
  for (std::int64_t round = 0; round < config.rounds; ++round) {
    const auto tally = run_round(config, static_cast<std::uint64_t>(round));
    legit_recovered += tally.legit_recovered;
    illegit_accepted += tally.illegit_accepted;
  }

  EstimateReport report;
  report.rounds_run = config.rounds;
  const double legit_trials = static_cast<double>(config.rounds) * config.d_l;
  report.pupe_hat = 1.0 - static_cast<double>(legit_recovered) / legit_trials;
  report.stderr_pupe = binomial_stderr(report.pupe_hat, legit_trials);
  if (config.d_i > 0) {
    const double illegit_trials = static_cast<double>(config.rounds) * config.d_i;
    report.spoof_hat = static_cast<double>(illegit_accepted) / illegit_trials;
    report.stderr_spoof = binomial_stderr(report.spoof_hat, illegit_trials);
  }
  report.analytical = analytics::pupe_analytical(config.d_l, config.d_i, config.n(),
                                                 config.ebn0_db, config.bits,
                                                 config.rffi.p_md, config.rffi.p_fa);
  return report;
}

SystemConfig apply_axis(const SystemConfig& base, SweepAxis axis, double value,
                        std::size_t value_index) {
  SystemConfig config = base;
  switch (axis) {
    case SweepAxis::d_l:
    case SweepAxis::d_i: {
      const int count = static_cast<int>(value);
      if (static_cast<double>(count) != value || count < 0) {
        throw std::invalid_argument("values: device counts must be non-negative integers");
      }
      (axis == SweepAxis::d_l ? config.d_l : config.d_i) = count;
      break;
    }
    case SweepAxis::ebn0_db:
      config.ebn0_db = value;
      break;
    case SweepAxis::p_fa:
      config.rffi.p_fa = value;
      break;
  }
  config.seed = derive_seed(base.seed, value_index);
  return config;
}

std::vector<EstimateReport> sweep(const SystemConfig& base, SweepAxis axis,
                                  std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("values: sweep needs at least one value");

  std::vector<EstimateReport> reports;
  reports.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    reports.push_back(estimate(apply_axis(base, axis, values[i], i)));
  }
  return reports;
}

}  // namespace urasim::sim
