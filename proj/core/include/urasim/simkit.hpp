#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "urasim/analytics.hpp"
#include "urasim/codec.hpp"
#include "urasim/receiver.hpp"

namespace urasim::sim {

enum class ImpairmentMode { ideal, pa_nonlinear };

enum class ChannelSampling {
  sparse,  // occupied uses simulated, idle false alarms drawn statistically
  dense,   // every one of the N uses simulated explicitly
};

struct SystemConfig {
  int bits = 12;
  int d_l = 1;    // active legitimate devices per round
  int d_i = 0;    // illegitimate devices per round
  int d_tot = 0;  // registered-device count; bookkeeping only, 0 = unspecified
  double ebn0_db = 0.0;
  receiver::RffiModel rffi{};
  ImpairmentMode impairment = ImpairmentMode::ideal;
  ChannelSampling sampling = ChannelSampling::sparse;
  std::int64_t rounds = 10'000;
  std::uint64_t seed = 1;

  std::uint64_t n() const { return codec::codebook_size(bits); }

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

/// Throws std::invalid_argument naming the offending field. D_L + D_I > N
/// only warns (it is legal, just a collision-heavy regime).
void validate(const SystemConfig& config);

/// Final-list composition of one round, counted by entry tag.
struct RoundTally {
  int legit_recovered = 0;   // type-A entries == legitimate devices recovered
  int illegit_accepted = 0;  // type-B entries == spoofed messages accepted
  int noise_accepted = 0;    // type-C entries
};

/// Simulates one round. Deterministic given (config.seed, round_index);
/// rounds are independent and may run in any order.
RoundTally run_round(const SystemConfig& config, std::uint64_t round_index);

struct EstimateReport {
  double pupe_hat = 0.0;
  double spoof_hat = 0.0;
  double stderr_pupe = 0.0;
  double stderr_spoof = 0.0;
  std::int64_t rounds_run = 0;
  analytics::AnalyticalPoint analytical;  // companion closed-form values
};

/// Monte Carlo estimates of the per-user error probability and the
/// spoofing probability over config.rounds rounds.
EstimateReport estimate(const SystemConfig& config);

enum class SweepAxis { d_l, d_i, ebn0_db, p_fa };

/// Base config with one axis value applied and the per-value seed derived
/// from base.seed. Device-count axes insist on non-negative integers.
SystemConfig apply_axis(const SystemConfig& base, SweepAxis axis, double value,
                        std::size_t value_index);

/// One estimate per axis value, in order, each with an independent seed
/// derived from base.seed.
std::vector<EstimateReport> sweep(const SystemConfig& base, SweepAxis axis,
                                  std::span<const double> values);

}  // namespace urasim::sim
