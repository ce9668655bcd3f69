#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "urasim/codec.hpp"
#include "urasim/rf_frontend.hpp"

namespace urasim::channel {

/// Normalized link parameters. A = Ts = 1, so Es = 1, Eb = 1/B, and Eb/N0
/// is the single external knob.
struct ChannelParams {
  double ebn0_db = 0.0;
  int bits = 1;
  double amplitude = 1.0;
  double symbol_duration = 1.0;
  double symbol_energy = 1.0;
  double n0 = 0.0;     // one-sided noise spectral density
  double sigma = 0.0;  // per-observation noise standard deviation

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

/// sigma^2 = 1 / (2 B 10^(ebn0_db/10)). +inf dB collapses to sigma = 0,
/// -inf dB to sigma = inf.
ChannelParams derive_params(double ebn0_db, int bits);

/// Which devices landed on which channel use in one round. Only occupied
/// uses are stored; idle ones exist implicitly via num_uses.
struct RoundOccupancy {
  std::uint64_t num_uses = 0;                                     // N
  std::map<std::uint32_t, std::vector<std::uint32_t>> occupants;  // index -> device ids

  std::uint64_t idle_count() const { return num_uses - occupants.size(); }
  bool occupied(std::uint32_t index) const { return occupants.contains(index); }
  std::size_t transmitter_count() const;
};

using DeviceMessage = std::pair<std::uint32_t, codec::MessagePayload>;

/// Maps each device's message onto its hot channel-use index. Devices that
/// picked the same message share one index. All messages must carry `bits`.
RoundOccupancy assign_round(int bits, std::span<const DeviceMessage> messages);

/// Matched-filter output of one channel use. occupant_count is oracle
/// metadata consumed by the receiver's authentication model.
struct ChannelUseObservation {
  std::uint32_t index = 0;
  double value = 0.0;
  int occupant_count = 0;
};

/// Observations for the occupied uses only, ascending by index:
/// value = sum of per-device transmit amplitudes + N(0, sigma^2).
/// Idle uses are not materialized; their false-alarm behavior is sampled
/// statistically downstream.
std::vector<ChannelUseObservation> observe(const RoundOccupancy& occupancy,
                                           const rf::DeviceRegistry& registry,
                                           const ChannelParams& params,
                                           std::mt19937_64& rng);

/// Observations for all num_uses channel uses, idles included. Intended for
/// oracle validation at small N.
std::vector<ChannelUseObservation> observe_dense(const RoundOccupancy& occupancy,
                                                 const rf::DeviceRegistry& registry,
                                                 const ChannelParams& params,
                                                 std::mt19937_64& rng);

}  // namespace urasim::channel
