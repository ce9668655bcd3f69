#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "urasim/channel.hpp"
#include "urasim/codec.hpp"
#include "urasim/rf_frontend.hpp"

namespace urasim::receiver {

/// RFFI as a performance-parameterized module: p_md is the probability a
/// clean legitimate signal is rejected, p_fa the probability a
/// non-legitimate signal is accepted.
struct RffiModel {
  double p_md = 0.0;
  double p_fa = 0.0;

  friend bool operator==(const RffiModel&, const RffiModel&) = default;
};

/// Provenance of a recovered entry; evaluation metadata only.
enum class EntryTag {
  type_a,  // legitimate device's message
  type_b,  // illegitimate device's message, erroneously authenticated
  type_c,  // pure noise false alarm
};

struct RecoveredEntry {
  std::uint32_t channel_index = 0;
  codec::MessagePayload message;
  EntryTag tag = EntryTag::type_a;
};

/// Receiver output for one round; at most d_l entries, distinct indices,
/// sorted by channel-use index.
struct RecoveredList {
  std::vector<RecoveredEntry> entries;
};

/// 1 iff the matched-filter value exceeds A/2 (strict comparison).
bool demodulate_use(const channel::ChannelUseObservation& observation,
                    const channel::ChannelParams& params);

/// Authentication outcome for one demodulated channel use. Collisions
/// (occupant_count >= 2) always fail. A lone legitimate signal passes with
/// probability 1-p_md, anything else with probability p_fa.
bool authenticate_use(int occupant_count, bool occupant_legitimate, const RffiModel& model,
                      std::mt19937_64& rng);

/// Caps the accepted entries at d_l, keeping a uniformly random subset
/// (without replacement) when over the cap.
RecoveredList build_list(std::vector<RecoveredEntry> accepted, int d_l, std::mt19937_64& rng);

enum class IdleHandling {
  /// Observations cover occupied uses only; idle false alarms are drawn as
  /// Binomial(idle_count, P(0->1) * p_fa) with indices sampled uniformly
  /// from the idle set.
  statistical,
  /// Observations already include every idle use.
  materialized,
};

/// Full per-round pipeline: demodulate each observation, authenticate,
/// decode accepted indices, add idle false alarms per `idle`, truncate.
RecoveredList recover_round(std::span<const channel::ChannelUseObservation> observations,
                            const channel::RoundOccupancy& occupancy,
                            const rf::DeviceRegistry& registry,
                            const channel::ChannelParams& params, const RffiModel& rffi,
                            int d_l, IdleHandling idle, std::mt19937_64& rng);

}  // namespace urasim::receiver
