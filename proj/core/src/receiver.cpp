#include "urasim/receiver.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "urasim/analytics.hpp"

namespace urasim::receiver {

bool demodulate_use(const channel::ChannelUseObservation& observation,
                    const channel::ChannelParams& params) {
  return observation.value > params.amplitude / 2.0;
}

bool authenticate_use(int occupant_count, bool occupant_legitimate, const RffiModel& model,
                      std::mt19937_64& rng) {
  if (occupant_count >= 2) return false;  // mixed fingerprint features
  const double p_accept =
      (occupant_count == 1 && occupant_legitimate) ? 1.0 - model.p_md : model.p_fa;
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p_accept;
}

RecoveredList build_list(std::vector<RecoveredEntry> accepted, int d_l, std::mt19937_64& rng) {
  if (d_l < 0) throw std::invalid_argument("d_l: list cap must be >= 0");
  std::sort(accepted.begin(), accepted.end(),
            [](const RecoveredEntry& a, const RecoveredEntry& b) {
              return a.channel_index < b.channel_index;
            });
  RecoveredList list;
  if (std::cmp_less_equal(accepted.size(), d_l)) {
    list.entries = std::move(accepted);
    return list;
  }
  list.entries.reserve(static_cast<std::size_t>(d_l));
  std::sample(accepted.begin(), accepted.end(), std::back_inserter(list.entries),
              static_cast<std::size_t>(d_l), rng);
  return list;
}

RecoveredList recover_round(std::span<const channel::ChannelUseObservation> observations,
                            const channel::RoundOccupancy& occupancy,
                            const rf::DeviceRegistry& registry,
                            const channel::ChannelParams& params, const RffiModel& rffi,
                            int d_l, IdleHandling idle, std::mt19937_64& rng) {
  std::vector<RecoveredEntry> accepted;
  for (const auto& observation : observations) {
    if (!demodulate_use(observation, params)) continue;
    bool legitimate = false;
    if (observation.occupant_count == 1) {
      const auto& ids = occupancy.occupants.at(observation.index);
      legitimate = registry.legitimate(ids.front());
    }
    if (!authenticate_use(observation.occupant_count, legitimate, rffi, rng)) continue;
    const EntryTag tag = observation.occupant_count == 0 ? EntryTag::type_c
                         : legitimate                    ? EntryTag::type_a
                                                         : EntryTag::type_b;
    accepted.push_back({observation.index, codec::decode_index(observation.index, params.bits), tag});
  }

  if (idle == IdleHandling::statistical && occupancy.idle_count() > 0) {
    // A noise-only use ends up in the list when it demodulates as 1 and the
    // RFFI module false-alarms; sampling the joint count once is
    // distributionally identical to simulating every idle use.
    const double p_hit =
        analytics::q_function(params.amplitude / (2.0 * params.sigma)) * rffi.p_fa;
    if (p_hit > 0.0) {
      std::binomial_distribution<std::uint64_t> hits(occupancy.idle_count(), p_hit);
      const std::uint64_t count = hits(rng);
      std::uniform_int_distribution<std::uint64_t> pick(0, occupancy.num_uses - 1);
      std::unordered_set<std::uint32_t> chosen;
      while (chosen.size() < count) {
        const auto index = static_cast<std::uint32_t>(pick(rng));
        if (occupancy.occupied(index) || !chosen.insert(index).second) continue;
        accepted.push_back({index, codec::decode_index(index, params.bits), EntryTag::type_c});
      }
    }
  }

  return build_list(std::move(accepted), d_l, rng);
}

}  // namespace urasim::receiver
