#include "urasim/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace urasim::channel {

ChannelParams derive_params(double ebn0_db, int bits) {
  if (bits < 1 || bits > codec::kMaxBits) {
    throw std::invalid_argument("bits: must be in [1, " + std::to_string(codec::kMaxBits) + "]");
  }
  ChannelParams params;
  params.ebn0_db = ebn0_db;
  params.bits = bits;
  const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
  // Es = A^2 Ts = 1 and Es/N0 = B Eb/N0, so N0 = 1 / (B Eb/N0).
  params.n0 = params.symbol_energy / (static_cast<double>(bits) * ebn0);
  params.sigma = std::sqrt(params.n0 / 2.0);
  return params;
}

std::size_t RoundOccupancy::transmitter_count() const {
  std::size_t count = 0;
  for (const auto& [index, ids] : occupants) count += ids.size();
  return count;
}

RoundOccupancy assign_round(int bits, std::span<const DeviceMessage> messages) {
  RoundOccupancy occupancy;
  occupancy.num_uses = codec::codebook_size(bits);
  for (const auto& [device_id, message] : messages) {
    if (message.num_bits != bits) {
      throw std::invalid_argument("messages: device " + std::to_string(device_id) + " carries " +
                                  std::to_string(message.num_bits) + " bits, expected " +
                                  std::to_string(bits));
    }
    const auto codeword = codec::encode(message);
    occupancy.occupants[codeword.hot_index].push_back(device_id);
  }
  return occupancy;
}

namespace {

double superposed_amplitude(const std::vector<std::uint32_t>& ids,
                            const rf::DeviceRegistry& registry, const ChannelParams& params) {
  double value = 0.0;
  for (std::uint32_t id : ids) value += registry.transmit_amplitude(id, params.amplitude);
  return value;
}

}  // namespace

std::vector<ChannelUseObservation> observe(const RoundOccupancy& occupancy,
                                           const rf::DeviceRegistry& registry,
                                           const ChannelParams& params, std::mt19937_64& rng) {
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<ChannelUseObservation> observations;
  observations.reserve(occupancy.occupants.size());
  for (const auto& [index, ids] : occupancy.occupants) {
    double value = superposed_amplitude(ids, registry, params);
    if (params.sigma > 0.0) value += params.sigma * noise(rng);
    observations.push_back({index, value, static_cast<int>(ids.size())});
  }
  return observations;
}

std::vector<ChannelUseObservation> observe_dense(const RoundOccupancy& occupancy,
                                                 const rf::DeviceRegistry& registry,
                                                 const ChannelParams& params,
                                                 std::mt19937_64& rng) {
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<ChannelUseObservation> observations;
  observations.reserve(occupancy.num_uses);
  auto next = occupancy.occupants.begin();
  for (std::uint64_t n = 0; n < occupancy.num_uses; ++n) {
    const std::uint32_t index = static_cast<std::uint32_t>(n);
    double value = 0.0;
    int count = 0;
    if (next != occupancy.occupants.end() && next->first == index) {
      value = superposed_amplitude(next->second, registry, params);
      count = static_cast<int>(next->second.size());
      ++next;
    }
    if (params.sigma > 0.0) value += params.sigma * noise(rng);
    observations.push_back({index, value, count});
  }
  return observations;
}

}  // namespace urasim::channel
