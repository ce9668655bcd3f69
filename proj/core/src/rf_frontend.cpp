#include "urasim/rf_frontend.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace urasim::rf {

double distort(double amplitude, const DeviceProfile& profile) {
  return profile.alpha * amplitude / (1.0 + profile.beta * amplitude * amplitude);
}

double ideal_passthrough(double amplitude) { return amplitude; }

std::vector<DeviceProfile> sample_population(int count, std::mt19937_64& rng,
                                             const PopulationModel& model,
                                             std::uint32_t first_id, bool legitimate) {
  if (count < 0) throw std::invalid_argument("count: must be >= 0");
  if (model.alpha <= 0.0 || model.beta <= 0.0 || model.spread < 0.0 || model.spread >= 1.0) {
    throw std::invalid_argument("population model: need alpha, beta > 0 and spread in [0, 1)");
  }

  std::uniform_real_distribution<double> rel(-model.spread, model.spread);
  std::vector<DeviceProfile> profiles;
  profiles.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double da = rel(rng);
    const double db = model.independent ? rel(rng) : da;
    profiles.push_back(DeviceProfile{first_id + static_cast<std::uint32_t>(i),
                                     model.alpha * (1.0 + da), model.beta * (1.0 + db),
                                     legitimate});
  }
  return profiles;
}

std::vector<DeviceProfile> sample_population(int count, std::uint64_t seed,
                                             const PopulationModel& model,
                                             std::uint32_t first_id, bool legitimate) {
  std::mt19937_64 rng{seed};
  return sample_population(count, rng, model, first_id, legitimate);
}

DeviceRegistry::DeviceRegistry(std::vector<DeviceProfile> profiles, bool ideal_front_end)
    : profiles_(std::move(profiles)), ideal_front_end_(ideal_front_end) {
  for (std::size_t i = 0; i < profiles_.size(); ++i) {
    const auto& p = profiles_[i];
    if (p.device_id != i) {
      throw std::invalid_argument("profiles: device ids must be dense from 0");
    }
    if (p.alpha <= 0.0 || p.beta <= 0.0) {
      throw std::invalid_argument("profiles: alpha and beta must be > 0 (device " +
                                  std::to_string(i) + ")");
    }
  }
}

const DeviceProfile& DeviceRegistry::at(std::uint32_t device_id) const {
  if (device_id >= profiles_.size()) {
    throw std::out_of_range("device registry: unknown device id " + std::to_string(device_id));
  }
  return profiles_[device_id];
}

double DeviceRegistry::transmit_amplitude(std::uint32_t device_id, double nominal) const {
  const DeviceProfile& profile = at(device_id);  // unknown ids fail either way
  return ideal_front_end_ ? ideal_passthrough(nominal) : distort(nominal, profile);
}

}  // namespace urasim::rf
