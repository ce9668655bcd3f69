#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace urasim::rf {

// Default PA nonlinearity parameters. Device populations draw their own
// parameters uniformly within +/-5% of these.
inline constexpr double kDefaultAlpha = 2.1587;
inline constexpr double kDefaultBeta = 1.1417;
inline constexpr double kDefaultSpread = 0.05;

/// Per-device RF fingerprint surrogate: the PA parameters plus whether the
/// device is registered in the base station's access list.
struct DeviceProfile {
  std::uint32_t device_id = 0;
  double alpha = kDefaultAlpha;
  double beta = kDefaultBeta;
  bool legitimate = true;
};

/// Memoryless PA nonlinearity psi(a) = alpha*a / (1 + beta*a^2).
double distort(double amplitude, const DeviceProfile& profile);

/// Identity front end, for impairment-free runs.
double ideal_passthrough(double amplitude);

/// Population the per-device PA parameters are drawn from.
struct PopulationModel {
  double alpha = kDefaultAlpha;
  double beta = kDefaultBeta;
  double spread = kDefaultSpread;  // uniform relative half-width
  bool independent = true;         // draw alpha and beta independently
};

/// Draws `count` device profiles. Per device, alpha is drawn before beta;
/// with independent=false one relative deviation is shared by both.
std::vector<DeviceProfile> sample_population(int count, std::mt19937_64& rng,
                                             const PopulationModel& model = {},
                                             std::uint32_t first_id = 0,
                                             bool legitimate = true);

/// Seeded convenience overload; deterministic given (count, seed).
std::vector<DeviceProfile> sample_population(int count, std::uint64_t seed,
                                             const PopulationModel& model = {},
                                             std::uint32_t first_id = 0,
                                             bool legitimate = true);

/// Device-id -> profile lookup for one round. Ids must be dense from 0 and
/// match each profile's position.
class DeviceRegistry {
 public:
  DeviceRegistry() = default;
  DeviceRegistry(std::vector<DeviceProfile> profiles, bool ideal_front_end);

  const DeviceProfile& at(std::uint32_t device_id) const;
  bool legitimate(std::uint32_t device_id) const { return at(device_id).legitimate; }

  /// Amplitude actually radiated for a nominal OOK amplitude.
  double transmit_amplitude(std::uint32_t device_id, double nominal) const;

  std::size_t size() const { return profiles_.size(); }
  bool ideal_front_end() const { return ideal_front_end_; }

 private:
  std::vector<DeviceProfile> profiles_;
  bool ideal_front_end_ = true;
};

}  // namespace urasim::rf
