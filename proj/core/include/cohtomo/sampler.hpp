#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cohtomo/fock.hpp"
#include "cohtomo/gadget.hpp"
#include "cohtomo/recipe.hpp"

namespace cohtomo {

/// Identifier of the generator below, recorded in serialized campaign output
/// so results stay reproducible across versions.
inline constexpr const char* kRngAlgorithm = "splitmix64";

/// SplitMix64: a 64-bit splittable generator (Steele, Lea, Flood 2014).
/// Chosen over the standard-library engines because substreams derived from
/// (seed, index) must be stable across platforms and execution order.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~static_cast<result_type>(0); }

  result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) using the top 53 bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Stable per-substream seed: mixes `index` into `seed` with the SplitMix64
/// output function, so substreams are independent of evaluation order.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index);

/// Photon counts in port 1 behind the gadget: `counts[n]` occurrences of
/// measuring n photons there (and order - n in port 2).
struct CountHistogram {
  MeasurementSetting setting;
  std::int64_t shots = 0;
  std::map<int, std::int64_t> counts;
};

/// Factorial-moment estimate with its standard error (0 when shots == 1).
struct MomentEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Samples `shots` photon-number outcomes of the state sent through the
/// gadget at `setting`, by inverse CDF over the order + 1 outcomes.
CountHistogram simulate_counts(const FixedNState& state, const MeasurementSetting& setting,
                               std::int64_t shots, std::uint64_t seed);

/// Unbiased estimator of the order-th factorial moment <n(n-1)...(n-order+1)>
/// from counted outcomes, which equals the normally ordered intensity moment
/// for any state.  For a state of exactly `order` photons it reduces to
/// order! times the top-bucket frequency.
MomentEstimate estimate_moment(const CountHistogram& histogram, int order);

/// One simulated record per plan setting.  The state's photon number need
/// not match the plan order: moments of a different order than the photon
/// number are well defined (and vanish when the order exceeds it).  Setting
/// k uses the RNG substream derive_stream_seed(seed, k), so the output is a
/// pure function of the arguments even if settings are simulated in
/// parallel.
std::vector<MeasurementRecord> run_campaign(const FixedNState& state, const SettingsPlan& plan,
                                            std::int64_t shots_per_setting, std::uint64_t seed);

}  // namespace cohtomo
