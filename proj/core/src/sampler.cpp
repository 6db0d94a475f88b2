#include "cohtomo/sampler.hpp"

#include <cmath>
#include <string>

#include "cohtomo/errors.hpp"

namespace cohtomo {

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mixer(seed + 0x9E3779B97F4A7C15ull * (index + 1));
  return mixer();
}

CountHistogram simulate_counts(const FixedNState& state, const MeasurementSetting& setting,
                               std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) {
    throw RangeError("shots must be >= 1, got " + std::to_string(shots));
  }
  const FixedNState transformed = apply_two_mode_unitary(state, gadget_unitary(setting));
  const Eigen::VectorXd distribution = photon_number_distribution(transformed);

  // Cumulative probabilities; rounding can leave tiny negatives or a sum a
  // few ulps away from 1, so clamp and pin the last edge.
  std::vector<double> cumulative(static_cast<std::size_t>(distribution.size()));
  double running = 0.0;
  for (Eigen::Index n = 0; n < distribution.size(); ++n) {
    running += std::max(distribution(n), 0.0);
    cumulative[static_cast<std::size_t>(n)] = running;
  }
  cumulative.back() = std::max(cumulative.back(), 1.0);

  SplitMix64 rng(seed);
  CountHistogram histogram{setting, shots, {}};
  for (std::int64_t shot = 0; shot < shots; ++shot) {
    const double u = rng.uniform();
    int n = 0;
    while (cumulative[static_cast<std::size_t>(n)] <= u) {
      ++n;
    }
    ++histogram.counts[n];
  }
  return histogram;
}

MomentEstimate estimate_moment(const CountHistogram& histogram, int order) {
  if (order < 1 || order > kMaxOrder) {
    throw RangeError("moment order must lie in [1, " + std::to_string(kMaxOrder) + "], got " +
                     std::to_string(order));
  }
  if (histogram.shots < 1) {
    throw RangeError("histogram holds no shots");
  }
  for (const auto& [n, occurrences] : histogram.counts) {
    if (n < 0 || n > kMaxOrder) {
      throw RangeError("histogram count at n = " + std::to_string(n) + " is out of range");
    }
    if (occurrences < 0) {
      throw RangeError("negative occurrence count");
    }
  }

  const double shots = static_cast<double>(histogram.shots);
  double mean = 0.0;
  for (const auto& [n, occurrences] : histogram.counts) {
    mean += falling_factorial(n, order) * static_cast<double>(occurrences) / shots;
  }

  double std_error = 0.0;
  if (histogram.shots > 1) {
    double sum_squares = 0.0;
    for (const auto& [n, occurrences] : histogram.counts) {
      const double deviation = falling_factorial(n, order) - mean;
      sum_squares += deviation * deviation * static_cast<double>(occurrences);
    }
    const double sample_variance = sum_squares / (shots - 1.0);
    std_error = std::sqrt(sample_variance / shots);
  }
  return MomentEstimate{mean, std_error};
}

std::vector<MeasurementRecord> run_campaign(const FixedNState& state, const SettingsPlan& plan,
                                            std::int64_t shots_per_setting,
                                            std::uint64_t seed) {
  std::vector<MeasurementRecord> records;
  records.reserve(plan.settings.size());
  for (std::size_t index = 0; index < plan.settings.size(); ++index) {
    const CountHistogram histogram = simulate_counts(
        state, plan.settings[index], shots_per_setting, derive_stream_seed(seed, index));
    const MomentEstimate estimate = estimate_moment(histogram, plan.order);
    records.push_back(MeasurementRecord{plan.settings[index], estimate.value,
                                        estimate.std_error});
  }
  return records;
}

}  // namespace cohtomo
