#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "cantorqc/omega.hpp"

namespace cantorqc {

/// Finite-coordinate constraint set in (0,1)^N: coordinate index (1-based)
/// to open sub-interval. Its product measure is the theoretical value the
/// Monte Carlo estimates converge to.
struct CylinderSet {
  struct Band {
    double lo = 0.0;
    double hi = 1.0;
  };
  std::map<std::uint32_t, Band> constraints;

  double theoretical_measure() const;
  /// sigma^{-1} of the set: every constrained index moves up by one.
  CylinderSet shifted_preimage() const;
  std::uint32_t max_index() const;
};

/// M iid samples of the first N coordinates under the product of uniforms,
/// fully determined by the seed. Coordinates live strictly inside (0,1).
struct SampleBatch {
  std::uint64_t seed = 0;
  std::uint32_t truncation = 0;  // N
  std::uint32_t count = 0;       // M
  std::vector<double> data;      // sample-major, count * truncation

  double coord(std::uint32_t sample, std::uint32_t index) const {
    return data[static_cast<std::size_t>(sample) * truncation + index - 1];
  }
};

SampleBatch sample_batch(std::uint64_t seed, std::uint32_t truncation,
                         std::uint32_t count);
SampleBatch sample_batch_serial(std::uint64_t seed, std::uint32_t truncation,
                                std::uint32_t count);

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::uint64_t hits = 0;
};

/// Fraction of samples inside the cylinder set, with binomial stderr.
/// Throws IndexBeyondTruncation if a constraint index exceeds N.
Estimate measure_estimate(const SampleBatch& batch, const CylinderSet& set);
Estimate measure_estimate_serial(const SampleBatch& batch, const CylinderSet& set);

/// Empirical check that the shift preserves the measure of a cylinder set:
/// compares the estimate of sigma^{-1}(set) against that of set at 3 sigma.
struct PreservationReport {
  Estimate original;
  Estimate shifted;
  double difference = 0.0;
  double tolerance = 0.0;
  double theoretical = 0.0;  // exact product measure (same for both sets)
  bool pass = false;
};
PreservationReport shift_preservation_test(const SampleBatch& batch,
                                           const CylinderSet& set);

/// Sorted-sample statistic against a reference sequence: for each sample,
/// coordinates are sorted ascending (proxy for the increasing hypothesis)
/// and the running max over n of |log(L_ref(n) / L_sample(n))| is compared
/// with the threshold at each checkpoint, L = -log(1 - q). The reported
/// fraction below threshold shrinks as the truncation grows.
struct VolumeReport {
  std::uint64_t seed = 0;
  std::uint32_t samples = 0;
  double threshold = 0.0;
  std::vector<std::uint32_t> checkpoints;
  std::vector<double> fractions;          // fraction with stat < threshold
  std::vector<std::uint64_t> below_counts;
  std::string note;
};
VolumeReport volume_experiment(const OmegaSequence& omega_ref,
                               const SampleBatch& batch, double threshold,
                               std::vector<std::uint32_t> checkpoints);
VolumeReport volume_experiment_serial(const OmegaSequence& omega_ref,
                                      const SampleBatch& batch, double threshold,
                                      std::vector<std::uint32_t> checkpoints);

nlohmann::ordered_json preservation_to_json(const PreservationReport& report);
nlohmann::ordered_json volume_to_json(const VolumeReport& report);

}  // namespace cantorqc
