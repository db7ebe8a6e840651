#include "cantorqc/sim.hpp"

#include <algorithm>
#include <cmath>

#include "cantorqc/philox.hpp"

namespace cantorqc {

namespace {

constexpr std::uint64_t kStream = 0x9E3779B97F4A7C15ull;  // batch key lane

void check_band(const CylinderSet::Band& band) {
  if (!(band.lo >= 0.0 && band.lo < band.hi && band.hi <= 1.0))
    raise(ErrorKind::ValueOutOfRange, "cylinder band must satisfy 0 <= lo < hi <= 1");
}

}  // namespace

double CylinderSet::theoretical_measure() const {
  double m = 1.0;
  for (const auto& [index, band] : constraints) {
    if (index == 0) raise(ErrorKind::IndexOutOfRange, "coordinates start at 1");
    check_band(band);
    m *= band.hi - band.lo;
  }
  return m;
}

CylinderSet CylinderSet::shifted_preimage() const {
  CylinderSet out;
  for (const auto& [index, band] : constraints) out.constraints[index + 1] = band;
  return out;
}

std::uint32_t CylinderSet::max_index() const {
  return constraints.empty() ? 0 : constraints.rbegin()->first;
}

namespace {

SampleBatch batch_impl(std::uint64_t seed, std::uint32_t truncation,
                       std::uint32_t count, bool parallel) {
  if (truncation < 1 || count < 1)
    raise(ErrorKind::ValueOutOfRange, "batch needs N >= 1 and M >= 1");
  SampleBatch batch;
  batch.seed = seed;
  batch.truncation = truncation;
  batch.count = count;
  batch.data.resize(static_cast<std::size_t>(truncation) * count);
  const std::array<std::uint64_t, 2> key = {seed, kStream};
  auto fill_sample = [&](std::uint32_t s) {
    std::size_t base = static_cast<std::size_t>(s) * truncation;
    // one block of four words per (sample, coordinate-group) cell
    for (std::uint32_t i = 0; i < truncation; i += 4) {
      auto words = philox4x64({s, i / 4, 0, 0}, key);
      for (std::uint32_t w = 0; w < 4 && i + w < truncation; ++w)
        batch.data[base + i + w] = u64_to_unit_open(words[w]);
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(count); ++s)
      fill_sample(static_cast<std::uint32_t>(s));
  } else {
    for (std::uint32_t s = 0; s < count; ++s) fill_sample(s);
  }
  return batch;
}

bool accepts(const SampleBatch& batch, const CylinderSet& set, std::uint32_t s) {
  for (const auto& [index, band] : set.constraints) {
    double x = batch.coord(s, index);
    if (!(x > band.lo && x < band.hi)) return false;
  }
  return true;
}

Estimate estimate_impl(const SampleBatch& batch, const CylinderSet& set,
                       bool parallel) {
  for (const auto& [index, band] : set.constraints) {
    if (index == 0) raise(ErrorKind::IndexOutOfRange, "coordinates start at 1");
    check_band(band);
    if (index > batch.truncation)
      raise(ErrorKind::IndexBeyondTruncation,
            "constraint on coordinate " + std::to_string(index) +
                " but batch truncates at " + std::to_string(batch.truncation));
  }
  std::int64_t hits = 0;
  if (parallel) {
#pragma omp parallel for reduction(+ : hits) schedule(static)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(batch.count); ++s)
      hits += accepts(batch, set, static_cast<std::uint32_t>(s)) ? 1 : 0;
  } else {
    for (std::uint32_t s = 0; s < batch.count; ++s)
      hits += accepts(batch, set, s) ? 1 : 0;
  }
  Estimate e;
  e.hits = static_cast<std::uint64_t>(hits);
  e.value = static_cast<double>(hits) / batch.count;
  e.stderr_ = std::sqrt(e.value * (1.0 - e.value) / batch.count);
  return e;
}

}  // namespace

SampleBatch sample_batch(std::uint64_t seed, std::uint32_t truncation,
                         std::uint32_t count) {
  return batch_impl(seed, truncation, count, true);
}
SampleBatch sample_batch_serial(std::uint64_t seed, std::uint32_t truncation,
                                std::uint32_t count) {
  return batch_impl(seed, truncation, count, false);
}

Estimate measure_estimate(const SampleBatch& batch, const CylinderSet& set) {
  return estimate_impl(batch, set, true);
}
Estimate measure_estimate_serial(const SampleBatch& batch, const CylinderSet& set) {
  return estimate_impl(batch, set, false);
}

PreservationReport shift_preservation_test(const SampleBatch& batch,
                                           const CylinderSet& set) {
  CylinderSet shifted = set.shifted_preimage();
  if (shifted.max_index() > batch.truncation)
    raise(ErrorKind::IndexBeyondTruncation,
          "shifted cylinder needs coordinate " +
              std::to_string(shifted.max_index()));
  PreservationReport report;
  report.original = measure_estimate(batch, set);
  report.shifted = measure_estimate(batch, shifted);
  report.theoretical = set.theoretical_measure();
  report.difference = report.shifted.value - report.original.value;
  report.tolerance = 3.0 * std::sqrt(report.original.stderr_ * report.original.stderr_ +
                                     report.shifted.stderr_ * report.shifted.stderr_);
  report.pass = std::abs(report.difference) <= report.tolerance;
  return report;
}

namespace {

VolumeReport volume_impl(const OmegaSequence& omega_ref, const SampleBatch& batch,
                         double threshold, std::vector<std::uint32_t> checkpoints,
                         bool parallel) {
  if (!(threshold > 0))
    raise(ErrorKind::ValueOutOfRange, "threshold must be positive");
  if (!omega_ref.tail_monotone_class() ||
      omega_ref.supremum() != OmegaSequence::SupremumQ::One ||
      !omega_ref.is_increasing(2).increasing)
    raise(ErrorKind::ValidationError,
          "reference sequence must be increasing with sup q_n = 1");
  if (checkpoints.empty()) checkpoints = {batch.truncation};
  std::sort(checkpoints.begin(), checkpoints.end());
  if (checkpoints.front() < 1 || checkpoints.back() > batch.truncation)
    raise(ErrorKind::IndexBeyondTruncation, "checkpoint beyond batch truncation");

  // log L_ref(n) once; double precision is ample for a 3-sigma experiment.
  std::vector<double> log_ref(batch.truncation);
  for (std::uint32_t n = 1; n <= batch.truncation; ++n)
    log_ref[n - 1] =
        static_cast<double>(log(omega_ref.neg_log_one_minus(n)));

  // Each checkpoint is the experiment at that truncation: the first N'
  // coordinates are sorted ascending and the statistic is the max over
  // n <= N'. Growing N' shrinks every order statistic, so above-threshold
  // statistics stay above threshold and the fraction cannot increase.
  const std::size_t cp = checkpoints.size();
  std::vector<std::uint8_t> below(static_cast<std::size_t>(batch.count) * cp);
  auto run_sample = [&](std::uint32_t s) {
    std::vector<double> coords;
    coords.reserve(batch.truncation);
    for (std::size_t c = 0; c < cp; ++c) {
      std::uint32_t cut = checkpoints[c];
      coords.resize(cut);
      for (std::uint32_t i = 1; i <= cut; ++i) coords[i - 1] = batch.coord(s, i);
      std::sort(coords.begin(), coords.end());
      double stat = 0.0;
      for (std::uint32_t n = 1; n <= cut; ++n) {
        double lq = std::log(-std::log1p(-coords[n - 1]));
        stat = std::max(stat, std::abs(log_ref[n - 1] - lq));
      }
      below[static_cast<std::size_t>(s) * cp + c] = stat < threshold ? 1 : 0;
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(batch.count); ++s)
      run_sample(static_cast<std::uint32_t>(s));
  } else {
    for (std::uint32_t s = 0; s < batch.count; ++s) run_sample(s);
  }

  VolumeReport report;
  report.seed = batch.seed;
  report.samples = batch.count;
  report.threshold = threshold;
  report.checkpoints = checkpoints;
  report.below_counts.assign(cp, 0);
  for (std::uint32_t s = 0; s < batch.count; ++s)
    for (std::size_t c = 0; c < cp; ++c)
      report.below_counts[c] += below[static_cast<std::size_t>(s) * cp + c];
  for (std::size_t c = 0; c < cp; ++c)
    report.fractions.push_back(static_cast<double>(report.below_counts[c]) /
                               batch.count);
  report.note =
      "sorted-sample proxy: coordinates are sorted ascending to meet the "
      "increasing hypothesis; results support, and do not prove, the "
      "vanishing-volume statement";
  return report;
}

}  // namespace

VolumeReport volume_experiment(const OmegaSequence& omega_ref,
                               const SampleBatch& batch, double threshold,
                               std::vector<std::uint32_t> checkpoints) {
  return volume_impl(omega_ref, batch, threshold, std::move(checkpoints), true);
}

VolumeReport volume_experiment_serial(const OmegaSequence& omega_ref,
                                      const SampleBatch& batch, double threshold,
                                      std::vector<std::uint32_t> checkpoints) {
  return volume_impl(omega_ref, batch, threshold, std::move(checkpoints), false);
}

nlohmann::ordered_json preservation_to_json(const PreservationReport& report) {
  auto est = [](const Estimate& e) {
    return nlohmann::ordered_json{
        {"estimate", e.value}, {"stderr", e.stderr_}, {"hits", e.hits}};
  };
  return {{"original", est(report.original)},
          {"shifted", est(report.shifted)},
          {"difference", report.difference},
          {"tolerance", report.tolerance},
          {"theoretical", report.theoretical},
          {"pass", report.pass}};
}

nlohmann::ordered_json volume_to_json(const VolumeReport& report) {
  nlohmann::ordered_json j;
  j["seed"] = report.seed;
  j["samples"] = report.samples;
  j["threshold"] = report.threshold;
  j["checkpoints"] = report.checkpoints;
  j["fractions"] = report.fractions;
  j["below_counts"] = report.below_counts;
  j["note"] = report.note;
  return j;
}

}  // namespace cantorqc
