#include "doctest.h"

#include <cmath>
#include <limits>

#include "cantorqc/classify.hpp"
#include "cantorqc/philox.hpp"
#include "cantorqc/sim.hpp"
#include "oracles.hpp"

using namespace cantorqc;

namespace {

Rational R(long n, long d) { return Rational(n, d); }

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("philox known answers") {
  // vectors cross-checked against numpy.random.Philox (same Random123
  // reference algorithm; numpy advances the counter once before its
  // first block, accounted for here)
  using A4 = std::array<std::uint64_t, 4>;
  const std::uint64_t F = 0xffffffffffffffffull;
  CHECK(philox4x64({1, 0, 0, 0}, {0, 0}) ==
        A4{0x02f4ba6408e4d89bull, 0x3dd62b0b9ca8c5b2ull,
           0x1c8667a55d902e79ull, 0x907d7a052fd5b4dcull});
  CHECK(philox4x64({0, 0, 0, 0}, {F, F}) ==
        A4{0x44b7493d1acfc229ull, 0x6636af8e997921ddull,
           0x3f73e132b5b3780eull, 0x605644dde03b01b1ull});
  CHECK(philox4x64({2, 2, 3, 4}, {5, 6}) ==
        A4{0x92ab6a0e75619263ull, 0xd8ff75bdc6bf8f60ull,
           0x450e124938725640ull, 0x94eb1a7cffd20cbbull});
  CHECK(philox4x64({0xdeadbef0ull, 0, 42, 7},
                   {0x123456789abcdef0ull, 0xfedcba9876543210ull}) ==
        A4{0xcd4588437e4e0e09ull, 0x109686577fc77797ull,
           0xba1400ab9771b8e2ull, 0x880043ac7a567472ull});
}

TEST_CASE("unit-open mapping stays strictly inside (0,1)") {
  CHECK(u64_to_unit_open(0) > 0.0);
  CHECK(u64_to_unit_open(0xffffffffffffffffull) < 1.0);
  CHECK(u64_to_unit_open(0x8000000000000000ull) == doctest::Approx(0.5));
}

TEST_CASE("batches are reproducible and parallel-identical") {
  SampleBatch a = sample_batch(42, 17, 2000);
  SampleBatch b = sample_batch(42, 17, 2000);
  CHECK(a.data == b.data);
  SampleBatch c = sample_batch_serial(42, 17, 2000);
  CHECK(a.data == c.data);
  SampleBatch other = sample_batch(43, 17, 2000);
  CHECK(a.data != other.data);
  for (double x : a.data) {
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("coordinates are uniform and uncorrelated") {
  const std::uint32_t m = 100000;
  SampleBatch batch = sample_batch(7, 2, m);
  double mean1 = 0, mean2 = 0;
  for (std::uint32_t s = 0; s < m; ++s) {
    mean1 += batch.coord(s, 1);
    mean2 += batch.coord(s, 2);
  }
  mean1 /= m;
  mean2 /= m;
  double bar = 3.0 * (1.0 / std::sqrt(12.0)) / std::sqrt(static_cast<double>(m));
  CHECK(std::abs(mean1 - 0.5) < bar);
  CHECK(std::abs(mean2 - 0.5) < bar);

  double cov = 0, var1 = 0, var2 = 0;
  for (std::uint32_t s = 0; s < m; ++s) {
    double d1 = batch.coord(s, 1) - mean1;
    double d2 = batch.coord(s, 2) - mean2;
    cov += d1 * d2;
    var1 += d1 * d1;
    var2 += d2 * d2;
  }
  double corr = cov / std::sqrt(var1 * var2);
  CHECK(std::abs(corr) < 3.0 / std::sqrt(static_cast<double>(m)));
}

TEST_CASE("measure estimates match product measure") {
  SampleBatch batch = sample_batch(11, 4, 100000);

  CylinderSet half;
  half.constraints[1] = {0.0, 0.5};
  Estimate e1 = measure_estimate(batch, half);
  CHECK(std::abs(e1.value - 0.5) <= 3 * e1.stderr_);

  CylinderSet eighth;
  eighth.constraints[1] = {0.0, 0.5};
  eighth.constraints[3] = {0.25, 0.5};
  Estimate e2 = measure_estimate(batch, eighth);
  CHECK(std::abs(e2.value - 0.125) <= 3 * e2.stderr_);
  CHECK(eighth.theoretical_measure() == doctest::Approx(0.125));

  CylinderSet empty;
  Estimate e3 = measure_estimate(batch, empty);
  CHECK(e3.value == 1.0);
  CHECK(e3.stderr_ == 0.0);

  CHECK(measure_estimate_serial(batch, eighth).hits == e2.hits);
}

TEST_CASE("constraints beyond the truncation are rejected") {
  SampleBatch batch = sample_batch(3, 2, 100);
  CylinderSet set;
  set.constraints[3] = {0.1, 0.9};
  CHECK_THROWS_AS(measure_estimate(batch, set), Error);
  try {
    measure_estimate(batch, set);
  } catch (const Error& ex) {
    CHECK(ex.kind() == ErrorKind::IndexBeyondTruncation);
  }
}

TEST_CASE("shift preserves cylinder measures") {
  SampleBatch batch = sample_batch(17, 5, 100000);

  CylinderSet a;
  a.constraints[1] = {0.0, 0.5};
  PreservationReport ra = shift_preservation_test(batch, a);
  CHECK(ra.pass);
  CHECK(ra.theoretical == doctest::Approx(0.5));

  CylinderSet b;
  b.constraints[2] = {1.0 / 3, 2.0 / 3};
  PreservationReport rb = shift_preservation_test(batch, b);
  CHECK(rb.pass);

  // re-indexing leaves the exact product measure unchanged
  CHECK(a.shifted_preimage().theoretical_measure() == a.theoretical_measure());
  CHECK(b.shifted_preimage().theoretical_measure() == b.theoretical_measure());

  CylinderSet edge;
  edge.constraints[5] = {0.2, 0.4};
  CHECK_THROWS_AS(shift_preservation_test(batch, edge), Error);
}

TEST_CASE("empirical measure meets theory at 4 sigma across seeds") {
  CylinderSet set;
  set.constraints[1] = {0.0, 0.5};
  set.constraints[2] = {1.0 / 3, 2.0 / 3};
  double p = set.theoretical_measure();
  int failures = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    SampleBatch batch = sample_batch(seed, 2, 4000);
    Estimate e = measure_estimate(batch, set);
    if (std::abs(e.value - p) > 4 * e.stderr_) ++failures;
  }
  CHECK(failures <= 1);
}

TEST_CASE("volume experiment fractions are reproducible and monotone") {
  OmegaSequence ref = family_omega(2);
  SampleBatch batch = sample_batch(5, 200, 2000);
  auto report = volume_experiment(ref, batch, 5.0, {10, 50, 100, 200});
  auto again = volume_experiment(ref, batch, 5.0, {10, 50, 100, 200});
  CHECK(report.fractions == again.fractions);
  auto serial = volume_experiment_serial(ref, batch, 5.0, {10, 50, 100, 200});
  CHECK(report.fractions == serial.fractions);
  for (std::size_t i = 1; i < report.fractions.size(); ++i)
    CHECK(report.fractions[i] <= report.fractions[i - 1]);
  CHECK(report.fractions.back() <= 1e-3);
  CHECK(report.note.find("sorted-sample proxy") != std::string::npos);
}

TEST_CASE("volume experiment with infinite threshold accepts everything") {
  OmegaSequence ref = family_omega(2);
  SampleBatch batch = sample_batch(9, 20, 500);
  auto report = volume_experiment(ref, batch,
                                  std::numeric_limits<double>::infinity(), {20});
  CHECK(report.fractions == std::vector<double>{1.0});
}

TEST_CASE("single-coordinate fraction matches a quadrature oracle") {
  // at N = 1 the statistic is |log(-log(1-u))| since -log(1-q_1(ref)) = 1
  const double T = 1.5;
  double expected = oracles::midpoint_integral(
      [&](double u) {
        return std::abs(std::log(-std::log1p(-u))) < T ? 1.0 : 0.0;
      },
      0.0, 1.0, 2000000);
  OmegaSequence ref = family_omega(2);
  SampleBatch batch = sample_batch(23, 1, 20000);
  auto report = volume_experiment(ref, batch, T, {1});
  double p = report.fractions[0];
  double se = std::sqrt(p * (1 - p) / batch.count);
  CHECK(std::abs(p - expected) <= 4 * se);
}

TEST_CASE("volume experiment validates its inputs") {
  SampleBatch batch = sample_batch(1, 10, 50);
  CHECK_THROWS_AS(volume_experiment(OmegaSequence::constant(R(1, 3)), batch, 5.0, {10}),
                  Error);  // sup q_n < 1
  OmegaSequence decreasing({R(1, 2), R(1, 3)}, PowerExpTail{1, 2, 0});
  CHECK_THROWS_AS(volume_experiment(decreasing, batch, 5.0, {10}), Error);
  CHECK_THROWS_AS(volume_experiment(family_omega(2), batch, 5.0, {11}), Error);
  CHECK_THROWS_AS(volume_experiment(family_omega(2), batch, -1.0, {10}), Error);
}

TEST_CASE("reports serialize") {
  SampleBatch batch = sample_batch(2, 10, 200);
  CylinderSet set;
  set.constraints[1] = {0.0, 0.5};
  auto pj = preservation_to_json(shift_preservation_test(batch, set));
  CHECK(pj.contains("difference"));
  CHECK(pj["pass"].is_boolean());
  auto vj = volume_to_json(volume_experiment(family_omega(2), batch, 5.0, {5, 10}));
  CHECK(vj["checkpoints"].size() == 2);
  CHECK(vj["fractions"].size() == 2);
}

}  // TEST_SUITE
