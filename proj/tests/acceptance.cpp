// Acceptance suite: one self-contained check per criterion, one PASS/FAIL
// line each. Expected values come from independent routes (ternary
// expansions, exact rational recursion, closed forms) rather than from the
// code paths under test.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cantorqc/bounds.hpp"
#include "cantorqc/cantor.hpp"
#include "cantorqc/classify.hpp"
#include "cantorqc/moduli.hpp"
#include "cantorqc/omega.hpp"
#include "cantorqc/sim.hpp"

using namespace cantorqc;

namespace {

struct Checker {
  bool ok = true;
  std::string detail;
  std::uint64_t checks = 0;

  void require(bool condition, const std::string& what) {
    ++checks;
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

Rational R(long n, long d) { return Rational(n, d); }

std::vector<Real> log_grid(double lo, double hi, int points) {
  std::vector<Real> grid;
  double step = (std::log(hi) - std::log(lo)) / (points - 1);
  for (int i = 0; i < points; ++i)
    grid.push_back(Real(std::exp(std::log(lo) + step * i)));
  return grid;
}

// ---- criterion 1: closed-form lengths equal the recursive construction --

void criterion_formula_equivalence(Checker& c) {
  const int sequences = 1000;
  std::mt19937_64 rng(0x5eed0001);
  std::vector<OmegaSequence> omegas;
  std::vector<int> depths;
  omegas.reserve(sequences);
  for (int i = 0; i < sequences; ++i) {
    int depth = 1 + static_cast<int>(rng() % 10);
    std::vector<Rational> prefix;
    for (int n = 0; n < depth; ++n)
      prefix.push_back(R(1 + static_cast<long>(rng() % 997), 998));
    std::sort(prefix.begin(), prefix.end());
    omegas.emplace_back(prefix, ConstantTail{prefix.back()});
    depths.push_back(depth);
  }
  std::vector<std::uint64_t> mismatches(sequences, 0);
  std::vector<std::uint64_t> checks(sequences, 0);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < sequences; ++i) {
    FormulaReport report = verify_formulas(omegas[i], depths[i]);
    mismatches[i] = report.mismatches.size();
    checks[i] = report.checks;
  }
  std::uint64_t total_mismatches = 0, total_checks = 0;
  for (int i = 0; i < sequences; ++i) {
    total_mismatches += mismatches[i];
    total_checks += checks[i];
  }
  c.require(total_mismatches == 0, "formula/construction mismatch found");
  c.require(total_checks > 1000000, "suspiciously few checks ran");
  c.detail = std::to_string(total_checks) + " exact comparisons, " +
             std::to_string(total_mismatches) + " mismatches";
}

// ---- criterion 2: middle-thirds endpoints via ternary expansions --------

void criterion_middle_thirds(Checker& c) {
  OmegaSequence third = OmegaSequence::constant(R(1, 3));
  for (int k = 0; k <= 12; ++k) {
    CantorLevel level = build_level(third, k);
    // intervals of C_0 at depth k are [m/3^k, (m+1)/3^k] for m whose
    // k-digit ternary expansion avoids the digit 1
    BigInt three_k = boost::multiprecision::pow(BigInt(3), k);
    std::vector<BigInt> ms;
    ms.push_back(0);
    for (int digit = 0; digit < k; ++digit) {
      std::vector<BigInt> next;
      for (const BigInt& m : ms) {
        next.push_back(m * 3);
        next.push_back(m * 3 + 2);
      }
      ms = std::move(next);
    }
    c.require(ms.size() == level.intervals.size(), "interval count mismatch");
    for (std::size_t j = 0; j < ms.size(); ++j) {
      c.require(level.intervals[j][0] == Rational(ms[j], three_k),
                "left endpoint differs from ternary form at k=" + std::to_string(k));
      c.require(level.intervals[j][1] == Rational(ms[j] + 1, three_k),
                "right endpoint differs from ternary form at k=" + std::to_string(k));
    }
  }
  c.detail = "depths 0..12 against the no-digit-1 ternary characterization";
}

// ---- criterion 3: Psi(t) sandwich and the self-dual checkpoint ----------

void criterion_psi_sandwich(Checker& c) {
  auto grid = log_grid(1e-3, 1e6, 1000);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(grid.size()); ++i) {
    PsiBounds b = psi_bounds(grid[i]);
    Real psi = exp(mod_teich_oracle(grid[i]));
    bool inside = b.lower <= psi && psi <= b.upper;
#pragma omp critical
    c.require(inside, "oracle escaped the sandwich at t=" + real_str(grid[i]));
  }
  Real psi1 = exp(mod_teich_oracle(Real(1)));
  Real e_pi = exp(real_pi());
  c.require(abs(psi1 - e_pi) <= e_pi * Real("1e-10"),
            "Psi(1) missed e^pi beyond 1e-10");
  c.detail = "1000 log-spaced t in [1e-3, 1e6]; Psi(1) vs e^pi";
}

// ---- criterion 4: two-step modulus chain --------------------------------

void criterion_modulus_chain(Checker& c) {
  std::vector<Rational> qs;
  for (long n = 1; n <= 9; ++n) qs.push_back(R(n, 10));
  qs.push_back(R(99, 100));
  qs.push_back(R(999, 1000));
  qs.push_back(R(9999, 10000));
  qs.push_back(R(99999, 100000));
  qs.push_back(R(999999, 1000000));
  const Real log2 = log(Real(2));
  for (const Rational& q : qs)
    for (int k = 1; k <= 30; ++k) {
      TeichParams p = teich_reduce(q, k);
      Real oracle = mod_teich_oracle(to_real(p.t));
      Real mid = 4 * log2 + log(to_real(p.alpha_prime) + 1);
      Real bound = 6 * log2 - log(to_real(Rational(1) - q));
      c.require(oracle <= mid, "oracle above 4log2+log(alpha'+1) at q=" + rat_str(q));
      c.require(mid <= bound, "middle bound above 6log2-log(1-q) at q=" + rat_str(q));
    }
  c.detail = "q grid {0.1..0.999999} x k in 1..30";
}

// ---- criterion 5: bound sandwich and single-branch collapse -------------

void criterion_bound_sandwich(Checker& c) {
  const std::vector<Real> deltas = {Real("0.1"), Real("0.25"), Real(1) / 3,
                                    Real("0.5"), Real("0.9")};
  for (const Real& delta : deltas) {
    for (int i = 0; i < 1000; ++i) {
      Real q = delta + (1 - Real("1e-9") - delta) * i / 999;
      c.require(length_lower(delta, q) <= uniform_upper(delta, q).value,
                "lower bound crossed the uniform upper at delta=" + real_str(delta));
    }
  }
  OmegaSequence constant = OmegaSequence::constant(R(2, 5));
  Real reference = kinjo_upper(constant, {5, 1});
  for (std::uint64_t j = 1; j <= 32; ++j) {
    Real value = kinjo_upper(constant, {5, j});
    c.require(abs(value - reference) <= reference * Real("1e-30"),
              "kinjo branches disagree for constant omega at j=" + std::to_string(j));
  }
  c.detail = "5 deltas x 1000 q points; 32 indices at constant q";
}

// ---- criterion 6: family separation with the exact log-growth rate ------

void criterion_family_separation(Checker& c) {
  std::vector<Rational> alphas = {R(11, 10), R(3, 2), Rational(2), Rational(3),
                                  Rational(5)};
  const std::uint64_t horizon = 10000;
  auto matrix = pairwise_matrix(alphas, horizon);
  Real logN = log(Real(horizon));
  int off_diagonal = 0;
  for (std::size_t i = 0; i < alphas.size(); ++i)
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      if (i == j) {
        c.require(matrix[i][j].outcome == Outcome::Equivalent,
                  "diagonal entry not Equivalent");
        continue;
      }
      ++off_diagonal;
      const Verdict& v = matrix[i][j];
      c.require(v.outcome == Outcome::NotEquivalent, "off-diagonal pair not separated");
      c.require(v.necessary.asymptotic == Asymptotic::DivergesLog,
                "necessary statistic not DivergesLog");
      Real expected = abs(to_real(alphas[i]) - to_real(alphas[j])) * logN;
      c.require(abs(v.necessary.finite_max - expected) <= Real("1e-9"),
                "finite max missed (alpha-alpha') log N beyond 1e-9");
    }
  c.require(off_diagonal == 20, "expected 20 ordered off-diagonal pairs");
  c.detail = "alphas {1.1, 1.5, 2, 3, 5} at horizon 10^4";
}

// ---- criterion 7: sufficient condition on constants; upper-bound clause -

void criterion_constant_equivalence(Checker& c) {
  std::mt19937_64 rng(0x5eed0007);
  for (int trial = 0; trial < 50; ++trial) {
    Rational a(1 + static_cast<long>(rng() % 9973), 9974);
    Rational b(1 + static_cast<long>(rng() % 9973), 9974);
    Verdict v = classify(OmegaSequence::constant(a), OmegaSequence::constant(b), 100);
    c.require(v.outcome == Outcome::Equivalent,
              "constants " + rat_str(a) + ", " + rat_str(b) + " not Equivalent");
    c.require(v.basis == Basis::SufficientHolds, "wrong basis for constant pair");
  }
  Verdict mixed = classify(OmegaSequence::constant(R(1, 3)), family_omega(2), 1000);
  c.require(mixed.outcome == Outcome::NotEquivalent,
            "bounded vs unbounded pair not separated");
  c.detail = "50 random constant pairs; middle-thirds vs power family";
}

// ---- criterion 8: verdict invariance under prepend and shift ------------

void criterion_prefix_invariance(Checker& c) {
  std::mt19937_64 rng(0x5eed0008);
  auto random_tail = [&](int which) -> TailModel {
    switch (which % 3) {
      case 0:
        return ConstantTail{R(1 + static_cast<long>(rng() % 11), 13)};
      case 1:
        return PowerExpTail{R(1 + static_cast<long>(rng() % 7), 5),
                            R(6 + static_cast<long>(rng() % 9), 5), 0};
      default:
        return GeometricExpTail{R(1 + static_cast<long>(rng() % 9), 4),
                                R(5 + static_cast<long>(rng() % 7), 4)};
    }
  };
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rational> pa, pb;
    for (int i = 0; i < static_cast<int>(rng() % 3); ++i)
      pa.push_back(R(1 + static_cast<long>(rng() % 17), 19));
    for (int i = 0; i < static_cast<int>(rng() % 3); ++i)
      pb.push_back(R(1 + static_cast<long>(rng() % 17), 19));
    OmegaSequence a(pa, random_tail(static_cast<int>(rng() % 3)));
    OmegaSequence b(pb, random_tail(static_cast<int>(rng() % 3)));
    std::vector<Rational> extra;
    int len = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < len; ++i)
      extra.push_back(R(1 + static_cast<long>(rng() % 23), 24));
    std::uint64_t m = 1 + rng() % 5;

    Outcome base = classify(a, b, 300).outcome;
    c.require(classify(a.prepended(extra), b, 300).outcome == base,
              "outcome changed under prepend of the first argument");
    c.require(classify(a, b.prepended(extra), 300).outcome == base,
              "outcome changed under prepend of the second argument");
    c.require(classify(a.shifted(m), b, 300).outcome == base,
              "outcome changed under shift of the first argument");
    c.require(classify(a.shifted(m), b.shifted(m), 300).outcome == base,
              "outcome changed under shift of both arguments");
  }
  c.detail = "200 random triples, prefixes up to length 8";
}

// ---- criterion 9: annulus symmetry factor 2 ------------------------------

void criterion_annulus_symmetry(Checker& c) {
  auto grid = log_grid(1.0 + 1e-6, 1e6, 500);
  for (const Real& radius : grid) {
    AnnulusSymmetryReport rep = annulus_symmetry_check(radius);
    c.require(abs(rep.ratio - 2) <= Real("1e-12") * 2,
              "factor-2 identity broke at R=" + real_str(radius));
  }
  c.detail = "500 radii in [1+1e-6, 1e6], relative tolerance 1e-12";
}

// ---- criterion 10: shift-map measure preservation ------------------------

void criterion_measure_preservation(Checker& c) {
  std::mt19937_64 rng(0x5eed0010);
  SampleBatch batch = sample_batch(0xace0fba5e, 8, 100000);
  for (int set_index = 0; set_index < 20; ++set_index) {
    CylinderSet set;
    int constraints = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < constraints; ++i) {
      std::uint32_t index = 1 + static_cast<std::uint32_t>(rng() % 6);
      double lo = static_cast<double>(rng() % 600) / 1000.0;
      double hi = lo + 0.15 + static_cast<double>(rng() % 250) / 1000.0;
      set.constraints[index] = {lo, std::min(hi, 0.999)};
    }
    PreservationReport report = shift_preservation_test(batch, set);
    c.require(report.pass, "cylinder set " + std::to_string(set_index) +
                               " drifted beyond 3 sigma");
  }
  c.detail = "20 random cylinder sets, M = 1e5, 3 sigma";
}

// ---- criterion 11: vanishing-volume proxy --------------------------------

void criterion_volume_proxy(Checker& c) {
  OmegaSequence ref = family_omega(2);
  SampleBatch batch = sample_batch(0x00c4a70e, 200, 10000);
  VolumeReport report = volume_experiment(ref, batch, 5.0, {10, 50, 100, 200});
  for (std::size_t i = 1; i < report.fractions.size(); ++i)
    c.require(report.fractions[i] <= report.fractions[i - 1],
              "fraction increased between checkpoints");
  c.require(report.fractions.back() <= 1e-3,
            "fraction above 1e-3 at N = 200");
  std::ostringstream os;
  os << "fractions";
  for (double f : report.fractions) os << ' ' << f;
  c.detail = os.str() + " at N {10,50,100,200}";
}

struct Criterion {
  int id;
  std::string name;
  std::function<void(Checker&)> run;
  double time_limit_s = 0.0;  // 0 = untimed
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "formula/construction equivalence (1000 random increasing prefixes)",
       criterion_formula_equivalence, 60.0},
      {2, "middle-thirds ternary regression (k <= 12)", criterion_middle_thirds},
      {3, "Psi(t) sandwich and self-dual checkpoint", criterion_psi_sandwich},
      {4, "modulus chain on the (q, k) grid", criterion_modulus_chain},
      {5, "length-bound sandwich and branch collapse", criterion_bound_sandwich},
      {6, "power-family pairwise separation at 1e4", criterion_family_separation},
      {7, "constant-pair equivalence and upper-bound clause",
       criterion_constant_equivalence},
      {8, "classifier prefix invariance (200 triples)", criterion_prefix_invariance},
      {9, "annulus symmetry factor 2", criterion_annulus_symmetry},
      {10, "shift-map measure preservation (20 cylinders)",
       criterion_measure_preservation, 120.0},
      {11, "vanishing-volume proxy fractions", criterion_volume_proxy, 120.0},
  };

  int failures = 0;
  double simulation_seconds = 0.0;
  for (auto& criterion : criteria) {
    Checker checker;
    auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(checker);
    } catch (const std::exception& ex) {
      checker.ok = false;
      checker.detail = std::string("exception: ") + ex.what();
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (criterion.id == 10 || criterion.id == 11) simulation_seconds += seconds;
    if (criterion.time_limit_s > 0 && seconds > criterion.time_limit_s) {
      checker.ok = false;
      checker.detail = "exceeded the " + std::to_string(criterion.time_limit_s) +
                       " s runtime target";
    }
    std::cout << (checker.ok ? "[PASS] " : "[FAIL] ") << std::setw(2)
              << criterion.id << ". " << criterion.name << " (" << std::fixed
              << std::setprecision(2) << seconds << " s, "
              << checker.checks << " checks";
    if (!checker.detail.empty()) std::cout << "; " << checker.detail;
    std::cout << ")\n";
    if (!checker.ok) ++failures;
  }
  if (simulation_seconds > 120.0) {
    std::cout << "[FAIL] simulation suite exceeded 120 s ("
              << simulation_seconds << " s)\n";
    ++failures;
  }
  std::cout << (failures == 0 ? "ALL CRITERIA PASSED"
                              : std::to_string(failures) + " CRITERIA FAILED")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
