#include "cantorqc/cantor.hpp"

#include <bit>
#include <sstream>

namespace cantorqc {

namespace mp = boost::multiprecision;

namespace {

// q_n as an exact rational, rationalizing transcendental tails to the
// configured dyadic precision.
Rational exact_q(const OmegaSequence& omega, std::uint64_t n,
                 const BuildOptions& opts, bool& inexact) {
  if (auto q = omega.eval_exact(n)) return *q;
  inexact = true;
  Real q = omega.eval(n);
  BigInt scale = mp::pow(BigInt(2), opts.rationalize_bits);
  BigInt num = static_cast<BigInt>(q * to_real(Rational(scale)) + Real(0.5));
  if (num <= 0) num = 1;
  if (num >= scale) num = scale - 1;
  return Rational(num, scale);
}

void check_depth(int k, const BuildOptions& opts) {
  if (k < 0) raise(ErrorKind::IndexOutOfRange, "depth must be >= 0");
  if (k >= 63 || (std::uint64_t{1} << k) > opts.interval_budget)
    raise(ErrorKind::DepthOverflow,
          "2^" + std::to_string(k) + " intervals exceed the budget of " +
              std::to_string(opts.interval_budget));
}

}  // namespace

CantorLevel build_level(const OmegaSequence& omega, int k,
                        const BuildOptions& opts) {
  check_depth(k, opts);
  CantorLevel level;
  level.depth = k;
  level.intervals = {{Rational(0), Rational(1)}};
  for (int n = 1; n <= k; ++n) {
    Rational q = exact_q(omega, static_cast<std::uint64_t>(n), opts, level.inexact);
    std::vector<std::array<Rational, 2>> next;
    next.reserve(level.intervals.size() * 2);
    Rational keep = (1 - q) / 2;  // each child keeps this fraction of the parent
    for (const auto& iv : level.intervals) {
      Rational len = iv[1] - iv[0];
      Rational child = keep * len;
      next.push_back({iv[0], iv[0] + child});
      next.push_back({iv[1] - child, iv[1]});
    }
    level.intervals = std::move(next);
  }
  level.gaps.reserve(level.intervals.size() - 1);
  for (std::size_t j = 0; j + 1 < level.intervals.size(); ++j)
    level.gaps.push_back({level.intervals[j][1], level.intervals[j + 1][0]});
  return level;
}

Rational interval_length(const OmegaSequence& omega, int k) {
  if (k < 0) raise(ErrorKind::IndexOutOfRange, "depth must be >= 0");
  Rational len(1);
  for (int i = 1; i <= k; ++i) {
    auto q = omega.eval_exact(static_cast<std::uint64_t>(i));
    if (!q)
      raise(ErrorKind::ValidationError,
            "interval_length needs exact rational q_1..q_k");
    len *= (1 - *q) / 2;
  }
  return len;
}

Rational gap_length(const OmegaSequence& omega, int k, std::uint64_t j) {
  if (k < 1) raise(ErrorKind::IndexOutOfRange, "gaps exist for depth >= 1");
  std::uint64_t count = (std::uint64_t{1} << k) - 1;
  if (j < 1 || j > count)
    raise(ErrorKind::IndexOutOfRange,
          "gap index " + std::to_string(j) + " not in 1.." + std::to_string(count));

  auto q_at = [&](int i) {
    auto q = omega.eval_exact(static_cast<std::uint64_t>(i));
    if (!q)
      raise(ErrorKind::ValidationError,
            "gap_length needs exact rational q_1..q_k");
    return *q;
  };

  Rational unit = interval_length(omega, k);
  if (j % 2 == 1) {
    Rational qk = q_at(k);
    return 2 * qk / (1 - qk) * unit;
  }
  int ell = std::countr_zero(j);  // j = 2^ell * m, m odd, 1 <= ell <= k-1
  Rational num = rat_pow(Rational(2), static_cast<unsigned>(ell + 1)) * q_at(k - ell);
  Rational den(1);
  for (int i = k - ell; i <= k; ++i) den *= 1 - q_at(i);
  return num / den * unit;
}

FormulaReport verify_formulas(const OmegaSequence& omega, int k_max,
                              const BuildOptions& opts) {
  FormulaReport report;
  report.k_max = k_max;
  CantorLevel prev;
  for (int k = 0; k <= k_max; ++k) {
    CantorLevel level = build_level(omega, k, opts);
    Rational unit = interval_length(omega, k);
    Rational total(0);
    for (std::uint64_t j = 1; j <= level.intervals.size(); ++j) {
      const auto& iv = level.intervals[j - 1];
      Rational actual = iv[1] - iv[0];
      ++report.checks;
      if (actual != unit)
        report.mismatches.push_back({k, j, "interval_length", unit, actual});
      total += actual;
    }
    for (std::uint64_t j = 1; j <= level.gaps.size(); ++j) {
      const auto& gap = level.gaps[j - 1];
      Rational actual = gap[1] - gap[0];
      Rational expected = gap_length(omega, k, j);
      ++report.checks;
      if (actual != expected)
        report.mismatches.push_back({k, j, "gap_length", expected, actual});
      total += actual;
      // Even-indexed gaps persist verbatim from the previous level.
      if (j % 2 == 0) {
        const auto& old = prev.gaps[j / 2 - 1];
        ++report.checks;
        if (gap[0] != old[0] || gap[1] != old[1])
          report.mismatches.push_back(
              {k, j, "gap_persistence", old[1] - old[0], actual});
      }
    }
    ++report.checks;
    if (total != 1)
      report.mismatches.push_back({k, 0, "total_length", Rational(1), total});
    prev = std::move(level);
  }
  return report;
}

ConvergenceReport endpoint_convergence_check(
    const std::vector<OmegaSequence>& omega_seq,
    const OmegaSequence& omega_limit, int k, const BuildOptions& opts) {
  ConvergenceReport report;
  report.depth = k;
  CantorLevel target = build_level(omega_limit, k, opts);
  for (const auto& omega : omega_seq) {
    CantorLevel level = build_level(omega, k, opts);
    Rational worst(0);
    for (std::size_t i = 0; i < level.intervals.size(); ++i) {
      worst = std::max(worst, Rational(mp::abs(level.intervals[i][0] - target.intervals[i][0])));
      worst = std::max(worst, Rational(mp::abs(level.intervals[i][1] - target.intervals[i][1])));
    }
    report.deviations.push_back(worst);
  }
  report.nonincreasing = true;
  for (std::size_t i = 1; i < report.deviations.size(); ++i)
    if (report.deviations[i] > report.deviations[i - 1]) report.nonincreasing = false;
  report.all_zero = true;
  for (const auto& d : report.deviations)
    if (d != 0) report.all_zero = false;
  return report;
}

nlohmann::ordered_json level_to_json(const CantorLevel& level) {
  nlohmann::ordered_json j;
  j["depth"] = level.depth;
  j["inexact"] = level.inexact;
  auto arr = [](const std::vector<std::array<Rational, 2>>& list) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& ab : list)
      out.push_back({rat_str(ab[0]), rat_str(ab[1])});
    return out;
  };
  j["intervals"] = arr(level.intervals);
  j["gaps"] = arr(level.gaps);
  return j;
}

std::string level_to_csv(const CantorLevel& level) {
  std::ostringstream os;
  os << "k,j,kind,left,right,length\n";
  for (std::size_t j = 0; j < level.intervals.size(); ++j) {
    const auto& iv = level.intervals[j];
    os << level.depth << ',' << j + 1 << ",interval," << rat_str(iv[0]) << ','
       << rat_str(iv[1]) << ',' << rat_str(iv[1] - iv[0]) << '\n';
  }
  for (std::size_t j = 0; j < level.gaps.size(); ++j) {
    const auto& gap = level.gaps[j];
    os << level.depth << ',' << j + 1 << ",gap," << rat_str(gap[0]) << ','
       << rat_str(gap[1]) << ',' << rat_str(gap[1] - gap[0]) << '\n';
  }
  return os.str();
}

nlohmann::ordered_json report_to_json(const FormulaReport& report) {
  nlohmann::ordered_json j;
  j["k_max"] = report.k_max;
  j["checks"] = report.checks;
  j["mismatch_count"] = report.mismatches.size();
  j["mismatches"] = nlohmann::ordered_json::array();
  for (const auto& m : report.mismatches)
    j["mismatches"].push_back({{"k", m.k},
                               {"j", m.j},
                               {"what", m.what},
                               {"expected", rat_str(m.expected)},
                               {"actual", rat_str(m.actual)}});
  return j;
}

}  // namespace cantorqc
