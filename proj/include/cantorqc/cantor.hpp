#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "cantorqc/omega.hpp"
#include "cantorqc/rational.hpp"

namespace cantorqc {

/// Depth-k interval/gap decomposition of [0,1] with exact endpoints.
/// intervals[j-1] = I_k^j (closed), gaps[j-1] = J_k^j (open), both indexed
/// left to right from 1 as in the construction.
struct CantorLevel {
  int depth = 0;
  bool inexact = false;  // some q_n were rationalized before construction
  std::vector<std::array<Rational, 2>> intervals;  // 2^k entries
  std::vector<std::array<Rational, 2>> gaps;       // 2^k - 1 entries
};

struct BuildOptions {
  std::uint64_t interval_budget = std::uint64_t{1} << 20;
  unsigned rationalize_bits = 128;  // dyadic precision for irrational q_n
};

/// Recursive middle-removal construction of E_k(omega). Throws DepthOverflow
/// when 2^k exceeds the interval budget.
CantorLevel build_level(const OmegaSequence& omega, int k,
                        const BuildOptions& opts = {});

/// Common length 2^{-k} * prod_{i<=k} (1 - q_i) of every depth-k interval.
/// Exact at any depth; needs no construction.
Rational interval_length(const OmegaSequence& omega, int k);

/// Closed-form |J_k^j|. Odd j is the gap removed at step k; even
/// j = 2^l * m persists from step k - l.
Rational gap_length(const OmegaSequence& omega, int k, std::uint64_t j);

/// Exact cross-check of the closed-form lengths against the recursive
/// construction, depth by depth, plus conservation and gap persistence.
struct FormulaReport {
  struct Mismatch {
    int k = 0;
    std::uint64_t j = 0;
    std::string what;
    Rational expected;
    Rational actual;
  };
  int k_max = 0;
  std::uint64_t checks = 0;
  std::vector<Mismatch> mismatches;
};
FormulaReport verify_formulas(const OmegaSequence& omega, int k_max,
                              const BuildOptions& opts = {});

/// Max endpoint deviation of build_level(omega_m, k) from
/// build_level(omega_limit, k) for each m; depth-k geometry depends only on
/// the first k coordinates, so coordinatewise convergence drives it to 0.
struct ConvergenceReport {
  int depth = 0;
  std::vector<Rational> deviations;
  bool nonincreasing = false;
  bool all_zero = false;
};
ConvergenceReport endpoint_convergence_check(
    const std::vector<OmegaSequence>& omega_seq,
    const OmegaSequence& omega_limit, int k, const BuildOptions& opts = {});

nlohmann::ordered_json level_to_json(const CantorLevel& level);
std::string level_to_csv(const CantorLevel& level);
nlohmann::ordered_json report_to_json(const FormulaReport& report);

}  // namespace cantorqc
