#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cantorqc/omega.hpp"
#include "cantorqc/real.hpp"

namespace cantorqc {

enum class Outcome { Equivalent, NotEquivalent, Indeterminate };
enum class Basis { SufficientHolds, NecessaryFails, NeitherDecides };
enum class Asymptotic { Bounded, DivergesLog, DivergesPoly, DivergesExp, Unknown };
enum class StatKind { Sufficient, Necessary };

const char* to_string(Outcome v);
const char* to_string(Basis v);
const char* to_string(Asymptotic v);
const char* to_string(StatKind v);

/// One sup statistic: the finite maximum over n <= horizon plus the
/// symbolically decided asymptotic class of the tail-model pair. Classes
/// are invariant under finite index shifts of either sequence (PowerExp
/// offsets are ignored, GeometricExp coefficients compared modulo integer
/// powers of r), mirroring how shifts preserve equivalence.
struct SupStatistic {
  StatKind kind = StatKind::Sufficient;
  Real finite_max;
  Asymptotic asymptotic = Asymptotic::Unknown;
  std::uint64_t horizon = 0;
};

/// sup_n |log((1-q_n)/(1-q'_n))|: finite scan plus tail-pair class.
SupStatistic sufficient_stat(const OmegaSequence& a, const OmegaSequence& b,
                             std::uint64_t horizon);

/// sup_n |log(log(1-q_n)/log(1-q'_n))|: finite scan plus tail-pair class.
SupStatistic necessary_stat(const OmegaSequence& a, const OmegaSequence& b,
                            std::uint64_t horizon);

struct SequenceFlags {
  bool increasing = false;       // full scan + tail certificate
  bool tail_increasing = false;  // tail model class proven monotone
  bool lower_bounded = false;
  OmegaSequence::SupremumQ sup = OmegaSequence::SupremumQ::Unknown;
};

struct DeltaPolicy {
  std::optional<Rational> override_delta;  // else min over both sequences
};

/// Three-valued classification. Decisions are made from the asymptotic
/// classes and tail-level preconditions only, so the outcome is invariant
/// under prepending or shifting either argument.
struct Verdict {
  Outcome outcome = Outcome::Indeterminate;
  Basis basis = Basis::NeitherDecides;
  Real witness;  // finite max of the deciding statistic
  SequenceFlags a_flags, b_flags;
  SupStatistic sufficient, necessary;
  std::optional<Real> delta_used;
};

Verdict classify(const OmegaSequence& a, const OmegaSequence& b,
                 std::uint64_t horizon, const DeltaPolicy& policy = {});

/// The uncountable family q_n = 1 - exp(-n^alpha); requires alpha > 1.
OmegaSequence family_omega(const Rational& alpha);

/// Verdicts for every ordered pair of family members. Requires distinct
/// alphas. Off-diagonal pairs separate; the matrix is symmetric in outcome.
std::vector<std::vector<Verdict>> pairwise_matrix(
    const std::vector<Rational>& alphas, std::uint64_t horizon);
std::vector<std::vector<Verdict>> pairwise_matrix_serial(
    const std::vector<Rational>& alphas, std::uint64_t horizon);

nlohmann::ordered_json verdict_to_json(const Verdict& v);
std::string matrix_to_csv(const std::vector<Rational>& alphas,
                          const std::vector<std::vector<Verdict>>& matrix);

}  // namespace cantorqc
