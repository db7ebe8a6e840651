#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "cantorqc/rational.hpp"
#include "cantorqc/real.hpp"

namespace cantorqc {

// Tail models govern q_n beyond the exact prefix. Evaluation indices are
// global: shifting by s re-indexes PowerExp through its offset and folds
// r^s into the GeometricExp coefficient, so shifted/prepended sequences
// evaluate pointwise-identically to the original.
struct ConstantTail {
  Rational q;  // q_n = q
};

struct PowerExpTail {
  Rational c;      // positive
  Rational alpha;  // positive
  std::int64_t offset = 0;  // q_n = 1 - exp(-c * (n + offset)^alpha)
};

struct GeometricExpTail {
  Rational c;  // positive
  Rational r;  // > 1;  q_n = 1 - exp(-c * r^n)
};

struct ExplicitTail {
  std::vector<Rational> values;  // q_{p+i} = values[i-1]; undefined beyond
};

using TailModel =
    std::variant<ConstantTail, PowerExpTail, GeometricExpTail, ExplicitTail>;

/// An element of (0,1)^N: finite exact prefix plus a symbolic tail.
/// Immutable after construction; all operations are pure.
class OmegaSequence {
 public:
  OmegaSequence(std::vector<Rational> prefix, TailModel tail);

  static OmegaSequence constant(const Rational& q);
  static OmegaSequence power_exp(const Rational& c, const Rational& alpha);
  static OmegaSequence geometric_exp(const Rational& c, const Rational& r);
  static OmegaSequence explicit_values(std::vector<Rational> values);

  const std::vector<Rational>& prefix() const { return prefix_; }
  const TailModel& tail() const { return tail_; }
  std::uint64_t prefix_size() const { return prefix_.size(); }

  /// Largest evaluable index (Explicit tails only); nullopt = unbounded.
  std::optional<std::uint64_t> horizon() const;

  /// q_n at working precision. Throws IndexBeyondHorizon past an Explicit
  /// horizon. Note: for extreme tail arguments the value rounds to 1 at
  /// working precision; use neg_log_one_minus for asymptotic work.
  Real eval(std::uint64_t n) const;

  /// q_n when exactly representable as a rational, else nullopt.
  std::optional<Rational> eval_exact(std::uint64_t n) const;

  /// -log(1 - q_n), closed form per tail model. Never saturates.
  Real neg_log_one_minus(std::uint64_t n) const;

  /// Exact rational -log(1 - q_n) where the closed form is rational
  /// (PowerExp with rational index power, GeometricExp); else nullopt.
  std::optional<Rational> neg_log_one_minus_exact(std::uint64_t n) const;

  /// Drops the first count coordinates; tail models re-indexed so that
  /// eval(shifted(s), k) == eval(k + s).
  OmegaSequence shifted(std::uint64_t count) const;

  /// Prepends values; shifted(values.size()) recovers the original
  /// pointwise. Throws ValueOutOfRange unless every value is in (0,1).
  OmegaSequence prepended(const std::vector<Rational>& values) const;

  struct IncreasingCheck {
    bool increasing = false;       // scan passed and tail class certified
    bool tail_certified = false;   // tail model proven monotone
    std::optional<std::uint64_t> first_violation;  // q_n > q_{n+1} witness
  };
  /// q_n <= q_{n+1} for n < horizon, combined with the tail-class
  /// certificate (Constant, PowerExp, GeometricExp are proven monotone).
  IncreasingCheck is_increasing(std::uint64_t horizon) const;

  bool tail_monotone_class() const;

  /// inf_n q_n when decidable: min(prefix, first tail value) for monotone
  /// tail classes. nullopt for Explicit tails.
  std::optional<Real> lower_bound_delta() const;

  enum class SupremumQ { BoundedBelowOne, One, Unknown };
  SupremumQ supremum() const;

  nlohmann::ordered_json to_json() const;
  static OmegaSequence from_json(const nlohmann::json& j);

  /// Compact grammar: "const:1/3", "power_exp:1:2", "geom_exp:1:2",
  /// "explicit:1/4,1/3,1/2". Throws ParseError.
  static OmegaSequence parse_literal(const std::string& text);

 private:
  std::vector<Rational> prefix_;
  TailModel tail_;
};

bool operator==(const ConstantTail& a, const ConstantTail& b);
bool operator==(const PowerExpTail& a, const PowerExpTail& b);
bool operator==(const GeometricExpTail& a, const GeometricExpTail& b);
bool operator==(const ExplicitTail& a, const ExplicitTail& b);

}  // namespace cantorqc
