#include "cantorqc/classify.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cantorqc {

const char* to_string(Outcome v) {
  switch (v) {
    case Outcome::Equivalent:    return "Equivalent";
    case Outcome::NotEquivalent: return "NotEquivalent";
    case Outcome::Indeterminate: return "Indeterminate";
  }
  return "?";
}
const char* to_string(Basis v) {
  switch (v) {
    case Basis::SufficientHolds: return "SufficientHolds";
    case Basis::NecessaryFails:  return "NecessaryFails";
    case Basis::NeitherDecides:  return "NeitherDecides";
  }
  return "?";
}
const char* to_string(Asymptotic v) {
  switch (v) {
    case Asymptotic::Bounded:      return "Bounded";
    case Asymptotic::DivergesLog:  return "DivergesLog";
    case Asymptotic::DivergesPoly: return "DivergesPoly";
    case Asymptotic::DivergesExp:  return "DivergesExp";
    case Asymptotic::Unknown:      return "Unknown";
  }
  return "?";
}
const char* to_string(StatKind v) {
  return v == StatKind::Sufficient ? "sufficient" : "necessary";
}

namespace {

enum class TailClass { Constant, Power, Geometric, Unknown };

// Shift-invariant summary of a tail model: PowerExp drops its offset,
// GeometricExp normalizes c into [1, r) by exact division (shifting by s
// multiplies c by r^s, so this is the orbit representative).
struct CanonicalTail {
  TailClass cls = TailClass::Unknown;
  Rational p1, p2;  // Constant: q | Power: c, alpha | Geometric: c*, r
};

CanonicalTail canonical_tail(const OmegaSequence& omega) {
  CanonicalTail out;
  if (auto* c = std::get_if<ConstantTail>(&omega.tail())) {
    out.cls = TailClass::Constant;
    out.p1 = c->q;
  } else if (auto* p = std::get_if<PowerExpTail>(&omega.tail())) {
    out.cls = TailClass::Power;
    out.p1 = p->c;
    out.p2 = p->alpha;
  } else if (auto* g = std::get_if<GeometricExpTail>(&omega.tail())) {
    out.cls = TailClass::Geometric;
    Rational c = g->c;
    while (c >= g->r) c /= g->r;
    while (c < 1) c *= g->r;
    out.p1 = c;
    out.p2 = g->r;
  }
  return out;
}

Asymptotic sufficient_class(const CanonicalTail& a, const CanonicalTail& b) {
  if (a.cls == TailClass::Unknown || b.cls == TailClass::Unknown)
    return Asymptotic::Unknown;
  if (a.cls == b.cls) {
    switch (a.cls) {
      case TailClass::Constant:
        return Asymptotic::Bounded;  // |L - L'| is a constant
      case TailClass::Power:
        return (a.p1 == b.p1 && a.p2 == b.p2) ? Asymptotic::Bounded
                                              : Asymptotic::DivergesPoly;
      case TailClass::Geometric:
        return (a.p1 == b.p1 && a.p2 == b.p2) ? Asymptotic::Bounded
                                              : Asymptotic::DivergesExp;
      default:
        return Asymptotic::Unknown;
    }
  }
  // Mixed classes: the dominant term of |L - L'| wins.
  if (a.cls == TailClass::Geometric || b.cls == TailClass::Geometric)
    return Asymptotic::DivergesExp;
  return Asymptotic::DivergesPoly;  // Constant vs Power
}

Asymptotic necessary_class(const CanonicalTail& a, const CanonicalTail& b) {
  if (a.cls == TailClass::Unknown || b.cls == TailClass::Unknown)
    return Asymptotic::Unknown;
  if (a.cls == b.cls) {
    switch (a.cls) {
      case TailClass::Constant:
        return Asymptotic::Bounded;
      case TailClass::Power:
        // log ratio = log(c/c') + (alpha - alpha') log n
        return a.p2 == b.p2 ? Asymptotic::Bounded : Asymptotic::DivergesLog;
      case TailClass::Geometric:
        // log ratio = log(c/c') + n log(r/r')
        return a.p2 == b.p2 ? Asymptotic::Bounded : Asymptotic::DivergesPoly;
      default:
        return Asymptotic::Unknown;
    }
  }
  if (a.cls == TailClass::Geometric || b.cls == TailClass::Geometric)
    return Asymptotic::DivergesPoly;  // linear in n dominates
  return Asymptotic::DivergesLog;     // Constant vs Power
}

std::uint64_t clamp_horizon(const OmegaSequence& a, const OmegaSequence& b,
                            std::uint64_t horizon, bool throw_on_clamp) {
  std::uint64_t h = horizon;
  for (const auto* s : {&a, &b})
    if (auto lim = s->horizon()) {
      if (throw_on_clamp && horizon > *lim)
        raise(ErrorKind::HorizonError,
              "horizon " + std::to_string(horizon) +
                  " beyond explicit tail horizon " + std::to_string(*lim));
      h = std::min(h, *lim);
    }
  return h;
}

SupStatistic scan_stat(const OmegaSequence& a, const OmegaSequence& b,
                       std::uint64_t horizon, StatKind kind) {
  if (horizon < 1) raise(ErrorKind::HorizonError, "horizon must be >= 1");
  SupStatistic stat;
  stat.kind = kind;
  stat.horizon = horizon;
  stat.finite_max = 0;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    Real la = a.neg_log_one_minus(n);
    Real lb = b.neg_log_one_minus(n);
    Real value = kind == StatKind::Sufficient ? abs(la - lb)
                                              : abs(log(la) - log(lb));
    if (value > stat.finite_max) stat.finite_max = value;
  }
  CanonicalTail ca = canonical_tail(a), cb = canonical_tail(b);
  stat.asymptotic = kind == StatKind::Sufficient ? sufficient_class(ca, cb)
                                                 : necessary_class(ca, cb);
  return stat;
}

}  // namespace

SupStatistic sufficient_stat(const OmegaSequence& a, const OmegaSequence& b,
                             std::uint64_t horizon) {
  clamp_horizon(a, b, horizon, true);
  return scan_stat(a, b, horizon, StatKind::Sufficient);
}

SupStatistic necessary_stat(const OmegaSequence& a, const OmegaSequence& b,
                            std::uint64_t horizon) {
  clamp_horizon(a, b, horizon, true);
  return scan_stat(a, b, horizon, StatKind::Necessary);
}

namespace {

SequenceFlags sequence_flags(const OmegaSequence& s, std::uint64_t horizon) {
  SequenceFlags f;
  f.tail_increasing = s.tail_monotone_class();
  f.lower_bounded = s.lower_bound_delta().has_value();
  f.sup = s.supremum();
  std::uint64_t h = std::max<std::uint64_t>(horizon, 2);
  if (auto lim = s.horizon()) {
    if (*lim < 2) return f;  // too short to scan; flags stay pessimistic
    h = std::min(h, *lim);
  }
  f.increasing = s.is_increasing(h).increasing;
  return f;
}

}  // namespace

Verdict classify(const OmegaSequence& a, const OmegaSequence& b,
                 std::uint64_t horizon, const DeltaPolicy& policy) {
  std::uint64_t h = clamp_horizon(a, b, std::max<std::uint64_t>(horizon, 1), false);

  Verdict v;
  v.sufficient = scan_stat(a, b, h, StatKind::Sufficient);
  v.necessary = scan_stat(a, b, h, StatKind::Necessary);
  v.a_flags = sequence_flags(a, h);
  v.b_flags = sequence_flags(b, h);

  if (policy.override_delta) {
    v.delta_used = to_real(*policy.override_delta);
  } else if (auto da = a.lower_bound_delta()) {
    if (auto db = b.lower_bound_delta()) v.delta_used = std::min(*da, *db);
  }

  bool necessary_diverges = v.necessary.asymptotic == Asymptotic::DivergesLog ||
                            v.necessary.asymptotic == Asymptotic::DivergesPoly ||
                            v.necessary.asymptotic == Asymptotic::DivergesExp;
  bool both_tail_increasing = v.a_flags.tail_increasing && v.b_flags.tail_increasing;
  using Sup = OmegaSequence::SupremumQ;
  bool sup_mismatch = (v.a_flags.sup == Sup::One && v.b_flags.sup == Sup::BoundedBelowOne) ||
                      (v.a_flags.sup == Sup::BoundedBelowOne && v.b_flags.sup == Sup::One);

  if (v.sufficient.asymptotic == Asymptotic::Bounded &&
      v.a_flags.lower_bounded && v.b_flags.lower_bounded) {
    v.outcome = Outcome::Equivalent;
    v.basis = Basis::SufficientHolds;
    v.witness = v.sufficient.finite_max;
  } else if (both_tail_increasing && necessary_diverges) {
    v.outcome = Outcome::NotEquivalent;
    v.basis = Basis::NecessaryFails;
    v.witness = v.necessary.finite_max;
  } else if (both_tail_increasing && sup_mismatch) {
    // One sequence stays below some bar < 1, the other is unbounded:
    // only one of the two can match the middle-thirds set.
    v.outcome = Outcome::NotEquivalent;
    v.basis = Basis::NecessaryFails;
    v.witness = v.necessary.finite_max;
  } else {
    v.outcome = Outcome::Indeterminate;
    v.basis = Basis::NeitherDecides;
    v.witness = std::max(v.sufficient.finite_max, v.necessary.finite_max);
  }

  // The two theorems cannot disagree; a conflict is a library bug.
  if (v.outcome == Outcome::NotEquivalent &&
      v.sufficient.asymptotic == Asymptotic::Bounded)
    throw std::logic_error("classifier conflict: sufficient bounded but necessary fails");
  return v;
}

OmegaSequence family_omega(const Rational& alpha) {
  if (alpha <= 1)
    raise(ErrorKind::AlphaOutOfRange,
          "family parameter alpha must exceed 1, got " + rat_str(alpha));
  return OmegaSequence::power_exp(Rational(1), alpha);
}

namespace {

std::vector<std::vector<Verdict>> matrix_impl(const std::vector<Rational>& alphas,
                                              std::uint64_t horizon, bool parallel) {
  std::set<Rational> uniq(alphas.begin(), alphas.end());
  if (uniq.size() != alphas.size())
    raise(ErrorKind::ValidationError, "family parameters must be distinct");
  std::vector<OmegaSequence> members;
  members.reserve(alphas.size());
  for (const auto& alpha : alphas) members.push_back(family_omega(alpha));

  std::size_t m = members.size();
  std::vector<std::vector<Verdict>> matrix(m, std::vector<Verdict>(m));
  if (parallel) {
#pragma omp parallel for collapse(2) schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i)
      for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(m); ++j)
        matrix[i][j] = classify(members[i], members[j], horizon);
  } else {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        matrix[i][j] = classify(members[i], members[j], horizon);
  }
  return matrix;
}

}  // namespace

std::vector<std::vector<Verdict>> pairwise_matrix(
    const std::vector<Rational>& alphas, std::uint64_t horizon) {
  return matrix_impl(alphas, horizon, true);
}

std::vector<std::vector<Verdict>> pairwise_matrix_serial(
    const std::vector<Rational>& alphas, std::uint64_t horizon) {
  return matrix_impl(alphas, horizon, false);
}

namespace {

nlohmann::ordered_json stat_to_json(const SupStatistic& s) {
  return {{"kind", to_string(s.kind)},
          {"finite_max", real_str(s.finite_max)},
          {"asymptotic", to_string(s.asymptotic)},
          {"horizon", s.horizon}};
}

nlohmann::ordered_json flags_to_json(const SequenceFlags& f) {
  const char* sup = f.sup == OmegaSequence::SupremumQ::One ? "1"
                    : f.sup == OmegaSequence::SupremumQ::BoundedBelowOne
                        ? "below_1"
                        : "unknown";
  return {{"increasing", f.increasing},
          {"tail_increasing", f.tail_increasing},
          {"lower_bounded", f.lower_bounded},
          {"sup", sup}};
}

}  // namespace

nlohmann::ordered_json verdict_to_json(const Verdict& v) {
  nlohmann::ordered_json j;
  j["outcome"] = to_string(v.outcome);
  j["basis"] = to_string(v.basis);
  j["witness"] = real_str(v.witness);
  j["sufficient"] = stat_to_json(v.sufficient);
  j["necessary"] = stat_to_json(v.necessary);
  j["preconditions"] = {{"a", flags_to_json(v.a_flags)},
                        {"b", flags_to_json(v.b_flags)}};
  if (v.delta_used) j["delta_used"] = real_str(*v.delta_used);
  return j;
}

std::string matrix_to_csv(const std::vector<Rational>& alphas,
                          const std::vector<std::vector<Verdict>>& matrix) {
  std::ostringstream os;
  os << "alpha_row,alpha_col,outcome,basis,necessary_asymptotic,necessary_finite_max\n";
  for (std::size_t i = 0; i < matrix.size(); ++i)
    for (std::size_t j = 0; j < matrix[i].size(); ++j) {
      const Verdict& v = matrix[i][j];
      os << rat_str(alphas[i]) << ',' << rat_str(alphas[j]) << ','
         << to_string(v.outcome) << ',' << to_string(v.basis) << ','
         << to_string(v.necessary.asymptotic) << ','
         << real_str(v.necessary.finite_max) << '\n';
    }
  return os.str();
}

}  // namespace cantorqc
