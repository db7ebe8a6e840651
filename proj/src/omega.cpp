#include "cantorqc/omega.hpp"

#include <boost/math/special_functions/expm1.hpp>

#include <algorithm>
#include <sstream>

namespace cantorqc {

namespace mp = boost::multiprecision;

namespace {

void check_unit(const Rational& q, const char* what) {
  if (!in_open_unit(q))
    raise(ErrorKind::ValueOutOfRange,
          std::string(what) + " must lie in (0,1), got " + rat_str(q));
}

void check_positive(const Rational& v, const char* what) {
  if (v <= 0)
    raise(ErrorKind::ValueOutOfRange,
          std::string(what) + " must be positive, got " + rat_str(v));
}

// c * m^alpha as an exact rational when m^alpha is rational.
std::optional<Rational> rational_power(const Rational& c, std::uint64_t m,
                                       const Rational& alpha) {
  const BigInt& a = mp::numerator(alpha);
  const BigInt& b = mp::denominator(alpha);
  if (a > 1024 || b > 1024) return std::nullopt;  // keep exponents sane
  auto root = integer_kth_root(BigInt(m), b.convert_to<unsigned>());
  if (!root) return std::nullopt;
  BigInt p = mp::pow(*root, a.convert_to<unsigned>());
  return c * Rational(p);
}

// Tail index after applying a PowerExp offset; >= 1 by construction.
std::uint64_t offset_index(std::uint64_t n, std::int64_t offset) {
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(n) + offset);
}

}  // namespace

OmegaSequence::OmegaSequence(std::vector<Rational> prefix, TailModel tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
  for (const auto& q : prefix_) check_unit(q, "prefix entry");
  if (auto* c = std::get_if<ConstantTail>(&tail_)) {
    check_unit(c->q, "constant tail q");
  } else if (auto* p = std::get_if<PowerExpTail>(&tail_)) {
    check_positive(p->c, "power_exp c");
    check_positive(p->alpha, "power_exp alpha");
    if (static_cast<std::int64_t>(prefix_.size()) + p->offset < 0)
      raise(ErrorKind::ValueOutOfRange, "power_exp offset precedes index 1");
  } else if (auto* g = std::get_if<GeometricExpTail>(&tail_)) {
    check_positive(g->c, "geom_exp c");
    if (g->r <= 1)
      raise(ErrorKind::ValueOutOfRange,
            "geom_exp r must exceed 1, got " + rat_str(g->r));
  } else if (auto* e = std::get_if<ExplicitTail>(&tail_)) {
    for (const auto& v : e->values) check_unit(v, "explicit tail value");
  }
}

OmegaSequence OmegaSequence::constant(const Rational& q) {
  return OmegaSequence({}, ConstantTail{q});
}
OmegaSequence OmegaSequence::power_exp(const Rational& c, const Rational& alpha) {
  return OmegaSequence({}, PowerExpTail{c, alpha, 0});
}
OmegaSequence OmegaSequence::geometric_exp(const Rational& c, const Rational& r) {
  return OmegaSequence({}, GeometricExpTail{c, r});
}
OmegaSequence OmegaSequence::explicit_values(std::vector<Rational> values) {
  return OmegaSequence({}, ExplicitTail{std::move(values)});
}

std::optional<std::uint64_t> OmegaSequence::horizon() const {
  if (auto* e = std::get_if<ExplicitTail>(&tail_))
    return prefix_.size() + e->values.size();
  return std::nullopt;
}

std::optional<Rational> OmegaSequence::eval_exact(std::uint64_t n) const {
  if (n == 0) raise(ErrorKind::IndexOutOfRange, "indices start at 1");
  if (n <= prefix_.size()) return prefix_[n - 1];
  if (auto* c = std::get_if<ConstantTail>(&tail_)) return c->q;
  if (auto* e = std::get_if<ExplicitTail>(&tail_)) {
    std::uint64_t i = n - prefix_.size();
    if (i > e->values.size())
      raise(ErrorKind::IndexBeyondHorizon,
            "index " + std::to_string(n) + " beyond explicit horizon " +
                std::to_string(prefix_.size() + e->values.size()));
    return e->values[i - 1];
  }
  return std::nullopt;  // transcendental tail value
}

Real OmegaSequence::eval(std::uint64_t n) const {
  if (auto q = eval_exact(n)) return to_real(*q);
  // 1 - exp(-L) via expm1 so small L keeps full precision.
  return -boost::math::expm1(-neg_log_one_minus(n));
}

Real OmegaSequence::neg_log_one_minus(std::uint64_t n) const {
  if (auto exact = neg_log_one_minus_exact(n)) return to_real(*exact);
  if (n == 0) raise(ErrorKind::IndexOutOfRange, "indices start at 1");
  if (n <= prefix_.size()) return -log(to_real(Rational(1) - prefix_[n - 1]));
  if (auto* c = std::get_if<ConstantTail>(&tail_))
    return -log(to_real(Rational(1) - c->q));
  if (auto* p = std::get_if<PowerExpTail>(&tail_)) {
    std::uint64_t m = offset_index(n, p->offset);
    return to_real(p->c) * pow(Real(m), to_real(p->alpha));
  }
  if (auto* g = std::get_if<GeometricExpTail>(&tail_)) {
    // c * r^n without building the exact power when n is large.
    return exp(log(to_real(g->r)) * Real(n) + log(to_real(g->c)));
  }
  auto* e = std::get_if<ExplicitTail>(&tail_);
  std::uint64_t i = n - prefix_.size();
  if (i > e->values.size())
    raise(ErrorKind::IndexBeyondHorizon,
          "index " + std::to_string(n) + " beyond explicit horizon");
  return -log(to_real(Rational(1) - e->values[i - 1]));
}

std::optional<Rational> OmegaSequence::neg_log_one_minus_exact(std::uint64_t n) const {
  if (n == 0) raise(ErrorKind::IndexOutOfRange, "indices start at 1");
  if (n <= prefix_.size()) return std::nullopt;
  if (auto* p = std::get_if<PowerExpTail>(&tail_))
    return rational_power(p->c, offset_index(n, p->offset), p->alpha);
  if (auto* g = std::get_if<GeometricExpTail>(&tail_)) {
    if (n > 65536) return std::nullopt;  // r^n would be unreasonably large
    return g->c * rat_pow(g->r, static_cast<unsigned>(n));
  }
  return std::nullopt;
}

OmegaSequence OmegaSequence::shifted(std::uint64_t count) const {
  std::vector<Rational> prefix;
  std::uint64_t from_prefix = std::min<std::uint64_t>(count, prefix_.size());
  prefix.assign(prefix_.begin() + static_cast<std::ptrdiff_t>(from_prefix),
                prefix_.end());

  TailModel tail = tail_;
  if (auto* p = std::get_if<PowerExpTail>(&tail)) {
    p->offset += static_cast<std::int64_t>(count);
  } else if (auto* g = std::get_if<GeometricExpTail>(&tail)) {
    if (count > 65536)
      raise(ErrorKind::ValueOutOfRange, "shift count too large for geom_exp");
    g->c = g->c * rat_pow(g->r, static_cast<unsigned>(count));
  } else if (auto* e = std::get_if<ExplicitTail>(&tail)) {
    std::uint64_t drop = count - from_prefix;
    if (drop > e->values.size())
      raise(ErrorKind::IndexBeyondHorizon,
            "shift consumes the whole explicit tail");
    e->values.erase(e->values.begin(),
                    e->values.begin() + static_cast<std::ptrdiff_t>(drop));
  }
  return OmegaSequence(std::move(prefix), std::move(tail));
}

OmegaSequence OmegaSequence::prepended(const std::vector<Rational>& values) const {
  for (const auto& v : values) check_unit(v, "prepended value");
  std::vector<Rational> prefix = values;
  prefix.insert(prefix.end(), prefix_.begin(), prefix_.end());

  TailModel tail = tail_;
  if (auto* p = std::get_if<PowerExpTail>(&tail)) {
    p->offset -= static_cast<std::int64_t>(values.size());
  } else if (auto* g = std::get_if<GeometricExpTail>(&tail)) {
    if (values.size() > 65536)
      raise(ErrorKind::ValueOutOfRange, "prepend count too large for geom_exp");
    g->c = g->c / rat_pow(g->r, static_cast<unsigned>(values.size()));
  }
  return OmegaSequence(std::move(prefix), std::move(tail));
}

bool OmegaSequence::tail_monotone_class() const {
  return !std::holds_alternative<ExplicitTail>(tail_);
}

OmegaSequence::IncreasingCheck OmegaSequence::is_increasing(std::uint64_t horizon) const {
  if (horizon < 2)
    raise(ErrorKind::HorizonError, "is_increasing needs horizon >= 2");
  if (auto h = this->horizon(); h && horizon > *h)
    raise(ErrorKind::IndexBeyondHorizon,
          "horizon " + std::to_string(horizon) + " beyond explicit tail");

  IncreasingCheck out;
  out.tail_certified = tail_monotone_class();

  // Certified tails are monotone beyond the prefix, so scanning one step
  // past the prefix boundary settles the comparison; Explicit tails are
  // scanned through the requested horizon.
  std::uint64_t scan_to = horizon;
  if (out.tail_certified)
    scan_to = std::min<std::uint64_t>(horizon, prefix_.size() + 1);
  for (std::uint64_t n = 1; n < scan_to; ++n) {
    bool ok;
    auto a = eval_exact(n);
    auto b = eval_exact(n + 1);
    if (a && b)
      ok = *a <= *b;
    else
      ok = neg_log_one_minus(n) <= neg_log_one_minus(n + 1);
    if (!ok) {
      out.first_violation = n;
      out.increasing = false;
      return out;
    }
  }
  out.increasing = out.tail_certified;
  return out;
}

std::optional<Real> OmegaSequence::lower_bound_delta() const {
  if (!tail_monotone_class()) return std::nullopt;
  Real best = eval(prefix_.size() + 1);  // first tail value bounds the tail below
  for (const auto& q : prefix_) best = std::min(best, to_real(q));
  return best;
}

OmegaSequence::SupremumQ OmegaSequence::supremum() const {
  if (std::holds_alternative<ConstantTail>(tail_)) return SupremumQ::BoundedBelowOne;
  if (std::holds_alternative<ExplicitTail>(tail_)) return SupremumQ::Unknown;
  return SupremumQ::One;  // PowerExp and GeometricExp tend to 1
}

nlohmann::ordered_json OmegaSequence::to_json() const {
  nlohmann::ordered_json j;
  j["prefix"] = nlohmann::ordered_json::array();
  for (const auto& q : prefix_) j["prefix"].push_back(rat_str(q));
  nlohmann::ordered_json t;
  if (auto* c = std::get_if<ConstantTail>(&tail_)) {
    t["kind"] = "constant";
    t["q"] = rat_str(c->q);
  } else if (auto* p = std::get_if<PowerExpTail>(&tail_)) {
    t["kind"] = "power_exp";
    t["c"] = rat_str(p->c);
    t["alpha"] = rat_str(p->alpha);
    if (p->offset != 0) t["offset"] = p->offset;
  } else if (auto* g = std::get_if<GeometricExpTail>(&tail_)) {
    t["kind"] = "geom_exp";
    t["c"] = rat_str(g->c);
    t["r"] = rat_str(g->r);
  } else if (auto* e = std::get_if<ExplicitTail>(&tail_)) {
    t["kind"] = "explicit";
    t["values"] = nlohmann::ordered_json::array();
    for (const auto& v : e->values) t["values"].push_back(rat_str(v));
  }
  j["tail"] = std::move(t);
  return j;
}

OmegaSequence OmegaSequence::from_json(const nlohmann::json& j) {
  try {
    std::vector<Rational> prefix;
    if (j.contains("prefix"))
      for (const auto& s : j.at("prefix"))
        prefix.push_back(parse_rational(s.get<std::string>()));
    const auto& t = j.at("tail");
    std::string kind = t.at("kind").get<std::string>();
    TailModel tail;
    if (kind == "constant") {
      tail = ConstantTail{parse_rational(t.at("q").get<std::string>())};
    } else if (kind == "power_exp") {
      PowerExpTail p{parse_rational(t.at("c").get<std::string>()),
                     parse_rational(t.at("alpha").get<std::string>()), 0};
      if (t.contains("offset")) p.offset = t.at("offset").get<std::int64_t>();
      tail = p;
    } else if (kind == "geom_exp") {
      tail = GeometricExpTail{parse_rational(t.at("c").get<std::string>()),
                              parse_rational(t.at("r").get<std::string>())};
    } else if (kind == "explicit") {
      ExplicitTail e;
      for (const auto& s : t.at("values"))
        e.values.push_back(parse_rational(s.get<std::string>()));
      tail = e;
    } else {
      raise(ErrorKind::ParseError, "unknown tail kind '" + kind + "'");
    }
    return OmegaSequence(std::move(prefix), std::move(tail));
  } catch (const nlohmann::json::exception& ex) {
    raise(ErrorKind::ParseError, std::string("bad omega JSON: ") + ex.what());
  }
}

OmegaSequence OmegaSequence::parse_literal(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  const std::string& kind = parts[0];
  auto expect = [&](std::size_t n) {
    if (parts.size() != n)
      raise(ErrorKind::ParseError, "bad sequence literal '" + text + "'");
  };
  if (kind == "const") {
    expect(2);
    return constant(parse_rational(parts[1]));
  }
  if (kind == "power_exp") {
    expect(3);
    return power_exp(parse_rational(parts[1]), parse_rational(parts[2]));
  }
  if (kind == "geom_exp") {
    expect(3);
    return geometric_exp(parse_rational(parts[1]), parse_rational(parts[2]));
  }
  if (kind == "explicit") {
    expect(2);
    std::vector<Rational> values;
    std::stringstream ss(parts[1]);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(parse_rational(item));
    if (values.empty())
      raise(ErrorKind::ParseError, "explicit literal needs values");
    return explicit_values(std::move(values));
  }
  raise(ErrorKind::ParseError,
        "unknown sequence literal kind '" + kind + "' (want const, power_exp, geom_exp, explicit)");
}

bool operator==(const ConstantTail& a, const ConstantTail& b) { return a.q == b.q; }
bool operator==(const PowerExpTail& a, const PowerExpTail& b) {
  return a.c == b.c && a.alpha == b.alpha && a.offset == b.offset;
}
bool operator==(const GeometricExpTail& a, const GeometricExpTail& b) {
  return a.c == b.c && a.r == b.r;
}
bool operator==(const ExplicitTail& a, const ExplicitTail& b) {
  return a.values == b.values;
}

}  // namespace cantorqc
