#include "cantorqc/bounds.hpp"

#include <boost/math/special_functions/log1p.hpp>

#include <bit>
#include <sstream>

namespace cantorqc {

namespace {

const Real kPi = real_pi();
const Real kLog2 = log(Real(2));

void check_delta(const Real& delta) {
  if (!(delta > 0 && delta < 1))
    raise(ErrorKind::ValueOutOfRange, "delta must lie in (0,1)");
}

// Comparisons against delta tolerate last-ulp noise: q and delta often
// arrive through different evaluation routes of the same quantity.
const Real kDeltaSlack = std::numeric_limits<Real>::epsilon() * 64;

void check_q_ge_delta(const Real& q, const Real& delta) {
  if (!(q > 0 && q < 1))
    raise(ErrorKind::ValueOutOfRange,
          "q must lie in (0,1); for q past representable range use the "
          "sequence-based interfaces");
  if (q < delta * (1 - kDeltaSlack))
    raise(ErrorKind::DeltaViolation,
          "q = " + real_str(q) + " below delta = " + real_str(delta));
}

// All interior formulas run on L = -log(1 - q) so that q arbitrarily close
// to 1 keeps full precision:
//   log((1+q)/(1-q))        = L + log(2 - e^{-L})
//   log(1 + 2c/(1-q))       = L + log(e^{-L} + 2c)
Real log_one_plus_q_over_one_minus_q(const Real& L) {
  return L + log(Real(2) - exp(-L));
}

Real log_one_plus_ratio(const Real& L, const Real& c) {
  return L + log(exp(-L) + 2 * c);
}

Real neg_log1m(const Real& q) { return -boost::math::log1p(-q); }

}  // namespace

Real kinjo_upper(const OmegaSequence& omega, const GeodesicIndex& g) {
  if (g.k < 1) raise(ErrorKind::IndexOutOfRange, "geodesic level must be >= 1");
  std::uint64_t top = std::uint64_t{1} << g.k;
  if (g.j < 1 || g.j > top)
    raise(ErrorKind::IndexOutOfRange,
          "geodesic index " + std::to_string(g.j) + " not in 1.." +
              std::to_string(top));

  Real L = omega.neg_log_one_minus(static_cast<std::uint64_t>(g.k));
  Real end_case = 2 * kPi * kPi / log_one_plus_q_over_one_minus_q(L);
  if (g.j == 1 || g.j == top) return end_case;

  // j = 2^l m or 2^l m + 1 with m odd, l >= 1.
  std::uint64_t even = (g.j % 2 == 0) ? g.j : g.j - 1;
  int ell = std::countr_zero(even);
  Real q_kl = omega.eval(static_cast<std::uint64_t>(g.k - ell));
  Real interior = 2 * kPi * kPi / log_one_plus_ratio(L, q_kl);
  return std::max(end_case, interior);
}

UniformUpper uniform_upper(const Real& delta, const Real& q) {
  check_delta(delta);
  check_q_ge_delta(q, delta);
  UniformUpper out;
  out.value = 2 * kPi * kPi / log_one_plus_ratio(neg_log1m(q), delta);
  out.cap = 2 * kPi * kPi / boost::math::log1p(2 * delta / (1 - delta));
  return out;
}

Real c_delta(const Real& delta) {
  check_delta(delta);
  return kPi * kPi / boost::math::log1p(2 * delta / (1 - delta));
}

Real length_lower(const Real& delta, const Real& q) {
  check_delta(delta);
  check_q_ge_delta(q, delta);
  return exp(-c_delta(delta)) * kPi / (6 * kLog2 + neg_log1m(q));
}

std::pair<Real, Real> compare_ratio(const Real& q, const Real& q_prime,
                                    const Real& delta) {
  check_delta(delta);
  check_q_ge_delta(q, delta);
  check_q_ge_delta(q_prime, delta);
  Real scale = 2 * kPi * exp(c_delta(delta));
  Real Lq = neg_log1m(q);
  Real Lqp = neg_log1m(q_prime);
  Real forward = scale * (6 * kLog2 + Lqp) / log_one_plus_ratio(Lq, delta);
  Real backward = scale * (6 * kLog2 + Lq) / log_one_plus_ratio(Lqp, delta);
  return {forward, backward};
}

std::pair<Real, Real> compare_ratio_seq(const OmegaSequence& omega,
                                        const OmegaSequence& omega_prime,
                                        std::uint64_t n, const Real& delta) {
  check_delta(delta);
  Real La = omega.neg_log_one_minus(n);
  Real Lb = omega_prime.neg_log_one_minus(n);
  Real Ld = neg_log1m(delta) * (1 - kDeltaSlack);
  if (La < Ld || Lb < Ld)
    raise(ErrorKind::DeltaViolation, "q_n below delta at n = " + std::to_string(n));
  Real scale = 2 * kPi * exp(c_delta(delta));
  Real forward = scale * (6 * kLog2 + Lb) / log_one_plus_ratio(La, delta);
  Real backward = scale * (6 * kLog2 + La) / log_one_plus_ratio(Lb, delta);
  return {forward, backward};
}

Real maskit_upper(const Real& ell) {
  if (!(ell > 0))
    raise(ErrorKind::ValueOutOfRange, "hyperbolic length must be positive");
  return ell / 2 * exp(ell / 2);
}

Real wolpert_image_bound(const Real& dilatation, const Real& ell) {
  if (dilatation < 1)
    raise(ErrorKind::InvalidDilatation,
          "dilatation K = " + real_str(dilatation) + " below 1");
  if (!(ell > 0))
    raise(ErrorKind::ValueOutOfRange, "hyperbolic length must be positive");
  return dilatation * ell;
}

LengthBounds geodesic_length_bounds(const OmegaSequence& omega,
                                    const GeodesicIndex& g, const Real& delta) {
  check_delta(delta);
  Real L = omega.neg_log_one_minus(static_cast<std::uint64_t>(g.k));
  if (L < neg_log1m(delta) * (1 - kDeltaSlack))  // q_k < delta
    raise(ErrorKind::DeltaViolation, "q_k below delta");

  LengthBounds out;
  out.delta_used = delta;
  out.lower = exp(-c_delta(delta)) * kPi / (6 * kLog2 + L);
  out.lower_provenance = "exp(-C(delta)) pi / (6 log 2 - log(1-q_k))";
  Real kinjo = kinjo_upper(omega, g);
  Real uniform = 2 * kPi * kPi / log_one_plus_ratio(L, delta);
  if (kinjo <= uniform) {
    out.upper = kinjo;
    out.upper_provenance = "pants curve estimate";
  } else {
    out.upper = uniform;
    out.upper_provenance = "2 pi^2 / log(1 + 2 delta/(1-q_k))";
  }
  return out;
}

namespace {

struct BoundsRow {
  int k;
  std::uint64_t j;
  std::string text;
};

std::string render_row(const OmegaSequence& omega, const Real& delta, int k,
                       std::uint64_t j) {
  Real q = omega.eval(static_cast<std::uint64_t>(k));
  Real L = omega.neg_log_one_minus(static_cast<std::uint64_t>(k));
  Real lower = exp(-c_delta(delta)) * kPi / (6 * kLog2 + L);
  Real kinjo = kinjo_upper(omega, {k, j});
  Real uniform = 2 * kPi * kPi / log_one_plus_ratio(L, delta);
  std::ostringstream os;
  os << k << ',' << j << ',' << real_str(q) << ',' << real_str(lower) << ','
     << real_str(kinjo) << ',' << real_str(uniform) << '\n';
  return os.str();
}

std::string bounds_csv_impl(const OmegaSequence& omega, int k_max,
                            const Real& delta, std::uint64_t max_rows,
                            bool parallel) {
  if (k_max < 1) raise(ErrorKind::IndexOutOfRange, "k_max must be >= 1");
  std::vector<std::pair<int, std::uint64_t>> cells;
  std::uint64_t rows = 0;
  for (int k = 1; k <= k_max; ++k) {
    rows += std::uint64_t{1} << k;
    if (rows > max_rows)
      raise(ErrorKind::DepthOverflow,
            "bounds CSV would exceed " + std::to_string(max_rows) + " rows");
    for (std::uint64_t j = 1; j <= (std::uint64_t{1} << k); ++j)
      cells.emplace_back(k, j);
  }
  std::vector<std::string> out(cells.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(cells.size()); ++i)
      out[i] = render_row(omega, delta, cells[i].first, cells[i].second);
  } else {
    for (std::size_t i = 0; i < cells.size(); ++i)
      out[i] = render_row(omega, delta, cells[i].first, cells[i].second);
  }
  std::string csv = "k,j,q_k,lower,kinjo_upper,uniform_upper\n";
  for (const auto& row : out) csv += row;
  return csv;
}

}  // namespace

std::string bounds_csv(const OmegaSequence& omega, int k_max, const Real& delta,
                       std::uint64_t max_rows) {
  return bounds_csv_impl(omega, k_max, delta, max_rows, true);
}

std::string bounds_csv_serial(const OmegaSequence& omega, int k_max,
                              const Real& delta, std::uint64_t max_rows) {
  return bounds_csv_impl(omega, k_max, delta, max_rows, false);
}

}  // namespace cantorqc
