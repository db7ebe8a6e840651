#include "cantorqc/moduli.hpp"

#include <cmath>
#include <sstream>

#include "cantorqc/cantor.hpp"

namespace cantorqc {

namespace {

const Real kPi = real_pi();
const Real kLog2 = log(Real(2));

// Arithmetic-geometric mean. Quadratic convergence; 64 iterations is far
// beyond what 128-bit mantissas need even for arguments near 0.
Real agm(Real a, Real g) {
  const Real eps = std::numeric_limits<Real>::epsilon() * 8;
  for (int i = 0; i < 64; ++i) {
    if (abs(a - g) <= eps * a) return (a + g) / 2;
    Real am = (a + g) / 2;
    Real gm = sqrt(a * g);
    a = am;
    g = gm;
  }
  raise(ErrorKind::ConvergenceFailure, "AGM did not converge in 64 iterations");
}

}  // namespace

RingSpec ring_params(const OmegaSequence& omega, int k, std::uint64_t j) {
  if (k < 1) raise(ErrorKind::IndexOutOfRange, "ring params need depth >= 1");
  std::uint64_t top = std::uint64_t{1} << k;
  if (j < 1 || j > top)
    raise(ErrorKind::IndexOutOfRange,
          "interval index " + std::to_string(j) + " not in 1.." +
              std::to_string(top));
  if (j == 1 || j == top)
    raise(ErrorKind::NotApplicable,
          "boundary interval " + std::to_string(j) +
              ": its outer neighbor runs through infinity and has no affine "
              "normalization (depth 1 has no interior intervals)");

  CantorLevel level = build_level(omega, k);
  const auto& iv = level.intervals[j - 1];
  const auto& left = level.gaps[j - 2];  // J_k^{j-1}
  const auto& right = level.gaps[j - 1]; // J_k^j

  RingSpec spec;
  spec.x1 = left[0];
  spec.x2 = iv[0];
  spec.x3 = iv[1];
  spec.x4 = right[1];

  Rational unit = iv[1] - iv[0];
  Rational left_len = left[1] - left[0];
  Rational right_len = right[1] - right[0];
  // The step-k gap carries odd index: J^{j-1} for even j, J^j for odd j.
  // Odd j mirrors the even case, swapping which neighbor is fresh.
  if (j % 2 == 0) {
    spec.alpha = left_len / unit;
    spec.beta = 1 + right_len / unit;
  } else {
    spec.alpha = right_len / unit;
    spec.beta = 1 + left_len / unit;
  }
  return spec;
}

TeichParams teich_reduce(const Rational& q, int k) {
  if (!in_open_unit(q))
    raise(ErrorKind::ValueOutOfRange, "q must lie in (0,1)");
  if (k < 1) raise(ErrorKind::IndexOutOfRange, "depth must be >= 1");
  TeichParams p;
  p.alpha_prime = Rational(2) / (1 - q);
  p.beta_prime = 1 + 2 * rat_pow(p.alpha_prime, static_cast<unsigned>(k));
  p.t = p.alpha_prime * (p.beta_prime - 1) / (p.alpha_prime + p.beta_prime);
  // Identity behind the simplification t + 1 <= alpha' + 1, kept as an
  // exact self-check.
  const Rational& a = p.alpha_prime;
  Rational rhs = a + 1 - (a * a + a) / (2 * rat_pow(a, static_cast<unsigned>(k)) + a + 1);
  if (p.t + 1 != rhs || p.t + 1 > a + 1)
    throw std::logic_error("Teichmueller reduction identity violated");
  return p;
}

PsiBounds psi_bounds(const Real& t) {
  if (!(t > 0)) raise(ErrorKind::ValueOutOfRange, "t must be positive");
  Real s = sqrt(t + 1) + sqrt(t);
  PsiBounds out;
  out.lower = s * s;
  out.upper = 4 * s * s;
  out.crude_lower = t + 1;
  out.crude_upper = 16 * (t + 1);
  return out;
}

Real mod_teich_oracle(const Real& t) {
  if (!(t > 0)) raise(ErrorKind::ValueOutOfRange, "t must be positive");
  // mu(r) = (pi/2) K(r') / K(r) and K(m) = pi / (2 agm(1, sqrt(1-m^2)))
  // collapse to a ratio of two AGMs at r = 1/sqrt(t+1), r' = sqrt(t/(t+1)).
  Real r = 1 / sqrt(t + 1);
  Real rp = sqrt(t / (t + 1));
  Real mu = kPi / 2 * agm(Real(1), rp) / agm(Real(1), r);
  return 2 * mu;
}

Real mod_upper_chain(const Real& q, int k) {
  if (!(q > 0 && q < 1))
    raise(ErrorKind::ValueOutOfRange, "q must lie in (0,1)");
  if (k < 1) raise(ErrorKind::IndexOutOfRange, "depth must be >= 1");
  Real alpha_prime = 2 / (1 - q);
  Real beta_prime = 1 + 2 * pow(alpha_prime, k);
  Real t = alpha_prime * (beta_prime - 1) / (alpha_prime + beta_prime);
  Real mid = 4 * kLog2 + log(alpha_prime + 1);
  Real bound = 6 * kLog2 - log(1 - q);
  // The two-step chain is an identity of the formulas; a violation means a
  // broken oracle, not bad input.
  if (!(mod_teich_oracle(t) <= mid && mid <= bound))
    throw std::logic_error("modulus chain violated");
  return bound;
}

AnnulusSymmetryReport annulus_symmetry_check(const Real& radius) {
  if (!(radius > 1)) raise(ErrorKind::ValueOutOfRange, "radius must exceed 1");
  AnnulusSymmetryReport out;
  out.radius = radius;
  out.lambda_full = 2 * kPi / log(radius);
  out.lambda_half = kPi / log(radius);
  out.ratio = out.lambda_full / out.lambda_half;
  out.ok = abs(out.ratio - 2) <= Real("1e-12") * 2;
  return out;
}

namespace {

std::vector<Real> log_grid(const Real& lo, const Real& hi, std::size_t points) {
  if (!(lo > 0 && hi > lo) || points < 2)
    raise(ErrorKind::ValueOutOfRange, "need 0 < lo < hi and >= 2 points");
  std::vector<Real> grid(points);
  Real step = (log(hi) - log(lo)) / Real(points - 1);
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = exp(log(lo) + step * Real(i));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::string psi_csv_impl(const Real& t_lo, const Real& t_hi,
                         std::size_t points, bool parallel) {
  std::vector<Real> grid = log_grid(t_lo, t_hi, points);
  std::vector<std::string> rows(points);
  auto render = [&](std::size_t i) {
    PsiBounds pb = psi_bounds(grid[i]);
    Real psi = exp(mod_teich_oracle(grid[i]));
    std::ostringstream os;
    os << real_str(grid[i]) << ',' << real_str(pb.lower) << ','
       << real_str(psi) << ',' << real_str(pb.upper) << '\n';
    rows[i] = os.str();
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(points); ++i)
      render(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < points; ++i) render(i);
  }
  std::string csv = "t,psi_lower,psi_oracle,psi_upper\n";
  for (const auto& row : rows) csv += row;
  return csv;
}

}  // namespace

std::string psi_csv(const Real& t_lo, const Real& t_hi, std::size_t points) {
  return psi_csv_impl(t_lo, t_hi, points, true);
}

std::string psi_csv_serial(const Real& t_lo, const Real& t_hi,
                           std::size_t points) {
  return psi_csv_impl(t_lo, t_hi, points, false);
}

std::string chain_csv(const std::vector<Real>& q_values, int k_max) {
  std::string csv = "q,k,mod_upper_chain\n";
  for (const auto& q : q_values)
    for (int k = 1; k <= k_max; ++k) {
      std::ostringstream os;
      os << real_str(q) << ',' << k << ',' << real_str(mod_upper_chain(q, k))
         << '\n';
      csv += os.str();
    }
  return csv;
}

}  // namespace cantorqc
