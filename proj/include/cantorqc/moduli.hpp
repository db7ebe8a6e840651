#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cantorqc/omega.hpp"
#include "cantorqc/rational.hpp"
#include "cantorqc/real.hpp"

namespace cantorqc {

/// Four-point ring configuration around an interior interval I_k^j: the
/// neighbor gaps become (x1,x2) and (x3,x4) and the affine normalization
/// carries I_k^j to [0,1], giving C-hat minus [-inf,-alpha], [0,1],
/// [beta,+inf]. The step-k gap always plays the alpha side, so alpha stays
/// below 2/(1-q_k) for increasing omega regardless of the parity of j.
struct RingSpec {
  Rational x1, x2, x3, x4;
  Rational alpha;  // fresh-gap/interval ratio
  Rational beta;   // 1 + old-gap/interval ratio
};

RingSpec ring_params(const OmegaSequence& omega, int k, std::uint64_t j);

/// Exact parameters of the enclosing Teichmueller-normalized ring:
/// alpha' = 2/(1-q_k), beta' = 1 + 2 alpha'^k,
/// t = alpha' (beta' - 1) / (alpha' + beta').
struct TeichParams {
  Rational alpha_prime;
  Rational beta_prime;
  Rational t;
};
TeichParams teich_reduce(const Rational& q, int k);

/// (sqrt(t+1)+sqrt(t))^2 and 4x that: the two-sided estimate for Psi(t),
/// with the cruder chain t+1 <= lower and upper <= 16(t+1).
struct PsiBounds {
  Real lower;
  Real upper;
  Real crude_lower;  // t + 1
  Real crude_upper;  // 16 (t + 1)
};
PsiBounds psi_bounds(const Real& t);

/// log Psi(t) = 2 mu(1/sqrt(t+1)), the modulus of the Teichmueller domain
/// C \ ([-1,0] u [t,inf)), evaluated through AGM-based complete elliptic
/// integrals. Relative accuracy is far below 1e-12 across t in
/// [1e-9, 1e18]. Throws ConvergenceFailure if the AGM stalls (not expected).
Real mod_teich_oracle(const Real& t);

/// 6 log 2 - log(1 - q): the end of the modulus chain
///   log Psi(t(q,k)) <= 4 log 2 + log(alpha' + 1) <= 6 log 2 - log(1 - q).
/// The chain is verified on every call.
Real mod_upper_chain(const Real& q, int k);

/// Factor-2 identity between the separating family of A(1,R) and the
/// quadrilateral family of its upper half, from the shared extremal metric
/// |dz|/|z|. Conventions here: lambda(A(1,R)) = 2 pi / log R.
struct AnnulusSymmetryReport {
  Real radius;
  Real lambda_full;
  Real lambda_half;
  Real ratio;
  bool ok;  // |ratio - 2| <= 1e-12 relative
};
AnnulusSymmetryReport annulus_symmetry_check(const Real& radius);

/// CSV rows (t, lower, oracle, upper) over a log-spaced grid.
std::string psi_csv(const Real& t_lo, const Real& t_hi, std::size_t points);
std::string psi_csv_serial(const Real& t_lo, const Real& t_hi,
                           std::size_t points);

/// CSV rows (q, k, mod_upper_chain).
std::string chain_csv(const std::vector<Real>& q_values, int k_max);

}  // namespace cantorqc
