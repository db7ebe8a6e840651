#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cantorqc/omega.hpp"
#include "cantorqc/real.hpp"

namespace cantorqc {

/// Boundary geodesic of the canonical pants decomposition, identified by
/// construction level k and position j in 1..2^k. Only indices are ever
/// materialized; lengths are bounded, never computed.
struct GeodesicIndex {
  int k = 1;
  std::uint64_t j = 1;
};

/// Upper bound on the hyperbolic length of gamma_k^j: the two-case curve
/// estimate driven by q_k and, for interior indices j = 2^l m or 2^l m + 1,
/// also by q_{k-l}.
Real kinjo_upper(const OmegaSequence& omega, const GeodesicIndex& g);

/// 2 pi^2 / log(1 + 2 delta / (1 - q)) together with the delta-only cap
/// 2 pi^2 / log(1 + 2 delta / (1 - delta)). Requires q >= delta.
struct UniformUpper {
  Real value;
  Real cap;
};
UniformUpper uniform_upper(const Real& delta, const Real& q);

/// C(delta) = pi^2 / log(1 + 2 delta / (1 - delta)); strictly decreasing.
Real c_delta(const Real& delta);

/// exp(-C(delta)) * pi / (6 log 2 - log(1 - q)). Requires q >= delta.
Real length_lower(const Real& delta, const Real& q);

/// The two ordered comparison ratios
///   R(a, b) = 2 pi exp(C(delta)) (6 log 2 - log(1 - b))
///             / log(1 + 2 delta / (1 - a)),
/// returned as (R(q, q'), R(q', q)). Requires q, q' >= delta.
std::pair<Real, Real> compare_ratio(const Real& q, const Real& q_prime,
                                    const Real& delta);

/// Same ratios driven by two sequences at index n, computed through
/// -log(1 - q_n) so indices deep enough to round q_n to 1 stay usable.
std::pair<Real, Real> compare_ratio_seq(const OmegaSequence& omega,
                                        const OmegaSequence& omega_prime,
                                        std::uint64_t n, const Real& delta);

/// Extremal-length upper bound (1/2) ell e^{ell/2} for the free-homotopy
/// family of a geodesic of hyperbolic length ell.
Real maskit_upper(const Real& ell);

/// K * ell bounds the geodesic length of the image class under a
/// K-quasiconformal map. Throws InvalidDilatation for K < 1.
Real wolpert_image_bound(const Real& dilatation, const Real& ell);

/// Both sides of the length estimate for one geodesic at an explicit delta.
struct LengthBounds {
  Real lower;
  Real upper;
  Real delta_used;
  std::string lower_provenance;
  std::string upper_provenance;
};
LengthBounds geodesic_length_bounds(const OmegaSequence& omega,
                                    const GeodesicIndex& g, const Real& delta);

/// CSV rows (k, j, q_k, lower, kinjo_upper, uniform_upper) for k <= k_max.
/// Row count is sum of 2^k; guarded by max_rows.
std::string bounds_csv(const OmegaSequence& omega, int k_max, const Real& delta,
                       std::uint64_t max_rows = std::uint64_t{1} << 16);
std::string bounds_csv_serial(const OmegaSequence& omega, int k_max,
                              const Real& delta,
                              std::uint64_t max_rows = std::uint64_t{1} << 16);

}  // namespace cantorqc
