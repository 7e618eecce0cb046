#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hnfd/hnf.hpp"

namespace hnfd {

using Real = long double;

/// Default absolute tolerance for every density evaluation.
inline constexpr double kDefaultTol = 1e-12;

/// Smallest tolerance the long double evaluation can certify.
inline constexpr double kMinTol = 1e-17;

/// A closed-form density together with the factors it was built from:
/// value = 1 / (prod zeta(zeta_args) * prod d_i^{e_i}), or 0.
struct DensityValue {
  Real value = 0;
  /// Certified bound on |value - exact|.
  Real error_bound = 0;
  std::vector<int> zeta_args;
  std::vector<std::pair<std::uint64_t, int>> pivot_factors;
  /// Set for estimates that are approximations even in the limit.
  bool heuristic = false;
};

/// Riemann zeta at an integer s >= 2, |result - zeta(s)| <= tol.
///
/// Partial sum up to N - 1, the integral tail N^{1-s}/(s-1), and
/// Euler-Maclaurin corrections; the first omitted correction bounds the
/// error. Values are memoized per s at full working precision.
Real zeta(int s, double tol = kDefaultTol);

/// Error bound attached to the memoized zeta(s).
Real zeta_error_bound(int s);

/// prod_{j=lo}^{hi} zeta(j); requires 2 <= lo <= hi.
Real zeta_product(int lo, int hi, double tol = kDefaultTol);

/// d = (prod_{j>=2} zeta(j))^{-1} ~ 0.43575707677.
///
/// The product is truncated at J where sum_{j>J} ln zeta(j) <=
/// sum_{j>J} (zeta(j) - 1) <= 3 * 2^{-J} drops below the target, using
/// zeta(j) - 1 <= 2^{-j} + 2^{1-j}/(j-1).
Real limit_constant_d(double tol = kDefaultTol);

/// Density of n x m matrices whose HNF diagonal starts with `pattern`.
/// Requires k <= m when m < n, and k < n otherwise; other k are rejected
/// with ErrorKind::unsupported. Any zero entry gives density 0.
DensityValue diag_density(std::size_t n, std::size_t m,
                          const DiagPattern& pattern,
                          double tol = kDefaultTol);

/// Density of n x n matrices with HNF diagonal (d_1, ..., d_{n-1}, *).
/// All d_i must be >= 1.
DensityValue full_diag_density(std::size_t n,
                               std::span<const std::uint64_t> d,
                               double tol = kDefaultTol);

/// Density of n x n matrices with HNF diagonal (d_prefix, a) and
/// a = r (mod d): diag density of the prefix divided by d.
DensityValue residue_density(std::size_t n,
                             std::span<const std::uint64_t> d_prefix,
                             std::uint64_t d, std::uint64_t r,
                             double tol = kDefaultTol);

/// Density of n x m matrices (n > m) whose m x m minors are coprime:
/// (zeta(n) zeta(n-1) ... zeta(n-m+1))^{-1}.
DensityValue unimodular_density(std::size_t n, std::size_t m,
                                double tol = kDefaultTol);

enum class LatticeShape { knapsack, random_basis, ntru };

/// knapsack [I_n | x]: 0. random basis [[I_{n-1}, x], [0, q]]:
/// (zeta(n) ... zeta(2))^{-1}. NTRU [[I_n, H], [0, q I_n]] with q = 2^s:
/// d * 2^{-n^2 s / 2}, flagged heuristic.
DensityValue lattice_shape_density(LatticeShape shape, std::size_t n,
                                   std::uint64_t s = 0,
                                   double tol = kDefaultTol);

}  // namespace hnfd
