#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <gmpxx.h>

#include "hnfd/density.hpp"

namespace hnfd {

using Rational = mpq_class;

/// Exclusive upper bound of the supported argument range for every
/// arithmetic function below.
inline constexpr std::uint64_t kMaxArg = std::uint64_t{1} << 63;

/// Default relative convergence threshold for the limit function f.
inline constexpr double kDefaultLimitTol = 1e-15;

struct PrimePower {
  std::uint64_t p;
  unsigned alpha;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  std::uint64_t value = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing
};

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Trial division below 10^6, then Pollard-Brent rho on the cofactor.
/// Requires 1 <= g < 2^63.
Factorization factorize(std::uint64_t g);

/// All positive divisors of g in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t g);

/// sum_{d | g} d^{-k}, exact. Requires k >= 2.
Rational sigma_minus_k(int k, std::uint64_t g);

using ArithmeticFunction = std::function<Rational(std::uint64_t)>;

/// (fa * fb)(g) = sum_{d | g} fa(d) fb(g / d), exact.
Rational dirichlet_convolve(const ArithmeticFunction& fa,
                            const ArithmeticFunction& fb, std::uint64_t g);

/// f_n(p^alpha) from f_1(p^a) = p^{-2a} and
/// f_n(p^a) = sum_{i=0}^{a} p^{-n i} f_{n-1}(p^{a-i}). Memoized by
/// (n, p, alpha); safe to call concurrently.
Rational f_n_prime_power(unsigned n, std::uint64_t p, unsigned alpha);

/// f_n(g), assembled multiplicatively. f_n(1) = 1.
Rational f_n_at(unsigned n, std::uint64_t g);

/// lim_n f_n(p^alpha) by iterating the recurrence until successive values
/// differ relatively by at most tol. Returns the last iterate.
Rational f_limit_prime_power_by_recurrence(std::uint64_t p, unsigned alpha,
                                           double tol = kDefaultLimitTol);

/// f(p^alpha): exact closed forms for alpha <= 2, the recurrence limit
/// otherwise.
Rational f_limit_prime_power(std::uint64_t p, unsigned alpha,
                             double tol = kDefaultLimitTol);

/// f(g), assembled multiplicatively. f(1) = 1.
Rational f_limit_at(std::uint64_t g, double tol = kDefaultLimitTol);

/// Normalizing constant zeta(2) * prod_{k=2}^{n} zeta(k).
Real gcd_det_normalizer(unsigned n, double tol = kDefaultTol);

/// D_n(g) = f_n(g) / (zeta(2) prod_{k=2}^n zeta(k)): density of
/// (A, x, y) with A n x (n-1) and gcd(det[A|x], det[A|y]) = g.
Real D_n_at(unsigned n, std::uint64_t g, double tol = kDefaultTol);

/// D(g) = lim D_n(g) = d / zeta(2) * f(g).
Real D_limit_at(std::uint64_t g, double tol = kDefaultTol);

/// sum_{g=1}^{G} D_n(g) / g^s.
Real dirichlet_series_partial(unsigned n, int s, std::uint64_t G,
                              double tol = kDefaultTol);

/// The full series sum_g D_n(g) / g^s in closed form. Each ordered
/// factor d_i of g with weight d_i^{-e_i} contributes zeta(s + e_i):
/// zeta(s+2) prod_{k=2}^{n} zeta(s+k) / (zeta(2) prod_{k=2}^{n} zeta(k)).
Real dirichlet_series_closed_form(unsigned n, int s, double tol = kDefaultTol);

/// Nearest double; exact conversion of the rational is not needed beyond
/// double precision anywhere in this library.
double to_double(const Rational& q);

}  // namespace hnfd
