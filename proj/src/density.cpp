#include "hnfd/density.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "hnfd/error.hpp"

namespace hnfd {

namespace {

constexpr Real kEps = std::numeric_limits<Real>::epsilon();
constexpr int kMaxZetaArg = 1 << 20;

struct ZetaEntry {
  Real value;
  Real bound;
};

// B_2, B_4, ..., B_16.
constexpr std::array<Real, 8> kBernoulli = {
    1.0L / 6,   -1.0L / 30,     1.0L / 42,    -1.0L / 30,
    5.0L / 66,  -691.0L / 2730, 7.0L / 6,     -3617.0L / 510};

ZetaEntry evaluate_zeta(int s) {
  const Real sr = s;
  for (long n = 16;; n *= 2) {
    const Real N = n;
    Real sum = 0;
    for (long k = n - 1; k >= 1; --k) sum += std::pow(static_cast<Real>(k), -sr);
    sum += std::pow(N, 1 - sr) / (sr - 1) + std::pow(N, -sr) / 2;

    // term_k = B_2k / (2k)! * s (s+1) ... (s+2k-2) * N^{-s-2k+1}
    Real coeff = sr / 2;  // s / 2!
    Real npow = std::pow(N, -sr - 1);
    Real omitted = 0;
    for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
      const Real term = kBernoulli[k] * coeff * npow;
      if (k + 1 == kBernoulli.size()) {
        omitted = std::fabs(term);
      } else {
        sum += term;
      }
      const Real j = 2 * static_cast<Real>(k) + 2;  // next: 2k+4
      coeff *= (sr + j - 1) * (sr + j) / ((j + 1) * (j + 2));
      npow /= N * N;
    }
    const Real rounding = (N + 16) * kEps * sum;
    if (omitted <= rounding || n >= (1L << 20)) {
      return {sum, omitted + rounding};
    }
  }
}

class ZetaTable {
 public:
  ZetaEntry get(int s) {
    {
      std::shared_lock lock(mu_);
      if (auto it = table_.find(s); it != table_.end()) return it->second;
    }
    const ZetaEntry e = evaluate_zeta(s);
    std::unique_lock lock(mu_);
    return table_.emplace(s, e).first->second;
  }

 private:
  std::shared_mutex mu_;
  std::unordered_map<int, ZetaEntry> table_;
};

ZetaTable& zeta_table() {
  static ZetaTable table;
  return table;
}

void check_tol(double tol) {
  if (!(tol > 0) || !std::isfinite(tol)) {
    fail(ErrorKind::parameter, "tolerance must be positive and finite");
  }
}

void check_certified(Real bound, double tol) {
  if (bound > tol) {
    fail(ErrorKind::parameter,
         "tolerance " + std::to_string(tol) +
             " is below the achievable working precision");
  }
}

int zeta_arg(std::size_t j) {
  if (j > static_cast<std::size_t>(kMaxZetaArg)) {
    fail(ErrorKind::parameter, "dimension too large");
  }
  return static_cast<int>(j);
}

// 1 / (prod zeta(args) * prod d^e) with its error bound.
DensityValue inverse_product(std::vector<int> args,
                             std::vector<std::pair<std::uint64_t, int>> factors,
                             double tol) {
  check_tol(tol);
  Real denom = 1;
  Real rel = 0;
  for (int a : args) {
    const ZetaEntry z = zeta_table().get(a);
    denom *= z.value;
    rel += z.bound / z.value;
  }
  for (const auto& [d, e] : factors) {
    denom *= std::pow(static_cast<Real>(d), static_cast<Real>(e));
  }
  rel += static_cast<Real>(args.size() + factors.size() + 2) * kEps;

  DensityValue out;
  out.value = 1 / denom;
  out.error_bound = out.value * rel * 1.01L;
  out.zeta_args = std::move(args);
  out.pivot_factors = std::move(factors);
  check_certified(out.error_bound, tol);
  return out;
}

}  // namespace

Real zeta(int s, double tol) {
  if (s < 2) fail(ErrorKind::domain, "zeta(s) requires s >= 2");
  if (s > kMaxZetaArg) fail(ErrorKind::parameter, "zeta argument too large");
  check_tol(tol);
  const ZetaEntry e = zeta_table().get(s);
  check_certified(e.bound, tol);
  return e.value;
}

Real zeta_error_bound(int s) {
  if (s < 2) fail(ErrorKind::domain, "zeta(s) requires s >= 2");
  return zeta_table().get(s).bound;
}

Real zeta_product(int lo, int hi, double tol) {
  if (lo < 2) fail(ErrorKind::domain, "zeta_product requires lo >= 2");
  if (lo > hi) fail(ErrorKind::parameter, "zeta_product requires lo <= hi");
  if (hi > kMaxZetaArg) fail(ErrorKind::parameter, "zeta argument too large");
  check_tol(tol);
  Real prod = 1;
  Real rel = 0;
  for (int j = lo; j <= hi; ++j) {
    const ZetaEntry z = zeta_table().get(j);
    prod *= z.value;
    rel += z.bound / z.value + kEps;
  }
  check_certified(prod * rel * 1.01L, tol);
  return prod;
}

Real limit_constant_d(double tol) {
  check_tol(tol);
  // 3 * 2^{-J} <= 1e-18 at J = 62; the evaluation is the same for every
  // tol, so coarser requests get the same digits.
  constexpr int kLast = 62;
  Real prod = 1;
  Real rel = 0;
  for (int j = 2; j <= kLast; ++j) {
    const ZetaEntry z = zeta_table().get(j);
    prod *= z.value;
    rel += z.bound / z.value + kEps;
  }
  const Real d = 1 / prod;
  const Real truncation = 3 * std::ldexp(1.0L, -kLast);
  check_certified(d * (rel + truncation) * 1.01L, tol);
  return d;
}

DensityValue diag_density(std::size_t n, std::size_t m,
                          const DiagPattern& pattern, double tol) {
  pattern.validate();
  check_tol(tol);
  const std::size_t k = pattern.size();
  if (n == 0 || m == 0) fail(ErrorKind::parameter, "n and m must be positive");
  const bool admissible = (m < n) ? (k <= m) : (k < n);
  if (!admissible) {
    fail(ErrorKind::unsupported,
         "pattern length " + std::to_string(k) + " is outside the covered range "
         "for " + std::to_string(n) + "x" + std::to_string(m) +
         " (need k <= m if m < n, else k < n)");
  }
  if (pattern.has_zero()) return DensityValue{};

  std::vector<int> args;
  std::vector<std::pair<std::uint64_t, int>> factors;
  for (std::size_t i = 0; i < k; ++i) {
    const int e = zeta_arg(n - i);  // n - i + 1 with 1-based i
    args.push_back(e);
    if (pattern.values[i] != 1) factors.emplace_back(pattern.values[i], e);
  }
  return inverse_product(std::move(args), std::move(factors), tol);
}

DensityValue full_diag_density(std::size_t n, std::span<const std::uint64_t> d,
                               double tol) {
  if (n < 2) fail(ErrorKind::parameter, "full diagonal density needs n >= 2");
  if (d.size() != n - 1) {
    fail(ErrorKind::parameter, "need exactly n - 1 prescribed pivots");
  }
  for (std::uint64_t x : d) {
    if (x == 0) fail(ErrorKind::parameter, "prescribed pivots must be >= 1");
  }
  return diag_density(n, n, DiagPattern{{d.begin(), d.end()}}, tol);
}

DensityValue residue_density(std::size_t n,
                             std::span<const std::uint64_t> d_prefix,
                             std::uint64_t d, std::uint64_t r, double tol) {
  if (d < 1) fail(ErrorKind::parameter, "modulus must be >= 1");
  if (r >= d) fail(ErrorKind::parameter, "residue must satisfy 0 <= r < d");
  DensityValue out = full_diag_density(n, d_prefix, tol);
  out.value /= static_cast<Real>(d);
  out.error_bound /= static_cast<Real>(d);
  if (d != 1) out.pivot_factors.emplace_back(d, 1);
  return out;
}

DensityValue unimodular_density(std::size_t n, std::size_t m, double tol) {
  if (m < 1 || n <= m) {
    fail(ErrorKind::unsupported, "unimodular density needs n > m >= 1");
  }
  std::vector<int> args;
  for (std::size_t j = n; j > n - m; --j) args.push_back(zeta_arg(j));
  return inverse_product(std::move(args), {}, tol);
}

DensityValue lattice_shape_density(LatticeShape shape, std::size_t n,
                                   std::uint64_t s, double tol) {
  check_tol(tol);
  if (n < 2) fail(ErrorKind::parameter, "lattice dimension must be >= 2");
  switch (shape) {
    case LatticeShape::knapsack:
      return DensityValue{};
    case LatticeShape::random_basis: {
      std::vector<int> args;
      for (std::size_t j = n; j >= 2; --j) args.push_back(zeta_arg(j));
      return inverse_product(std::move(args), {}, tol);
    }
    case LatticeShape::ntru: {
      if (s < 1) fail(ErrorKind::parameter, "NTRU needs s >= 1");
      const Real exponent = static_cast<Real>(n) * static_cast<Real>(n) *
                            static_cast<Real>(s) / 2;
      DensityValue out;
      const Real d = limit_constant_d(tol);
      out.value = d * std::exp2(-exponent);
      out.error_bound = out.value * 1e-17L;
      out.heuristic = true;
      return out;
    }
  }
  fail(ErrorKind::parameter, "unknown lattice shape");
}

}  // namespace hnfd
