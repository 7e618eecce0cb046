#include "hnfd/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <string>
#include <tuple>

#include "hnfd/error.hpp"

namespace hnfd {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kTrialLimit = 1'000'000;

void check_arg(u64 g) {
  if (g < 1 || g >= kMaxArg) {
    fail(ErrorKind::range, "argument " + std::to_string(g) +
                               " outside the supported range [1, 2^63)");
  }
}

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Brent's cycle detection with batched gcds. n is odd, composite, and has
// no factor below the trial-division limit.
u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, q = 1, g = 1, ys = 2;
    const auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    constexpr u64 kBatch = 128;
    for (u64 r = 1; g == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      for (u64 k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_large(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = pollard_brent(n);
  factor_large(d, out);
  factor_large(n / d, out);
}

Rational inverse_power(u64 p, unsigned long e) {
  Rational q;
  mpz_ui_pow_ui(q.get_den_mpz_t(), p, e);
  q.get_num() = 1;
  return q;
}

// ---------------------------------------------------------------------------
// f_n(p^a) memo

struct Key {
  unsigned n;
  u64 p;
  unsigned alpha;
  friend bool operator<(const Key& a, const Key& b) {
    return std::tie(a.n, a.p, a.alpha) < std::tie(b.n, b.p, b.alpha);
  }
};

class FnMemo {
 public:
  bool find(const Key& k, Rational& out) const {
    std::shared_lock lock(mu_);
    auto it = table_.find(k);
    if (it == table_.end()) return false;
    out = it->second;
    return true;
  }

  // Rows are stored whole: (n, p, alpha) present implies (n, p, a) present
  // for every a <= alpha.
  void store_row(unsigned n, u64 p, const std::vector<Rational>& row) {
    std::unique_lock lock(mu_);
    for (unsigned a = 0; a < row.size(); ++a) table_.try_emplace({n, p, a}, row[a]);
  }

 private:
  mutable std::shared_mutex mu_;
  std::map<Key, Rational> table_;
};

FnMemo& fn_memo() {
  static FnMemo memo;
  return memo;
}

}  // namespace

// ---------------------------------------------------------------------------
// Factorization

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a deterministic witness set for n < 3.3e24.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(u64 g) {
  check_arg(g);
  Factorization f;
  f.value = g;
  u64 rest = g;
  const auto take = [&](u64 p) {
    unsigned alpha = 0;
    while (rest % p == 0) {
      rest /= p;
      ++alpha;
    }
    if (alpha) f.factors.push_back({p, alpha});
  };
  take(2);
  take(3);
  for (u64 p = 5; p < kTrialLimit && p * p <= rest; p += 6) {
    take(p);
    take(p + 2);
  }
  if (rest > 1) {
    std::vector<u64> big;
    if (rest < kTrialLimit * kTrialLimit) {
      big.push_back(rest);  // no factor below sqrt(rest): prime
    } else {
      factor_large(rest, big);
    }
    std::sort(big.begin(), big.end());
    for (std::size_t i = 0; i < big.size();) {
      std::size_t j = i;
      while (j < big.size() && big[j] == big[i]) ++j;
      f.factors.push_back({big[i], static_cast<unsigned>(j - i)});
      i = j;
    }
  }
  return f;
}

std::vector<u64> divisors(u64 g) {
  const Factorization f = factorize(g);
  std::vector<u64> out{1};
  for (const auto& [p, alpha] : f.factors) {
    const std::size_t base = out.size();
    u64 pk = 1;
    for (unsigned k = 1; k <= alpha; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Arithmetic functions

Rational sigma_minus_k(int k, u64 g) {
  if (k < 2) fail(ErrorKind::parameter, "sigma_{-k} requires k >= 2");
  Rational total = 1;
  for (const auto& [p, alpha] : factorize(g).factors) {
    Rational local = 0;
    for (unsigned i = 0; i <= alpha; ++i) local += inverse_power(p, static_cast<unsigned long>(k) * i);
    total *= local;
  }
  return total;
}

Rational dirichlet_convolve(const ArithmeticFunction& fa,
                            const ArithmeticFunction& fb, u64 g) {
  Rational total = 0;
  for (u64 d : divisors(g)) total += fa(d) * fb(g / d);
  total.canonicalize();
  return total;
}

Rational f_n_prime_power(unsigned n, u64 p, unsigned alpha) {
  if (n < 1) fail(ErrorKind::parameter, "f_n requires n >= 1");
  if (!is_prime(p)) fail(ErrorKind::parameter, std::to_string(p) + " is not prime");
  if (alpha == 0) return 1;

  FnMemo& memo = fn_memo();
  Rational hit;
  if (memo.find({n, p, alpha}, hit)) return hit;

  // Resume from the highest memoized level below n.
  unsigned level = n - 1;
  std::vector<Rational> row(alpha + 1);
  while (level >= 1 && !memo.find({level, p, alpha}, row[alpha])) --level;
  if (level == 0) {
    level = 1;
    for (unsigned a = 0; a <= alpha; ++a) row[a] = inverse_power(p, 2UL * a);
    memo.store_row(1, p, row);
  } else {
    for (unsigned a = 0; a < alpha; ++a) memo.find({level, p, a}, row[a]);
  }

  std::vector<Rational> next(alpha + 1);
  for (unsigned l = level + 1; l <= n; ++l) {
    for (unsigned a = 0; a <= alpha; ++a) {
      Rational sum = 0;
      for (unsigned i = 0; i <= a; ++i) {
        sum += inverse_power(p, static_cast<unsigned long>(l) * i) * row[a - i];
      }
      next[a] = std::move(sum);
    }
    row.swap(next);
    memo.store_row(l, p, row);
  }
  return row[alpha];
}

Rational f_n_at(unsigned n, u64 g) {
  if (n < 1) fail(ErrorKind::parameter, "f_n requires n >= 1");
  Rational total = 1;
  for (const auto& [p, alpha] : factorize(g).factors) {
    total *= f_n_prime_power(n, p, alpha);
  }
  return total;
}

Rational f_limit_prime_power_by_recurrence(u64 p, unsigned alpha, double tol) {
  if (!(tol > 0)) fail(ErrorKind::parameter, "tolerance must be positive");
  if (!is_prime(p)) fail(ErrorKind::parameter, std::to_string(p) + " is not prime");
  if (alpha == 0) return 1;
  const Rational rel_tol(tol);
  Rational prev = f_n_prime_power(1, p, alpha);
  for (unsigned n = 2;; ++n) {
    Rational cur = f_n_prime_power(n, p, alpha);
    // Iterates increase in n.
    if (cur - prev <= rel_tol * cur) return cur;
    prev = std::move(cur);
  }
}

Rational f_limit_prime_power(u64 p, unsigned alpha, double tol) {
  if (!is_prime(p)) fail(ErrorKind::parameter, std::to_string(p) + " is not prime");
  const mpz_class P(static_cast<unsigned long>(p));
  switch (alpha) {
    case 0:
      return 1;
    case 1: {
      Rational q(mpz_class(2 * P - 1), mpz_class(P * P * (P - 1)));
      q.canonicalize();
      return q;
    }
    case 2: {
      Rational q(mpz_class(3 * P * P * P - P * P - 2 * P + 1),
                 mpz_class(P * P * P * P * (P - 1) * (P - 1) * (P + 1)));
      q.canonicalize();
      return q;
    }
    default:
      return f_limit_prime_power_by_recurrence(p, alpha, tol);
  }
}

Rational f_limit_at(u64 g, double tol) {
  Rational total = 1;
  for (const auto& [p, alpha] : factorize(g).factors) {
    total *= f_limit_prime_power(p, alpha, tol);
  }
  return total;
}

Real gcd_det_normalizer(unsigned n, double tol) {
  if (n < 2) fail(ErrorKind::parameter, "D_n requires n >= 2");
  return zeta(2, tol) * zeta_product(2, static_cast<int>(n), tol);
}

Real D_n_at(unsigned n, u64 g, double tol) {
  const Real norm = gcd_det_normalizer(n, tol);
  return static_cast<Real>(to_double(f_n_at(n, g))) / norm;
}

Real D_limit_at(u64 g, double tol) {
  const Real scale = limit_constant_d(tol) / zeta(2, tol);
  return scale * static_cast<Real>(to_double(f_limit_at(g)));
}

Real dirichlet_series_partial(unsigned n, int s, u64 G, double tol) {
  if (G < 1) fail(ErrorKind::parameter, "G must be >= 1");
  if (s < 0) fail(ErrorKind::parameter, "s must be nonnegative");
  check_arg(G);
  const Real norm = gcd_det_normalizer(n, tol);
  Real sum = 0;
  for (u64 g = 1; g <= G; ++g) {
    sum += static_cast<Real>(to_double(f_n_at(n, g))) *
           std::pow(static_cast<Real>(g), -static_cast<Real>(s));
  }
  return sum / norm;
}

Real dirichlet_series_closed_form(unsigned n, int s, double tol) {
  if (s < 1) fail(ErrorKind::domain, "closed form requires s >= 1");
  const Real norm = gcd_det_normalizer(n, tol);
  return zeta(s + 2, tol) * zeta_product(s + 2, s + static_cast<int>(n), tol) / norm;
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace hnfd
