#include "hnfd/hnf.hpp"

#include <algorithm>
#include <optional>

#include "hnfd/error.hpp"

namespace hnfd {

bool DiagPattern::has_zero() const noexcept {
  return std::find(values.begin(), values.end(), 0) != values.end();
}

void DiagPattern::validate() const {
  if (values.empty()) fail(ErrorKind::parameter, "diagonal pattern is empty");
}

namespace {

// Row operations applied to H and, when present, mirrored on U.
class Reducer {
 public:
  Reducer(IntMatrix h, std::optional<IntMatrix> u)
      : h_(std::move(h)), u_(std::move(u)) {}

  // [row_a; row_b] <- [[s, t], [-b/g, a/g]] * [row_a; row_b], the 2x2
  // unimodular step that leaves g = gcd(a, b) in row_a and 0 in row_b.
  void fold(std::size_t ra, std::size_t rb, std::size_t col) {
    mpz_gcdext(g_.get_mpz_t(), s_.get_mpz_t(), t_.get_mpz_t(),
               h_(ra, col).get_mpz_t(), h_(rb, col).get_mpz_t());
    mpz_divexact(p_.get_mpz_t(), h_(rb, col).get_mpz_t(), g_.get_mpz_t());
    mpz_divexact(q_.get_mpz_t(), h_(ra, col).get_mpz_t(), g_.get_mpz_t());
    p_ = -p_;
    combine(h_, ra, rb);
    if (u_) combine(*u_, ra, rb);
  }

  void negate(std::size_t r) {
    for (auto& x : h_.row(r)) x = -x;
    if (u_) {
      for (auto& x : u_->row(r)) x = -x;
    }
  }

  // row_dst -= k * row_src
  void subtract(std::size_t dst, std::size_t src, const Integer& k) {
    sub_row(h_, dst, src, k);
    if (u_) sub_row(*u_, dst, src, k);
  }

  IntMatrix& h() { return h_; }
  std::optional<IntMatrix>& u() { return u_; }

 private:
  void combine(IntMatrix& m, std::size_t ra, std::size_t rb) {
    auto a = m.row(ra);
    auto b = m.row(rb);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      x_ = s_ * a[j] + t_ * b[j];
      b[j] = p_ * a[j] + q_ * b[j];
      a[j].swap(x_);
    }
  }

  static void sub_row(IntMatrix& m, std::size_t dst, std::size_t src,
                      const Integer& k) {
    auto d = m.row(dst);
    auto s = m.row(src);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (sgn(s[j]) != 0) mpz_submul(d[j].get_mpz_t(), k.get_mpz_t(), s[j].get_mpz_t());
    }
  }

  IntMatrix h_;
  std::optional<IntMatrix> u_;
  Integer g_, s_, t_, p_, q_, x_;
};

struct Reduced {
  IntMatrix form;
  std::optional<IntMatrix> transform;
  std::vector<std::size_t> pivot_cols;
};

Reduced reduce(const IntMatrix& a, bool with_transform) {
  const std::size_t n = a.rows();
  Reducer red(a, with_transform ? std::optional<IntMatrix>(IntMatrix::identity(n))
                                : std::optional<IntMatrix>());
  IntMatrix& h = red.h();
  std::vector<std::size_t> pivot_cols;
  Integer quot;

  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols() && r < n; ++col) {
    // Cascade: fold every nonzero entry below row r into row r.
    bool any = false;
    for (std::size_t i = r; i < n; ++i) {
      if (sgn(h(i, col)) == 0) continue;
      if (!any) {
        any = true;
        if (i != r) {
          // First nonzero entry: moving it up is a plain swap.
          h.swap_rows(r, i);
          if (red.u()) red.u()->swap_rows(r, i);
        }
        continue;
      }
      red.fold(r, i, col);
    }
    if (!any) continue;

    if (sgn(h(r, col)) < 0) red.negate(r);

    const Integer& pivot = h(r, col);
    for (std::size_t k = 0; k < r; ++k) {
      mpz_fdiv_q(quot.get_mpz_t(), h(k, col).get_mpz_t(), pivot.get_mpz_t());
      if (sgn(quot) != 0) red.subtract(k, r, quot);
    }
    pivot_cols.push_back(col);
    ++r;
  }
  return {std::move(h), std::move(red.u()), std::move(pivot_cols)};
}

}  // namespace

HnfResult hnf(const IntMatrix& a) {
  Reduced red = reduce(a, true);
  HnfResult out{std::move(red.form), std::move(*red.transform),
                std::move(red.pivot_cols), {}, 0};
  out.rank = out.pivot_cols.size();
  out.pivots.reserve(out.rank);
  for (std::size_t i = 0; i < out.rank; ++i) {
    out.pivots.push_back(out.form(i, out.pivot_cols[i]));
  }
  return out;
}

IntMatrix hnf_form(const IntMatrix& a) { return reduce(a, false).form; }

bool is_hnf(const IntMatrix& h) {
  const std::size_t n = h.rows();
  const std::size_t m = h.cols();
  std::vector<std::size_t> lead;  // pivot column of each nonzero row
  bool seen_zero_row = false;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = 0;
    while (j < m && sgn(h(i, j)) == 0) ++j;
    if (j == m) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (sgn(h(i, j)) < 0) return false;
    if (!lead.empty() && j <= lead.back()) return false;
    lead.push_back(j);
  }
  for (std::size_t i = 0; i < lead.size(); ++i) {
    const Integer& pivot = h(i, lead[i]);
    for (std::size_t k = 0; k < i; ++k) {
      const Integer& above = h(k, lead[i]);
      if (sgn(above) < 0 || above >= pivot) return false;
    }
  }
  return true;
}

std::vector<Integer> diag_of_hnf(const IntMatrix& a) {
  return diag_prefix_of_hnf(a, std::min(a.rows(), a.cols()));
}

std::vector<Integer> diag_prefix_of_hnf(const IntMatrix& a, std::size_t k) {
  if (k == 0 || k > std::min(a.rows(), a.cols())) {
    fail(ErrorKind::dimension, "diagonal prefix length out of range");
  }
  const IntMatrix h =
      hnf_form(k == a.cols() ? a : a.leading_columns(k));
  std::vector<Integer> diag(k);
  for (std::size_t i = 0; i < k; ++i) diag[i] = h(i, i);
  return diag;
}

bool hnf_diag_matches(const IntMatrix& a, const DiagPattern& pattern) {
  pattern.validate();
  const auto diag = diag_prefix_of_hnf(a, pattern.size());
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] != pattern.values[i]) return false;
  }
  return true;
}

}  // namespace hnfd
