#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace hnfd {

using Integer = mpz_class;

/// Dense row-major integer matrix with arbitrary-precision entries.
/// Both dimensions are at least one.
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(
      std::initializer_list<std::initializer_list<long>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool is_zero() const;

  Integer& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<Integer> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const Integer> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<const Integer> entries() const noexcept { return data_; }

  /// Submatrix made of the first `count` columns.
  IntMatrix leading_columns(std::size_t count) const;
  /// Submatrix made of the given columns, in the given order.
  IntMatrix select_columns(std::span<const std::size_t> cols) const;

  void swap_rows(std::size_t a, std::size_t b);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

/// Text format: "n m" on the first line, then n lines of m signed decimal
/// integers separated by single spaces. Trailing blank lines are ignored.
IntMatrix parse_matrix(std::string_view text);
IntMatrix read_matrix_file(const std::string& path);
std::string format_matrix(const IntMatrix& a);

std::ostream& operator<<(std::ostream& os, const IntMatrix& a);

/// Sampling parameters for the translated cube
/// prod_i [center_i - half_width, center_i + half_width).
struct SampleConfig {
  std::size_t n = 2;
  std::size_t m = 2;
  /// Empty means the origin; otherwise exactly n*m entries, row-major.
  std::vector<std::int64_t> center;
  std::uint64_t half_width = 1;
  std::uint64_t count = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;

  /// Throws Error(config) when any field is out of range.
  void validate() const;
  std::int64_t center_at(std::size_t flat_index) const {
    return center.empty() ? 0 : center[flat_index];
  }
};

/// Largest supported half-width; keeps 2*half_width inside 63 bits.
inline constexpr std::uint64_t kMaxHalfWidth = std::uint64_t{1} << 61;

/// The index-th matrix of the stream defined by (seed, index). The result
/// does not depend on cfg.workers or on which other indices are drawn.
IntMatrix sample_matrix(const SampleConfig& cfg, std::uint64_t index);

/// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& a);

/// Nonnegative gcd of all i x i minors of the submatrix formed by `cols`
/// (which must hold exactly i strictly increasing column indices). Zero
/// iff every such minor vanishes.
Integer minors_gcd(const IntMatrix& a, std::size_t i,
                   std::span<const std::size_t> cols);

/// Product of `num_ops` random elementary row operations: row swaps, row
/// negations and additions of k times one row to another, 1 <= |k| <=
/// max_multiplier. Deterministic in (n, num_ops, seed, max_multiplier).
IntMatrix random_unimodular(std::size_t n, std::size_t num_ops,
                            std::uint64_t seed,
                            std::uint64_t max_multiplier = 5);

}  // namespace hnfd
