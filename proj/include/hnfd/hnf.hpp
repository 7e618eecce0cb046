#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hnfd/matrix.hpp"

namespace hnfd {

/// Row-style Hermite normal form of an n x m matrix A together with a
/// unimodular witness.
///
/// Convention: `transform` satisfies transform * A == form. Texts that write
/// A = U * H use the inverse of this matrix; the form itself is identical.
struct HnfResult {
  IntMatrix form;       // H
  IntMatrix transform;  // U, n x n, det = +-1
  std::vector<std::size_t> pivot_cols;  // strictly increasing
  std::vector<Integer> pivots;          // H(i, pivot_cols[i]) > 0
  std::size_t rank = 0;
};

/// A prescribed diagonal prefix (d_1, ..., d_k), k >= 1.
struct DiagPattern {
  std::vector<std::uint64_t> values;

  std::size_t size() const noexcept { return values.size(); }
  bool has_zero() const noexcept;
  /// Throws Error(parameter) if empty.
  void validate() const;
};

/// Computes the unique HNF of A.
///
/// Columns are processed left to right. In each column the entries below
/// the settled pivot rows are folded into the pivot row top-to-bottom by
/// 2x2 extended-gcd row operations, the pivot is made positive, and the
/// entries above it are reduced into [0, pivot). The fold order is fixed,
/// so the transform is reproducible as well.
///
/// The zero matrix yields H = 0, rank 0 and the identity transform.
HnfResult hnf(const IntMatrix& a);

/// Same form as hnf(a).form without accumulating the transform.
IntMatrix hnf_form(const IntMatrix& a);

/// True iff H is in Hermite normal form: nonzero rows first, positive
/// leading entries in strictly increasing columns, and entries above each
/// pivot in [0, pivot).
bool is_hnf(const IntMatrix& h);

/// (H_11, ..., H_qq) with q = min(n, m) for H = HNF(A).
std::vector<Integer> diag_of_hnf(const IntMatrix& a);

/// First k entries of diag_of_hnf(a). Only the first k columns of A are
/// reduced, since they alone determine the leading k x k block of H.
std::vector<Integer> diag_prefix_of_hnf(const IntMatrix& a, std::size_t k);

/// True iff the diagonal of HNF(A) starts with the pattern.
bool hnf_diag_matches(const IntMatrix& a, const DiagPattern& pattern);

}  // namespace hnfd
