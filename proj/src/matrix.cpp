#include "hnfd/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>

#include "hnfd/error.hpp"
#include "rng.hpp"

namespace hnfd {

namespace {

void require_shape(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    fail(ErrorKind::dimension, "matrix dimensions must be positive, got " +
                                   std::to_string(rows) + "x" +
                                   std::to_string(cols));
  }
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
  require_shape(rows, cols);
  data_.resize(rows * cols);
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols,
                     std::vector<Integer> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  require_shape(rows, cols);
  if (data_.size() != rows * cols) {
    fail(ErrorKind::dimension, "entry count does not match dimensions");
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix id(n, n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 1;
  return id;
}

IntMatrix IntMatrix::from_rows(
    std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t n = rows.size();
  const std::size_t m = n == 0 ? 0 : rows.begin()->size();
  IntMatrix a(n, m);
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != m) fail(ErrorKind::dimension, "ragged row list");
    std::size_t j = 0;
    for (long v : r) a(i, j++) = v;
    ++i;
  }
  return a;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Integer& x) { return sgn(x) == 0; });
}

IntMatrix IntMatrix::leading_columns(std::size_t count) const {
  if (count == 0 || count > cols_) {
    fail(ErrorKind::dimension, "leading column count out of range");
  }
  IntMatrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, j);
  return out;
}

IntMatrix IntMatrix::select_columns(std::span<const std::size_t> cols) const {
  if (cols.empty()) fail(ErrorKind::dimension, "empty column selection");
  IntMatrix out(rows_, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= cols_) fail(ErrorKind::dimension, "column index out of range");
    for (std::size_t i = 0; i < rows_; ++i) out(i, j) = (*this)(i, cols[j]);
  }
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(data_.begin() + a * cols_, data_.begin() + (a + 1) * cols_,
                   data_.begin() + b * cols_);
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) {
    fail(ErrorKind::dimension, "incompatible shapes for multiplication");
  }
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Integer& x = a(i, l);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += x * b(l, j);
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

bool all_digits(std::string::const_iterator b, std::string::const_iterator e) {
  return std::all_of(b, e, [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::size_t parse_dimension(const std::string& tok) {
  if (tok.empty() || !all_digits(tok.begin(), tok.end())) {
    fail(ErrorKind::parse, "bad dimension '" + tok + "'");
  }
  return std::stoul(tok);
}

Integer parse_integer(const std::string& tok) {
  std::size_t start = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
  if (start == tok.size() || !all_digits(tok.begin() + start, tok.end())) {
    fail(ErrorKind::parse, "bad integer '" + tok + "'");
  }
  // mpz rejects a leading '+'.
  return Integer(tok[0] == '+' ? tok.substr(1) : tok, 10);
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  for (std::string t; in >> t;) toks.push_back(std::move(t));
  return toks;
}

}  // namespace

IntMatrix parse_matrix(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(std::move(line));
    }
  }
  while (!lines.empty() &&
         lines.back().find_first_not_of(" \t") == std::string::npos) {
    lines.pop_back();
  }
  if (lines.empty()) fail(ErrorKind::parse, "empty matrix text");

  const auto header = split_tokens(lines[0]);
  if (header.size() != 2) fail(ErrorKind::parse, "header must be 'n m'");
  const std::size_t n = parse_dimension(header[0]);
  const std::size_t m = parse_dimension(header[1]);
  if (n == 0 || m == 0) fail(ErrorKind::parse, "dimensions must be positive");
  if (lines.size() != n + 1) {
    fail(ErrorKind::parse, "expected " + std::to_string(n) + " rows, found " +
                               std::to_string(lines.size() - 1));
  }

  IntMatrix a(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    const auto toks = split_tokens(lines[i + 1]);
    if (toks.size() != m) {
      fail(ErrorKind::parse, "row " + std::to_string(i + 1) + " has " +
                                 std::to_string(toks.size()) +
                                 " entries, expected " + std::to_string(m));
    }
    for (std::size_t j = 0; j < m; ++j) a(i, j) = parse_integer(toks[j]);
  }
  return a;
}

IntMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorKind::io, "error reading '" + path + "'");
  return parse_matrix(buf.str());
}

std::string format_matrix(const IntMatrix& a) {
  std::ostringstream out;
  out << a;
  return out.str();
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& a) {
  os << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) os << ' ';
      os << a(i, j);
    }
    os << '\n';
  }
  return os;
}

// ---------------------------------------------------------------------------
// Sampling

void SampleConfig::validate() const {
  if (n == 0 || m == 0) fail(ErrorKind::config, "n and m must be positive");
  if (half_width < 1) fail(ErrorKind::config, "half_width must be >= 1");
  if (half_width > kMaxHalfWidth) {
    fail(ErrorKind::config, "half_width exceeds 2^61");
  }
  if (count < 1) fail(ErrorKind::config, "count must be >= 1");
  if (workers < 1) fail(ErrorKind::config, "workers must be >= 1");
  if (!center.empty() && center.size() != n * m) {
    fail(ErrorKind::config, "center must have n*m = " +
                                std::to_string(n * m) + " entries, got " +
                                std::to_string(center.size()));
  }
}

IntMatrix sample_matrix(const SampleConfig& cfg, std::uint64_t index) {
  cfg.validate();
  if (index >= cfg.count) fail(ErrorKind::config, "sample index >= count");

  auto rng = detail::SplitMix64::for_index(cfg.seed, index);
  const std::uint64_t width = 2 * cfg.half_width;
  IntMatrix a(cfg.n, cfg.m);
  for (std::size_t k = 0; k < cfg.n * cfg.m; ++k) {
    // z - B + u with u uniform on [0, 2B); evaluated in 128 bits.
    const __int128 v = static_cast<__int128>(cfg.center_at(k)) -
                       static_cast<__int128>(cfg.half_width) +
                       static_cast<__int128>(rng.below(width));
    Integer& e = a(k / cfg.m, k % cfg.m);
    if (v >= INT64_MIN && v <= INT64_MAX) {
      e = static_cast<long>(v);
    } else {
      const bool neg = v < 0;
      const unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(v)
                                        : static_cast<unsigned __int128>(v);
      e = static_cast<unsigned long>(mag >> 64);
      e <<= 64;
      e += static_cast<unsigned long>(mag);
      if (neg) e = -e;
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// Determinant, minors

Integer determinant(const IntMatrix& a) {
  if (!a.square()) fail(ErrorKind::dimension, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  IntMatrix w = a;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(w(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(w(p, k)) == 0) ++p;
      if (p == n) return 0;
      w.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = w(k, k) * w(i, j) - w(i, k) * w(k, j);
        mpz_divexact(w(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = w(k, k);
  }
  Integer det = w(n - 1, n - 1);
  if (sign < 0) det = -det;
  return det;
}

Integer minors_gcd(const IntMatrix& a, std::size_t i,
                   std::span<const std::size_t> cols) {
  if (i == 0 || i > a.rows() || i > a.cols()) {
    fail(ErrorKind::dimension, "minor size out of range");
  }
  if (cols.size() != i) {
    fail(ErrorKind::dimension, "need exactly i column indices");
  }
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= a.cols() || (j > 0 && cols[j] <= cols[j - 1])) {
      fail(ErrorKind::dimension, "column indices must be strictly increasing");
    }
  }

  const IntMatrix sub = a.select_columns(cols);
  // Enumerate every i-subset of rows in lexicographic order.
  std::vector<std::size_t> pick(i);
  for (std::size_t t = 0; t < i; ++t) pick[t] = t;
  Integer g = 0;
  IntMatrix minor(i, i);
  while (true) {
    for (std::size_t r = 0; r < i; ++r)
      for (std::size_t c = 0; c < i; ++c) minor(r, c) = sub(pick[r], c);
    const Integer det = determinant(minor);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
    if (g == 1) break;

    std::size_t t = i;
    while (t > 0 && pick[t - 1] == a.rows() - i + t - 1) --t;
    if (t == 0) break;
    ++pick[t - 1];
    for (std::size_t u = t; u < i; ++u) pick[u] = pick[u - 1] + 1;
  }
  return g;
}

IntMatrix random_unimodular(std::size_t n, std::size_t num_ops,
                            std::uint64_t seed, std::uint64_t max_multiplier) {
  if (n == 0) fail(ErrorKind::parameter, "unimodular size must be positive");
  if (max_multiplier == 0) fail(ErrorKind::parameter, "multiplier bound must be >= 1");
  detail::SplitMix64 rng(detail::mix64(seed ^ 0xD1B54A32D192ED03ULL));
  IntMatrix u = IntMatrix::identity(n);
  for (std::size_t op = 0; op < num_ops; ++op) {
    // With one row only negation is available.
    const std::uint64_t kind = n == 1 ? 1 : rng.below(3);
    if (kind == 0) {
      const std::size_t a = rng.below(n);
      std::size_t b = rng.below(n - 1);
      if (b >= a) ++b;
      u.swap_rows(a, b);
    } else if (kind == 1) {
      const std::size_t a = rng.below(n);
      for (auto& x : u.row(a)) x = -x;
    } else {
      const std::size_t dst = rng.below(n);
      std::size_t src = rng.below(n - 1);
      if (src >= dst) ++src;
      const auto mag = static_cast<long>(rng.below(max_multiplier) + 1);
      const long k = rng.below(2) ? mag : -mag;
      for (std::size_t j = 0; j < n; ++j) u(dst, j) += k * u(src, j);
    }
  }
  return u;
}

}  // namespace hnfd
