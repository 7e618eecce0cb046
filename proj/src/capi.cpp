#include "hnfd/hnfd.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "hnfd/arith.hpp"
#include "hnfd/density.hpp"
#include "hnfd/error.hpp"
#include "hnfd/hnf.hpp"
#include "hnfd/matrix.hpp"
#include "hnfd/montecarlo.hpp"
#include "hnfd/report.hpp"

struct hnfd_matrix {
  hnfd::IntMatrix value;
};

struct hnfd_hnf_result {
  hnfd::HnfResult result;
  hnfd_matrix form;
  hnfd_matrix transform;
};

namespace {

thread_local std::string g_last_error;

hnfd_status status_of(hnfd::ErrorKind kind) {
  using hnfd::ErrorKind;
  switch (kind) {
    case ErrorKind::config: return HNFD_ERR_CONFIG;
    case ErrorKind::dimension: return HNFD_ERR_DIMENSION;
    case ErrorKind::domain: return HNFD_ERR_DOMAIN;
    case ErrorKind::parameter: return HNFD_ERR_PARAMETER;
    case ErrorKind::unsupported: return HNFD_ERR_UNSUPPORTED;
    case ErrorKind::range: return HNFD_ERR_RANGE;
    case ErrorKind::parse: return HNFD_ERR_PARSE;
    case ErrorKind::io: return HNFD_ERR_IO;
  }
  return HNFD_ERR_INTERNAL;
}

template <typename F>
hnfd_status guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return HNFD_OK;
  } catch (const hnfd::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return HNFD_ERR_INTERNAL;
}

// Turns a null required pointer into HNFD_ERR_NULL_ARGUMENT.
struct NullArgument {};

template <typename F>
hnfd_status guard_args(bool ok, F&& body) {
  if (!ok) {
    g_last_error = "required pointer argument is NULL";
    return HNFD_ERR_NULL_ARGUMENT;
  }
  return guard(std::forward<F>(body));
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

hnfd::SampleConfig to_config(const hnfd_sample_config& c) {
  if (c.center_len > 0 && c.center == nullptr) {
    hnfd::fail(hnfd::ErrorKind::config, "center is NULL but center_len > 0");
  }
  hnfd::SampleConfig cfg;
  cfg.n = c.n;
  cfg.m = c.m;
  if (c.center_len > 0) cfg.center.assign(c.center, c.center + c.center_len);
  cfg.half_width = c.half_width;
  cfg.count = c.count;
  cfg.seed = c.seed;
  cfg.workers = c.workers;
  return cfg;
}

std::vector<std::uint64_t> to_vector(const uint64_t* p, size_t len) {
  if (len > 0 && p == nullptr) {
    hnfd::fail(hnfd::ErrorKind::parameter, "array is NULL but length > 0");
  }
  return len == 0 ? std::vector<std::uint64_t>{}
                  : std::vector<std::uint64_t>(p, p + len);
}

void emit_density(const hnfd::DensityValue& v, hnfd_density* out,
                  char** out_json) {
  out->value = static_cast<double>(v.value);
  out->error_bound = static_cast<double>(v.error_bound);
  out->heuristic = v.heuristic ? 1 : 0;
  if (out_json) *out_json = dup(hnfd::to_json(v));
}

hnfd_matrix* wrap(hnfd::IntMatrix m) { return new hnfd_matrix{std::move(m)}; }

}  // namespace

extern "C" {

const char* hnfd_version(void) { return "1.0.0"; }

const char* hnfd_last_error(void) { return g_last_error.c_str(); }

const char* hnfd_status_name(hnfd_status status) {
  switch (status) {
    case HNFD_OK: return "ok";
    case HNFD_ERR_CONFIG: return "configuration error";
    case HNFD_ERR_DIMENSION: return "dimension error";
    case HNFD_ERR_DOMAIN: return "domain error";
    case HNFD_ERR_PARAMETER: return "parameter error";
    case HNFD_ERR_UNSUPPORTED: return "unsupported range";
    case HNFD_ERR_RANGE: return "range error";
    case HNFD_ERR_PARSE: return "parse error";
    case HNFD_ERR_IO: return "I/O error";
    case HNFD_ERR_NULL_ARGUMENT: return "null argument";
    case HNFD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void hnfd_string_free(char* s) { std::free(s); }

// ---- matrices ------------------------------------------------------------

hnfd_status hnfd_matrix_create(size_t rows, size_t cols, const int64_t* entries,
                               hnfd_matrix** out) {
  return guard_args(out && (entries || rows * cols == 0), [&] {
    hnfd::IntMatrix m(rows, cols);
    for (size_t k = 0; k < rows * cols; ++k) {
      m(k / cols, k % cols) = static_cast<long>(entries[k]);
    }
    *out = wrap(std::move(m));
  });
}

hnfd_status hnfd_matrix_parse(const char* text, hnfd_matrix** out) {
  return guard_args(text && out,
                    [&] { *out = wrap(hnfd::parse_matrix(text)); });
}

hnfd_status hnfd_matrix_load(const char* path, hnfd_matrix** out) {
  return guard_args(path && out,
                    [&] { *out = wrap(hnfd::read_matrix_file(path)); });
}

hnfd_status hnfd_matrix_clone(const hnfd_matrix* m, hnfd_matrix** out) {
  return guard_args(m && out, [&] { *out = wrap(m->value); });
}

void hnfd_matrix_free(hnfd_matrix* m) { delete m; }

size_t hnfd_matrix_rows(const hnfd_matrix* m) { return m ? m->value.rows() : 0; }

size_t hnfd_matrix_cols(const hnfd_matrix* m) { return m ? m->value.cols() : 0; }

hnfd_status hnfd_matrix_entry(const hnfd_matrix* m, size_t i, size_t j,
                              char** out) {
  return guard_args(m && out, [&] {
    if (i >= m->value.rows() || j >= m->value.cols()) {
      hnfd::fail(hnfd::ErrorKind::dimension, "entry index out of range");
    }
    *out = dup(m->value(i, j).get_str());
  });
}

hnfd_status hnfd_matrix_format(const hnfd_matrix* m, char** out) {
  return guard_args(m && out, [&] { *out = dup(hnfd::format_matrix(m->value)); });
}

hnfd_status hnfd_matrix_multiply(const hnfd_matrix* a, const hnfd_matrix* b,
                                 hnfd_matrix** out) {
  return guard_args(a && b && out, [&] { *out = wrap(a->value * b->value); });
}

int hnfd_matrix_equal(const hnfd_matrix* a, const hnfd_matrix* b) {
  return a && b && a->value == b->value;
}

hnfd_status hnfd_determinant(const hnfd_matrix* m, char** out) {
  return guard_args(m && out,
                    [&] { *out = dup(hnfd::determinant(m->value).get_str()); });
}

hnfd_status hnfd_minors_gcd(const hnfd_matrix* m, size_t i, const size_t* cols,
                            char** out) {
  return guard_args(m && out && (cols || i == 0), [&] {
    const std::span<const std::size_t> sel(cols, i);
    *out = dup(hnfd::minors_gcd(m->value, i, sel).get_str());
  });
}

hnfd_status hnfd_sample_matrix(const hnfd_sample_config* cfg, uint64_t index,
                               hnfd_matrix** out) {
  return guard_args(cfg && out, [&] {
    *out = wrap(hnfd::sample_matrix(to_config(*cfg), index));
  });
}

hnfd_status hnfd_random_unimodular(size_t n, size_t num_ops, uint64_t seed,
                                   hnfd_matrix** out) {
  return guard_args(out, [&] {
    *out = wrap(hnfd::random_unimodular(n, num_ops, seed));
  });
}

// ---- Hermite normal form -------------------------------------------------

hnfd_status hnfd_hnf(const hnfd_matrix* a, hnfd_hnf_result** out) {
  return guard_args(a && out, [&] {
    hnfd::HnfResult res = hnfd::hnf(a->value);
    hnfd_matrix form{res.form};
    hnfd_matrix transform{res.transform};
    *out = new hnfd_hnf_result{std::move(res), std::move(form),
                               std::move(transform)};
  });
}

void hnfd_hnf_result_free(hnfd_hnf_result* r) { delete r; }

const hnfd_matrix* hnfd_hnf_result_form(const hnfd_hnf_result* r) {
  return r ? &r->form : nullptr;
}

const hnfd_matrix* hnfd_hnf_result_transform(const hnfd_hnf_result* r) {
  return r ? &r->transform : nullptr;
}

size_t hnfd_hnf_result_rank(const hnfd_hnf_result* r) {
  return r ? r->result.rank : 0;
}

hnfd_status hnfd_hnf_result_pivot(const hnfd_hnf_result* r, size_t i,
                                  size_t* col, char** value) {
  return guard_args(r, [&] {
    if (i >= r->result.rank) {
      hnfd::fail(hnfd::ErrorKind::dimension, "pivot index >= rank");
    }
    if (col) *col = r->result.pivot_cols[i];
    if (value) *value = dup(r->result.pivots[i].get_str());
  });
}

hnfd_status hnfd_hnf_result_json(const hnfd_hnf_result* r, char** out) {
  return guard_args(r && out, [&] { *out = dup(hnfd::to_json(r->result)); });
}

hnfd_status hnfd_is_hnf(const hnfd_matrix* h, int* out) {
  return guard_args(h && out, [&] { *out = hnfd::is_hnf(h->value) ? 1 : 0; });
}

hnfd_status hnfd_diag_of_hnf(const hnfd_matrix* a, char** out, size_t cap,
                             size_t* count) {
  return guard_args(a && count && (out || cap == 0), [&] {
    const auto diag = hnfd::diag_of_hnf(a->value);
    *count = diag.size();
    if (cap < diag.size()) {
      hnfd::fail(hnfd::ErrorKind::dimension, "output capacity too small");
    }
    for (size_t i = 0; i < diag.size(); ++i) out[i] = dup(diag[i].get_str());
  });
}

// ---- densities -----------------------------------------------------------

hnfd_status hnfd_zeta(int s, double tol, double* out) {
  return guard_args(out, [&] { *out = static_cast<double>(hnfd::zeta(s, tol)); });
}

hnfd_status hnfd_limit_constant_d(double tol, double* out) {
  return guard_args(out, [&] {
    *out = static_cast<double>(hnfd::limit_constant_d(tol));
  });
}

hnfd_status hnfd_diag_density(size_t n, size_t m, const uint64_t* pattern,
                              size_t k, double tol, hnfd_density* out,
                              char** out_json) {
  return guard_args(out, [&] {
    emit_density(hnfd::diag_density(n, m, {to_vector(pattern, k)}, tol), out,
                 out_json);
  });
}

hnfd_status hnfd_full_diag_density(size_t n, const uint64_t* d, size_t len,
                                   double tol, hnfd_density* out,
                                   char** out_json) {
  return guard_args(out, [&] {
    const auto v = to_vector(d, len);
    emit_density(hnfd::full_diag_density(n, v, tol), out, out_json);
  });
}

hnfd_status hnfd_residue_density(size_t n, const uint64_t* prefix, size_t len,
                                 uint64_t d, uint64_t r, double tol,
                                 hnfd_density* out, char** out_json) {
  return guard_args(out, [&] {
    const auto v = to_vector(prefix, len);
    emit_density(hnfd::residue_density(n, v, d, r, tol), out, out_json);
  });
}

hnfd_status hnfd_unimodular_density(size_t n, size_t m, double tol,
                                    hnfd_density* out, char** out_json) {
  return guard_args(out, [&] {
    emit_density(hnfd::unimodular_density(n, m, tol), out, out_json);
  });
}

hnfd_status hnfd_lattice_shape_density(hnfd_lattice_shape shape, size_t n,
                                       uint64_t s, double tol,
                                       hnfd_density* out, char** out_json) {
  return guard_args(out, [&] {
    hnfd::LatticeShape kind;
    switch (shape) {
      case HNFD_SHAPE_KNAPSACK: kind = hnfd::LatticeShape::knapsack; break;
      case HNFD_SHAPE_RANDOM_BASIS: kind = hnfd::LatticeShape::random_basis; break;
      case HNFD_SHAPE_NTRU: kind = hnfd::LatticeShape::ntru; break;
      default: hnfd::fail(hnfd::ErrorKind::parameter, "unknown lattice shape");
    }
    emit_density(hnfd::lattice_shape_density(kind, n, s, tol), out, out_json);
  });
}

// ---- arithmetic functions ------------------------------------------------

hnfd_status hnfd_factorize(uint64_t g, uint64_t* primes, unsigned* exponents,
                           size_t cap, size_t* count) {
  return guard_args(count && ((primes && exponents) || cap == 0), [&] {
    const auto f = hnfd::factorize(g);
    *count = f.factors.size();
    if (cap < f.factors.size()) {
      hnfd::fail(hnfd::ErrorKind::dimension, "output capacity too small");
    }
    for (size_t i = 0; i < f.factors.size(); ++i) {
      primes[i] = f.factors[i].p;
      exponents[i] = f.factors[i].alpha;
    }
  });
}

hnfd_status hnfd_f_n(unsigned n, uint64_t g, char** out) {
  return guard_args(out, [&] { *out = dup(hnfd::f_n_at(n, g).get_str()); });
}

hnfd_status hnfd_f_limit(uint64_t g, double tol, char** out) {
  return guard_args(out, [&] { *out = dup(hnfd::f_limit_at(g, tol).get_str()); });
}

hnfd_status hnfd_d_n(unsigned n, uint64_t g, double tol, double* out) {
  return guard_args(out, [&] { *out = static_cast<double>(hnfd::D_n_at(n, g, tol)); });
}

hnfd_status hnfd_d_limit(uint64_t g, double tol, double* out) {
  return guard_args(out, [&] { *out = static_cast<double>(hnfd::D_limit_at(g, tol)); });
}

hnfd_status hnfd_distribution_json(unsigned n, uint64_t gmax, double tol,
                                   char** out) {
  return guard_args(out, [&] {
    *out = dup(hnfd::to_json(n, hnfd::distribution_table(n, gmax, tol)));
  });
}

// ---- Monte Carlo ---------------------------------------------------------

hnfd_status hnfd_run_diag_experiment(const hnfd_sample_config* cfg,
                                     const uint64_t* pattern, size_t k,
                                     char** out_json) {
  return guard_args(cfg && out_json, [&] {
    const auto rep =
        hnfd::run_diag_experiment(to_config(*cfg), {to_vector(pattern, k)});
    *out_json = dup(hnfd::to_json(rep));
  });
}

hnfd_status hnfd_run_residue_experiment(const hnfd_sample_config* cfg,
                                        const uint64_t* prefix, size_t len,
                                        uint64_t d, char** out_json) {
  return guard_args(cfg && out_json, [&] {
    const auto reps = hnfd::run_residue_experiment(
        to_config(*cfg), {to_vector(prefix, len)}, d);
    *out_json = dup(hnfd::to_json(reps));
  });
}

hnfd_status hnfd_run_gcd_det_experiment(const hnfd_sample_config* cfg,
                                        uint64_t gmax, char** out_json,
                                        char** out_csv) {
  return guard_args(cfg && out_json, [&] {
    const auto rep = hnfd::run_gcd_det_experiment(to_config(*cfg), gmax);
    char* json = dup(hnfd::to_json(rep));
    if (out_csv) {
      try {
        *out_csv = dup(hnfd::to_csv(rep));
      } catch (...) {
        std::free(json);
        throw;
      }
    }
    *out_json = json;
  });
}

}  // extern "C"
