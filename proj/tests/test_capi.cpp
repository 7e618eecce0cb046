#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hnfd/hnfd.h"

using nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  hnfd_string_free(s);
  return out;
}

hnfd_matrix* matrix(std::size_t rows, std::size_t cols, std::vector<int64_t> v) {
  hnfd_matrix* m = nullptr;
  REQUIRE(hnfd_matrix_create(rows, cols, v.data(), &m) == HNFD_OK);
  return m;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(hnfd_version()).size() > 0);
  CHECK(std::string(hnfd_status_name(HNFD_OK)) == "ok");
  CHECK(std::string(hnfd_status_name(HNFD_ERR_IO)) == "I/O error");
  CHECK(std::string(hnfd_status_name(static_cast<hnfd_status>(99))) == "unknown status");
}

TEST_CASE("matrix handles") {
  hnfd_matrix* a = matrix(2, 2, {0, 3, 2, 1});
  CHECK(hnfd_matrix_rows(a) == 2);
  CHECK(hnfd_matrix_cols(a) == 2);
  char* s = nullptr;
  REQUIRE(hnfd_matrix_entry(a, 0, 1, &s) == HNFD_OK);
  CHECK(take(s) == "3");
  CHECK(hnfd_matrix_entry(a, 2, 0, &s) == HNFD_ERR_DIMENSION);
  REQUIRE(hnfd_matrix_format(a, &s) == HNFD_OK);
  CHECK(take(s) == "2 2\n0 3\n2 1\n");
  REQUIRE(hnfd_determinant(a, &s) == HNFD_OK);
  CHECK(take(s) == "-6");

  hnfd_matrix* b = nullptr;
  REQUIRE(hnfd_matrix_clone(a, &b) == HNFD_OK);
  CHECK(hnfd_matrix_equal(a, b));
  hnfd_matrix* c = nullptr;
  REQUIRE(hnfd_matrix_multiply(a, b, &c) == HNFD_OK);
  REQUIRE(hnfd_matrix_format(c, &s) == HNFD_OK);
  CHECK(take(s) == "2 2\n6 3\n2 7\n");

  const size_t cols[] = {0, 1};
  REQUIRE(hnfd_minors_gcd(a, 2, cols, &s) == HNFD_OK);
  CHECK(take(s) == "6");
  hnfd_matrix_free(a);
  hnfd_matrix_free(b);
  hnfd_matrix_free(c);
  hnfd_matrix_free(nullptr);
}

TEST_CASE("errors map to status codes") {
  hnfd_matrix* m = nullptr;
  CHECK(hnfd_matrix_parse("2 2\n1 2\n", &m) == HNFD_ERR_PARSE);
  CHECK(m == nullptr);
  CHECK(std::string(hnfd_last_error()).find("rows") != std::string::npos);
  CHECK(hnfd_matrix_load("/nonexistent/x.txt", &m) == HNFD_ERR_IO);
  CHECK(hnfd_matrix_create(0, 2, nullptr, &m) == HNFD_ERR_DIMENSION);
  CHECK(hnfd_matrix_parse(nullptr, &m) == HNFD_ERR_NULL_ARGUMENT);

  double x = 0;
  CHECK(hnfd_zeta(1, 1e-12, &x) == HNFD_ERR_DOMAIN);
  CHECK(hnfd_zeta(2, 1e-12, nullptr) == HNFD_ERR_NULL_ARGUMENT);
  hnfd_density v{};
  const uint64_t p11[] = {1, 1};
  CHECK(hnfd_diag_density(2, 2, p11, 2, 1e-12, &v, nullptr) == HNFD_ERR_UNSUPPORTED);
  uint64_t primes[4];
  unsigned exps[4];
  size_t count = 0;
  CHECK(hnfd_factorize(0, primes, exps, 4, &count) == HNFD_ERR_RANGE);
  hnfd_sample_config cfg{};
  cfg.n = cfg.m = 2;
  cfg.count = 10;
  CHECK(hnfd_sample_matrix(&cfg, 0, &m) == HNFD_ERR_CONFIG);
  cfg.half_width = 5;
  CHECK(hnfd_sample_matrix(&cfg, 0, &m) == HNFD_ERR_CONFIG);  // workers = 0
  cfg.workers = 1;
  REQUIRE(hnfd_sample_matrix(&cfg, 0, &m) == HNFD_OK);
  CHECK(std::string(hnfd_last_error()).empty());
  hnfd_matrix_free(m);
}

TEST_CASE("last error is per thread") {
  hnfd_matrix* m = nullptr;
  CHECK(hnfd_matrix_parse("x", &m) == HNFD_ERR_PARSE);
  std::thread([] {
    double x = 0;
    CHECK(hnfd_zeta(2, 1e-12, &x) == HNFD_OK);
    CHECK(std::string(hnfd_last_error()).empty());
  }).join();
  CHECK_FALSE(std::string(hnfd_last_error()).empty());
}

TEST_CASE("Hermite normal form through handles") {
  hnfd_matrix* a = matrix(2, 2, {0, 3, 2, 1});
  hnfd_hnf_result* r = nullptr;
  REQUIRE(hnfd_hnf(a, &r) == HNFD_OK);
  CHECK(hnfd_hnf_result_rank(r) == 2);
  char* s = nullptr;
  REQUIRE(hnfd_matrix_format(hnfd_hnf_result_form(r), &s) == HNFD_OK);
  CHECK(take(s) == "2 2\n2 1\n0 3\n");
  hnfd_matrix* ua = nullptr;
  REQUIRE(hnfd_matrix_multiply(hnfd_hnf_result_transform(r), a, &ua) == HNFD_OK);
  CHECK(hnfd_matrix_equal(ua, hnfd_hnf_result_form(r)));
  size_t col = 9;
  REQUIRE(hnfd_hnf_result_pivot(r, 1, &col, &s) == HNFD_OK);
  CHECK(col == 1);
  CHECK(take(s) == "3");
  CHECK(hnfd_hnf_result_pivot(r, 2, &col, nullptr) == HNFD_ERR_DIMENSION);
  int ok = 0;
  REQUIRE(hnfd_is_hnf(hnfd_hnf_result_form(r), &ok) == HNFD_OK);
  CHECK(ok == 1);
  REQUIRE(hnfd_hnf_result_json(r, &s) == HNFD_OK);
  const auto j = json::parse(take(s));
  CHECK(j["H"] == json::parse(R"([["2","1"],["0","3"]])"));
  CHECK(j["rank"] == 2);

  char* diag[2];
  size_t count = 0;
  REQUIRE(hnfd_diag_of_hnf(a, diag, 2, &count) == HNFD_OK);
  CHECK(count == 2);
  CHECK(take(diag[0]) == "2");
  CHECK(take(diag[1]) == "3");
  CHECK(hnfd_diag_of_hnf(a, diag, 1, &count) == HNFD_ERR_DIMENSION);
  CHECK(count == 2);

  hnfd_matrix_free(ua);
  hnfd_hnf_result_free(r);
  hnfd_matrix_free(a);
}

TEST_CASE("densities and arithmetic functions") {
  double x = 0;
  REQUIRE(hnfd_limit_constant_d(1e-10, &x) == HNFD_OK);
  CHECK(std::floor(x * 1e11) == 43575707677.0);
  hnfd_density v{};
  char* s = nullptr;
  const uint64_t one[] = {1};
  REQUIRE(hnfd_diag_density(2, 2, one, 1, 1e-12, &v, &s) == HNFD_OK);
  CHECK(std::fabs(v.value - 0.607927101854) < 1e-11);
  CHECK(json::parse(take(s))["value"].get<double>() == 0.607927101854);
  REQUIRE(hnfd_residue_density(2, one, 1, 5, 3, 1e-12, &v, nullptr) == HNFD_OK);
  CHECK(std::fabs(v.value - 0.607927101854 / 5) < 1e-11);
  REQUIRE(hnfd_unimodular_density(3, 2, 1e-12, &v, nullptr) == HNFD_OK);
  CHECK(std::fabs(v.value - 0.505739038024) < 1e-11);
  REQUIRE(hnfd_lattice_shape_density(HNFD_SHAPE_NTRU, 2, 1, 1e-12, &v, nullptr) == HNFD_OK);
  CHECK(v.heuristic == 1);
  CHECK(hnfd_lattice_shape_density(static_cast<hnfd_lattice_shape>(7), 2, 1, 1e-12, &v,
                                   nullptr) == HNFD_ERR_PARAMETER);

  uint64_t primes[2];
  unsigned exps[2];
  size_t count = 0;
  REQUIRE(hnfd_factorize(1099511627777ULL, primes, exps, 2, &count) == HNFD_OK);
  CHECK(count == 2);
  CHECK(primes[1] == 4278255361ULL);
  REQUIRE(hnfd_f_limit(7, 1e-15, &s) == HNFD_OK);
  CHECK(take(s) == "13/294");
  REQUIRE(hnfd_f_n(5, 2, &s) == HNFD_OK);
  CHECK(take(s) == "23/32");
  REQUIRE(hnfd_d_limit(1, 1e-12, &x) == HNFD_OK);
  CHECK(std::fabs(x - 0.264908536795) < 1e-11);
  REQUIRE(hnfd_distribution_json(5, 3, 1e-12, &s) == HNFD_OK);
  CHECK(json::parse(take(s))["rows"].size() == 3);
}

TEST_CASE("experiments through the C API") {
  hnfd_sample_config cfg{};
  cfg.n = cfg.m = 2;
  cfg.half_width = 1000000;
  cfg.count = 5000;
  cfg.workers = 2;
  const uint64_t one[] = {1};
  char* s = nullptr;
  REQUIRE(hnfd_run_diag_experiment(&cfg, one, 1, &s) == HNFD_OK);
  const auto rep = json::parse(take(s));
  CHECK(rep["config"]["workers"] == 2);
  CHECK(rep["trials"] == 5000);

  REQUIRE(hnfd_run_residue_experiment(&cfg, one, 1, 3, &s) == HNFD_OK);
  CHECK(json::parse(take(s)).size() == 3);

  cfg.n = 3;
  cfg.m = 2;
  cfg.half_width = 100;
  char* csv = nullptr;
  REQUIRE(hnfd_run_gcd_det_experiment(&cfg, 5, &s, &csv) == HNFD_OK);
  CHECK(json::parse(take(s))["config"]["gmax"] == 5);
  CHECK(take(csv).rfind("g,count,", 0) == 0);

  const int64_t center[] = {1, 2};
  cfg.center = center;
  cfg.center_len = 2;
  CHECK(hnfd_run_gcd_det_experiment(&cfg, 5, &s, nullptr) == HNFD_ERR_CONFIG);
}
