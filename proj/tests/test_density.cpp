#include <doctest.h>

#include <cmath>
#include <vector>

#include "hnfd/density.hpp"
#include "hnfd/error.hpp"
#include "reference_values.hpp"

using hnfd::ErrorKind;
using hnfd::LatticeShape;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const hnfd::Error& e) {
    return e.kind();
  }
  FAIL("expected an hnfd::Error");
  return ErrorKind::io;
}

double dbl(hnfd::Real x) { return static_cast<double>(x); }

}  // namespace

TEST_CASE("zeta values") {
  CHECK(std::fabs(dbl(hnfd::zeta(2)) - ref::zeta2) < 1e-12);
  CHECK(std::fabs(dbl(hnfd::zeta(2, 1e-16)) - ref::zeta2) < 1e-15);
  CHECK(std::fabs(dbl(hnfd::zeta(4)) - ref::zeta4) < 1e-12);
  CHECK(std::fabs(dbl(hnfd::zeta(40) - 1) - ref::zeta40_minus_1) < 2e-19);
  CHECK(std::fabs(dbl(hnfd::zeta(40)) - (1 + std::ldexp(1.0, -40))) < 1e-13);
  CHECK(hnfd::zeta_error_bound(3) <= hnfd::kMinTol);
}

TEST_CASE("zeta is decreasing towards 1") {
  hnfd::Real prev = hnfd::zeta(2);
  for (int s = 3; s <= 56; ++s) {
    const auto z = hnfd::zeta(s);
    CHECK(z < prev);
    CHECK(z > 1);
    prev = z;
  }
}

TEST_CASE("zeta domain and tolerance") {
  CHECK(kind_of([] { hnfd::zeta(1); }) == ErrorKind::domain);
  CHECK(kind_of([] { hnfd::zeta(-4); }) == ErrorKind::domain);
  CHECK(kind_of([] { hnfd::zeta(2, 1e-20); }) == ErrorKind::parameter);
  CHECK(kind_of([] { hnfd::zeta(2, 0); }) == ErrorKind::parameter);
}

TEST_CASE("zeta products") {
  CHECK(hnfd::zeta_product(2, 2) == hnfd::zeta(2));
  CHECK(std::fabs(dbl(hnfd::zeta_product(2, 3)) - ref::zeta2_zeta3) < 1e-12);
  CHECK(kind_of([] { hnfd::zeta_product(1, 3); }) == ErrorKind::domain);
  CHECK(kind_of([] { hnfd::zeta_product(4, 3); }) == ErrorKind::parameter);
}

TEST_CASE("limit constant d") {
  const double d10 = dbl(hnfd::limit_constant_d(1e-10));
  CHECK(std::floor(d10 * 1e11) == 43575707677.0);
  CHECK(std::fabs(dbl(hnfd::limit_constant_d()) - ref::d) < 1e-12);
  CHECK(std::fabs(dbl(hnfd::limit_constant_d(1e-3)) - 0.436) < 1e-3);

  // Partial products d * zeta(2) ... zeta(J) increase to 1.
  const auto d = hnfd::limit_constant_d();
  hnfd::Real partial = d;
  hnfd::Real prev = 0;
  for (int j = 2; j <= 62; ++j) {
    partial *= hnfd::zeta(j);
    CHECK(partial >= prev);
    CHECK(partial < 1 + 1e-15L);
    CHECK(1 - partial <= 3 * std::ldexp(1.0L, -j) + 1e-15L);
    prev = partial;
  }
  CHECK(std::fabs(dbl(partial) - 1) < 1e-15);
}

TEST_CASE("diagonal pattern densities") {
  const auto v = hnfd::diag_density(2, 2, {{1}});
  CHECK(std::fabs(dbl(v.value) - ref::inv_zeta2) < 1e-12);
  CHECK(v.error_bound <= 1e-12);
  CHECK(v.zeta_args == std::vector<int>{2});
  CHECK_FALSE(v.heuristic);

  CHECK(hnfd::diag_density(3, 3, {{1, 0}}).value == 0);
  CHECK(hnfd::diag_density(3, 3, {{0, 5}}).value == 0);
  CHECK(std::fabs(dbl(hnfd::diag_density(2, 2, {{2}}).value) - ref::inv_4zeta2) < 1e-12);
  CHECK(std::fabs(dbl(hnfd::diag_density(3, 3, {{2}}).value) - ref::inv_8zeta3) < 1e-12);
  CHECK(std::fabs(dbl(hnfd::diag_density(3, 3, {{1, 1}}).value) - ref::inv_zeta2_zeta3) < 1e-12);
  CHECK(std::fabs(dbl(hnfd::diag_density(3, 2, {{1, 1}}).value) - ref::inv_zeta2_zeta3) < 1e-12);
  CHECK(std::fabs(dbl(hnfd::diag_density(3, 5, {{2, 1}}).value) - ref::inv_8zeta2_zeta3) < 1e-12);
}

TEST_CASE("diagonal density admissible range") {
  CHECK(kind_of([] { hnfd::diag_density(2, 2, {{1, 1}}); }) == ErrorKind::unsupported);
  CHECK(kind_of([] { hnfd::diag_density(2, 5, {{1, 1}}); }) == ErrorKind::unsupported);
  CHECK(kind_of([] { hnfd::diag_density(3, 2, {{1, 1, 1}}); }) == ErrorKind::unsupported);
  CHECK(kind_of([] { hnfd::diag_density(2, 2, {{}}); }) == ErrorKind::parameter);
  CHECK(kind_of([] { hnfd::diag_density(0, 2, {{1}}); }) == ErrorKind::parameter);
  CHECK_NOTHROW(hnfd::diag_density(3, 2, {{1, 1}}));
  CHECK_NOTHROW(hnfd::diag_density(4, 4, {{1, 1, 1}}));
}

TEST_CASE("first-pivot densities sum to one from below") {
  for (auto [n, m] : {std::pair{2, 2}, {3, 3}, {3, 1}, {4, 6}}) {
    hnfd::Real sum = 0;
    hnfd::Real prev = 0;
    for (std::uint64_t d1 = 1; d1 <= 2000; ++d1) {
      sum += hnfd::diag_density(n, m, {{d1}}).value;
      CHECK(sum > prev);
      prev = sum;
    }
    CHECK(sum < 1);
    CHECK(1 - sum < (n == 2 ? 1e-3 : 1e-6));
  }
}

TEST_CASE("full diagonal densities") {
  const std::uint64_t one[] = {1};
  const std::uint64_t ones[] = {1, 1};
  const std::uint64_t two_one[] = {2, 1};
  const std::uint64_t zero[] = {1, 0};
  CHECK(std::fabs(dbl(hnfd::full_diag_density(2, one).value) - ref::inv_zeta2) < 1e-12);
  CHECK(std::fabs(dbl(hnfd::full_diag_density(3, ones).value) - ref::inv_zeta2_zeta3) < 1e-12);
  CHECK(std::fabs(dbl(hnfd::full_diag_density(3, two_one).value) - ref::inv_8zeta2_zeta3) < 1e-12);
  CHECK(kind_of([&] { hnfd::full_diag_density(3, zero); }) == ErrorKind::parameter);
  CHECK(kind_of([&] { hnfd::full_diag_density(3, one); }) == ErrorKind::parameter);
}

TEST_CASE("residue densities") {
  const std::uint64_t one[] = {1};
  const auto r0 = hnfd::residue_density(2, one, 5, 0);
  CHECK(std::fabs(dbl(r0.value) - ref::inv_zeta2 / 5) < 1e-12);
  CHECK(hnfd::residue_density(2, one, 5, 3).value == r0.value);
  CHECK(hnfd::residue_density(2, one, 1, 0).value == hnfd::diag_density(2, 2, {{1}}).value);
  CHECK(kind_of([&] { hnfd::residue_density(2, one, 5, 5); }) == ErrorKind::parameter);
  CHECK(kind_of([&] { hnfd::residue_density(2, one, 0, 0); }) == ErrorKind::parameter);
}

TEST_CASE("unimodular densities") {
  CHECK(std::fabs(dbl(hnfd::unimodular_density(2, 1).value) - ref::inv_zeta2) < 1e-12);
  CHECK(std::fabs(dbl(hnfd::unimodular_density(3, 2).value) - ref::inv_zeta2_zeta3) < 1e-12);
  CHECK(std::fabs(dbl(hnfd::unimodular_density(5, 1).value) - ref::inv_zeta5) < 1e-12);
  CHECK(kind_of([] { hnfd::unimodular_density(2, 2); }) == ErrorKind::unsupported);
  CHECK(kind_of([] { hnfd::unimodular_density(2, 3); }) == ErrorKind::unsupported);
}

TEST_CASE("lattice shape presets") {
  for (std::size_t n : {2, 3, 10}) {
    CHECK(hnfd::lattice_shape_density(LatticeShape::knapsack, n).value == 0);
  }
  CHECK(std::fabs(dbl(hnfd::lattice_shape_density(LatticeShape::random_basis, 2).value) -
                  ref::inv_zeta2) < 1e-12);
  CHECK(std::fabs(dbl(hnfd::lattice_shape_density(LatticeShape::random_basis, 5).value) -
                  ref::inv_zeta2_to_zeta5) < 1e-12);
  const auto big = hnfd::lattice_shape_density(LatticeShape::random_basis, 60).value;
  CHECK(std::fabs(dbl(big) - ref::d) < 1e-12);

  const auto ntru = hnfd::lattice_shape_density(LatticeShape::ntru, 2, 1);
  CHECK(ntru.heuristic);
  CHECK(std::fabs(dbl(ntru.value) - ref::d / 4) < 1e-12);
  CHECK(kind_of([] { hnfd::lattice_shape_density(LatticeShape::ntru, 2, 0); }) ==
        ErrorKind::parameter);
  CHECK(kind_of([] { hnfd::lattice_shape_density(LatticeShape::random_basis, 1); }) ==
        ErrorKind::parameter);
}
