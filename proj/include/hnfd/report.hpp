#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hnfd/arith.hpp"
#include "hnfd/density.hpp"
#include "hnfd/hnf.hpp"
#include "hnfd/montecarlo.hpp"

namespace hnfd {

/// Significant digits of every JSON number emitted by this library.
inline constexpr int kJsonDigits = 12;

/// Rounds to kJsonDigits significant digits.
double round_sig(double x);

// JSON records. Field names follow the report structs; the binomial error is
// emitted as "stderr" and every record carries its full configuration.
std::string to_json(const ExperimentReport& rep);
std::string to_json(const std::vector<ExperimentReport>& reps);
std::string to_json(const GcdHistogramReport& rep);
std::string to_json(const DensityValue& v);
std::string to_json(const HnfResult& res);

/// Header "g,count,empirical,predicted_dn,predicted_dlimit", one row per
/// g = 1..gmax.
std::string to_csv(const GcdHistogramReport& rep);

/// One row of the gcd-of-determinants distribution table.
struct DistributionRow {
  std::uint64_t g;
  Rational f_n;      // f_n(g)
  Rational f_limit;  // f(g) = D(g) / D(1)
  double D_n;
  double D_limit;
};

std::vector<DistributionRow> distribution_table(unsigned n, std::uint64_t gmax,
                                                double tol = kDefaultTol);
std::string to_json(unsigned n, const std::vector<DistributionRow>& rows);

}  // namespace hnfd
