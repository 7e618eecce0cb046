#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hnfd/hnf.hpp"
#include "hnfd/matrix.hpp"

namespace hnfd {

/// Empirical frequency of one event compared with its closed-form density.
struct ExperimentReport {
  SampleConfig config;
  std::vector<std::uint64_t> pattern;  // diagonal pattern or prefix
  std::optional<std::uint64_t> d;      // residue experiments only
  std::optional<std::uint64_t> r;
  std::uint64_t hits = 0;
  /// Denominator of `empirical`: config.count, or the number of prefix
  /// matches for conditional residue frequencies.
  std::uint64_t trials = 0;
  double empirical = 0;
  std::optional<double> predicted;
  std::optional<double> abs_error;
  double std_error = 0;  // sqrt(p (1 - p) / trials); "stderr" in JSON
};

/// Histogram of g = gcd(det[A|x], det[A|y]).
struct GcdHistogramReport {
  SampleConfig config;  // n x (n - 1): the shape of A
  std::uint64_t gmax = 0;
  std::map<std::uint64_t, std::uint64_t> counts;  // g = 1..gmax
  std::uint64_t undefined = 0;                   // both determinants zero
  std::uint64_t tail = 0;                        // g > gmax
  std::map<std::uint64_t, double> empirical;
  std::map<std::uint64_t, double> predicted_Dn;
  std::map<std::uint64_t, double> predicted_Dlimit;
  double tail_mass = 0;
};

/// Fixed chunk size of the parallel partition. Results do not depend on it.
inline constexpr std::uint64_t kChunkSize = 512;

/// Counts samples whose HNF diagonal starts with `pattern`. A prediction is
/// attached when diag_density covers (n, m, k).
ExperimentReport run_diag_experiment(const SampleConfig& cfg,
                                     const DiagPattern& pattern);

/// Square case. Among samples whose HNF diagonal starts with `prefix`
/// (n - 1 entries, all >= 1), tallies the last diagonal entry modulo d.
/// One report per residue r = 0..d-1; empirical is the conditional
/// frequency and the prediction is 1/d.
std::vector<ExperimentReport> run_residue_experiment(
    const SampleConfig& cfg, const DiagPattern& prefix, std::uint64_t d);

/// Requires cfg.m == cfg.n - 1. Each sample draws an n x (n + 1) block
/// [A | x | y] from the stream, so cfg.center, when given, must have
/// n * (n + 1) entries.
GcdHistogramReport run_gcd_det_experiment(const SampleConfig& cfg,
                                          std::uint64_t gmax);

/// gcd(a, 0) = |a|; nullopt when both are zero.
std::optional<Integer> gcd_of_dets(const Integer& a, const Integer& b);

}  // namespace hnfd
