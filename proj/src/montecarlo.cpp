#include "hnfd/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "hnfd/arith.hpp"
#include "hnfd/density.hpp"
#include "hnfd/error.hpp"

namespace hnfd {

namespace {

// Runs body(begin, end, acc) over fixed index chunks on cfg.workers threads
// and merges the per-chunk accumulators in chunk order.
template <typename Acc, typename Body, typename Merge>
Acc run_chunks(const SampleConfig& cfg, Body body, Merge merge) {
  const std::uint64_t chunks = (cfg.count + kChunkSize - 1) / kChunkSize;
  std::vector<Acc> partial(chunks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;

  const auto worker = [&] {
    try {
      for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) {
        const std::uint64_t begin = c * kChunkSize;
        const std::uint64_t end = std::min(cfg.count, begin + kChunkSize);
        body(begin, end, partial[c]);
      }
    } catch (...) {
      std::lock_guard lock(error_mu);
      if (!error) error = std::current_exception();
      next.store(chunks);
    }
  };

  const unsigned threads =
      static_cast<unsigned>(std::min<std::uint64_t>(cfg.workers, chunks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  Acc total{};
  for (auto& p : partial) merge(total, p);
  return total;
}

double binomial_stderr(double p, std::uint64_t trials) {
  return trials == 0 ? 0.0 : std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

void finish(ExperimentReport& rep) {
  rep.empirical = rep.trials == 0 ? 0.0
                                  : static_cast<double>(rep.hits) /
                                        static_cast<double>(rep.trials);
  rep.std_error = binomial_stderr(rep.empirical, rep.trials);
  if (rep.predicted) rep.abs_error = std::fabs(rep.empirical - *rep.predicted);
}

std::optional<double> predict_diag(const SampleConfig& cfg,
                                   const DiagPattern& pattern) {
  try {
    return static_cast<double>(diag_density(cfg.n, cfg.m, pattern).value);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::unsupported) return std::nullopt;
    throw;
  }
}

}  // namespace

std::optional<Integer> gcd_of_dets(const Integer& a, const Integer& b) {
  if (sgn(a) == 0 && sgn(b) == 0) return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

ExperimentReport run_diag_experiment(const SampleConfig& cfg,
                                     const DiagPattern& pattern) {
  cfg.validate();
  pattern.validate();
  if (pattern.size() > std::min(cfg.n, cfg.m)) {
    fail(ErrorKind::parameter, "pattern longer than min(n, m)");
  }

  ExperimentReport rep;
  rep.config = cfg;
  rep.pattern = pattern.values;
  rep.predicted = predict_diag(cfg, pattern);
  rep.hits = run_chunks<std::uint64_t>(
      cfg,
      [&](std::uint64_t begin, std::uint64_t end, std::uint64_t& hits) {
        for (std::uint64_t i = begin; i < end; ++i) {
          if (hnf_diag_matches(sample_matrix(cfg, i), pattern)) ++hits;
        }
      },
      [](std::uint64_t& total, std::uint64_t part) { total += part; });
  rep.trials = cfg.count;
  finish(rep);
  return rep;
}

std::vector<ExperimentReport> run_residue_experiment(const SampleConfig& cfg,
                                                     const DiagPattern& prefix,
                                                     std::uint64_t d) {
  cfg.validate();
  if (cfg.n != cfg.m) fail(ErrorKind::parameter, "residue experiment needs n == m");
  if (cfg.n < 2) fail(ErrorKind::parameter, "residue experiment needs n >= 2");
  if (d < 2) fail(ErrorKind::parameter, "modulus d must be >= 2");
  if (prefix.size() != cfg.n - 1) {
    fail(ErrorKind::parameter, "prefix must have n - 1 entries");
  }
  if (prefix.has_zero()) fail(ErrorKind::parameter, "prefix entries must be >= 1");

  using Tally = std::vector<std::uint64_t>;
  const Tally tally = run_chunks<Tally>(
      cfg,
      [&](std::uint64_t begin, std::uint64_t end, Tally& acc) {
        acc.assign(d, 0);
        for (std::uint64_t i = begin; i < end; ++i) {
          const auto diag = diag_of_hnf(sample_matrix(cfg, i));
          bool match = true;
          for (std::size_t j = 0; j + 1 < diag.size() && match; ++j) {
            match = diag[j] == prefix.values[j];
          }
          if (!match) continue;
          ++acc[mpz_fdiv_ui(diag.back().get_mpz_t(), d)];
        }
      },
      [d](Tally& total, const Tally& part) {
        if (total.empty()) total.assign(d, 0);
        for (std::uint64_t r = 0; r < part.size(); ++r) total[r] += part[r];
      });

  std::uint64_t matched = 0;
  for (auto c : tally) matched += c;

  std::vector<ExperimentReport> out;
  out.reserve(d);
  for (std::uint64_t r = 0; r < d; ++r) {
    ExperimentReport rep;
    rep.config = cfg;
    rep.pattern = prefix.values;
    rep.d = d;
    rep.r = r;
    rep.hits = tally[r];
    rep.trials = matched;
    rep.predicted = 1.0 / static_cast<double>(d);
    finish(rep);
    out.push_back(std::move(rep));
  }
  return out;
}

GcdHistogramReport run_gcd_det_experiment(const SampleConfig& cfg,
                                          std::uint64_t gmax) {
  if (cfg.n < 2) fail(ErrorKind::parameter, "gcd experiment needs n >= 2");
  if (cfg.m != cfg.n - 1) fail(ErrorKind::parameter, "gcd experiment needs m == n - 1");
  if (gmax < 1) fail(ErrorKind::parameter, "gmax must be >= 1");
  if (gmax > 1'000'000) fail(ErrorKind::parameter, "gmax must be <= 10^6");

  SampleConfig block = cfg;
  block.m = cfg.n + 1;
  block.validate();
  const std::size_t n = cfg.n;

  struct Tally {
    std::vector<std::uint64_t> counts;  // index g - 1
    std::uint64_t undefined = 0;
    std::uint64_t tail = 0;
  };

  const Tally tally = run_chunks<Tally>(
      block,
      [&](std::uint64_t begin, std::uint64_t end, Tally& acc) {
        acc.counts.assign(gmax, 0);
        IntMatrix ax(n, n);
        IntMatrix ay(n, n);
        for (std::uint64_t i = begin; i < end; ++i) {
          const IntMatrix s = sample_matrix(block, i);
          for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c + 1 < n; ++c) ax(r, c) = ay(r, c) = s(r, c);
            ax(r, n - 1) = s(r, n - 1);
            ay(r, n - 1) = s(r, n);
          }
          const auto g = gcd_of_dets(determinant(ax), determinant(ay));
          if (!g) {
            ++acc.undefined;
          } else if (*g <= gmax) {
            ++acc.counts[g->get_ui() - 1];
          } else {
            ++acc.tail;
          }
        }
      },
      [gmax](Tally& total, const Tally& part) {
        if (total.counts.empty()) total.counts.assign(gmax, 0);
        for (std::size_t g = 0; g < part.counts.size(); ++g) total.counts[g] += part.counts[g];
        total.undefined += part.undefined;
        total.tail += part.tail;
      });

  GcdHistogramReport rep;
  rep.config = cfg;
  rep.gmax = gmax;
  rep.undefined = tally.undefined;
  rep.tail = tally.tail;
  const auto total = static_cast<double>(cfg.count);
  const auto dim = static_cast<unsigned>(n);
  for (std::uint64_t g = 1; g <= gmax; ++g) {
    rep.counts[g] = tally.counts[g - 1];
    rep.empirical[g] = static_cast<double>(tally.counts[g - 1]) / total;
    rep.predicted_Dn[g] = static_cast<double>(D_n_at(dim, g));
    rep.predicted_Dlimit[g] = static_cast<double>(D_limit_at(g));
  }
  rep.tail_mass = static_cast<double>(tally.tail) / total;
  return rep;
}

}  // namespace hnfd
