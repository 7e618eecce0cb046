#include "hnfd/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "hnfd/error.hpp"

namespace hnfd {

namespace {

using nlohmann::ordered_json;

ordered_json num(double x) { return round_sig(x); }

ordered_json opt_num(const std::optional<double>& x) {
  return x ? num(*x) : ordered_json(nullptr);
}

std::string str(const Integer& x) { return x.get_str(); }

ordered_json config_json(const SampleConfig& cfg) {
  ordered_json c;
  c["n"] = cfg.n;
  c["m"] = cfg.m;
  c["bound"] = cfg.half_width;
  c["center"] = cfg.center;
  c["samples"] = cfg.count;
  c["seed"] = cfg.seed;
  c["workers"] = cfg.workers;
  return c;
}

ordered_json report_json(const ExperimentReport& rep) {
  ordered_json j;
  ordered_json cfg = config_json(rep.config);
  if (rep.d) {
    cfg["prefix"] = rep.pattern;
    cfg["d"] = *rep.d;
    cfg["r"] = *rep.r;
  } else {
    cfg["pattern"] = rep.pattern;
  }
  j["config"] = std::move(cfg);
  j["hits"] = rep.hits;
  j["trials"] = rep.trials;
  j["empirical"] = num(rep.empirical);
  j["predicted"] = opt_num(rep.predicted);
  j["abs_error"] = opt_num(rep.abs_error);
  j["stderr"] = num(rep.std_error);
  return j;
}

ordered_json matrix_json(const IntMatrix& a) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (const auto& x : a.row(i)) row.push_back(str(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

double round_sig(double x) {
  if (!std::isfinite(x) || x == 0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", kJsonDigits, x);
  return std::strtod(buf, nullptr);
}

std::string to_json(const ExperimentReport& rep) { return report_json(rep).dump(); }

std::string to_json(const std::vector<ExperimentReport>& reps) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : reps) arr.push_back(report_json(r));
  return arr.dump();
}

std::string to_json(const GcdHistogramReport& rep) {
  ordered_json j;
  ordered_json cfg = config_json(rep.config);
  cfg["gmax"] = rep.gmax;
  j["config"] = std::move(cfg);

  ordered_json counts, emp, dn, dlim;
  for (const auto& [g, c] : rep.counts) counts[std::to_string(g)] = c;
  counts["undefined"] = rep.undefined;
  counts["tail"] = rep.tail;
  for (const auto& [g, v] : rep.empirical) emp[std::to_string(g)] = num(v);
  const auto total = static_cast<double>(rep.config.count);
  emp["undefined"] = num(static_cast<double>(rep.undefined) / total);
  for (const auto& [g, v] : rep.predicted_Dn) dn[std::to_string(g)] = num(v);
  for (const auto& [g, v] : rep.predicted_Dlimit) dlim[std::to_string(g)] = num(v);

  j["counts"] = std::move(counts);
  j["empirical"] = std::move(emp);
  j["predicted_Dn"] = std::move(dn);
  j["predicted_Dlimit"] = std::move(dlim);
  j["tail_mass"] = num(rep.tail_mass);
  return j.dump();
}

std::string to_json(const DensityValue& v) {
  ordered_json j;
  j["value"] = num(static_cast<double>(v.value));
  j["error_bound"] = num(static_cast<double>(v.error_bound));
  j["zeta_args"] = v.zeta_args;
  ordered_json factors = ordered_json::array();
  for (const auto& [d, e] : v.pivot_factors) factors.push_back({d, e});
  j["pivot_factors"] = std::move(factors);
  j["heuristic"] = v.heuristic;
  return j.dump();
}

std::string to_json(const HnfResult& res) {
  ordered_json j;
  j["H"] = matrix_json(res.form);
  j["U"] = matrix_json(res.transform);
  j["pivot_cols"] = res.pivot_cols;
  ordered_json piv = ordered_json::array();
  for (const auto& p : res.pivots) piv.push_back(str(p));
  j["pivots"] = std::move(piv);
  j["rank"] = res.rank;
  return j.dump();
}

std::string to_csv(const GcdHistogramReport& rep) {
  std::ostringstream out;
  out << "g,count,empirical,predicted_dn,predicted_dlimit\n";
  char buf[128];
  for (const auto& [g, c] : rep.counts) {
    std::snprintf(buf, sizeof buf, "%llu,%llu,%.*g,%.*g,%.*g\n",
                  static_cast<unsigned long long>(g),
                  static_cast<unsigned long long>(c), kJsonDigits,
                  rep.empirical.at(g), kJsonDigits, rep.predicted_Dn.at(g),
                  kJsonDigits, rep.predicted_Dlimit.at(g));
    out << buf;
  }
  return out.str();
}

std::vector<DistributionRow> distribution_table(unsigned n, std::uint64_t gmax,
                                                double tol) {
  if (n < 2) fail(ErrorKind::parameter, "distribution table needs n >= 2");
  if (gmax < 1) fail(ErrorKind::parameter, "gmax must be >= 1");
  std::vector<DistributionRow> rows;
  rows.reserve(gmax);
  for (std::uint64_t g = 1; g <= gmax; ++g) {
    rows.push_back({g, f_n_at(n, g), f_limit_at(g),
                    static_cast<double>(D_n_at(n, g, tol)),
                    static_cast<double>(D_limit_at(g, tol))});
  }
  return rows;
}

std::string to_json(unsigned n, const std::vector<DistributionRow>& rows) {
  ordered_json j;
  j["n"] = n;
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json row;
    row["g"] = r.g;
    row["f_n"] = r.f_n.get_str();
    row["f"] = r.f_limit.get_str();
    row["D_n"] = num(r.D_n);
    row["D_limit"] = num(r.D_limit);
    row["ratio"] = num(to_double(r.f_limit));
    arr.push_back(std::move(row));
  }
  j["rows"] = std::move(arr);
  return j.dump();
}

}  // namespace hnfd
