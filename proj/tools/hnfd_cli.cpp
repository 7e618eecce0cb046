// Command-line front end. Talks to the library only through the C API.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hnfd/hnfd.h"

namespace {

using nlohmann::ordered_json;

struct CliFailure : std::runtime_error {
  int code;
  CliFailure(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

void check(hnfd_status st) {
  if (st == HNFD_OK) return;
  const int code = st == HNFD_ERR_IO ? 2 : 1;
  throw CliFailure(code, std::string(hnfd_status_name(st)) + ": " + hnfd_last_error());
}

// Owns a library-allocated string.
class CString {
 public:
  CString() = default;
  CString(const CString&) = delete;
  CString& operator=(const CString&) = delete;
  ~CString() { hnfd_string_free(p_); }
  char** out() { return &p_; }
  std::string str() const { return p_ ? p_ : ""; }

 private:
  char* p_ = nullptr;
};

struct MatrixHandle {
  hnfd_matrix* m = nullptr;
  ~MatrixHandle() { hnfd_matrix_free(m); }
};

struct HnfHandle {
  hnfd_hnf_result* r = nullptr;
  ~HnfHandle() { hnfd_hnf_result_free(r); }
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string fmt_json_number(const ordered_json& v) {
  return v.is_null() ? "n/a" : fmt(v.get<double>());
}

// Accepts plain integers and integral scientific notation ("1e6").
std::uint64_t parse_count(const std::string& flag, const std::string& text) {
  const auto bad = [&] {
    return CliFailure(1, flag + ": expected a nonnegative integer, got '" + text + "'");
  };
  if (text.empty() || text[0] == '-') throw bad();
  std::size_t used = 0;
  try {
    if (text.find_first_of("eE.") == std::string::npos) {
      const auto v = std::stoull(text, &used);
      if (used != text.size()) throw bad();
      return v;
    }
    const double v = std::stod(text, &used);
    if (used != text.size() || v < 0 || v != std::floor(v) || v >= 0x1p64) throw bad();
    return static_cast<std::uint64_t>(v);
  } catch (const std::logic_error&) {
    throw bad();
  }
}

struct Options {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::uint64_t> pattern;
  std::uint64_t d = 0;
  std::uint64_t r = 0;
  std::string bound;
  std::vector<std::int64_t> center;
  std::string samples = "1e5";
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string gmax;
  double tol = 1e-12;
  bool json = false;
  std::string csv;
  std::string kind;
  std::uint64_t s = 0;
  std::string input;
  bool unimodular = false;
};

hnfd_sample_config sample_config(const Options& o, std::size_t m,
                                 const std::string& default_bound) {
  hnfd_sample_config cfg{};
  cfg.n = o.n;
  cfg.m = m;
  cfg.center = o.center.empty() ? nullptr : o.center.data();
  cfg.center_len = o.center.size();
  cfg.half_width = parse_count("--bound", o.bound.empty() ? default_bound : o.bound);
  cfg.count = parse_count("--samples", o.samples);
  cfg.seed = o.seed;
  cfg.workers = o.workers;
  return cfg;
}

void print_density(const hnfd_density& v, const std::string& json, bool as_json) {
  if (as_json) {
    std::cout << json << '\n';
    return;
  }
  std::cout << "density      " << fmt(v.value) << '\n'
            << "error_bound  " << fmt(v.error_bound) << '\n';
  if (v.heuristic) std::cout << "heuristic    yes\n";
}

void print_matrix(const char* title, const hnfd_matrix* m) {
  CString text;
  check(hnfd_matrix_format(m, text.out()));
  std::cout << title << '\n' << text.str();
}

int cmd_hnf(const Options& o) {
  MatrixHandle a;
  check(hnfd_matrix_load(o.input.c_str(), &a.m));
  HnfHandle res;
  check(hnfd_hnf(a.m, &res.r));
  if (o.json) {
    CString json;
    check(hnfd_hnf_result_json(res.r, json.out()));
    std::cout << json.str() << '\n';
    return 0;
  }
  print_matrix("H", hnfd_hnf_result_form(res.r));
  print_matrix("U", hnfd_hnf_result_transform(res.r));
  const std::size_t rank = hnfd_hnf_result_rank(res.r);
  std::cout << "rank " << rank << '\n';
  for (std::size_t i = 0; i < rank; ++i) {
    std::size_t col = 0;
    CString value;
    check(hnfd_hnf_result_pivot(res.r, i, &col, value.out()));
    std::cout << "pivot " << i + 1 << " column " << col + 1 << " value "
              << value.str() << '\n';
  }
  return 0;
}

int cmd_predict_diag(const Options& o) {
  hnfd_density v{};
  CString json;
  if (o.unimodular) {
    check(hnfd_unimodular_density(o.n, o.m, o.tol, &v, json.out()));
  } else if (o.d != 0) {
    if (o.m != o.n) throw CliFailure(1, "--d/--r need a square shape (--m equal to --n)");
    check(hnfd_residue_density(o.n, o.pattern.data(), o.pattern.size(), o.d, o.r,
                               o.tol, &v, json.out()));
  } else {
    check(hnfd_diag_density(o.n, o.m, o.pattern.data(), o.pattern.size(), o.tol,
                            &v, json.out()));
  }
  print_density(v, json.str(), o.json);
  return 0;
}

int cmd_predict_shape(const Options& o) {
  hnfd_lattice_shape shape = HNFD_SHAPE_KNAPSACK;
  if (o.kind == "random") {
    shape = HNFD_SHAPE_RANDOM_BASIS;
  } else if (o.kind == "ntru") {
    shape = HNFD_SHAPE_NTRU;
  }
  hnfd_density v{};
  CString json;
  check(hnfd_lattice_shape_density(shape, o.n, o.s, o.tol, &v, json.out()));
  print_density(v, json.str(), o.json);
  return 0;
}

void print_report_row(const ordered_json& rep, const std::string& label) {
  std::printf("%-12s %10s %10s %12s %12s %12s %12s\n", label.c_str(),
              std::to_string(rep["hits"].get<std::uint64_t>()).c_str(),
              std::to_string(rep["trials"].get<std::uint64_t>()).c_str(),
              fmt_json_number(rep["empirical"]).c_str(),
              fmt_json_number(rep["predicted"]).c_str(),
              fmt_json_number(rep["abs_error"]).c_str(),
              fmt_json_number(rep["stderr"]).c_str());
}

void print_report_header(const char* first) {
  std::printf("%-12s %10s %10s %12s %12s %12s %12s\n", first, "hits", "trials",
              "empirical", "predicted", "abs_error", "stderr");
}

void print_config(const ordered_json& cfg) {
  std::cout << "config " << cfg.dump() << '\n';
}

int cmd_mc_diag(const Options& o) {
  const auto cfg = sample_config(o, o.m, "1e6");
  CString json;
  check(hnfd_run_diag_experiment(&cfg, o.pattern.data(), o.pattern.size(), json.out()));
  if (o.json) {
    std::cout << json.str() << '\n';
    return 0;
  }
  const auto rep = ordered_json::parse(json.str());
  print_config(rep["config"]);
  print_report_header("pattern");
  std::string label;
  for (auto v : o.pattern) label += (label.empty() ? "" : ",") + std::to_string(v);
  print_report_row(rep, label);
  return 0;
}

int cmd_mc_residue(const Options& o) {
  const auto cfg = sample_config(o, o.n, "1e6");
  CString json;
  check(hnfd_run_residue_experiment(&cfg, o.pattern.data(), o.pattern.size(), o.d,
                                    json.out()));
  if (o.json) {
    std::cout << json.str() << '\n';
    return 0;
  }
  const auto reps = ordered_json::parse(json.str());
  if (!reps.empty()) print_config(reps[0]["config"]);
  print_report_header("residue");
  for (const auto& rep : reps) {
    print_report_row(rep, std::to_string(rep["config"]["r"].get<std::uint64_t>()));
  }
  return 0;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) {
    throw CliFailure(2, "cannot write '" + path + "'");
  }
}

int cmd_mc_gcd_det(const Options& o) {
  if (o.n < 2) throw CliFailure(1, "--n must be >= 2");
  const auto cfg = sample_config(o, o.n - 1, "1e3");
  const auto gmax = parse_count("--gmax", o.gmax.empty() ? "10" : o.gmax);
  CString json;
  CString csv;
  check(hnfd_run_gcd_det_experiment(&cfg, gmax, json.out(),
                                    o.csv.empty() ? nullptr : csv.out()));
  if (!o.csv.empty()) write_file(o.csv, csv.str());
  if (o.json) {
    std::cout << json.str() << '\n';
    return 0;
  }
  const auto rep = ordered_json::parse(json.str());
  print_config(rep["config"]);
  std::printf("%8s %10s %12s %12s %12s\n", "g", "count", "empirical", "D_n", "D_limit");
  for (std::uint64_t g = 1; g <= gmax; ++g) {
    const auto key = std::to_string(g);
    std::printf("%8s %10s %12s %12s %12s\n", key.c_str(),
                std::to_string(rep["counts"][key].get<std::uint64_t>()).c_str(),
                fmt_json_number(rep["empirical"][key]).c_str(),
                fmt_json_number(rep["predicted_Dn"][key]).c_str(),
                fmt_json_number(rep["predicted_Dlimit"][key]).c_str());
  }
  std::cout << "undefined " << rep["counts"]["undefined"].get<std::uint64_t>() << '\n'
            << "tail      " << rep["counts"]["tail"].get<std::uint64_t>()
            << " (mass " << fmt_json_number(rep["tail_mass"]) << ")\n";
  return 0;
}

int cmd_dist(const Options& o) {
  const auto gmax = parse_count("--gmax", o.gmax.empty() ? "10" : o.gmax);
  CString json;
  check(hnfd_distribution_json(static_cast<unsigned>(o.n), gmax, o.tol, json.out()));
  if (o.json) {
    std::cout << json.str() << '\n';
    return 0;
  }
  const auto table = ordered_json::parse(json.str());
  std::printf("%8s %16s %16s %12s %12s %12s\n", "g", "f_n", "f", "D_n", "D_limit",
              "ratio");
  for (const auto& row : table["rows"]) {
    std::printf("%8s %16s %16s %12s %12s %12s\n",
                std::to_string(row["g"].get<std::uint64_t>()).c_str(),
                row["f_n"].get<std::string>().c_str(),
                row["f"].get<std::string>().c_str(),
                fmt_json_number(row["D_n"]).c_str(),
                fmt_json_number(row["D_limit"]).c_str(),
                fmt_json_number(row["ratio"]).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermite normal forms of random integer matrices and their diagonal densities"};
  app.require_subcommand(1);
  Options o;

  const auto add_tol = [&](CLI::App* c) {
    c->add_option("--tol", o.tol, "Absolute tolerance")->capture_default_str();
  };
  const auto add_json = [&](CLI::App* c) {
    c->add_flag("--json", o.json, "Print the JSON record");
  };
  const auto add_sampling = [&](CLI::App* c, const char* bound_default) {
    c->add_option("--bound", o.bound,
                  std::string("Half-width B of the sampling cube (default ") +
                      bound_default + ")");
    c->add_option("--center", o.center, "Cube center, comma-separated (default zeros)")
        ->delimiter(',');
    c->add_option("--samples", o.samples, "Number of samples")->capture_default_str();
    c->add_option("--seed", o.seed, "Stream seed")->capture_default_str();
    c->add_option("--workers", o.workers, "Worker threads")->capture_default_str();
  };

  auto* hnf = app.add_subcommand("hnf", "Hermite normal form of a matrix file");
  hnf->add_option("--input", o.input, "Matrix file")->required();
  add_json(hnf);

  auto* pdiag = app.add_subcommand("predict-diag", "Density of an HNF diagonal pattern");
  pdiag->add_option("--n", o.n, "Rows")->required();
  pdiag->add_option("--m", o.m, "Columns")->required();
  pdiag->add_option("--pattern", o.pattern, "Diagonal prefix, comma-separated")
      ->delimiter(',');
  pdiag->add_option("--d", o.d, "Modulus for the last diagonal entry");
  pdiag->add_option("--r", o.r, "Residue of the last diagonal entry");
  pdiag->add_flag("--unimodular", o.unimodular, "Density of diagonal (1, ..., 1) for n > m");
  add_tol(pdiag);
  add_json(pdiag);

  auto* pshape = app.add_subcommand("predict-shape", "HNF-shape density of a lattice family");
  pshape->add_option("--kind", o.kind, "Lattice family")
      ->required()
      ->check(CLI::IsMember({"knapsack", "random", "ntru"}));
  pshape->add_option("--n", o.n, "Dimension parameter")->required();
  pshape->add_option("--s", o.s, "NTRU modulus exponent, q = 2^s");
  add_tol(pshape);
  add_json(pshape);

  auto* mdiag = app.add_subcommand("mc-diag", "Monte Carlo HNF diagonal frequency");
  mdiag->add_option("--n", o.n, "Rows")->required();
  mdiag->add_option("--m", o.m, "Columns")->required();
  mdiag->add_option("--pattern", o.pattern, "Diagonal prefix, comma-separated")
      ->required()
      ->delimiter(',');
  add_sampling(mdiag, "1e6");
  add_json(mdiag);

  auto* mres = app.add_subcommand("mc-residue", "Monte Carlo residues of the last pivot");
  mres->add_option("--n", o.n, "Matrix size")->required();
  mres->add_option("--pattern", o.pattern, "First n - 1 diagonal entries, comma-separated")
      ->required()
      ->delimiter(',');
  mres->add_option("--d", o.d, "Modulus")->required();
  add_sampling(mres, "1e6");
  add_json(mres);

  auto* mgcd = app.add_subcommand("mc-gcd-det", "Monte Carlo gcd of two bordered determinants");
  mgcd->add_option("--n", o.n, "Size of the bordered square matrices")->required();
  mgcd->add_option("--gmax", o.gmax, "Largest tabulated gcd (default 10)");
  mgcd->add_option("--csv", o.csv, "Write the histogram as CSV");
  add_sampling(mgcd, "1e3");
  add_json(mgcd);

  auto* dist = app.add_subcommand("dist", "Table of the gcd-of-determinants distribution");
  dist->add_option("--n", o.n, "Matrix size")->required();
  dist->add_option("--gmax", o.gmax, "Largest g (default 10)");
  add_tol(dist);
  add_json(dist);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*hnf) return cmd_hnf(o);
    if (*pdiag) return cmd_predict_diag(o);
    if (*pshape) return cmd_predict_shape(o);
    if (*mdiag) return cmd_mc_diag(o);
    if (*mres) return cmd_mc_residue(o);
    if (*mgcd) return cmd_mc_gcd_det(o);
    if (*dist) return cmd_dist(o);
  } catch (const CliFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
