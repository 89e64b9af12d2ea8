// cloneq command-line interface: compute Q_c for observable sets, closed
// forms for MUB families and qubit pairs, figure sweeps and the
// verification suite.
//
// Exit codes: 0 success, 1 input error, 2 convergence warning,
// 3 verification failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cloneq/ensembles.hpp"
#include "cloneq/format.hpp"
#include "cloneq/optimal.hpp"
#include "cloneq/qubit.hpp"
#include "cloneq/report.hpp"
#include "cloneq/verify.hpp"

namespace {

using namespace cloneq;

// "7" -> {7}; "2..11" -> {2,...,11}; "2,3,5" -> {2,3,5}
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    if (hi < lo) {
      throw InputError("empty range: " + text);
    }
    for (int v = lo; v <= hi; ++v) {
      values.push_back(v);
    }
    return values;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) {
      values.push_back(std::stoi(item));
    }
  }
  if (values.empty()) {
    throw InputError("empty list: " + text);
  }
  return values;
}

Vector3 parse_bloch(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    parts.push_back(std::stod(item));
  }
  if (parts.size() != 3) {
    throw InputError("bloch vector needs three comma-separated reals: " +
                     text);
  }
  return Vector3(parts[0], parts[1], parts[2]);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw InputError("cannot open output file: " + path);
  }
  out << text;
  if (!out) {
    throw InputError("failed writing output file: " + path);
  }
}

struct CommonOpts {
  std::string input_path;
  std::string output_path;
  std::uint64_t seed = 0;
  int restarts = 32;
  double tolerance = tol::hermitian;
  std::string d_spec;
  std::string n_spec;
  std::string bloch_a;
  std::string bloch_b;
  std::string level = "fast";
};

int cmd_compute(const CommonOpts& opts) {
  std::ifstream in(opts.input_path);
  if (!in) {
    std::cerr << "error: cannot open input file: " << opts.input_path << "\n";
    return 1;
  }
  const ObservableSet set = load_observable_set(in, opts.tolerance);
  const EigenstateEnsemble ensemble = eigenstate_ensemble(set, opts.tolerance);

  BasisOptConfig cfg;
  cfg.restarts = opts.restarts;
  cfg.seed = opts.seed;
  const CloneReport report = optimal_cloning_fidelity(ensemble, cfg);

  print_clone_report(std::cout, report);
  const std::string json = clone_report_to_json(report).dump(2) + "\n";
  if (!opts.output_path.empty()) {
    write_text_file(opts.output_path, json);
  } else {
    std::cout << "\n" << json;
  }
  if (!report.diagnostics.converged) {
    std::cerr << "warning: basis optimization did not converge\n";
    return 2;
  }
  return 0;
}

int cmd_qubit(const CommonOpts& opts) {
  const BlochPair pair(parse_bloch(opts.bloch_a), parse_bloch(opts.bloch_b));
  const QubitCloneSolution solution = qubit_optimal_cloner(pair);
  print_qubit_solution(std::cout, solution);
  const std::string json = qubit_solution_to_json(solution).dump(2) + "\n";
  if (!opts.output_path.empty()) {
    write_text_file(opts.output_path, json);
  } else {
    std::cout << "\n" << json;
  }
  return 0;
}

int cmd_mub(const CommonOpts& opts) {
  const int n = std::stoi(opts.n_spec);
  const int d = std::stoi(opts.d_spec);
  const MubCloneOptimum optimum = fopt_mub(n, d);
  print_mub_optimum(std::cout, optimum);
  if (!opts.output_path.empty()) {
    // write the constructed bases for later `compute` runs; needs prime d
    const ObservableSet set = mub_family(d, n);
    write_text_file(opts.output_path,
                    observable_set_to_json(set).dump(2) + "\n");
  }
  return 0;
}

int cmd_sweep_d(const CommonOpts& opts) {
  const int n = std::stoi(opts.n_spec);
  std::vector<int> dims = parse_int_list(opts.d_spec);
  if (opts.d_spec.find("..") != std::string::npos) {
    // a range mirrors the prime-dimension figures
    std::erase_if(dims, [](int d) { return !is_prime(d); });
  }
  for (int d : dims) {
    if (d < 2) {
      throw InputError("dimension must be >= 2");
    }
  }
  const std::vector<SweepRow> rows = sweep_over_dimension(n, dims);
  if (!opts.output_path.empty()) {
    std::ostringstream out;
    write_sweep_csv(out, rows);
    write_text_file(opts.output_path, out.str());
  } else {
    write_sweep_csv(std::cout, rows);
  }
  return 0;
}

int cmd_sweep_n(const CommonOpts& opts) {
  const int d = std::stoi(opts.d_spec);
  const std::vector<int> ns = parse_int_list(opts.n_spec);
  int n_min = 2, n_max = 0;
  if (opts.n_spec.find("..") != std::string::npos) {
    n_min = ns.front();
    n_max = ns.back();
  } else if (ns.size() == 1) {
    n_max = ns.front();  // single value means "up to N"
  } else {
    throw InputError("sweep-n takes --n MAX or --n LO..HI");
  }
  const std::vector<SweepRow> rows = sweep_over_bases(d, n_min, n_max);
  if (!opts.output_path.empty()) {
    std::ostringstream out;
    write_sweep_csv(out, rows);
    write_text_file(opts.output_path, out.str());
  } else {
    write_sweep_csv(std::cout, rows);
  }
  return 0;
}

int cmd_verify(const CommonOpts& opts) {
  const VerifyLevel level =
      (opts.level == "full") ? VerifyLevel::full : VerifyLevel::fast;
  const std::vector<VerifyCheck> checks = run_verification(level, opts.seed);
  return print_verification(std::cout, checks) ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cloning-based incompatibility of quantum observable sets"};
  app.require_subcommand(1);

  CommonOpts opts;

  CLI::App* compute = app.add_subcommand(
      "compute", "Q_c for an observable set loaded from JSON");
  compute->add_option("--input", opts.input_path, "observable set JSON file")
      ->required();
  compute->add_option("--output", opts.output_path, "report JSON file");
  compute->add_option("--seed", opts.seed, "optimizer seed");
  compute->add_option("--restarts", opts.restarts, "random restarts");
  compute->add_option("--tol", opts.tolerance, "hermiticity/density tolerance");

  CLI::App* qubit = app.add_subcommand(
      "qubit", "closed-form optimal cloner for a pair of Bloch vectors");
  qubit->add_option("--bloch-a", opts.bloch_a, "unit vector x,y,z")->required();
  qubit->add_option("--bloch-b", opts.bloch_b, "unit vector x,y,z")->required();
  qubit->add_option("--output", opts.output_path, "solution JSON file");

  CLI::App* mub = app.add_subcommand(
      "mub", "closed-form optimum for N mutually unbiased bases");
  mub->add_option("--n", opts.n_spec, "number of bases")->required();
  mub->add_option("--d", opts.d_spec, "dimension")->required();
  mub->add_option("--output", opts.output_path,
                  "write constructed bases as observable-set JSON (prime d)");

  CLI::App* sweep_d = app.add_subcommand(
      "sweep-d", "Q_c of N MUBs across dimensions (CSV)");
  sweep_d->add_option("--n", opts.n_spec, "number of bases")->required();
  sweep_d
      ->add_option("--d", opts.d_spec,
                   "dimensions: LO..HI (primes kept) or a comma list")
      ->required();
  sweep_d->add_option("--output", opts.output_path, "CSV file");

  CLI::App* sweep_n = app.add_subcommand(
      "sweep-n", "Q_c of N MUBs across N at fixed dimension (CSV)");
  sweep_n->add_option("--d", opts.d_spec, "dimension")->required();
  sweep_n->add_option("--n", opts.n_spec, "max N, or LO..HI")->required();
  sweep_n->add_option("--output", opts.output_path, "CSV file");

  CLI::App* verify = app.add_subcommand("verify", "run the oracle suite");
  verify->add_option("level", opts.level, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}));
  verify->add_option("--seed", opts.seed, "suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (compute->parsed()) return cmd_compute(opts);
    if (qubit->parsed()) return cmd_qubit(opts);
    if (mub->parsed()) return cmd_mub(opts);
    if (sweep_d->parsed()) return cmd_sweep_d(opts);
    if (sweep_n->parsed()) return cmd_sweep_n(opts);
    if (verify->parsed()) return cmd_verify(opts);
  } catch (const CloneqError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
