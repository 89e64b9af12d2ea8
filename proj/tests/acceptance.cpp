// Acceptance suite: one criterion per check, each printed as a single
// pass/fail line with its measured deviations. Exits nonzero when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cloneq/optimal.hpp"
#include "cloneq/qubit.hpp"

using namespace cloneq;

namespace {

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

ComplexVector random_state(int dim, std::uint64_t seed) {
  return haar_unitary(dim, seed).col(0);
}

Vector3 random_unit3(std::mt19937_64& gen) {
  while (true) {
    const Vector3 v(2.0 * uniform01(gen) - 1.0, 2.0 * uniform01(gen) - 1.0,
                    2.0 * uniform01(gen) - 1.0);
    const double n = v.norm();
    if (n > 1e-3 && n <= 1.0) {
      return v / n;
    }
  }
}

struct Outcome {
  bool pass = false;
  std::string details;
};

double elapsed_s(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// 1. closed form vs tripartite oracle, 200 triples per d in {2..6}
Outcome criterion_oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  double dev_clone = 0.0;
  double dev_sym = 0.0;
  for (int d = 2; d <= 6; ++d) {
    std::mt19937_64 gen(1000 + d);
    for (int t = 0; t < 200; ++t) {
      const OrthonormalBasis basis(haar_unitary(d, gen()));
      const ComplexVector psi = random_state(d, gen());
      const double q = uniform01(gen) / std::sqrt(2.0 * (d - 1));
      const CloneParams params = params_from_q(d, q);

      const CloneOutput closed = clone_output_closed(psi, basis, params);
      const CloneOutput oracle = clone_output_oracle(psi, basis, params);
      dev_clone = std::max(
          dev_clone, (closed.clone - oracle.clone).cwiseAbs().maxCoeff());
      dev_clone =
          std::max(dev_clone, std::abs(closed.fidelity - oracle.fidelity));

      const ComplexVector alpha = basis.kets().adjoint() * psi;
      const ComplexVector full =
          tripartite_image_vectors(basis, params) * alpha;
      const std::array<Eigen::Index, 3> dims{d, d, d};
      const ComplexMatrix rho_a =
          pure_state_marginal(full, Subsystem::A, dims);
      const ComplexMatrix rho_b =
          pure_state_marginal(full, Subsystem::B, dims);
      dev_sym = std::max(dev_sym, (rho_a - rho_b).cwiseAbs().maxCoeff());
    }
  }
  const double secs = elapsed_s(start);
  return {dev_clone <= 1e-10 && dev_sym <= 1e-10 && secs < 60.0,
          "closed-vs-oracle " + fmt(dev_clone) + " <= 1e-10, symmetry " +
              fmt(dev_sym) + " <= 1e-10, " + fmt(secs) + " s < 60 s"};
}

// 2. universal cloner fidelity and state independence
Outcome criterion_universal() {
  double dev_formula = 0.0;
  double spread = 0.0;
  for (int d = 2; d <= 12; ++d) {
    const UniversalCloner uni = universal_params(d);
    dev_formula = std::max(
        dev_formula, std::abs(uni.fidelity - (d + 3.0) / (2.0 * (d + 1))));
    const OrthonormalBasis basis = OrthonormalBasis::canonical(d);
    double lo = 1.0, hi = 0.0;
    for (int t = 0; t < 100; ++t) {
      const double f =
          clone_output_closed(random_state(d, mix_seed(2000 + d, t)), basis,
                              uni.params)
              .fidelity;
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    spread = std::max(spread, hi - lo);
    dev_formula =
        std::max(dev_formula, std::abs(hi - (d + 3.0) / (2.0 * (d + 1))));
  }
  const double dev_d2 =
      std::abs(universal_params(2).fidelity - 5.0 / 6.0);
  return {dev_formula <= 1e-12 && dev_d2 <= 1e-15 && spread < 1e-10,
          "formula dev " + fmt(dev_formula) + " <= 1e-12, d=2 dev " +
              fmt(dev_d2) + ", spread " + fmt(spread) + " < 1e-10"};
}

// 3. optimize_basis recovers A = N+d-1 on constructed MUB ensembles
Outcome criterion_mub_recovery() {
  const auto start = std::chrono::steady_clock::now();
  BasisOptConfig cfg;
  cfg.restarts = 32;
  double dev = 0.0;
  for (auto [n, d] :
       {std::pair{2, 2}, {3, 2}, {2, 3}, {4, 3}, {2, 5}}) {
    cfg.seed = 100 * n + d;
    const BasisOptResult res =
        optimize_basis(eigenstate_ensemble(mub_family(d, n)), cfg);
    dev = std::max(dev, std::abs(res.a_opt - (n + d - 1.0)));
  }
  const double secs = elapsed_s(start);
  return {dev <= 1e-4 && secs < 120.0,
          "max |A_opt - (N+d-1)| " + fmt(dev) + " <= 1e-4, " + fmt(secs) +
              " s < 120 s (32 restarts)"};
}

// 4. the full MUB set recovers the universal cloner exactly
Outcome criterion_corollary_full_set() {
  double dev = 0.0;
  for (int d : {2, 3, 5}) {
    const MubCloneOptimum opt = fopt_mub(d + 1, d);
    dev = std::max(dev,
                   std::abs(opt.params.q - 1.0 / std::sqrt(2.0 * (d + 1))));
    dev = std::max(dev, std::abs(opt.f_opt - (d + 3.0) / (2.0 * (d + 1))));
  }
  const double dev_d3 = std::abs(fopt_mub(4, 3).params.q -
                                 1.0 / (2.0 * std::numbers::sqrt2));
  return {dev <= 1e-12 && dev_d3 <= 1e-12,
          "max dev " + fmt(std::max(dev, dev_d3)) + " <= 1e-12"};
}

// 5. closed-form q_opt beats a 1e5-point grid for random admissible input
Outcome criterion_qopt_maximality() {
  std::mt19937_64 gen(5005);
  double dev = 0.0;
  for (int c = 0; c < 50; ++c) {
    const int d = 2 + static_cast<int>(gen() % 7);
    const int m = d * (2 + static_cast<int>(gen() % 4));
    const double lo = std::max(1.0 / d, 2.0 / (d + 1));
    const double a_opt = (lo + (1.0 - lo) * uniform01(gen)) * m;
    const double f_closed =
        average_fidelity_from_participation(a_opt, m, q_optimal(a_opt, m, d));
    const double q_cap = regime_boundary_q(d);
    for (int i = 0; i <= 100000; ++i) {
      const double q = q_cap * i / 100000;
      const double f = average_fidelity_from_participation(
          a_opt, m, params_from_q(d, q));
      dev = std::max(dev, f - f_closed);
    }
  }
  return {dev <= 1e-9, "max grid excess " + fmt(dev) + " <= 1e-9"};
}

// 6. qubit closed form vs the generic pipeline
Outcome criterion_qubit() {
  std::mt19937_64 gen(6006);
  BasisOptConfig cfg;
  cfg.restarts = 8;
  double dev = 0.0;
  for (int c = 0; c < 50; ++c) {
    const BlochPair pair(random_unit3(gen), random_unit3(gen));
    const QubitCloneSolution closed = qubit_optimal_cloner(pair);
    cfg.seed = gen();
    const CloneReport pipeline = optimal_cloning_fidelity(
        eigenstate_ensemble(pair.observables()), cfg);
    dev = std::max(dev, std::abs(closed.q_c - pipeline.q_c));
  }
  const QubitCloneSolution mub =
      qubit_optimal_cloner(BlochPair(Vector3(0, 0, 1), Vector3(0, 1, 0)));
  const bool exact_mub = mub.a_opt / 4.0 == 0.75;
  const QubitCloneSolution aligned =
      qubit_optimal_cloner(BlochPair(Vector3(0, 0, 1), Vector3(0, 0, 1)));
  return {dev <= 1e-4 && exact_mub && aligned.q_c <= 1e-9,
          "pipeline dev " + fmt(dev) + " <= 1e-4, orthogonal A/M = 3/4 " +
              (exact_mub ? "exact" : "WRONG") + ", aligned Q_c " +
              fmt(aligned.q_c) + " <= 1e-9"};
}

// 7. faithfulness on 20 commuting and 20 non-commuting random sets
Outcome criterion_faithfulness() {
  BasisOptConfig cfg;
  cfg.restarts = 4;
  double max_commuting = 0.0;
  double min_generic = 1.0;
  std::mt19937_64 gen(7007);
  for (int c = 0; c < 20; ++c) {
    const int d = 2 + c % 4;  // 2..5
    const int count = 2 + static_cast<int>(gen() % 2);

    ObservableSet commuting;
    commuting.dim = d;
    const ComplexMatrix shared = haar_unitary(d, gen());
    for (int l = 0; l < count; ++l) {
      RealVector spectrum(d);
      for (int k = 0; k < d; ++k) {
        spectrum[k] = d - k + 0.5 * uniform01(gen);
      }
      ComplexMatrix obs = shared * spectrum.asDiagonal() * shared.adjoint();
      commuting.observables.push_back(0.5 * (obs + obs.adjoint()));
    }
    cfg.seed = gen();
    max_commuting = std::max(
        max_commuting,
        optimal_cloning_fidelity(eigenstate_ensemble(commuting), cfg).q_c);

    ObservableSet generic;
    generic.dim = d;
    for (int l = 0; l < count; ++l) {
      const ComplexMatrix basis = haar_unitary(d, gen());
      RealVector spectrum(d);
      for (int k = 0; k < d; ++k) {
        spectrum[k] = d - k;
      }
      ComplexMatrix obs = basis * spectrum.asDiagonal() * basis.adjoint();
      generic.observables.push_back(0.5 * (obs + obs.adjoint()));
    }
    cfg.seed = gen();
    min_generic = std::min(
        min_generic,
        optimal_cloning_fidelity(eigenstate_ensemble(generic), cfg).q_c);
  }
  return {max_commuting <= 1e-6 && min_generic >= 1e-4,
          "commuting max Q_c " + fmt(max_commuting) +
              " <= 1e-6, non-commuting min Q_c " + fmt(min_generic) +
              " >= 1e-4"};
}

// 8. figure sweeps: monotone growth and dominance by the Q bound
Outcome criterion_figures() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<int> primes = {2, 3, 5, 7, 11};
  const std::vector<SweepRow> by_d = sweep_over_dimension(2, primes);
  const std::vector<SweepRow> by_n = sweep_over_bases(11, 2, 12);
  bool monotone_d = true, monotone_n = true, below_bound = true;
  for (std::size_t i = 1; i < by_d.size(); ++i) {
    monotone_d = monotone_d && by_d[i].q_c > by_d[i - 1].q_c;
  }
  for (std::size_t i = 1; i < by_n.size(); ++i) {
    monotone_n = monotone_n && by_n[i].q_c > by_n[i - 1].q_c;
  }
  for (const SweepRow& row : by_d) {
    below_bound = below_bound && row.q_c < row.q_bound;
  }
  for (const SweepRow& row : by_n) {
    below_bound = below_bound && row.q_c < row.q_bound;
  }
  const double secs = elapsed_s(start);
  std::string details = std::string("Q_c increasing in d: ") +
                        (monotone_d ? "yes" : "NO") + ", in N: " +
                        (monotone_n ? "yes" : "NO") + ", Q_c < Q bound: " +
                        (below_bound ? "yes" : "NO") + ", " + fmt(secs) +
                        " s < 10 s";
  return {monotone_d && monotone_n && below_bound && secs < 10.0, details};
}

// 9. measurement-and-reconstruction comparison values
Outcome criterion_mr_comparison() {
  double dev_exact = 0.0;
  double dev_q0 = 0.0;
  for (auto [n, d] : {std::pair{2, 2}, {3, 2}, {2, 3}, {4, 3}, {2, 5},
                      {3, 5}, {6, 5}}) {
    const MrBounds bounds = mr_fidelity_bounds(n, d);
    dev_exact = std::max(
        dev_exact, std::abs(bounds.f_mub - (n + d - 1.0) / (n * d)));
    dev_exact = std::max(
        dev_exact,
        std::abs(bounds.q_bound - (1.0 - 1.0 / n) * (1.0 - 1.0 / d)));
    const EigenstateEnsemble s = eigenstate_ensemble(mub_family(d, n));
    const double f = average_cloning_fidelity(
        s, OrthonormalBasis(s.group(0)), params_from_q(d, 0.0));
    dev_q0 = std::max(dev_q0, std::abs(f - bounds.f_mub));
  }
  return {dev_exact == 0.0 && dev_q0 <= 1e-12,
          "closed-form dev " + fmt(dev_exact) + " (exact), q=0 equality dev " +
              fmt(dev_q0) + " <= 1e-12"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"oracle equivalence", criterion_oracle_equivalence},
      {"universal cloner", criterion_universal},
      {"MUB closed form recovery", criterion_mub_recovery},
      {"full MUB set = universal cloner", criterion_corollary_full_set},
      {"q_opt maximality", criterion_qopt_maximality},
      {"qubit closed form", criterion_qubit},
      {"faithfulness", criterion_faithfulness},
      {"figure reproduction", criterion_figures},
      {"measure-and-reconstruct comparison", criterion_mr_comparison},
  };

  int passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Outcome outcome = criteria[i].run();
    std::printf("[%s] criterion %zu: %s (%s)\n",
                outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                outcome.details.c_str());
    std::fflush(stdout);
    passed += outcome.pass ? 1 : 0;
  }
  std::printf("%d/%zu criteria passed\n", passed, criteria.size());
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
