#include "cloneq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "cloneq/format.hpp"
#include "cloneq/optimal.hpp"
#include "cloneq/parallel.hpp"
#include "cloneq/qubit.hpp"

namespace cloneq {

namespace {

ComplexVector random_state(int dim, std::uint64_t seed) {
  return haar_unitary(dim, seed).col(0);
}

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

Vector3 random_direction(std::mt19937_64& gen) {
  // rejection sampling inside the unit ball
  while (true) {
    const Vector3 v(2.0 * uniform01(gen) - 1.0, 2.0 * uniform01(gen) - 1.0,
                    2.0 * uniform01(gen) - 1.0);
    const double n = v.norm();
    if (n > 1e-3 && n <= 1.0) {
      return v / n;
    }
  }
}

// Random set of commuting observables: one shared eigenbasis, distinct
// random spectra.
ObservableSet random_commuting_set(int dim, int count, std::uint64_t seed) {
  const ComplexMatrix basis = haar_unitary(dim, seed);
  std::mt19937_64 gen(mix_seed(seed, 0xC0));
  ObservableSet set;
  set.dim = dim;
  for (int l = 0; l < count; ++l) {
    RealVector spectrum(dim);
    for (int k = 0; k < dim; ++k) {
      // jitter < 1/2 keeps the spectrum non-degenerate for any seed
      spectrum[k] = static_cast<double>(dim - k) + 0.4 * uniform01(gen);
    }
    ComplexMatrix obs = basis * spectrum.asDiagonal() * basis.adjoint();
    set.observables.push_back(0.5 * (obs + obs.adjoint()));
  }
  return set;
}

// Random set with an independent Haar eigenbasis per observable.
ObservableSet random_generic_set(int dim, int count, std::uint64_t seed) {
  ObservableSet set;
  set.dim = dim;
  for (int l = 0; l < count; ++l) {
    const ComplexMatrix basis = haar_unitary(dim, mix_seed(seed, 0xD0 + l));
    RealVector spectrum(dim);
    for (int k = 0; k < dim; ++k) {
      spectrum[k] = static_cast<double>(dim - k);
    }
    ComplexMatrix obs = basis * spectrum.asDiagonal() * basis.adjoint();
    set.observables.push_back(0.5 * (obs + obs.adjoint()));
  }
  return set;
}

struct CheckContext {
  VerifyLevel level;
  std::uint64_t seed;

  bool full() const { return level == VerifyLevel::full; }
};

VerifyCheck closed_vs_oracle(const CheckContext& ctx) {
  const int d_max = ctx.full() ? 6 : 4;
  const int triples = ctx.full() ? 80 : 40;
  double dev = 0.0;
  for (int d = 2; d <= d_max; ++d) {
    std::mt19937_64 gen(mix_seed(ctx.seed, 0x10 + d));
    for (int t = 0; t < triples; ++t) {
      const ComplexVector psi = random_state(d, gen());
      const OrthonormalBasis basis(haar_unitary(d, gen()));
      const double q = uniform01(gen) / std::sqrt(2.0 * (d - 1));
      const CloneParams params = params_from_q(d, q);
      const CloneOutput closed = clone_output_closed(psi, basis, params);
      const CloneOutput oracle = clone_output_oracle(psi, basis, params);
      dev = std::max(dev,
                     (closed.clone - oracle.clone).cwiseAbs().maxCoeff());
      dev = std::max(dev, std::abs(closed.fidelity - oracle.fidelity));
    }
  }
  return {"closed form vs tripartite oracle", dev, 1e-10, dev <= 1e-10};
}

VerifyCheck marginal_symmetry(const CheckContext& ctx) {
  const int d_max = ctx.full() ? 6 : 4;
  double dev = 0.0;
  for (int d = 2; d <= d_max; ++d) {
    std::mt19937_64 gen(mix_seed(ctx.seed, 0x20 + d));
    for (int t = 0; t < 20; ++t) {
      const OrthonormalBasis basis(haar_unitary(d, gen()));
      const double q = uniform01(gen) / std::sqrt(2.0 * (d - 1));
      const CloneParams params = params_from_q(d, q);
      const ComplexVector psi = random_state(d, gen());
      const ComplexVector alpha = basis.kets().adjoint() * psi;
      const ComplexVector out = tripartite_image_vectors(basis, params) * alpha;
      const std::array<Eigen::Index, 3> dims{d, d, d};
      const ComplexMatrix rho_a = pure_state_marginal(out, Subsystem::A, dims);
      const ComplexMatrix rho_b = pure_state_marginal(out, Subsystem::B, dims);
      dev = std::max(dev, (rho_a - rho_b).cwiseAbs().maxCoeff());
    }
  }
  return {"A/B marginal symmetry", dev, 1e-10, dev <= 1e-10};
}

VerifyCheck cloning_isometry(const CheckContext& ctx) {
  const int d_max = ctx.full() ? 6 : 4;
  double dev = 0.0;
  for (int d = 2; d <= d_max; ++d) {
    std::mt19937_64 gen(mix_seed(ctx.seed, 0x30 + d));
    for (int t = 0; t < 10; ++t) {
      const OrthonormalBasis basis(haar_unitary(d, gen()));
      const double q = uniform01(gen) / std::sqrt(2.0 * (d - 1));
      const ComplexMatrix images =
          tripartite_image_vectors(basis, params_from_q(d, q));
      const ComplexMatrix gram = images.adjoint() * images;
      dev = std::max(dev, (gram - ComplexMatrix::Identity(d, d))
                              .cwiseAbs()
                              .maxCoeff());
    }
  }
  return {"cloning isometry (image Gram = I)", dev, 1e-10, dev <= 1e-10};
}

VerifyCheck qopt_vs_grid(const CheckContext& ctx) {
  const int cases = ctx.full() ? 30 : 12;
  const int grid = 100000;
  std::mt19937_64 gen(mix_seed(ctx.seed, 0x40));
  double dev = 0.0;
  for (int c = 0; c < cases; ++c) {
    const int d = 2 + static_cast<int>(gen() % 7);
    const double lo = std::max(1.0 / d, 2.0 / (d + 1));
    const double ratio = lo + (1.0 - lo) * uniform01(gen);
    const int m = d * (2 + static_cast<int>(gen() % 4));
    const double a_opt = ratio * m;
    const CloneParams best = q_optimal(a_opt, m, d);
    const double f_closed =
        average_fidelity_from_participation(a_opt, m, best);
    const double q_cap = regime_boundary_q(d);
    double f_grid = 0.0;
    for (int i = 0; i <= grid; ++i) {
      const double q = q_cap * i / grid;
      f_grid = std::max(f_grid, average_fidelity_from_participation(
                                    a_opt, m, params_from_q(d, q)));
    }
    dev = std::max(dev, f_grid - f_closed);
  }
  return {"closed-form q_opt vs grid search", dev, 1e-9, dev <= 1e-9};
}

VerifyCheck qubit_vs_pipeline(const CheckContext& ctx) {
  const int pairs = ctx.full() ? 20 : 6;
  std::mt19937_64 gen(mix_seed(ctx.seed, 0x50));
  BasisOptConfig cfg;
  cfg.restarts = ctx.full() ? 16 : 8;
  double dev = 0.0;
  for (int c = 0; c < pairs; ++c) {
    cfg.seed = mix_seed(ctx.seed, 0x51 + c);
    const BlochPair pair(random_direction(gen), random_direction(gen));
    const QubitCloneSolution closed = qubit_optimal_cloner(pair);
    const CloneReport pipeline = optimal_cloning_fidelity(
        eigenstate_ensemble(pair.observables()), cfg);
    dev = std::max(dev, std::abs(closed.q_c - pipeline.q_c));
  }
  return {"qubit closed form vs generic pipeline", dev, 1e-4, dev <= 1e-4};
}

VerifyCheck mub_recovery(const CheckContext& ctx) {
  std::vector<std::pair<int, int>> cases = {{2, 2}, {2, 3}};
  if (ctx.full()) {
    cases.insert(cases.end(), {{3, 2}, {4, 3}, {2, 5}});
  }
  BasisOptConfig cfg;
  cfg.restarts = ctx.full() ? 16 : 8;
  double dev = 0.0;
  for (const auto& [n, d] : cases) {
    cfg.seed = mix_seed(ctx.seed, 0x60 + n * 16 + d);
    const BasisOptResult res =
        optimize_basis(eigenstate_ensemble(mub_family(d, n)), cfg);
    dev = std::max(dev, std::abs(res.a_opt - (n + d - 1.0)));
  }
  return {"MUB participation optimum A = N+d-1", dev, 1e-4, dev <= 1e-4};
}

VerifyCheck universal_state_independence(const CheckContext& ctx) {
  const int d_max = ctx.full() ? 6 : 4;
  double dev = 0.0;
  for (int d = 2; d <= d_max; ++d) {
    const UniversalCloner uni = universal_params(d);
    const OrthonormalBasis basis = OrthonormalBasis::canonical(d);
    double lo = 1.0, hi = 0.0;
    for (int t = 0; t < 100; ++t) {
      const ComplexVector psi =
          random_state(d, mix_seed(ctx.seed, 0x700 + d * 256 + t));
      const double f = clone_output_closed(psi, basis, uni.params).fidelity;
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    dev = std::max(dev, hi - lo);
  }
  return {"universal cloner state independence", dev, 1e-10, dev <= 1e-10};
}

VerifyCheck universal_fidelity_value(const CheckContext& ctx) {
  double dev = 0.0;
  for (int d = 2; d <= 12; ++d) {
    const UniversalCloner uni = universal_params(d);
    const ComplexVector psi = random_state(d, mix_seed(ctx.seed, 0x800 + d));
    const double f =
        clone_output_closed(psi, OrthonormalBasis::canonical(d), uni.params)
            .fidelity;
    dev = std::max(dev, std::abs(f - (d + 3.0) / (2.0 * (d + 1))));
    dev = std::max(dev, std::abs(uni.fidelity - (d + 3.0) / (2.0 * (d + 1))));
  }
  return {"universal fidelity (d+3)/(2(d+1))", dev, 1e-12, dev <= 1e-12};
}

VerifyCheck full_mub_universal(const CheckContext&) {
  double dev = 0.0;
  for (int d : {2, 3, 5}) {
    const MubCloneOptimum opt = fopt_mub(d + 1, d);
    dev = std::max(dev, std::abs(opt.params.q - regime_boundary_q(d)));
    dev = std::max(dev, std::abs(opt.f_opt - universal_fidelity(d)));
  }
  return {"full MUB set optimum is the universal cloner", dev, 1e-12,
          dev <= 1e-12};
}

VerifyCheck faithfulness_commuting(const CheckContext& ctx) {
  const int d_max = ctx.full() ? 5 : 4;
  BasisOptConfig cfg;
  cfg.restarts = 4;
  double dev = 0.0;
  for (int d = 2; d <= d_max; ++d) {
    cfg.seed = mix_seed(ctx.seed, 0x90 + d);
    const ObservableSet set =
        random_commuting_set(d, 2, mix_seed(ctx.seed, 0x91 + d));
    const CloneReport report =
        optimal_cloning_fidelity(eigenstate_ensemble(set), cfg);
    dev = std::max(dev, std::abs(report.q_c));
  }
  return {"commuting sets have Q_c = 0", dev, 1e-6, dev <= 1e-6};
}

VerifyCheck faithfulness_non_commuting(const CheckContext& ctx) {
  const int d_max = ctx.full() ? 5 : 4;
  BasisOptConfig cfg;
  cfg.restarts = 4;
  double min_qc = 1.0;
  for (int d = 2; d <= d_max; ++d) {
    cfg.seed = mix_seed(ctx.seed, 0xA0 + d);
    const ObservableSet set =
        random_generic_set(d, 2, mix_seed(ctx.seed, 0xA1 + d));
    const CloneReport report =
        optimal_cloning_fidelity(eigenstate_ensemble(set), cfg);
    min_qc = std::min(min_qc, report.q_c);
  }
  const double dev = std::max(0.0, 1e-4 - min_qc);
  return {"non-commuting sets have Q_c >= 1e-4", dev, 0.0, dev <= 0.0};
}

VerifyCheck mr_equality(const CheckContext& ctx) {
  std::vector<std::pair<int, int>> cases = {{2, 2}, {2, 3}};
  if (ctx.full()) {
    cases.push_back({3, 5});
  }
  double dev = 0.0;
  for (const auto& [n, d] : cases) {
    const EigenstateEnsemble ensemble = eigenstate_ensemble(mub_family(d, n));
    const OrthonormalBasis member(ensemble.group(0));
    const double f =
        average_cloning_fidelity(ensemble, member, params_from_q(d, 0.0));
    dev = std::max(dev, std::abs(f - mr_fidelity_bounds(n, d).f_mub));
  }
  return {"q=0 cloning equals projective measure-and-reconstruct", dev, 1e-12,
          dev <= 1e-12};
}

VerifyCheck sweep_shape(const CheckContext&) {
  const std::vector<int> primes = {2, 3, 5, 7, 11};
  const std::vector<SweepRow> by_d = sweep_over_dimension(2, primes);
  const std::vector<SweepRow> by_n = sweep_over_bases(11, 2, 12);
  double dev = 0.0;
  for (std::size_t i = 1; i < by_d.size(); ++i) {
    dev = std::max(dev, by_d[i - 1].q_c - by_d[i].q_c);  // must increase
  }
  for (std::size_t i = 1; i < by_n.size(); ++i) {
    dev = std::max(dev, by_n[i - 1].q_c - by_n[i].q_c);
  }
  for (const SweepRow& row : by_d) {
    dev = std::max(dev, row.q_c - row.q_bound);  // Q_c < Q_bound
  }
  for (const SweepRow& row : by_n) {
    dev = std::max(dev, row.q_c - row.q_bound);
  }
  return {"sweep shape: Q_c increasing and below Q bound", std::max(dev, 0.0),
          0.0, dev <= 0.0};
}

}  // namespace

std::vector<VerifyCheck> run_verification(VerifyLevel level,
                                          std::uint64_t seed) {
  const CheckContext ctx{level, seed};
  using CheckFn = VerifyCheck (*)(const CheckContext&);
  const std::vector<CheckFn> checks = {
      closed_vs_oracle,     marginal_symmetry,
      cloning_isometry,     qopt_vs_grid,
      qubit_vs_pipeline,    mub_recovery,
      universal_state_independence, universal_fidelity_value,
      full_mub_universal,   faithfulness_commuting,
      faithfulness_non_commuting, mr_equality,
      sweep_shape};

  std::vector<VerifyCheck> results(checks.size());
  // Checks fan out their own inner work; running them serially keeps the
  // memory profile flat and the output order fixed anyway.
  for (std::size_t i = 0; i < checks.size(); ++i) {
    results[i] = checks[i](ctx);
  }
  return results;
}

bool all_passed(const std::vector<VerifyCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const VerifyCheck& c) { return c.pass; });
}

bool print_verification(std::ostream& out,
                        const std::vector<VerifyCheck>& checks) {
  int passed = 0;
  for (const VerifyCheck& check : checks) {
    out << (check.pass ? "[PASS] " : "[FAIL] ") << check.name
        << " (deviation " << fmt12(check.deviation) << ", tolerance "
        << fmt12(check.tolerance) << ")\n";
    passed += check.pass ? 1 : 0;
  }
  out << passed << "/" << checks.size() << " checks passed\n";
  return passed == static_cast<int>(checks.size());
}

}  // namespace cloneq
