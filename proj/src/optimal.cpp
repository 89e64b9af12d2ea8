#include "cloneq/optimal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <utility>

#include "cloneq/format.hpp"
#include "cloneq/parallel.hpp"

namespace cloneq {

namespace {

double quartic_sum(const ComplexMatrix& overlaps) {
  return overlaps.array().abs2().square().sum();
}

struct AscentOutcome {
  ComplexMatrix basis;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Re-orthonormalize a drifting near-unitary basis, keeping it close to
// the input (QR with the diagonal phases of R folded back in).
ComplexMatrix reorthonormalize(const ComplexMatrix& basis) {
  Eigen::HouseholderQR<ComplexMatrix> qr(basis);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) {
      q.col(j) *= r(j, j) / a;
    }
  }
  return q;
}

// Ascends A(S, B exp(i eps G)) with central finite-difference gradients
// over the off-diagonal Hermitian generators. Diagonal generators only
// rotate ket phases and never change A, so they are skipped.
AscentOutcome ascend(ComplexMatrix basis, const ComplexMatrix& states,
                     const BasisOptConfig& cfg) {
  constexpr double kFdEps = 1e-5;
  const double grad_floor = cfg.value_tol;  // value resolution per unit step
  const Eigen::Index d = basis.rows();
  const Eigen::Index num_pairs = d * (d - 1) / 2;

  ComplexMatrix overlaps = basis.adjoint() * states;
  double value = quartic_sum(overlaps);

  AscentOutcome out;
  if (num_pairs == 0) {
    out.basis = std::move(basis);
    out.value = value;
    out.converged = true;
    return out;
  }

  const double cos_eps = std::cos(kFdEps);
  const double sin_eps = std::sin(kFdEps);
  std::vector<double> grad_sym(num_pairs);
  std::vector<double> grad_asym(num_pairs);
  ComplexVector row_k(states.cols()), row_l(states.cols());

  auto rotated_sum = [&](Eigen::Index k, Eigen::Index l, bool sym,
                         double sign) {
    // rows of exp(-i eps G) C for the (k, l) generator
    const double s = sign * sin_eps;
    if (sym) {
      row_k = (cos_eps * overlaps.row(k) - Complex(0.0, s) * overlaps.row(l))
                  .transpose();
      row_l = (cos_eps * overlaps.row(l) - Complex(0.0, s) * overlaps.row(k))
                  .transpose();
    } else {
      row_k = (cos_eps * overlaps.row(k) - s * overlaps.row(l)).transpose();
      row_l = (cos_eps * overlaps.row(l) + s * overlaps.row(k)).transpose();
    }
    return row_k.cwiseAbs2().cwiseAbs2().sum() +
           row_l.cwiseAbs2().cwiseAbs2().sum();
  };

  double step = 0.1;
  int iter = 0;
  bool converged = false;

  int accepted_since_renorm = 0;
  for (; iter < cfg.max_iters; ++iter) {
    double grad_norm_sq = 0.0;
    Eigen::Index pair = 0;
    for (Eigen::Index k = 0; k < d; ++k) {
      for (Eigen::Index l = k + 1; l < d; ++l, ++pair) {
        const double gs = (rotated_sum(k, l, true, 1.0) -
                           rotated_sum(k, l, true, -1.0)) /
                          (2.0 * kFdEps);
        const double ga = (rotated_sum(k, l, false, 1.0) -
                           rotated_sum(k, l, false, -1.0)) /
                          (2.0 * kFdEps);
        grad_sym[pair] = gs;
        grad_asym[pair] = ga;
        grad_norm_sq += gs * gs + ga * ga;
      }
    }
    const double grad_norm = std::sqrt(grad_norm_sq);
    if (grad_norm < grad_floor) {
      converged = true;
      break;
    }

    ComplexMatrix direction = ComplexMatrix::Zero(d, d);
    pair = 0;
    for (Eigen::Index k = 0; k < d; ++k) {
      for (Eigen::Index l = k + 1; l < d; ++l, ++pair) {
        const Complex entry(grad_sym[pair] / grad_norm,
                            -grad_asym[pair] / grad_norm);
        direction(k, l) = entry;
        direction(l, k) = std::conj(entry);
      }
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> dir_eig(direction);

    bool improved = false;
    double eta = std::min(2.0 * step, 0.5);
    while (eta >= cfg.step_tol) {
      ComplexVector phases(d);
      for (Eigen::Index j = 0; j < d; ++j) {
        const double angle = -eta * dir_eig.eigenvalues()[j];
        phases[j] = Complex(std::cos(angle), std::sin(angle));
      }
      const ComplexMatrix rot = dir_eig.eigenvectors() *
                                phases.asDiagonal() *
                                dir_eig.eigenvectors().adjoint();
      const ComplexMatrix trial = rot * overlaps;
      const double trial_value = quartic_sum(trial);
      if (trial_value > value + 1e-15) {
        overlaps = trial;
        value = trial_value;
        basis = basis * rot.adjoint();
        step = eta;
        improved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!improved) {
      converged = true;
      break;
    }
    if (++accepted_since_renorm >= 32) {
      basis = reorthonormalize(basis);
      overlaps = basis.adjoint() * states;
      value = quartic_sum(overlaps);
      accepted_since_renorm = 0;
    }
  }

  out.basis = reorthonormalize(basis);
  out.value = quartic_sum(out.basis.adjoint() * states);
  out.iterations = iter;
  out.converged = converged;
  return out;
}

}  // namespace

BasisOptResult optimize_basis(const EigenstateEnsemble& ensemble,
                              const BasisOptConfig& cfg) {
  if (cfg.restarts < 1) {
    throw CloneqError("optimizer needs at least one restart");
  }
  if (cfg.step_tol <= 0.0 || cfg.value_tol <= 0.0) {
    throw CloneqError("optimizer tolerances must be positive");
  }
  const int d = ensemble.dim();
  const int n = ensemble.num_observables();
  const int total = n + cfg.restarts;

  std::vector<AscentOutcome> outcomes(total);
  std::vector<std::string> start_labels(total);
  parallel_for(static_cast<std::size_t>(total), [&](std::size_t idx) {
    const int i = static_cast<int>(idx);
    ComplexMatrix start;
    if (i < n) {
      start = ensemble.group(i);
      start_labels[idx] = "member:" + std::to_string(i);
    } else {
      const int r = i - n;
      start = haar_unitary(d, mix_seed(cfg.seed, 0x9000 + r));
      start_labels[idx] = "haar:" + std::to_string(r);
    }
    outcomes[idx] = ascend(std::move(start), ensemble.states(), cfg);
  });

  int best = 0;
  for (int i = 1; i < total; ++i) {
    if (outcomes[i].value > outcomes[best].value) {
      best = i;
    }
  }

  OptimizerDiagnostics diagnostics;
  diagnostics.restarts.reserve(total);
  bool any_converged = false;
  for (int i = 0; i < total; ++i) {
    diagnostics.restarts.push_back(RestartRecord{
        start_labels[i], outcomes[i].value, outcomes[i].iterations,
        outcomes[i].converged});
    any_converged = any_converged || outcomes[i].converged;
  }
  diagnostics.converged = any_converged;
  diagnostics.best_restart = best;

  const double m = ensemble.num_states();
  const double a_opt =
      std::clamp(outcomes[best].value, m / d, m);  // strip fp dust
  return BasisOptResult{OrthonormalBasis(std::move(outcomes[best].basis)),
                        a_opt, std::move(diagnostics)};
}

double g_function(double a_opt, int num_states, int dim) {
  if (dim < 2) {
    throw DimensionMismatch("g_function needs dim >= 2");
  }
  if (num_states < 1) {
    throw DimensionMismatch("g_function needs at least one state");
  }
  const double m = num_states;
  const double denom = m - 2.0 * a_opt;
  if (std::abs(denom) < 1e-12) {
    return (a_opt >= 0.5 * m) ? std::numeric_limits<double>::infinity()
                              : -std::numeric_limits<double>::infinity();
  }
  return 4.0 * (a_opt - m) / (denom * std::sqrt(2.0 * (dim - 1)));
}

CloneParams q_optimal(double a_opt, int num_states, int dim, bool* clamped) {
  if (dim < 2) {
    throw DimensionMismatch("q_optimal needs dim >= 2");
  }
  if (num_states < 1) {
    throw DimensionMismatch("q_optimal needs at least one state");
  }
  const double m = num_states;
  double ratio = a_opt / m;
  if (ratio < 1.0 / dim - 1e-6 || ratio > 1.0 + 1e-6) {
    throw CloneqError("participation optimum must lie in [M/d, M]");
  }
  ratio = std::clamp(ratio, 1.0 / dim, 1.0);

  double q_raw;
  if (std::abs(ratio - 0.5) < 1e-12) {
    // analytic limit of the G -> infinity branch
    q_raw = 0.5 / std::sqrt(dim - 1.0);
  } else {
    const double g = g_function(ratio * m, num_states, dim);
    const double damp =
        std::isinf(g) ? 0.0 : 1.0 / std::sqrt(1.0 + g * g);
    const double sign = (ratio > 0.5) ? 1.0 : -1.0;
    q_raw = 0.5 / std::sqrt(dim - 1.0) * std::sqrt(1.0 - sign * damp);
  }

  const double q_cap = regime_boundary_q(dim);
  if (clamped != nullptr) {
    *clamped = q_raw > q_cap;
  }

  // Keep the regime interval closed: compare the candidate against both
  // endpoints and return the best.
  const double candidates[] = {std::min(q_raw, q_cap), 0.0, q_cap};
  CloneParams best_params;
  double best_f = -1.0;
  for (double q : candidates) {
    const CloneParams params = params_from_q(dim, q);
    const double f =
        average_fidelity_from_participation(ratio * m, num_states, params);
    if (f > best_f + 1e-15) {
      best_f = f;
      best_params = params;
    }
  }
  return best_params;
}

CloneReport optimal_cloning_fidelity(const EigenstateEnsemble& ensemble,
                                     const BasisOptConfig& cfg) {
  const int d = ensemble.dim();
  if (d < 2) {
    throw DimensionMismatch("incompatibility pipeline needs dim >= 2");
  }
  BasisOptResult opt = optimize_basis(ensemble, cfg);

  const int m = ensemble.num_states();
  const int n = ensemble.num_observables();
  bool clamped = false;
  const CloneParams params = q_optimal(opt.a_opt, m, d, &clamped);
  const double f_opt = average_cloning_fidelity(ensemble, opt.basis, params);

  CloneReport report{d,
                     n,
                     m,
                     opt.a_opt,
                     std::move(opt.basis),
                     params,
                     f_opt,
                     1.0 - f_opt,
                     g_function(opt.a_opt, m, d),
                     qc_upper_bound(n, d),
                     (1.0 - 1.0 / n) * (1.0 - 1.0 / d),
                     std::move(opt.diagnostics)};
  report.diagnostics.q_clamped = clamped;
  return report;
}

MubCloneOptimum fopt_mub(int num_bases, int dim) {
  if (dim < 2) {
    throw DimensionMismatch("fopt_mub needs dim >= 2");
  }
  if (num_bases < 1) {
    throw CloneqError("fopt_mub needs at least one basis");
  }
  if (num_bases > dim + 1) {
    throw TooManyBases("no more than d+1 MUBs exist in dimension d");
  }
  const double a_opt = num_bases + dim - 1.0;
  const int m = num_bases * dim;
  const CloneParams params = q_optimal(a_opt, m, dim);
  const double f_opt =
      average_fidelity_from_participation(a_opt, m, params);
  return MubCloneOptimum{num_bases, dim, a_opt, params, f_opt, 1.0 - f_opt};
}

double qc_upper_bound(int num_observables, int dim) {
  if (num_observables < 1 || dim < 2) {
    throw DimensionMismatch("qc_upper_bound needs N >= 1 and dim >= 2");
  }
  if (num_observables <= dim + 1) {
    return 1.0 - fopt_mub(num_observables, dim).f_opt;
  }
  return 1.0 - universal_fidelity(dim);
}

MrBounds mr_fidelity_bounds(int num_observables, int dim) {
  if (num_observables < 1 || dim < 2) {
    throw DimensionMismatch("mr_fidelity_bounds needs N >= 1 and dim >= 2");
  }
  const double n = num_observables;
  const double d = dim;
  return MrBounds{(n + d - 1.0) / (n * d),
                  (1.0 - 1.0 / n) * (1.0 - 1.0 / d)};
}

SweepRow sweep_row(int num_bases, int dim) {
  const MubCloneOptimum opt = fopt_mub(num_bases, dim);
  return SweepRow{num_bases,
                  dim,
                  opt.a_opt,
                  opt.params.q,
                  opt.f_opt,
                  opt.q_c,
                  mr_fidelity_bounds(num_bases, dim).q_bound};
}

std::vector<SweepRow> sweep_over_dimension(int num_bases,
                                           std::span<const int> dims) {
  std::vector<SweepRow> rows(dims.size());
  parallel_for(dims.size(), [&](std::size_t i) {
    rows[i] = sweep_row(num_bases, dims[i]);
  });
  return rows;
}

std::vector<SweepRow> sweep_over_bases(int dim, int n_min, int n_max) {
  if (n_min < 1 || n_max < n_min) {
    throw CloneqError("invalid sweep range");
  }
  std::vector<SweepRow> rows(static_cast<std::size_t>(n_max - n_min + 1));
  parallel_for(rows.size(), [&](std::size_t i) {
    rows[i] = sweep_row(n_min + static_cast<int>(i), dim);
  });
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "N,d,A_opt,q_opt,F_opt,Q_c,Q_bound\n";
  for (const SweepRow& row : rows) {
    out << row.num_bases << ',' << row.dim << ',' << fmt12(row.a_opt) << ','
        << fmt12(row.q_opt) << ',' << fmt12(row.f_opt) << ','
        << fmt12(row.q_c) << ',' << fmt12(row.q_bound) << '\n';
  }
}

}  // namespace cloneq
