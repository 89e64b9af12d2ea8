#pragma once

// The incompatibility engine: cloning-basis optimization, the closed-form
// optimal q, the incompatibility measure Q_c = 1 - F_opt, upper bounds and
// the measurement-and-reconstruction comparison values.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cloneq/qcm.hpp"

namespace cloneq {

struct BasisOptConfig {
  int restarts = 32;       // Haar-random starts, in addition to the
                           // member-basis warm starts
  int max_iters = 500;
  double step_tol = 1e-10;
  double value_tol = 1e-9;
  std::uint64_t seed = 0;
};

struct RestartRecord {
  std::string start;  // "member:l" or "haar:r"
  double a_value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct OptimizerDiagnostics {
  std::vector<RestartRecord> restarts;
  bool converged = false;  // at least one restart converged
  bool q_clamped = false;  // closed-form q fell outside the regime
  int best_restart = -1;
};

struct BasisOptResult {
  OrthonormalBasis basis;
  double a_opt = 0.0;
  OptimizerDiagnostics diagnostics;
};

// Maximizes the participation total A(S, B) over orthonormal bases B by
// multi-restart gradient ascent on the unitary manifold (finite-difference
// gradients in the local Hermitian-generator chart). Starts from each
// member basis of the ensemble plus cfg.restarts Haar-random points.
BasisOptResult optimize_basis(const EigenstateEnsemble& ensemble,
                              const BasisOptConfig& cfg = {});

// G = 4(A_opt - M) / ((M - 2 A_opt) sqrt(2(d-1))). Returns a signed
// infinity when |M - 2 A_opt| < 1e-12.
double g_function(double a_opt, int num_states, int dim);

// Closed-form optimal q for a given participation optimum:
//   q_opt = 1/(2 sqrt(d-1)) * sqrt(1 - sgn(A/M - 1/2)/sqrt(1 + G^2)),
// clamped to the regime interval [0, 1/sqrt(2(d+1))] by comparing the
// average fidelity at the interval endpoints. When A/M = 1/2 the formula
// degenerates to q = 1/(2 sqrt(d-1)). `clamped`, when given, reports
// whether the raw value fell outside the regime.
CloneParams q_optimal(double a_opt, int num_states, int dim,
                      bool* clamped = nullptr);

struct CloneReport {
  int dim = 0;
  int num_observables = 0;
  int num_states = 0;
  double a_opt = 0.0;
  OrthonormalBasis basis_opt;
  CloneParams params_opt;
  double f_opt = 0.0;
  double q_c = 0.0;
  double g = 0.0;
  double bound_qc = 0.0;  // Q_c upper bound for (N, d)
  double bound_q = 0.0;   // (1 - 1/N)(1 - 1/d)
  OptimizerDiagnostics diagnostics;
};

// Full pipeline: optimize_basis -> q_optimal -> average fidelity, with
// Q_c = 1 - F_opt and both bound values filled in.
CloneReport optimal_cloning_fidelity(const EigenstateEnsemble& ensemble,
                                     const BasisOptConfig& cfg = {});

// Closed-form optimum for N mutually unbiased bases in dimension d
// (A_opt = N + d - 1, no numerics). Throws TooManyBases unless
// 1 <= N <= d+1.
struct MubCloneOptimum {
  int num_bases = 0;
  int dim = 0;
  double a_opt = 0.0;
  CloneParams params;
  double f_opt = 0.0;
  double q_c = 0.0;
};

MubCloneOptimum fopt_mub(int num_bases, int dim);

// Upper bound on Q_c for N observables in dimension d:
// 1 - F_opt(MUB) for N <= d+1, else 1 - (d+3)/(2(d+1)).
double qc_upper_bound(int num_observables, int dim);

// Measurement-and-reconstruction comparison values:
// F = (N+d-1)/(Nd) and the bound Q <= (1-1/N)(1-1/d).
struct MrBounds {
  double f_mub = 0.0;
  double q_bound = 0.0;
};

MrBounds mr_fidelity_bounds(int num_observables, int dim);

// One row of a closed-form sweep over (N, d).
struct SweepRow {
  int num_bases = 0;
  int dim = 0;
  double a_opt = 0.0;
  double q_opt = 0.0;
  double f_opt = 0.0;
  double q_c = 0.0;
  double q_bound = 0.0;
};

SweepRow sweep_row(int num_bases, int dim);

// Q_c of N MUBs across dimensions (N fixed) / across N (dimension fixed).
std::vector<SweepRow> sweep_over_dimension(int num_bases,
                                           std::span<const int> dims);
std::vector<SweepRow> sweep_over_bases(int dim, int n_min, int n_max);

// CSV with header N,d,A_opt,q_opt,F_opt,Q_c,Q_bound at 12 significant
// digits. The header is a stable interface.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace cloneq
