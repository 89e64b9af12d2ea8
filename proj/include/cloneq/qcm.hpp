#pragma once

// The symmetric 1->2 quantum cloning machine: parameter handling, the
// closed-form clone output, a tripartite brute-force oracle, ensemble
// average cloning fidelity and the universal cloner.

#include "cloneq/ensembles.hpp"
#include "cloneq/qmath.hpp"

namespace cloneq {

// Parameters (p, q) of a symmetric cloner in dimension d, tied by the
// unitarity constraint p^2 + 2(d-1)q^2 = 1.
struct CloneParams {
  int dim = 0;
  double p = 1.0;
  double q = 0.0;

  // q <= 1/sqrt(2(d+1)), i.e. p^2 >= 2pq; the interval is closed at the
  // boundary, where the cloner becomes the universal one.
  bool in_regime() const;

  // Throws QOutOfRange if the constraint is violated beyond `tolerance`.
  void validate(double tolerance = tol::unitarity) const;
};

// p from q via the unitarity constraint. Valid range is
// 0 <= q <= 1/sqrt(2(d-1)); outside it throws QOutOfRange.
CloneParams params_from_q(int dim, double q);

// Largest admissible q for the regime p^2 >= 2pq: 1/sqrt(2(d+1)).
double regime_boundary_q(int dim);

struct CloneOutput {
  ComplexMatrix clone;  // the identical A/B marginal
  double fidelity = 0.0;
};

// Clone of |psi> under a symmetric cloner with cloning basis `basis`,
// from the closed-form output density matrix
//   sum_i |a_i|^2 (p^2+(d-2)q^2) |e_i><e_i|
//   + sum_{i != j} a_i a_j^* (2pq+(d-2)q^2) |e_i><e_j| + q^2 I.
CloneOutput clone_output_closed(const ComplexVector& psi,
                                const OrthonormalBasis& basis,
                                const CloneParams& params);

// Brute-force oracle: expands |psi> in the cloning basis, applies the
// defining tripartite map
//   |i>_A |0>_B |X>_C -> p |i>|i>|X_i> + q sum_{j != i} (|i>|j> + |j>|i>) |X_j>
// with canonical machine states |X_i>, partial-traces to subsystem A and
// checks that the A and B marginals agree within 1e-10. Capped at d <= 16.
CloneOutput clone_output_oracle(const ComplexVector& psi,
                                const OrthonormalBasis& basis,
                                const CloneParams& params);

// The d tripartite image vectors of the cloning-basis kets, as columns of
// a d^3 x d matrix. Orthonormal whenever the unitarity constraint holds.
ComplexMatrix tripartite_image_vectors(const OrthonormalBasis& basis,
                                       const CloneParams& params);

// Average cloning fidelity of an ensemble:
//   (A/M)(p^2 - 2pq) + 2pq + (d-1)q^2,  A = participation total.
double average_cloning_fidelity(const EigenstateEnsemble& ensemble,
                                const OrthonormalBasis& basis,
                                const CloneParams& params);

// Same formula evaluated from a precomputed participation total.
double average_fidelity_from_participation(double a_total, int num_states,
                                           const CloneParams& params);

// The universal symmetric cloner (p = 2q); its fidelity
// (d+3)/(2(d+1)) is the same for every input state.
struct UniversalCloner {
  CloneParams params;
  double fidelity = 0.0;
};

UniversalCloner universal_params(int dim);

double universal_fidelity(int dim);

}  // namespace cloneq
