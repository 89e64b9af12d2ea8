#pragma once

// Observable sets, their eigenstate ensembles, mutually unbiased basis
// families in prime dimension, and the participation quantities A and B.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cloneq/qmath.hpp"

namespace cloneq {

// A set of N Hermitian observables on a d-dimensional space.
struct ObservableSet {
  int dim = 0;
  std::vector<ComplexMatrix> observables;
  std::vector<std::string> labels;  // empty, or one label per observable

  int num_observables() const { return static_cast<int>(observables.size()); }

  // Throws on empty set, shape mismatch or hermiticity defect > tolerance.
  void validate(double tolerance = tol::hermitian) const;
};

// The uniform ensemble of the N*d eigenstates of an observable set,
// grouped by source observable: column m belongs to observable m / d.
class EigenstateEnsemble {
 public:
  EigenstateEnsemble(int dim, ComplexMatrix states, int num_groups,
                     double tolerance = tol::orthonormal);

  int dim() const { return dim_; }
  int num_states() const { return static_cast<int>(states_.cols()); }
  int num_observables() const { return num_groups_; }
  double weight() const { return 1.0 / num_states(); }

  const ComplexMatrix& states() const { return states_; }
  ComplexVector state(int m) const { return states_.col(m); }
  // The d states of observable l, as a basis matrix.
  ComplexMatrix group(int l) const;

 private:
  int dim_;
  int num_groups_;
  ComplexMatrix states_;  // d x (N*d)
};

// Builds the eigenstate ensemble of an observable set (eigenvectors per
// observable in descending-eigenvalue order, deterministic tie-breaks).
EigenstateEnsemble eigenstate_ensemble(const ObservableSet& set,
                                       double tolerance = tol::hermitian);

// N mutually unbiased bases in prime dimension d, returned as observables
// with spectra (d, d-1, ..., 1) so each eigenbasis is non-degenerate.
// Basis order: computational, Fourier, then the quadratic-phase bases.
// Throws NotPrime / TooManyBases (N must satisfy 1 <= N <= d+1).
ObservableSet mub_family(int dim, int num_bases);

// True iff all inter-basis squared overlaps equal 1/d and each eigenbasis
// is orthonormal, within `tolerance`.
bool is_mutually_unbiased(const ObservableSet& set,
                          double tolerance = tol::hermitian);

bool is_prime(int n);

// Participation quantities of an ensemble against a basis:
//   A_m = sum_i |<e_i|psi_m>|^4,  B_m = 1 - A_m,  A = sum_m A_m.
struct ParticipationReport {
  std::vector<double> per_state_a;
  std::vector<double> per_state_b;
  double a_total = 0.0;
  double b_total = 0.0;
};

ParticipationReport participation(const EigenstateEnsemble& ensemble,
                                  const OrthonormalBasis& basis);

// JSON observable-set format: {"dim": d, "observables": [[[ [re,im], ...],
// ...], ...], "labels": [...]} with each matrix entry a [re, im] pair.
// Hermiticity is validated on load. Throws InputError with a field path
// on malformed input.
ObservableSet observable_set_from_json(const nlohmann::json& doc,
                                       double tolerance = tol::hermitian);
ObservableSet load_observable_set(std::istream& in,
                                  double tolerance = tol::hermitian);
nlohmann::json observable_set_to_json(const ObservableSet& set);

}  // namespace cloneq
