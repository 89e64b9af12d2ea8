#pragma once

// Closed-form optimal cloner and Q_c for a pair of spin-1/2 observables
// parameterized by Bloch vectors.

#include <optional>
#include <utility>
#include <vector>

#include "cloneq/optimal.hpp"

namespace cloneq {

using Vector3 = Eigen::Vector3d;

// A pair of unit Bloch vectors. Any affine parameters of the observables
// (scalar offsets and nonzero scales) leave the eigenprojectors unchanged
// and are not represented.
struct BlochPair {
  Vector3 a;
  Vector3 b;

  BlochPair(const Vector3& a_vec, const Vector3& b_vec);  // throws NotUnit

  double overlap() const { return a.dot(b); }

  // {a.sigma, b.sigma} as an observable set, for pipeline cross-checks.
  ObservableSet observables() const;
};

// v.sigma for a unit vector v: 2x2 Hermitian with eigenvalues +-1 and
// eigenprojectors (I +- v.sigma)/2. Throws NotUnit.
ComplexMatrix bloch_to_observable(const Vector3& v);

struct QubitCloneSolution {
  double a_opt = 0.0;            // 3 + |a.b|
  CloneParams params;            // q_opt, p_opt at d = 2
  Vector3 r_plus;                // (a+b)/|a+b| (or the defined direction)
  std::optional<Vector3> r_minus;  // absent when |a.b| = 1
  bool degenerate_direction = false;  // a.b = 0: every coplanar r optimal
  double f_opt = 0.0;
  double q_c = 0.0;
};

// Closed-form optimal cloner for the four-state eigenstate ensemble of a
// Bloch pair: G = sqrt(2)(1-|a.b|)/(1+|a.b|) and
// q_opt = (1/2) sqrt(1 - 1/sqrt(1+G^2)).
QubitCloneSolution qubit_optimal_cloner(const BlochPair& pair);

// Participation of the pair's ensemble against a measurement direction r:
// A(r) = 2 + (r.a)^2 + (r.b)^2.
double qubit_participation(const BlochPair& pair, const Vector3& r);

// A over coplanar basis angles theta in [0, pi), measured from a:
// A(theta) = 2 + cos^2(theta) + cos^2(theta - gamma), gamma = angle(a, b).
std::vector<std::pair<double, double>> qubit_a_profile(const BlochPair& pair,
                                                       int theta_grid);

}  // namespace cloneq
