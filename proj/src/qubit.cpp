#include "cloneq/qubit.hpp"

#include <cmath>
#include <numbers>

namespace cloneq {

namespace {

void ensure_unit(const Vector3& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > 1e-12) {
    throw NotUnit(std::string(what) + " must be a unit vector");
  }
}

}  // namespace

BlochPair::BlochPair(const Vector3& a_vec, const Vector3& b_vec)
    : a(a_vec), b(b_vec) {
  ensure_unit(a, "bloch vector a");
  ensure_unit(b, "bloch vector b");
}

ObservableSet BlochPair::observables() const {
  ObservableSet set;
  set.dim = 2;
  set.observables = {bloch_to_observable(a), bloch_to_observable(b)};
  set.labels = {"a.sigma", "b.sigma"};
  return set;
}

ComplexMatrix bloch_to_observable(const Vector3& v) {
  ensure_unit(v, "bloch vector");
  ComplexMatrix obs(2, 2);
  obs(0, 0) = Complex(v.z(), 0.0);
  obs(0, 1) = Complex(v.x(), -v.y());
  obs(1, 0) = Complex(v.x(), v.y());
  obs(1, 1) = Complex(-v.z(), 0.0);
  return obs;
}

double qubit_participation(const BlochPair& pair, const Vector3& r) {
  ensure_unit(r, "measurement direction");
  const double ra = r.dot(pair.a);
  const double rb = r.dot(pair.b);
  return 2.0 + ra * ra + rb * rb;
}

QubitCloneSolution qubit_optimal_cloner(const BlochPair& pair) {
  const double c = std::min(std::abs(pair.overlap()), 1.0);

  QubitCloneSolution sol;
  sol.a_opt = 3.0 + c;
  const double g = std::numbers::sqrt2 * (1.0 - c) / (1.0 + c);
  const double q = 0.5 * std::sqrt(1.0 - 1.0 / std::sqrt(1.0 + g * g));
  sol.params = params_from_q(2, q);
  sol.f_opt = average_fidelity_from_participation(sol.a_opt, 4, sol.params);
  sol.q_c = 1.0 - sol.f_opt;

  const Vector3 sum = pair.a + pair.b;
  const Vector3 diff = pair.a - pair.b;
  if (sum.norm() > 1e-9 && diff.norm() > 1e-9) {
    sol.r_plus = sum.normalized();
    sol.r_minus = diff.normalized();
  } else {
    // coincident projector sets (|a.b| = 1): only one direction defined
    sol.r_plus = (sum.norm() > diff.norm()) ? sum.normalized()
                                            : diff.normalized();
    sol.r_minus.reset();
  }
  sol.degenerate_direction = std::abs(pair.overlap()) < 1e-12;
  return sol;
}

std::vector<std::pair<double, double>> qubit_a_profile(const BlochPair& pair,
                                                       int theta_grid) {
  if (theta_grid < 2) {
    throw CloneqError("profile needs at least two grid points");
  }
  const double gamma =
      std::acos(std::clamp(pair.overlap(), -1.0, 1.0));
  std::vector<std::pair<double, double>> rows;
  rows.reserve(theta_grid);
  for (int i = 0; i < theta_grid; ++i) {
    const double theta = std::numbers::pi * i / theta_grid;
    const double ca = std::cos(theta);
    const double cb = std::cos(theta - gamma);
    rows.emplace_back(theta, 2.0 + ca * ca + cb * cb);
  }
  return rows;
}

}  // namespace cloneq
