#include "cloneq/qcm.hpp"

#include <cmath>
#include <string>

namespace cloneq {

namespace {

constexpr Eigen::Index kOracleMaxDim = 16;  // d^3 amplitudes per image

void check_dims(const ComplexVector& psi, const OrthonormalBasis& basis,
                const CloneParams& params) {
  if (basis.dim() != params.dim || psi.size() != basis.dim()) {
    throw DimensionMismatch("state, basis and params dimensions differ");
  }
  if (std::abs(psi.norm() - 1.0) > tol::unit_norm) {
    throw NotUnit("input state is not normalized");
  }
  params.validate();
}

}  // namespace

bool CloneParams::in_regime() const {
  return q <= regime_boundary_q(dim) + tol::unitarity;
}

void CloneParams::validate(double tolerance) const {
  if (dim < 2) {
    throw DimensionMismatch("cloner needs dim >= 2");
  }
  if (p < 0.0 || q < 0.0) {
    throw QOutOfRange("cloner parameters must be non-negative");
  }
  const double defect = std::abs(p * p + 2.0 * (dim - 1) * q * q - 1.0);
  if (defect > tolerance) {
    throw QOutOfRange("unitarity constraint violated by " +
                      std::to_string(defect));
  }
}

double regime_boundary_q(int dim) {
  return 1.0 / std::sqrt(2.0 * (dim + 1));
}

CloneParams params_from_q(int dim, double q) {
  if (dim < 2) {
    throw DimensionMismatch("cloner needs dim >= 2");
  }
  const double q_max = 1.0 / std::sqrt(2.0 * (dim - 1));
  if (q < 0.0 || q > q_max + tol::unitarity) {
    throw QOutOfRange("q must lie in [0, 1/sqrt(2(d-1))]");
  }
  const double q_eff = std::min(q, q_max);  // snap rounding overshoot
  const double p_sq = 1.0 - 2.0 * (dim - 1) * q_eff * q_eff;
  return CloneParams{dim, std::sqrt(std::max(0.0, p_sq)), q_eff};
}

CloneOutput clone_output_closed(const ComplexVector& psi,
                                const OrthonormalBasis& basis,
                                const CloneParams& params) {
  check_dims(psi, basis, params);
  const Eigen::Index d = basis.dim();
  const double p = params.p;
  const double q = params.q;
  const double diag_coeff = p * p + (d - 2) * q * q;
  const double cross_coeff = 2.0 * p * q + (d - 2) * q * q;

  const ComplexVector alpha = basis.kets().adjoint() * psi;
  // Coefficient matrix in cloning-basis coordinates; the q^2 I term is
  // basis independent.
  ComplexMatrix k = cross_coeff * (alpha * alpha.adjoint());
  for (Eigen::Index i = 0; i < d; ++i) {
    k(i, i) = std::norm(alpha[i]) * diag_coeff + q * q;
  }
  CloneOutput out;
  out.clone = basis.kets() * k * basis.kets().adjoint();
  out.fidelity = (alpha.dot(k * alpha)).real();
  return out;
}

ComplexMatrix tripartite_image_vectors(const OrthonormalBasis& basis,
                                       const CloneParams& params) {
  if (basis.dim() != params.dim) {
    throw DimensionMismatch("basis and params dimensions differ");
  }
  const Eigen::Index d = basis.dim();
  if (d > kOracleMaxDim) {
    throw DimensionMismatch("tripartite oracle capped at d <= 16");
  }
  const ComplexMatrix& kets = basis.kets();
  ComplexMatrix images = ComplexMatrix::Zero(d * d * d, d);
  auto add_term = [&](Eigen::Index image, double coeff, Eigen::Index u,
                      Eigen::Index v, Eigen::Index machine) {
    // coeff * |b_u>_A |b_v>_B |X_machine>_C
    for (Eigen::Index a = 0; a < d; ++a) {
      if (kets(a, u) == Complex(0.0, 0.0)) continue;
      for (Eigen::Index b = 0; b < d; ++b) {
        images((a * d + b) * d + machine, image) +=
            coeff * kets(a, u) * kets(b, v);
      }
    }
  };
  for (Eigen::Index i = 0; i < d; ++i) {
    add_term(i, params.p, i, i, i);
    for (Eigen::Index j = 0; j < d; ++j) {
      if (j == i) continue;
      add_term(i, params.q, i, j, j);
      add_term(i, params.q, j, i, j);
    }
  }
  return images;
}

CloneOutput clone_output_oracle(const ComplexVector& psi,
                                const OrthonormalBasis& basis,
                                const CloneParams& params) {
  check_dims(psi, basis, params);
  const Eigen::Index d = basis.dim();
  const ComplexVector alpha = basis.kets().adjoint() * psi;
  const ComplexVector output = tripartite_image_vectors(basis, params) * alpha;

  const std::array<Eigen::Index, 3> dims{d, d, d};
  ComplexMatrix clone_a = pure_state_marginal(output, Subsystem::A, dims);
  const ComplexMatrix clone_b = pure_state_marginal(output, Subsystem::B, dims);
  if ((clone_a - clone_b).cwiseAbs().maxCoeff() > 1e-10) {
    throw CloneqError("cloner output is not symmetric across A and B");
  }

  CloneOutput out;
  out.fidelity = (psi.dot(clone_a * psi)).real();
  out.clone = std::move(clone_a);
  return out;
}

double average_fidelity_from_participation(double a_total, int num_states,
                                           const CloneParams& params) {
  params.validate();
  if (num_states < 1) {
    throw DimensionMismatch("ensemble must contain at least one state");
  }
  const double p = params.p;
  const double q = params.q;
  return (a_total / num_states) * (p * p - 2.0 * p * q) + 2.0 * p * q +
         (params.dim - 1) * q * q;
}

double average_cloning_fidelity(const EigenstateEnsemble& ensemble,
                                const OrthonormalBasis& basis,
                                const CloneParams& params) {
  if (ensemble.dim() != params.dim) {
    throw DimensionMismatch("ensemble and params dimensions differ");
  }
  const ParticipationReport report = participation(ensemble, basis);
  return average_fidelity_from_participation(report.a_total,
                                             ensemble.num_states(), params);
}

double universal_fidelity(int dim) {
  return (dim + 3.0) / (2.0 * (dim + 1));
}

UniversalCloner universal_params(int dim) {
  if (dim < 2) {
    throw DimensionMismatch("cloner needs dim >= 2");
  }
  const double q = regime_boundary_q(dim);
  return UniversalCloner{CloneParams{dim, 2.0 * q, q}, universal_fidelity(dim)};
}

}  // namespace cloneq
