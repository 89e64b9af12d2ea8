#pragma once

// Dense complex linear algebra used throughout cloneq: Hermitian
// eigendecomposition with deterministic handling of degenerate spectra,
// state fidelities, partial traces over a tripartite split, and seeded
// Haar-random unitaries.

#include <array>
#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "cloneq/errors.hpp"

namespace cloneq {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double hermitian = 1e-9;
inline constexpr double orthonormal = 1e-9;
inline constexpr double density = 1e-9;
inline constexpr double unit_norm = 1e-9;
inline constexpr double unitarity = 1e-12;  // p^2 + 2(d-1)q^2 = 1
inline constexpr double eigen_residual = 1e-8;
}  // namespace tol

// Ordered set of d orthonormal kets in dimension d, stored as the columns
// of a d x d matrix. Doubles as a cloning basis and a measurement basis.
class OrthonormalBasis {
 public:
  // Throws NotOrthonormal if the Gram matrix deviates from identity by
  // more than `tolerance` in any entry, NotSquare on a non-square matrix.
  explicit OrthonormalBasis(ComplexMatrix kets,
                            double tolerance = tol::orthonormal);

  static OrthonormalBasis canonical(Eigen::Index dim);

  Eigen::Index dim() const { return kets_.cols(); }
  const ComplexMatrix& kets() const { return kets_; }
  ComplexVector ket(Eigen::Index i) const { return kets_.col(i); }

 private:
  ComplexMatrix kets_;
};

struct EigenSystem {
  RealVector eigenvalues;  // sorted descending
  OrthonormalBasis basis;  // columns aligned with eigenvalues
};

// Eigendecomposition of a Hermitian matrix. Eigenvalues are sorted
// descending; within a degenerate cluster (consecutive gap < tolerance)
// the eigenvectors are replaced by a Gram-Schmidt basis seeded from the
// canonical basis vectors in index order, and every ket gets a canonical
// phase (largest-modulus entry real positive). This makes the output a
// deterministic function of the input matrix alone.
EigenSystem hermitian_eigensystem(const ComplexMatrix& matrix,
                                  double tolerance = tol::hermitian);

// max |M - M^dagger| over entries; 0 for an exactly Hermitian matrix.
double hermiticity_defect(const ComplexMatrix& matrix);

// Throws NotDensityMatrix unless `rho` is Hermitian, unit trace and PSD
// (all within `tolerance`; eigenvalue floor is -tolerance).
void ensure_density_matrix(const ComplexMatrix& rho,
                           double tolerance = tol::density);

// <psi|rho|psi> for a density matrix rho and a unit vector psi.
double state_fidelity(const ComplexMatrix& rho, const ComplexVector& psi,
                      double tolerance = tol::density);

enum class Subsystem { A, B, C };

// Partial trace of a density matrix on A (x) B (x) C down to one subsystem.
// `dims` are the three factor dimensions in order.
ComplexMatrix partial_trace(const ComplexMatrix& state, Subsystem keep,
                            const std::array<Eigen::Index, 3>& dims,
                            double tolerance = tol::density);

// Marginal of a pure tripartite state given as an amplitude vector of
// length dA*dB*dC (index (a,b,c) -> (a*dB + b)*dC + c). Equal to
// partial_trace of the corresponding rank-one projector.
ComplexMatrix pure_state_marginal(const ComplexVector& amplitudes,
                                  Subsystem keep,
                                  const std::array<Eigen::Index, 3>& dims);

// Haar-distributed random unitary, deterministic for a fixed seed.
ComplexMatrix haar_unitary(Eigen::Index dim, std::uint64_t seed);

bool is_unitary(const ComplexMatrix& matrix, double tolerance = 1e-9);

// Derives an independent stream seed from (seed, salt); used to hand each
// parallel work item its own deterministic RNG.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace cloneq
