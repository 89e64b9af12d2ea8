#include "cloneq/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace cloneq {

namespace {

void ensure_finite(const ComplexMatrix& m) {
  if (!m.allFinite()) {
    throw CloneqError("matrix has non-finite entries");
  }
}

// Canonical phase: rotate the ket so its largest-modulus entry is real
// positive. Keeps eigenbases reproducible across solver versions.
void fix_phase(Eigen::Ref<ComplexVector> ket) {
  Eigen::Index pivot = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < ket.size(); ++i) {
    const double a = std::abs(ket[i]);
    if (a > best + 1e-12) {
      best = a;
      pivot = i;
    }
  }
  if (best <= 0.0) {
    return;
  }
  const Complex phase = ket[pivot] / best;
  ket *= std::conj(phase);
}

}  // namespace

OrthonormalBasis::OrthonormalBasis(ComplexMatrix kets, double tolerance)
    : kets_(std::move(kets)) {
  if (kets_.rows() != kets_.cols()) {
    throw NotSquare("basis matrix must be square");
  }
  if (kets_.cols() == 0) {
    throw CloneqError("basis must contain at least one ket");
  }
  ensure_finite(kets_);
  const ComplexMatrix gram = kets_.adjoint() * kets_;
  const double defect =
      (gram - ComplexMatrix::Identity(kets_.cols(), kets_.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (defect > tolerance) {
    throw NotOrthonormal("kets are not orthonormal (Gram defect " +
                         std::to_string(defect) + ")");
  }
}

OrthonormalBasis OrthonormalBasis::canonical(Eigen::Index dim) {
  return OrthonormalBasis(ComplexMatrix::Identity(dim, dim));
}

double hermiticity_defect(const ComplexMatrix& matrix) {
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& matrix,
                                  double tolerance) {
  if (matrix.rows() != matrix.cols()) {
    throw NotSquare("eigensystem needs a square matrix");
  }
  if (matrix.rows() == 0) {
    throw CloneqError("eigensystem needs a non-empty matrix");
  }
  ensure_finite(matrix);
  if (hermiticity_defect(matrix) > tolerance) {
    throw NotHermitian("matrix is not Hermitian within tolerance");
  }

  const Eigen::Index d = matrix.rows();
  const ComplexMatrix sym = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw CloneqError("eigendecomposition failed to converge");
  }

  // Eigen returns ascending order; flip to descending.
  RealVector values(d);
  ComplexMatrix vectors(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    values[k] = solver.eigenvalues()[d - 1 - k];
    vectors.col(k) = solver.eigenvectors().col(d - 1 - k);
  }

  // Replace each degenerate cluster (consecutive gap < tolerance) by the
  // Gram-Schmidt basis of the cluster subspace seeded from canonical
  // vectors in index order.
  Eigen::Index start = 0;
  while (start < d) {
    Eigen::Index end = start + 1;
    while (end < d && values[end - 1] - values[end] < tolerance) {
      ++end;
    }
    const Eigen::Index size = end - start;
    if (size > 1) {
      const ComplexMatrix sub = vectors.middleCols(start, size);
      const ComplexMatrix projector = sub * sub.adjoint();
      ComplexMatrix replacement(d, size);
      Eigen::Index filled = 0;
      for (Eigen::Index cand = 0; cand < d && filled < size; ++cand) {
        ComplexVector w = projector.col(cand);  // projector * e_cand
        for (Eigen::Index j = 0; j < filled; ++j) {
          w -= replacement.col(j).dot(w) * replacement.col(j);
        }
        // second orthogonalization pass for stability
        for (Eigen::Index j = 0; j < filled; ++j) {
          w -= replacement.col(j).dot(w) * replacement.col(j);
        }
        const double n = w.norm();
        if (n > 1e-6) {
          replacement.col(filled++) = w / n;
        }
      }
      if (filled != size) {
        throw CloneqError("degenerate-cluster orthonormalization failed");
      }
      vectors.middleCols(start, size) = replacement;
    }
    start = end;
  }

  for (Eigen::Index k = 0; k < d; ++k) {
    fix_phase(vectors.col(k));
  }

  // Residual check: H v = lambda v for every pair.
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  const double residual =
      (sym * vectors - vectors * values.asDiagonal()).cwiseAbs().maxCoeff();
  if (residual > tol::eigen_residual * scale) {
    throw CloneqError("eigendecomposition residual too large");
  }

  return EigenSystem{std::move(values), OrthonormalBasis(std::move(vectors))};
}

void ensure_density_matrix(const ComplexMatrix& rho, double tolerance) {
  if (rho.rows() != rho.cols()) {
    throw NotDensityMatrix("density matrix must be square");
  }
  ensure_finite(rho);
  if (hermiticity_defect(rho) > tolerance) {
    throw NotDensityMatrix("density matrix is not Hermitian");
  }
  if (std::abs(rho.trace().real() - 1.0) > tolerance ||
      std::abs(rho.trace().imag()) > tolerance) {
    throw NotDensityMatrix("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 *
                                                      (rho + rho.adjoint()));
  if (solver.info() != Eigen::Success) {
    throw NotDensityMatrix("density matrix eigensolve failed");
  }
  if (solver.eigenvalues().minCoeff() < -tolerance) {
    throw NotDensityMatrix("density matrix has a negative eigenvalue");
  }
}

double state_fidelity(const ComplexMatrix& rho, const ComplexVector& psi,
                      double tolerance) {
  if (rho.rows() != psi.size()) {
    throw DimensionMismatch("state and density matrix dimensions differ");
  }
  ensure_density_matrix(rho, tolerance);
  if (std::abs(psi.norm() - 1.0) > tol::unit_norm) {
    throw NotUnit("state vector is not normalized");
  }
  const Complex value = psi.dot(rho * psi);  // <psi|rho|psi>
  return value.real();
}

namespace {

Eigen::Index flat_index(Eigen::Index a, Eigen::Index b, Eigen::Index c,
                        const std::array<Eigen::Index, 3>& dims) {
  return (a * dims[1] + b) * dims[2] + c;
}

}  // namespace

ComplexMatrix pure_state_marginal(const ComplexVector& amplitudes,
                                  Subsystem keep,
                                  const std::array<Eigen::Index, 3>& dims) {
  if (amplitudes.size() != dims[0] * dims[1] * dims[2]) {
    throw DimensionMismatch("amplitude count does not match subsystem dims");
  }
  const Eigen::Index kept = dims[static_cast<int>(keep)];
  ComplexMatrix out = ComplexMatrix::Zero(kept, kept);
  auto at = [&](Eigen::Index k, Eigen::Index u, Eigen::Index v) {
    switch (keep) {
      case Subsystem::A:
        return amplitudes[flat_index(k, u, v, dims)];
      case Subsystem::B:
        return amplitudes[flat_index(u, k, v, dims)];
      default:
        return amplitudes[flat_index(u, v, k, dims)];
    }
  };
  Eigen::Index du = 0, dv = 0;
  switch (keep) {
    case Subsystem::A:
      du = dims[1], dv = dims[2];
      break;
    case Subsystem::B:
      du = dims[0], dv = dims[2];
      break;
    default:
      du = dims[0], dv = dims[1];
      break;
  }
  for (Eigen::Index i = 0; i < kept; ++i) {
    for (Eigen::Index j = 0; j < kept; ++j) {
      Complex sum = 0.0;
      for (Eigen::Index u = 0; u < du; ++u) {
        for (Eigen::Index v = 0; v < dv; ++v) {
          sum += at(i, u, v) * std::conj(at(j, u, v));
        }
      }
      out(i, j) = sum;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& state, Subsystem keep,
                            const std::array<Eigen::Index, 3>& dims,
                            double tolerance) {
  const Eigen::Index total = dims[0] * dims[1] * dims[2];
  if (state.rows() != total || state.cols() != total) {
    throw DimensionMismatch("state dimension does not match dA*dB*dC");
  }
  ensure_density_matrix(state, tolerance);

  const Eigen::Index kept = dims[static_cast<int>(keep)];
  ComplexMatrix out = ComplexMatrix::Zero(kept, kept);
  for (Eigen::Index a = 0; a < dims[0]; ++a) {
    for (Eigen::Index b = 0; b < dims[1]; ++b) {
      for (Eigen::Index c = 0; c < dims[2]; ++c) {
        const Eigen::Index row = flat_index(a, b, c, dims);
        for (Eigen::Index a2 = 0; a2 < dims[0]; ++a2) {
          for (Eigen::Index b2 = 0; b2 < dims[1]; ++b2) {
            for (Eigen::Index c2 = 0; c2 < dims[2]; ++c2) {
              const Eigen::Index col = flat_index(a2, b2, c2, dims);
              switch (keep) {
                case Subsystem::A:
                  if (b == b2 && c == c2) out(a, a2) += state(row, col);
                  break;
                case Subsystem::B:
                  if (a == a2 && c == c2) out(b, b2) += state(row, col);
                  break;
                default:
                  if (a == a2 && b == b2) out(c, c2) += state(row, col);
                  break;
              }
            }
          }
        }
      }
    }
  }
  return out;
}

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) from the top 53 bits; implementation-independent,
// unlike std::uniform_real_distribution.
double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Box-Muller pair of standard normals.
std::pair<double, double> normal_pair(std::mt19937_64& gen) {
  double u1 = uniform01(gen);
  while (u1 <= 0.0) {
    u1 = uniform01(gen);
  }
  const double u2 = uniform01(gen);
  const double r = std::sqrt(-2.0 * std::log(u1));
  constexpr double two_pi = 6.283185307179586476925286766559;
  return {r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  return splitmix64(splitmix64(seed) ^ salt);
}

ComplexMatrix haar_unitary(Eigen::Index dim, std::uint64_t seed) {
  if (dim < 1) {
    throw DimensionMismatch("haar_unitary needs dim >= 1");
  }
  std::mt19937_64 gen(splitmix64(seed));
  ComplexMatrix ginibre(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const auto [re, im] = normal_pair(gen);
      ginibre(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(ginibre);
  ComplexMatrix unitary = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the diagonal phases of R so the decomposition is unique; this is
  // what makes Q Haar-distributed.
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex rjj = r(j, j);
    const double a = std::abs(rjj);
    const Complex phase = (a > 0.0) ? rjj / a : Complex(1.0, 0.0);
    unitary.col(j) *= phase;
  }
  return unitary;
}

bool is_unitary(const ComplexMatrix& matrix, double tolerance) {
  if (matrix.rows() != matrix.cols()) {
    return false;
  }
  const Eigen::Index d = matrix.rows();
  return (matrix.adjoint() * matrix - ComplexMatrix::Identity(d, d))
             .cwiseAbs()
             .maxCoeff() <= tolerance;
}

}  // namespace cloneq
