#pragma once

// Dense complex linear algebra for finite-dimensional quantum strategy
// analysis: states, density matrices, unitary moves and probabilistic
// mixtures of unitary moves.  Basis index 0 is "up", index 1 is "down"
// for the two-level types built by make_move_unitary / basis_state.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace qstrat {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// 1e-9 guards state/operator invariants (roundoff accumulates across a few
// matrix products); 1e-12 guards algebraic identities on exact inputs.
inline constexpr double kStateTol = 1e-9;
inline constexpr double kExactTol = 1e-12;

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace detail

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = kStateTol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& m, double tol = kStateTol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  using Plain = typename Derived::PlainObject;
  Plain gram = m.adjoint() * m;
  return (gram - Plain::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

// Smallest eigenvalue of a Hermitian matrix.
inline double min_eigenvalue(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// Unit-norm state vector.
class PureState {
 public:
  explicit PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    detail::require(amplitudes_.size() > 0, "pure state: dimension must be positive");
    detail::require(amplitudes_.allFinite(), "pure state: amplitudes must be finite");
    detail::require(std::abs(amplitudes_.squaredNorm() - 1.0) <= kStateTol,
                    "pure state: squared norm must be 1 within 1e-9");
  }

  const ComplexVector& amplitudes() const { return amplitudes_; }
  Eigen::Index dimension() const { return amplitudes_.size(); }

 private:
  ComplexVector amplitudes_;
};

// Hermitian, unit-trace, positive-semidefinite operator.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
    detail::require(matrix_.rows() == matrix_.cols() && matrix_.rows() > 0,
                    "density matrix: must be square and nonempty");
    detail::require(matrix_.allFinite(), "density matrix: entries must be finite");
    detail::require(is_hermitian(matrix_), "density matrix: must be Hermitian within 1e-9");
    const Complex tr = matrix_.trace();
    detail::require(std::abs(tr.real() - 1.0) <= kStateTol && std::abs(tr.imag()) <= kStateTol,
                    "density matrix: trace must be 1 within 1e-9");
    detail::require(min_eigenvalue(matrix_) >= -kStateTol,
                    "density matrix: must be positive semidefinite within 1e-9");
  }

  const ComplexMatrix& matrix() const { return matrix_; }
  Eigen::Index dimension() const { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
};

// Square matrix with U^dagger U = I within 1e-9.
class UnitaryStrategy {
 public:
  explicit UnitaryStrategy(ComplexMatrix m) : matrix_(std::move(m)) {
    detail::require(matrix_.rows() == matrix_.cols() && matrix_.rows() > 0,
                    "unitary: must be square and nonempty");
    detail::require(matrix_.allFinite(), "unitary: entries must be finite");
    detail::require(is_unitary(matrix_), "unitary: U^dagger U must be I within 1e-9");
  }

  const ComplexMatrix& matrix() const { return matrix_; }
  Eigen::Index dimension() const { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
};

// Probabilistic mixture of unitary moves; weights sum to 1.
class MixedUnitaryAction {
 public:
  struct Branch {
    double weight;
    UnitaryStrategy unitary;
  };

  explicit MixedUnitaryAction(std::vector<Branch> branches) : branches_(std::move(branches)) {
    detail::require(!branches_.empty(), "mixed action: needs at least one branch");
    double total = 0.0;
    const Eigen::Index dim = branches_.front().unitary.dimension();
    for (const Branch& br : branches_) {
      detail::require(std::isfinite(br.weight) && br.weight >= 0.0 && br.weight <= 1.0,
                      "mixed action: weights must lie in [0, 1]");
      detail::require(br.unitary.dimension() == dim, "mixed action: branch dimensions must match");
      total += br.weight;
    }
    detail::require(std::abs(total - 1.0) <= kExactTol,
                    "mixed action: weights must sum to 1 within 1e-12");
  }

  const std::vector<Branch>& branches() const { return branches_; }
  Eigen::Index dimension() const { return branches_.front().unitary.dimension(); }

 private:
  std::vector<Branch> branches_;
};

inline PureState basis_state(Eigen::Index index, Eigen::Index dimension) {
  detail::require(dimension > 0 && index >= 0 && index < dimension,
                  "basis state: index out of range");
  ComplexVector v = ComplexVector::Zero(dimension);
  v[index] = Complex(1.0, 0.0);
  return PureState(std::move(v));
}

inline DensityMatrix pure_density(const PureState& s) {
  return DensityMatrix(s.amplitudes() * s.amplitudes().adjoint());
}

// Two-level move parametrized by amplitudes (a, b): first row (a, b),
// second row (conj(b), -conj(a)).  Requires |a|^2 + |b|^2 = 1.
inline UnitaryStrategy make_move_unitary(Complex a, Complex b) {
  detail::require(std::abs(std::norm(a) + std::norm(b) - 1.0) <= kStateTol,
                  "move unitary: |a|^2 + |b|^2 must be 1 within 1e-9");
  ComplexMatrix u(2, 2);
  u << a, b, std::conj(b), -std::conj(a);
  return UnitaryStrategy(std::move(u));
}

inline PureState evolve(const UnitaryStrategy& u, const PureState& s) {
  detail::require(u.dimension() == s.dimension(), "evolve: dimension mismatch");
  return PureState(u.matrix() * s.amplitudes());
}

inline DensityMatrix evolve(const UnitaryStrategy& u, const DensityMatrix& rho) {
  detail::require(u.dimension() == rho.dimension(), "evolve: dimension mismatch");
  return DensityMatrix(u.matrix() * rho.matrix() * u.matrix().adjoint());
}

inline DensityMatrix evolve(const MixedUnitaryAction& action, const DensityMatrix& rho) {
  detail::require(action.dimension() == rho.dimension(), "evolve: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(rho.dimension(), rho.dimension());
  for (const MixedUnitaryAction::Branch& br : action.branches()) {
    out.noalias() += br.weight * (br.unitary.matrix() * rho.matrix() * br.unitary.matrix().adjoint());
  }
  return DensityMatrix(std::move(out));
}

// Real diagonal of rho, clamped to [0, 1]; entry i is the probability of
// observing basis outcome i.
inline Eigen::VectorXd measurement_probabilities(const DensityMatrix& rho) {
  Eigen::VectorXd p = rho.matrix().diagonal().real();
  return p.cwiseMax(0.0).cwiseMin(1.0);
}

}  // namespace qstrat
