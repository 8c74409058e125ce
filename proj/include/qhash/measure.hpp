// Copyright 2026 The qhash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Verification measurement basis, outcome distributions and density-matrix
// fidelity/purity utilities.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qhash/hashcore.hpp"
#include "qhash/types.hpp"

namespace qhash {

/// Target state (index 0) followed by d - 1 phase-orthogonal states.
struct MeasurementBasis {
  std::vector<QuditState> states;

  std::size_t dimension() const noexcept { return states.size(); }
};

/// Measurement basis for qudit j (0-based) checking against input x2.
///
/// State g carries phases 2*pi*s_{j,k}*x2/q + 2*pi*g*k/d on basis index k
/// (k = 0..d-1). The extra phases are the discrete Fourier rows, so the d
/// states are orthonormal for every d; g = 0 is the hash state itself.
inline MeasurementBasis orthogonal_basis(const HashParams& params, Index j, Index x2) {
  require(j >= 0 && j < params.m(), "orthogonal_basis: qudit index out of range");
  require(x2 >= 0 && x2 < params.q(), "orthogonal_basis: x2 outside [0, q)");
  const Index q = params.q();
  const Index d = params.d();
  const auto& row = params.row(j);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  const PhaseTable table(q);

  MeasurementBasis basis;
  basis.states.reserve(static_cast<std::size_t>(d));
  basis.states.push_back(qudit_hash_state(params, j, x2));
  for (Index g = 1; g < d; ++g) {
    Amplitudes amplitudes;
    amplitudes.reserve(static_cast<std::size_t>(d));
    for (Index k = 0; k < d; ++k) {
      const Complex hash_phase = table.root((row[static_cast<std::size_t>(k)] * x2) % q);
      // (g*k mod d)/d of a full turn, evaluated from the reduced integer.
      const double turn = static_cast<double>((g * k) % d) / static_cast<double>(d);
      const double angle = 2.0 * std::numbers::pi * turn;
      amplitudes.push_back(scale * hash_phase * Complex{std::cos(angle), std::sin(angle)});
    }
    basis.states.push_back(QuditState::from_amplitudes(std::move(amplitudes)));
  }
  return basis;
}

/// Extra orthogonality phases of state g in [0, 2*pi), one per basis index.
inline std::vector<double> orthogonality_phases(Index d, Index g) {
  require(d >= 2 && g >= 0 && g < d, "orthogonality_phases: index out of range");
  std::vector<double> phases;
  for (Index k = 0; k < d; ++k) {
    phases.push_back(2.0 * std::numbers::pi * static_cast<double>((g * k) % d) / static_cast<double>(d));
  }
  return phases;
}

/// p_g = |<basis_g|state>|^2 for each detection channel g.
inline std::vector<double> outcome_probabilities(const QuditState& state, const MeasurementBasis& basis) {
  require(state.dimension() == basis.dimension(), "outcome_probabilities: dimension mismatch");
  std::vector<double> probabilities;
  probabilities.reserve(basis.dimension());
  for (const auto& b : basis.states) probabilities.push_back(std::norm(b.inner(state)));
  return probabilities;
}

/// Hermitian d x d matrix with tolerance-checked unit trace.
class DensityMatrix {
 public:
  using Matrix = Eigen::MatrixXcd;

  static constexpr double kHermitianTolerance = 1e-9;
  static constexpr double kTraceTolerance = 1e-6;

  explicit DensityMatrix(Matrix entries, double trace_tolerance = kTraceTolerance) : entries_(std::move(entries)) {
    require(entries_.rows() >= 1 && entries_.rows() == entries_.cols(), "DensityMatrix: matrix must be square");
    require((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= kHermitianTolerance,
            "DensityMatrix: matrix is not Hermitian");
    require(std::abs(entries_.trace().real() - 1.0) <= trace_tolerance, "DensityMatrix: trace is not 1");
  }

  static DensityMatrix pure(const QuditState& state) {
    const auto n = static_cast<Eigen::Index>(state.dimension());
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = state.amplitudes()[static_cast<std::size_t>(i)];
    return DensityMatrix(v * v.adjoint());
  }

  static DensityMatrix maximally_mixed(Index d) {
    require(d >= 1, "DensityMatrix: dimension must be positive");
    return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d));
  }

  Eigen::Index dimension() const noexcept { return entries_.rows(); }
  const Matrix& entries() const noexcept { return entries_; }

 private:
  Matrix entries_;
};

namespace detail {

/// Eigen-decomposition with eigenvalues above -1e-6 clamped to zero.
inline Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> clamped_eigensolver(const DensityMatrix& rho,
                                                                          Eigen::VectorXd& eigenvalues) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries());
  require(solver.info() == Eigen::Success, "eigen-decomposition failed");
  eigenvalues = solver.eigenvalues();
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    require(eigenvalues(i) >= -1e-6, "density matrix has a significantly negative eigenvalue");
    eigenvalues(i) = std::max(eigenvalues(i), 0.0);
  }
  return solver;
}

inline Eigen::MatrixXcd psd_sqrt(const DensityMatrix& rho) {
  Eigen::VectorXd eigenvalues;
  const auto solver = clamped_eigensolver(rho, eigenvalues);
  // Round-off eigenvalues (~1e-17 for a projector) would enter as their
  // square roots (~1e-8); treat them as exact zeros.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * eigenvalues.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues(i) < floor) eigenvalues(i) = 0.0;
  }
  const Eigen::VectorXcd roots = eigenvalues.cwiseSqrt().cast<Complex>();
  return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace detail

/// Uhlmann fidelity [Tr sqrt(sqrt(target) * measured * sqrt(target))]^2,
/// clamped into [0, 1].
inline double density_fidelity(const DensityMatrix& target, const DensityMatrix& measured) {
  require(target.dimension() == measured.dimension(), "density_fidelity: dimension mismatch");
  const Eigen::MatrixXcd root = detail::psd_sqrt(target);
  Eigen::MatrixXcd inner = root * measured.entries() * root;
  inner = 0.5 * (inner + inner.adjoint());  // restore exact Hermiticity
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(inner, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, "density_fidelity: eigen-decomposition failed");
  const Eigen::VectorXd& eigenvalues = solver.eigenvalues();
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * eigenvalues.cwiseAbs().maxCoeff();
  double trace = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues(i) >= floor) trace += std::sqrt(eigenvalues(i));
  }
  return std::clamp(trace * trace, 0.0, 1.0);
}

/// Largest eigenvalue; 1 for a pure state, 1/d for the maximally mixed one.
inline double purity_max_eigenvalue(const DensityMatrix& rho) {
  Eigen::VectorXd eigenvalues;
  detail::clamped_eigensolver(rho, eigenvalues);
  return eigenvalues.maxCoeff();
}

}  // namespace qhash
