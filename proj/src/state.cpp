// Copyright 2026 The qdyn Authors
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

#include "qdyn/state.hpp"

#include "qdyn/errors.hpp"

namespace qdyn {

namespace {

std::size_t dim_for(std::size_t num_qubits) {
  if (num_qubits > 30) throw ConfigError("state too large");
  return std::size_t{1} << num_qubits;
}

}  // namespace

StateVector::StateVector(std::size_t num_qubits)
    : num_qubits_(num_qubits), amps_(Eigen::VectorXcd::Zero(dim_for(num_qubits))) {
  amps_(0) = 1.0;
}

StateVector::StateVector(std::size_t num_qubits, Eigen::VectorXcd amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != dim_for(num_qubits)) {
    throw ConfigError("StateVector: amplitude count does not match 2^L");
  }
}

StateVector StateVector::basis(std::size_t num_qubits, std::uint64_t index) {
  StateVector s(num_qubits);
  if (index >= s.dim()) throw ConfigError("StateVector::basis: index out of range");
  s.amps_(0) = 0.0;
  s.amps_(static_cast<Eigen::Index>(index)) = 1.0;
  return s;
}

Eigen::VectorXd StateVector::probabilities() const { return amps_.cwiseAbs2(); }

cplx StateVector::inner(const StateVector& other) const {
  if (other.dim() != dim()) throw ConfigError("inner: dimension mismatch");
  return amps_.dot(other.amps_);  // Eigen's dot conjugates the left operand
}

DensityMatrix::DensityMatrix(std::size_t num_qubits)
    : num_qubits_(num_qubits),
      rho_(Eigen::MatrixXcd::Zero(dim_for(num_qubits), dim_for(num_qubits))) {
  rho_(0, 0) = 1.0;
}

DensityMatrix::DensityMatrix(std::size_t num_qubits, Eigen::MatrixXcd entries)
    : num_qubits_(num_qubits), rho_(std::move(entries)) {
  const auto d = dim_for(num_qubits);
  if (static_cast<std::size_t>(rho_.rows()) != d || static_cast<std::size_t>(rho_.cols()) != d) {
    throw ConfigError("DensityMatrix: shape does not match 2^L x 2^L");
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return DensityMatrix(psi.num_qubits(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t num_qubits) {
  const auto d = dim_for(num_qubits);
  return DensityMatrix(num_qubits,
                       Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
}

Eigen::VectorXd DensityMatrix::probabilities() const {
  return rho_.diagonal().real().cwiseMax(0.0);
}

bool DensityMatrix::is_valid(double tol, double eig_tol) const {
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(rho_.trace() - cplx(1.0)) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -eig_tol;
}

}  // namespace qdyn
