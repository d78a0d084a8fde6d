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

#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

#include "qdyn/units.hpp"

namespace qdyn {

/// Pure state on L qubits; amplitude index follows the little-endian qubit
/// convention of pauli.hpp.
class StateVector {
 public:
  StateVector() = default;
  /// |0...0> on `num_qubits` qubits.
  explicit StateVector(std::size_t num_qubits);
  StateVector(std::size_t num_qubits, Eigen::VectorXcd amplitudes);

  static StateVector basis(std::size_t num_qubits, std::uint64_t index);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd& amplitudes() { return amps_; }

  double norm() const { return amps_.norm(); }
  Eigen::VectorXd probabilities() const;
  /// <this|other>
  cplx inner(const StateVector& other) const;

 private:
  std::size_t num_qubits_ = 0;
  Eigen::VectorXcd amps_;
};

class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(std::size_t num_qubits);
  DensityMatrix(std::size_t num_qubits, Eigen::MatrixXcd entries);
  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(std::size_t num_qubits);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
  const Eigen::MatrixXcd& entries() const { return rho_; }
  Eigen::MatrixXcd& entries() { return rho_; }

  cplx trace() const { return rho_.trace(); }
  Eigen::VectorXd probabilities() const;
  /// Checks Hermiticity, unit trace and positivity at the given tolerances.
  bool is_valid(double tol = 1e-10, double eig_tol = 1e-9) const;

 private:
  std::size_t num_qubits_ = 0;
  Eigen::MatrixXcd rho_;
};

}  // namespace qdyn
