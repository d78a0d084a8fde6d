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

// Product ansatz |psi(theta)> = U_K ... U_1 |psi0>, U_k = exp(i theta_k R_k).

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdyn/circuit.hpp"
#include "qdyn/pauli.hpp"
#include "qdyn/state.hpp"

namespace qdyn {

struct Ansatz {
  Circuit initial_state_prep;
  /// Generators of one layer; layer l, generator g is parameter l * G + g.
  std::vector<PauliString> generators;
  std::size_t layers = 1;

  std::size_t num_qubits() const { return initial_state_prep.num_qubits(); }
  std::size_t num_parameters() const { return generators.size() * layers; }
  const PauliString& generator(std::size_t k) const { return generators[k % generators.size()]; }
  /// Throws ConfigError for empty generator lists, zero layers or width mismatches.
  void validate() const;
  /// One generator per line, in parameter order.
  std::string describe() const;
};

/// Per layer: X, Y, Z on each qubit (qubit-major), then the nine axis pairs
/// on each qubit pair (m < n) in lexicographic (pair, axes) order.
Ansatz make_default_ansatz(std::size_t num_qubits, std::size_t layers = 1,
                           std::uint64_t initial_index = 0);

/// Generators are the non-identity terms of H in canonical order.
Ansatz make_hamiltonian_ansatz(const PauliSum& h, std::size_t layers = 1,
                               std::uint64_t initial_index = 0);

/// Ansatz with an explicit generator list, e.g. {"ZI", "IX", "XX"}.
Ansatz make_custom_ansatz(std::size_t num_qubits, const std::vector<std::string>& generators,
                          std::size_t layers = 1, std::uint64_t initial_index = 0);

/// The circuit U_K ... U_1 (without the initial-state preparation).
Circuit ansatz_circuit(const Ansatz& ansatz, const Eigen::VectorXd& theta);

StateVector prepare_state(const Ansatz& ansatz, const Eigen::VectorXd& theta);

/// |d psi / d theta_k> = U_K ... U_{k+1} (i R_k) U_k ... U_1 |psi0>.
StateVector tangent_state(const Ansatz& ansatz, const Eigen::VectorXd& theta, std::size_t k);

/// All tangent states plus the ansatz state, in one forward sweep.
struct TangentBundle {
  StateVector psi;
  std::vector<StateVector> tangents;
};
TangentBundle tangent_bundle(const Ansatz& ansatz, const Eigen::VectorXd& theta);

}  // namespace qdyn
