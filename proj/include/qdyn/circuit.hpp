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
#include <variant>
#include <vector>

#include "qdyn/pauli.hpp"

namespace qdyn {

/// exp(i * angle * P). No half-angle: this is the ansatz primitive
/// e^{i theta R} verbatim.
struct PauliRotation {
  PauliString generator;
  double angle = 0.0;
};

/// Applies a (possibly multi-qubit) Pauli string as a gate, e.g. X on one qubit.
struct PauliGate {
  PauliString pauli;
};

struct Hadamard {
  std::size_t qubit = 0;
};

/// Rz(phi) = exp(-i phi Z / 2).
struct RzGate {
  std::size_t qubit = 0;
  double phi = 0.0;
};

/// Pauli string applied when `control` is |1>. The string must be identity on
/// the control qubit.
struct ControlledPauli {
  std::size_t control = 0;
  PauliString target;
};

/// exp(i * angle * P) applied when `control` is |1>.
struct ControlledRotation {
  std::size_t control = 0;
  PauliString generator;
  double angle = 0.0;
};

using Gate = std::variant<PauliRotation, PauliGate, Hadamard, RzGate, ControlledPauli,
                          ControlledRotation>;

/// Bit mask of the qubits a gate acts on (controls included).
std::uint64_t gate_support(const Gate& gate);

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {}

  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  /// Validates qubit indices and string lengths against num_qubits().
  Circuit& add(Gate gate);
  Circuit& append(const Circuit& other);

 private:
  std::size_t num_qubits_ = 0;
  std::vector<Gate> gates_;
};

/// Circuit of X gates preparing computational basis state `index`.
Circuit basis_state_circuit(std::size_t num_qubits, std::uint64_t index);

/// Embeds a circuit on `num_qubits` system qubits into a larger register
/// (system qubits keep their indices).
Circuit widen(const Circuit& c, std::size_t new_num_qubits);

/// Controlled copy of every gate of `branch` (already widened to include the
/// control). Hadamard gates cannot be controlled and are rejected.
Circuit controlled(const Circuit& branch, std::size_t control);

}  // namespace qdyn
