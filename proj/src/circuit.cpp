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

#include "qdyn/circuit.hpp"

#include <type_traits>

#include "qdyn/errors.hpp"

namespace qdyn {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t string_support(const PauliString& s) { return s.x_mask() | s.z_mask(); }

std::uint64_t bit(std::size_t q) { return std::uint64_t{1} << q; }

PauliString widen_string(const PauliString& s, std::size_t n) {
  std::vector<Pauli> letters = s.letters();
  letters.resize(n, Pauli::I);
  return PauliString(std::move(letters));
}

}  // namespace

std::uint64_t gate_support(const Gate& gate) {
  return std::visit(
      Overloaded{
          [](const PauliRotation& g) { return string_support(g.generator); },
          [](const PauliGate& g) { return string_support(g.pauli); },
          [](const Hadamard& g) { return bit(g.qubit); },
          [](const RzGate& g) { return bit(g.qubit); },
          [](const ControlledPauli& g) { return bit(g.control) | string_support(g.target); },
          [](const ControlledRotation& g) {
            return bit(g.control) | string_support(g.generator);
          },
      },
      gate);
}

Circuit& Circuit::add(Gate gate) {
  const std::size_t n = num_qubits_;
  auto check_string = [n](const PauliString& s) {
    if (s.num_qubits() != n) {
      throw ConfigError("gate string '" + s.str() + "' does not match circuit width " +
                        std::to_string(n));
    }
  };
  auto check_qubit = [n](std::size_t q) {
    if (q >= n) throw ConfigError("gate qubit index " + std::to_string(q) + " out of range");
  };
  std::visit(Overloaded{
                 [&](const PauliRotation& g) { check_string(g.generator); },
                 [&](const PauliGate& g) { check_string(g.pauli); },
                 [&](const Hadamard& g) { check_qubit(g.qubit); },
                 [&](const RzGate& g) { check_qubit(g.qubit); },
                 [&](const ControlledPauli& g) {
                   check_qubit(g.control);
                   check_string(g.target);
                   if (g.target[g.control] != Pauli::I) {
                     throw ConfigError("controlled gate acts on its own control qubit");
                   }
                 },
                 [&](const ControlledRotation& g) {
                   check_qubit(g.control);
                   check_string(g.generator);
                   if (g.generator[g.control] != Pauli::I) {
                     throw ConfigError("controlled gate acts on its own control qubit");
                   }
                 },
             },
             gate);
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.num_qubits_ != num_qubits_) throw ConfigError("append: circuit width mismatch");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  return *this;
}

Circuit basis_state_circuit(std::size_t num_qubits, std::uint64_t index) {
  if (num_qubits < 64 && index >= (std::uint64_t{1} << num_qubits)) {
    throw ConfigError("basis index out of range");
  }
  Circuit c(num_qubits);
  for (std::size_t q = 0; q < num_qubits; ++q) {
    if ((index >> q) & 1) c.add(PauliGate{PauliString::single(num_qubits, q, Pauli::X)});
  }
  return c;
}

Circuit widen(const Circuit& c, std::size_t new_num_qubits) {
  if (new_num_qubits < c.num_qubits()) throw ConfigError("widen: cannot shrink a circuit");
  const std::size_t n = new_num_qubits;
  Circuit out(n);
  for (const auto& gate : c.gates()) {
    out.add(std::visit(
        Overloaded{
            [n](const PauliRotation& g) -> Gate {
              return PauliRotation{widen_string(g.generator, n), g.angle};
            },
            [n](const PauliGate& g) -> Gate { return PauliGate{widen_string(g.pauli, n)}; },
            [](const Hadamard& g) -> Gate { return g; },
            [](const RzGate& g) -> Gate { return g; },
            [n](const ControlledPauli& g) -> Gate {
              return ControlledPauli{g.control, widen_string(g.target, n)};
            },
            [n](const ControlledRotation& g) -> Gate {
              return ControlledRotation{g.control, widen_string(g.generator, n), g.angle};
            },
        },
        gate));
  }
  return out;
}

Circuit controlled(const Circuit& branch, std::size_t control) {
  const std::size_t n = branch.num_qubits();
  Circuit out(n);
  for (const auto& gate : branch.gates()) {
    if (gate_support(gate) & bit(control)) {
      throw ConfigError("branch circuit touches the control qubit");
    }
    out.add(std::visit(
        Overloaded{
            [control](const PauliRotation& g) -> Gate {
              return ControlledRotation{control, g.generator, g.angle};
            },
            [control](const PauliGate& g) -> Gate { return ControlledPauli{control, g.pauli}; },
            [](const Hadamard&) -> Gate {
              throw ConfigError("Hadamard gates cannot be controlled");
            },
            [control, n](const RzGate& g) -> Gate {
              return ControlledRotation{control, PauliString::single(n, g.qubit, Pauli::Z),
                                        -g.phi / 2.0};
            },
            [](const ControlledPauli&) -> Gate {
              throw ConfigError("nested control is not supported");
            },
            [](const ControlledRotation&) -> Gate {
              throw ConfigError("nested control is not supported");
            },
        },
        gate));
  }
  return out;
}

}  // namespace qdyn
