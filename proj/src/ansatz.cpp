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

#include "qdyn/ansatz.hpp"

#include <sstream>

#include "qdyn/errors.hpp"
#include "qdyn/simulator.hpp"

namespace qdyn {

namespace {

void check_theta(const Ansatz& ansatz, const Eigen::VectorXd& theta) {
  ansatz.validate();
  if (static_cast<std::size_t>(theta.size()) != ansatz.num_parameters()) {
    throw ConfigError("expected " + std::to_string(ansatz.num_parameters()) + " parameters, got " +
                      std::to_string(theta.size()));
  }
  if (!theta.allFinite()) throw NumericalError("non-finite variational parameter");
}

// i R |v>
StateVector apply_i_generator(const PauliString& r, const StateVector& v) {
  StateVector out = v;
  apply_gate(out, PauliGate{r});
  out.amplitudes() *= cplx(0.0, 1.0);
  return out;
}

}  // namespace

void Ansatz::validate() const {
  if (generators.empty()) throw ConfigError("ansatz has no generators");
  if (layers == 0) throw ConfigError("ansatz needs at least one layer");
  for (const auto& g : generators) {
    if (g.num_qubits() != num_qubits()) throw ConfigError("generator width mismatch");
    if (g.is_identity()) throw ConfigError("identity generator has no effect");
  }
}

std::string Ansatz::describe() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < num_parameters(); ++k) out << generator(k).str() << '\n';
  return out.str();
}

Ansatz make_default_ansatz(std::size_t num_qubits, std::size_t layers,
                           std::uint64_t initial_index) {
  if (num_qubits == 0) throw ConfigError("ansatz needs at least one qubit");
  Ansatz a;
  a.initial_state_prep = basis_state_circuit(num_qubits, initial_index);
  a.layers = layers;
  constexpr Pauli kAxes[] = {Pauli::X, Pauli::Y, Pauli::Z};
  for (std::size_t q = 0; q < num_qubits; ++q) {
    for (Pauli p : kAxes) a.generators.push_back(PauliString::single(num_qubits, q, p));
  }
  for (std::size_t m = 0; m < num_qubits; ++m) {
    for (std::size_t n = m + 1; n < num_qubits; ++n) {
      for (Pauli pm : kAxes) {
        for (Pauli pn : kAxes) {
          std::vector<Pauli> letters(num_qubits, Pauli::I);
          letters[m] = pm;
          letters[n] = pn;
          a.generators.emplace_back(std::move(letters));
        }
      }
    }
  }
  a.validate();
  return a;
}

Ansatz make_hamiltonian_ansatz(const PauliSum& h, std::size_t layers,
                               std::uint64_t initial_index) {
  Ansatz a;
  a.initial_state_prep = basis_state_circuit(h.num_qubits(), initial_index);
  a.layers = layers;
  for (const auto& t : h.terms()) {
    if (!t.string.is_identity()) a.generators.push_back(t.string);
  }
  a.validate();
  return a;
}

Ansatz make_custom_ansatz(std::size_t num_qubits, const std::vector<std::string>& generators,
                          std::size_t layers, std::uint64_t initial_index) {
  Ansatz a;
  a.initial_state_prep = basis_state_circuit(num_qubits, initial_index);
  a.layers = layers;
  for (const auto& g : generators) a.generators.push_back(PauliString::parse(g));
  a.validate();
  return a;
}

Circuit ansatz_circuit(const Ansatz& ansatz, const Eigen::VectorXd& theta) {
  check_theta(ansatz, theta);
  Circuit c(ansatz.num_qubits());
  for (std::size_t k = 0; k < ansatz.num_parameters(); ++k) {
    c.add(PauliRotation{ansatz.generator(k), theta(static_cast<Eigen::Index>(k))});
  }
  return c;
}

StateVector prepare_state(const Ansatz& ansatz, const Eigen::VectorXd& theta) {
  StateVector psi(ansatz.num_qubits());
  run(psi, ansatz.initial_state_prep);
  run(psi, ansatz_circuit(ansatz, theta));
  return psi;
}

StateVector tangent_state(const Ansatz& ansatz, const Eigen::VectorXd& theta, std::size_t k) {
  check_theta(ansatz, theta);
  if (k >= ansatz.num_parameters()) throw ConfigError("tangent index out of range");
  const Circuit u = ansatz_circuit(ansatz, theta);
  StateVector v(ansatz.num_qubits());
  run(v, ansatz.initial_state_prep);
  for (std::size_t j = 0; j <= k; ++j) apply_gate(v, u.gates()[j]);
  v = apply_i_generator(ansatz.generator(k), v);
  for (std::size_t j = k + 1; j < u.size(); ++j) apply_gate(v, u.gates()[j]);
  return v;
}

TangentBundle tangent_bundle(const Ansatz& ansatz, const Eigen::VectorXd& theta) {
  const Circuit u = ansatz_circuit(ansatz, theta);
  const std::size_t k_total = u.size();
  TangentBundle out;
  out.psi = StateVector(ansatz.num_qubits());
  run(out.psi, ansatz.initial_state_prep);
  out.tangents.reserve(k_total);
  for (std::size_t k = 0; k < k_total; ++k) {
    apply_gate(out.psi, u.gates()[k]);
    out.tangents.push_back(apply_i_generator(ansatz.generator(k), out.psi));
  }
  // Push each tangent through the remaining gates.
  for (std::size_t k = 0; k < k_total; ++k) {
    for (std::size_t j = k + 1; j < k_total; ++j) apply_gate(out.tangents[k], u.gates()[j]);
  }
  return out;
}

}  // namespace qdyn
