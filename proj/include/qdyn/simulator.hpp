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

// Statevector and density-matrix execution of circuits, depolarizing noise,
// expectation values, bitstring sampling and Hadamard tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdyn/circuit.hpp"
#include "qdyn/pauli.hpp"
#include "qdyn/state.hpp"

namespace qdyn {

enum class NoiseMode { kOff, kPerGate, kGlobalOnce };

/// Depolarizing noise with a single strength for every gate.
///  - kPerGate: after each gate, a k-qubit depolarizing channel on the gate's
///    k support qubits.
///  - kGlobalOnce: one global channel (1-lambda) rho + lambda I/2^N at the end
///    of a circuit.
struct NoiseModel {
  double lambda = 0.0;
  NoiseMode mode = NoiseMode::kOff;

  static NoiseModel off() { return {}; }
  static NoiseModel per_gate(double lambda) { return {lambda, NoiseMode::kPerGate}; }
  static NoiseModel global_once(double lambda) { return {lambda, NoiseMode::kGlobalOnce}; }

  bool active() const { return mode != NoiseMode::kOff && lambda > 0.0; }
  void validate() const;
};

/// Throws for any noise mode other than kOff: a pure state cannot carry noise.
void apply_gate(StateVector& state, const Gate& gate, const NoiseModel& noise = {});
void apply_gate(DensityMatrix& state, const Gate& gate, const NoiseModel& noise = {});

void run(StateVector& state, const Circuit& circuit, const NoiseModel& noise = {});
void run(DensityMatrix& state, const Circuit& circuit, const NoiseModel& noise = {});

/// E(rho) = (1 - lambda) rho + lambda I / 2^N.
DensityMatrix apply_depolarizing(const DensityMatrix& rho, double lambda);

/// Depolarizes the qubits in `mask`:
/// rho -> (1 - lambda) rho + lambda Tr_S[rho] (x) I_S / 2^|S|.
void depolarize_qubits(DensityMatrix& rho, std::uint64_t mask, double lambda);

/// <psi|P|psi>, complex in general.
cplx pauli_expectation(const StateVector& state, const PauliString& p);
cplx pauli_expectation(const DensityMatrix& state, const PauliString& p);

/// Real expectation of a Hermitian observable.
double expectation(const StateVector& state, const PauliSum& obs);
double expectation(const DensityMatrix& state, const PauliSum& obs);

/// Outcome counts over all 2^L basis states.
struct Histogram {
  std::size_t num_qubits = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t shots() const;
  /// Basis index written as a binary number, qubit 1 rightmost (ket order).
  std::string bitstring(std::uint64_t index) const;
  Eigen::VectorXd frequencies() const;
  /// `bitstring,count` with a header; outcomes with zero count are omitted.
  std::string to_csv() const;
};

Histogram sample_probabilities(const Eigen::VectorXd& probabilities, std::size_t num_qubits,
                               std::uint64_t shots, std::mt19937_64& rng);
Histogram sample_bitstrings(const StateVector& state, std::uint64_t shots, std::uint64_t seed);
Histogram sample_bitstrings(const DensityMatrix& state, std::uint64_t shots, std::uint64_t seed);

enum class OverlapPart { kReal, kImag };

/// How an ancilla-readout circuit is executed. shots == 0 means the exact
/// expectation value is returned.
struct ExecutionBackend {
  enum class Kind { kStatevector, kDensity };
  Kind kind = Kind::kStatevector;
  NoiseModel noise;
  std::uint64_t shots = 0;
};

struct Estimate {
  double value = 0.0;
  /// Binomial standard error of the estimator (0 for exact evaluation).
  double std_error = 0.0;
};

/// <Z> of the highest-index qubit after running `circuit` from |0...0>.
Estimate estimate_ancilla_z(const Circuit& circuit, const ExecutionBackend& backend,
                            std::mt19937_64& rng);

/// Hadamard-test circuit on L+1 qubits (ancilla = qubit L). The ancilla is
/// prepared in (|0> + e^{i phi}|1>)/sqrt(2), the |0>-branch is applied with
/// X-sandwiched controls, the |1>-branch with direct controls, then H.
/// The ancilla <Z> equals Re(e^{i phi} <psi0|B0^dag B1|psi0>); phi = 0 for
/// kReal and phi = -pi/2 for kImag, so the readout is Re or Im of the overlap.
Circuit hadamard_test_circuit(const Circuit& psi0_prep, const Circuit& branch0,
                              const Circuit& branch1, OverlapPart part);

Estimate hadamard_test(const Circuit& psi0_prep, const Circuit& branch0, const Circuit& branch1,
                       OverlapPart part, const ExecutionBackend& backend, std::mt19937_64& rng);

/// Ancilla phase that selects the requested overlap component.
double ancilla_phase(OverlapPart part);

}  // namespace qdyn
