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

// First-order product formula: exp(-i H dt / hbar) ~ prod_j exp(-i c_j h_j dt / hbar)
// in canonical term order.

#include <cstdint>
#include <vector>

#include "qdyn/circuit.hpp"
#include "qdyn/hamiltonian_source.hpp"
#include "qdyn/observables.hpp"
#include "qdyn/state.hpp"

namespace qdyn {

/// One generator exponential per non-identity term; identity terms are
/// dropped (global phase). Throws ConfigError for non-Hermitian H.
Circuit trotter_step_circuit(const PauliSum& h, double dt, double hbar = kHbarEvFs);

struct TrotterConfig {
  double total_time = 50.0;  // fs
  double dt = 1.0;           // fs; the final step is shortened to land on total_time
  double start_time = 0.0;   // fs, H(t) is sampled at the start of each step
  bool noisy = false;        // density matrix with per-gate depolarizing noise
  double lambda = 0.0;
  /// Populations from this many sampled readouts per time point; 0 = exact.
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Noiseless Trotter states at start_time + k dt (including the start).
std::vector<StateVector> trotter_states(const HamiltonianSource& source, const StateVector& psi0,
                                        const TrotterConfig& config);

/// Population series recorded after every step (and at the start).
PopulationSeries run_trotter(const HamiltonianSource& source, const StateVector& psi0,
                             const TrotterConfig& config, const PopulationEncoding& encoding);

}  // namespace qdyn
