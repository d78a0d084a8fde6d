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

// Reference propagator: exact matrix exponentials of H, piecewise constant
// over micro-steps when H depends on time.

#include <vector>

#include "qdyn/hamiltonian_source.hpp"
#include "qdyn/state.hpp"

namespace qdyn {

struct ExactOptions {
  double micro_dt = 0.01;  // fs
  /// Halve micro_dt until two successive runs differ by less than `tolerance`
  /// in the final state (time-dependent H only).
  bool auto_refine = true;
  double tolerance = 1e-8;
  int max_halvings = 8;
};

/// psi(t) for every t in `t_grid` (non-decreasing, t >= 0), starting from
/// psi(0) = psi0. Static H is diagonalized once; time-dependent H is sampled
/// at the midpoint of each micro-step. Throws ConfigError when t_grid runs
/// past the source's end time and NumericalError when refinement fails.
std::vector<StateVector> evolve_exact(const HamiltonianSource& source, const StateVector& psi0,
                                      const std::vector<double>& t_grid,
                                      const ExactOptions& options = {});

/// exp(-i H t / hbar) psi for a fixed Hermitian H.
StateVector propagate(const PauliSum& h, const StateVector& psi, double t, double hbar);

}  // namespace qdyn
