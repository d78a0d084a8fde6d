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

#include "qdyn/hamiltonian_source.hpp"

#include <string>

#include "qdyn/errors.hpp"

namespace qdyn {

HamiltonianSource HamiltonianSource::constant(PauliSum h, double hbar) {
  if (!(hbar > 0.0)) throw ConfigError("hbar must be positive");
  if (!h.is_hermitian()) throw ConfigError("Hamiltonian must be Hermitian");
  HamiltonianSource s;
  s.num_qubits_ = h.num_qubits();
  s.hbar_ = hbar;
  s.constant_ = std::make_shared<const PauliSum>(std::move(h));
  return s;
}

HamiltonianSource HamiltonianSource::frenkel_trajectory(HamiltonianTrajectory traj, double hbar) {
  traj.validate();
  if (traj.start_time() > 0.0) throw ConfigError("trajectory must start at t = 0");
  auto shared = std::make_shared<const HamiltonianTrajectory>(std::move(traj));
  const std::size_t l = encoded_qubit_count(shared->num_sites());
  std::vector<double> frames = shared->times;
  const double end = shared->end_time();
  return from_function(
      l, [shared](double t) { return encode_frenkel_binary(interpolate(*shared, t)).hamiltonian; },
      hbar, end, std::move(frames));
}

HamiltonianSource HamiltonianSource::from_function(std::size_t num_qubits, Function f,
                                                   double hbar, double end_time,
                                                   std::vector<double> breakpoints) {
  if (!(hbar > 0.0)) throw ConfigError("hbar must be positive");
  if (!f) throw ConfigError("Hamiltonian function is empty");
  HamiltonianSource s;
  s.num_qubits_ = num_qubits;
  s.hbar_ = hbar;
  s.end_time_ = end_time;
  s.is_static_ = false;
  s.breakpoints_ = std::move(breakpoints);
  s.f_ = std::move(f);
  return s;
}

PauliSum HamiltonianSource::at(double t) const {
  if (is_static_) return *constant_;
  if (t > end_time_ + 1e-9 * std::max(1.0, end_time_)) {
    throw ConfigError("Hamiltonian requested at t = " + std::to_string(t) +
                      " fs beyond its end time " + std::to_string(end_time_));
  }
  PauliSum h = f_(t);
  if (h.num_qubits() != num_qubits_) throw ConfigError("Hamiltonian function changed qubit count");
  return h;
}

}  // namespace qdyn
