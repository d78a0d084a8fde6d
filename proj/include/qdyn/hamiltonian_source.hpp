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

// A Hamiltonian as a function of time, H(t) as a PauliSum, with its own
// value of hbar (kHbarEvFs for eV/fs models, 1 for dimensionless ones).

#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "qdyn/frenkel.hpp"
#include "qdyn/pauli.hpp"
#include "qdyn/units.hpp"

namespace qdyn {

class HamiltonianSource {
 public:
  using Function = std::function<PauliSum(double)>;

  /// Time-independent H.
  static HamiltonianSource constant(PauliSum h, double hbar = kHbarEvFs);
  /// Binary-encoded Frenkel trajectory; the identity offset is dropped.
  static HamiltonianSource frenkel_trajectory(HamiltonianTrajectory traj, double hbar = kHbarEvFs);
  /// Arbitrary H(t) defined on [0, end_time]. `breakpoints` lists times where
  /// H(t) is not smooth.
  static HamiltonianSource from_function(std::size_t num_qubits, Function f, double hbar,
                                         double end_time = std::numeric_limits<double>::infinity(),
                                         std::vector<double> breakpoints = {});

  PauliSum at(double t) const;
  bool is_static() const { return is_static_; }
  std::size_t num_qubits() const { return num_qubits_; }
  double hbar() const { return hbar_; }
  /// Last time at which H is defined (infinity for static sources).
  double end_time() const { return end_time_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }

 private:
  HamiltonianSource() = default;

  std::size_t num_qubits_ = 0;
  double hbar_ = kHbarEvFs;
  double end_time_ = std::numeric_limits<double>::infinity();
  bool is_static_ = true;
  std::vector<double> breakpoints_;
  std::shared_ptr<const PauliSum> constant_;
  Function f_;
};

}  // namespace qdyn
