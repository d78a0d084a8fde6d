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

// Frenkel exciton Hamiltonians, their binary qubit encoding, and
// time-dependent Hamiltonian trajectories.
//
// Sites are indexed 0..N-1 in code; files and printed output use 1-based
// labels (E_1, V_1_2, p_1, ...).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdyn/pauli.hpp"

namespace qdyn {

/// Site energies E_m and couplings V_mn (eV) at one instant.
struct FrenkelSnapshot {
  std::vector<double> energies;
  Eigen::MatrixXd couplings;

  FrenkelSnapshot() = default;
  FrenkelSnapshot(std::vector<double> e, Eigen::MatrixXd v);

  std::size_t num_sites() const { return energies.size(); }
  /// Throws ConfigError unless V is N x N, symmetric within 1e-12, with a zero diagonal.
  void validate() const;
  /// H = sum_m E_m |m><m| + sum_{m != n} V_mn |m><n| as a dense N x N matrix.
  Eigen::MatrixXd matrix() const;
};

/// Energy of the decoupled virtual sites used to pad N up to a power of two.
inline constexpr double kPaddingSiteEnergy = 10.0;

struct EncodedHamiltonian {
  /// Traceless part of the encoded Hamiltonian on log2(padded_sites) qubits.
  PauliSum hamiltonian;
  /// Identity component (eV) stripped from `hamiltonian`.
  double offset = 0.0;
  std::size_t physical_sites = 0;
  std::size_t padded_sites = 0;
};

std::size_t encoded_qubit_count(std::size_t num_sites);

/// Binary encoding |m> = |x_1 ... x_L>, m = sum_i x_i 2^{i-1}, with each
/// |x><x'| factor expanded as (I +- Z)/2 or (X +- iY)/2.
EncodedHamiltonian encode_frenkel_binary(const FrenkelSnapshot& snap);

enum class Interpolation { kPiecewiseConstant, kLinear };

struct HamiltonianTrajectory {
  std::vector<double> times;  // fs, strictly increasing
  std::vector<FrenkelSnapshot> snapshots;
  Interpolation interpolation = Interpolation::kLinear;

  std::size_t num_sites() const { return snapshots.empty() ? 0 : snapshots.front().num_sites(); }
  double start_time() const { return times.front(); }
  double end_time() const { return times.back(); }
  void validate() const;
};

FrenkelSnapshot interpolate(const HamiltonianTrajectory& traj, double t);

/// Parameters of independent stationary Ornstein-Uhlenbeck fluctuations of
/// every E_m and every upper-triangle V_mn about their means.
struct SynthesisParams {
  FrenkelSnapshot means;
  std::vector<double> energy_stddev;  // eV, per site
  Eigen::MatrixXd coupling_stddev;    // eV, symmetric; diagonal ignored
  double correlation_time = 100.0;    // fs
  double dt = 2.0;                    // fs
  double duration = 200.0;            // fs
  std::uint64_t seed = 0;
};

HamiltonianTrajectory synthesize_trajectory(const SynthesisParams& params);

/// CSV with header `t_fs,E_1..E_N,V_1_2,V_1_3,...,V_(N-1)_N` (upper triangle).
void write_trajectory_csv(std::ostream& out, const HamiltonianTrajectory& traj);
HamiltonianTrajectory read_trajectory_csv(std::istream& in,
                                          Interpolation interpolation = Interpolation::kLinear);
void write_trajectory_csv(const std::string& path, const HamiltonianTrajectory& traj);
HamiltonianTrajectory read_trajectory_csv(const std::string& path,
                                          Interpolation interpolation = Interpolation::kLinear);

}  // namespace qdyn
