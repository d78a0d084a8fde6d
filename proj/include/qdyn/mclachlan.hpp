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

// McLachlan variational time evolution: M theta_dot = V / hbar with
//   M_kl = Re <d_k psi | d_l psi>,   V_k = Im <d_k psi | H | psi>,
// integrated by explicit Euler steps.

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdyn/ansatz.hpp"
#include "qdyn/circuit.hpp"
#include "qdyn/hamiltonian_source.hpp"
#include "qdyn/pauli.hpp"
#include "qdyn/state.hpp"

namespace qdyn {

/// How M and V are obtained.
///  - kAnalytic: inner products of exact tangent states.
///  - kSampled: Hadamard-test circuits on the statevector backend.
///  - kNoisy: Hadamard-test circuits on the density-matrix backend with
///    per-gate depolarizing noise of strength lambda.
/// For the circuit backends shots == 0 uses the exact ancilla expectation.
struct VqaBackend {
  enum class Kind { kAnalytic, kSampled, kNoisy };
  Kind kind = Kind::kAnalytic;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  double lambda = 0.0;

  static VqaBackend analytic() { return {}; }
  static VqaBackend sampled(std::uint64_t shots, std::uint64_t seed) {
    return {Kind::kSampled, shots, seed, 0.0};
  }
  static VqaBackend noisy(double lambda, std::uint64_t shots, std::uint64_t seed) {
    return {Kind::kNoisy, shots, seed, lambda};
  }
  void validate() const;
};

struct MvSystem {
  Eigen::MatrixXd M;
  Eigen::VectorXd V;
  /// Standard errors of the estimates (zero for exact evaluation).
  Eigen::MatrixXd M_stderr;
  Eigen::VectorXd V_stderr;
};

MvSystem build_mv_analytic(const Ansatz& ansatz, const Eigen::VectorXd& theta, const PauliSum& h);

/// Hadamard-test circuit for M_kl (k <= l); its ancilla <Z> is M_kl.
Circuit m_element_circuit(const Ansatz& ansatz, const Eigen::VectorXd& theta, std::size_t k,
                          std::size_t l);
/// Hadamard-test circuit pairing parameter k with Pauli term `term`; its
/// ancilla <Z> is w with Im <d_k psi|term|psi> = -w.
Circuit v_element_circuit(const Ansatz& ansatz, const Eigen::VectorXd& theta, std::size_t k,
                          const PauliString& term);

/// Circuit estimate of M and V: one circuit per pair k <= l and one per
/// (parameter, Hamiltonian term). H must carry real coefficients.
MvSystem build_mv_sampled(const Ansatz& ansatz, const Eigen::VectorXd& theta, const PauliSum& h,
                          const VqaBackend& backend, std::mt19937_64& rng);

MvSystem build_mv(const Ansatz& ansatz, const Eigen::VectorXd& theta, const PauliSum& h,
                  const VqaBackend& backend, std::mt19937_64& rng);

struct ThetaDotSolution {
  Eigen::VectorXd x;
  Eigen::VectorXd singular_values;
};

/// argmin |M x - V|^2 + eps |x|^2, via the SVD of M.
ThetaDotSolution solve_thetadot(const Eigen::MatrixXd& M, const Eigen::VectorXd& V,
                                double eps = 1e-6);

struct VqaConfig {
  double dt = 0.1;           // Euler step (fs)
  double total_time = 10.0;  // fs, in recorded (corrected) time
  double eps = 1e-6;
  VqaBackend backend;
  /// Recorded time advances by dt / alpha per Euler step of size dt.
  double alpha = 1.0;
  double start_time = 0.0;
  /// Initial parameters; empty means all zeros.
  Eigen::VectorXd theta0;

  void validate() const;
};

struct VqaResult {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> parameters;
  std::vector<StateVector> states;
  /// |theta_dot| used for the step starting at times[i].
  std::vector<double> thetadot_norms;
  std::vector<std::string> generator_labels;
};

/// The identity component of H(t) is removed before building V.
VqaResult run_vqa(const HamiltonianSource& source, const Ansatz& ansatz, const VqaConfig& config);

/// CSV `t_fs,theta_1..theta_K`.
void write_theta_csv(std::ostream& out, const VqaResult& result);

}  // namespace qdyn
