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

#include "qdyn/trotter.hpp"

#include <cmath>

#include "qdyn/errors.hpp"
#include "qdyn/simulator.hpp"

namespace qdyn {

namespace {

std::vector<double> step_times(const TrotterConfig& c) {
  const auto steps = static_cast<std::size_t>(std::ceil(c.total_time / c.dt - 1e-9));
  std::vector<double> t{c.start_time};
  for (std::size_t k = 1; k <= steps; ++k) {
    t.push_back(k == steps ? c.start_time + c.total_time
                           : c.start_time + static_cast<double>(k) * c.dt);
  }
  return t;
}

void check_source(const HamiltonianSource& source, const StateVector& psi0,
                  const TrotterConfig& c) {
  c.validate();
  if (source.num_qubits() != psi0.num_qubits()) {
    throw ConfigError("initial state does not match the Hamiltonian's qubit count");
  }
  const double end = c.start_time + c.total_time;
  if (end > source.end_time() + 1e-9 * std::max(1.0, source.end_time())) {
    throw ConfigError("Hamiltonian trajectory is shorter than the Trotter run");
  }
}

}  // namespace

void TrotterConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("Trotter dt must be positive");
  if (!(total_time >= 0.0)) throw ConfigError("Trotter total_time must be non-negative");
  NoiseModel::per_gate(lambda).validate();
  if (!noisy && lambda != 0.0) throw ConfigError("lambda requires the noisy Trotter backend");
}

Circuit trotter_step_circuit(const PauliSum& h, double dt, double hbar) {
  if (!h.is_hermitian()) throw ConfigError("Trotter step needs a Hermitian Hamiltonian");
  if (!(hbar > 0.0)) throw ConfigError("hbar must be positive");
  Circuit c(h.num_qubits());
  for (const auto& t : h.terms()) {
    if (t.string.is_identity()) continue;
    c.add(PauliRotation{t.string, -t.coeff.real() * dt / hbar});
  }
  return c;
}

std::vector<StateVector> trotter_states(const HamiltonianSource& source, const StateVector& psi0,
                                        const TrotterConfig& config) {
  check_source(source, psi0, config);
  const auto times = step_times(config);
  std::vector<StateVector> out{psi0};
  StateVector psi = psi0;
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    run(psi, trotter_step_circuit(source.at(times[k]), times[k + 1] - times[k], source.hbar()));
    out.push_back(psi);
  }
  return out;
}

PopulationSeries run_trotter(const HamiltonianSource& source, const StateVector& psi0,
                             const TrotterConfig& config, const PopulationEncoding& encoding) {
  check_source(source, psi0, config);
  if (encoding.num_qubits() != psi0.num_qubits()) {
    throw ConfigError("population encoding does not match the register");
  }
  const auto times = step_times(config);
  PopulationSeries series;
  auto record = [&](double t, const Eigen::VectorXd& probs, std::size_t k) {
    if (config.shots == 0) {
      series.push(t, site_populations(probs, encoding).p);
      return;
    }
    std::mt19937_64 rng(derive_seed(config.seed, k));
    const auto h = sample_probabilities(probs, psi0.num_qubits(), config.shots, rng);
    series.push(t, site_populations(h, encoding).p);
  };

  if (!config.noisy) {
    StateVector psi = psi0;
    record(times[0], psi.probabilities(), 0);
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
      run(psi, trotter_step_circuit(source.at(times[k]), times[k + 1] - times[k], source.hbar()));
      record(times[k + 1], psi.probabilities(), k + 1);
    }
    return series;
  }
  const NoiseModel noise = NoiseModel::per_gate(config.lambda);
  DensityMatrix rho = DensityMatrix::from_pure(psi0);
  record(times[0], rho.probabilities(), 0);
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    run(rho, trotter_step_circuit(source.at(times[k]), times[k + 1] - times[k], source.hbar()),
        noise);
    record(times[k + 1], rho.probabilities(), k + 1);
  }
  return series;
}

}  // namespace qdyn
