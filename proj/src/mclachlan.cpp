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

#include "qdyn/mclachlan.hpp"

#include <cmath>
#include <ostream>

#include "qdyn/errors.hpp"
#include "qdyn/simulator.hpp"

namespace qdyn {

namespace {

PauliString widen_string(const PauliString& s, std::size_t n) {
  std::vector<Pauli> letters = s.letters();
  letters.resize(n, Pauli::I);
  return PauliString(std::move(letters));
}

// Common prefix of both element circuits: ancilla H, psi0 and U_1..U_k, then
// R_k on the ancilla-|0> branch.
Circuit element_prefix(const Ansatz& ansatz, const Circuit& u, std::size_t k) {
  const std::size_t n = ansatz.num_qubits();
  const std::size_t anc = n;
  Circuit c(n + 1);
  c.add(Hadamard{anc});
  c.append(widen(ansatz.initial_state_prep, n + 1));
  for (std::size_t j = 0; j <= k; ++j) c.append(widen(Circuit(n).add(u.gates()[j]), n + 1));
  const PauliGate x_anc{PauliString::single(n + 1, anc, Pauli::X)};
  c.add(x_anc);
  c.add(ControlledPauli{anc, widen_string(ansatz.generator(k), n + 1)});
  c.add(x_anc);
  return c;
}

ExecutionBackend execution_backend(const VqaBackend& b) {
  ExecutionBackend e;
  e.shots = b.shots;
  if (b.kind == VqaBackend::Kind::kNoisy) {
    e.kind = ExecutionBackend::Kind::kDensity;
    e.noise = NoiseModel::per_gate(b.lambda);
  }
  return e;
}

}  // namespace

void VqaBackend::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("lambda must lie in [0, 1]");
  if (kind != Kind::kNoisy && lambda != 0.0) {
    throw ConfigError("lambda is only meaningful for the noisy backend");
  }
}

MvSystem build_mv_analytic(const Ansatz& ansatz, const Eigen::VectorXd& theta, const PauliSum& h) {
  if (h.num_qubits() != ansatz.num_qubits()) throw ConfigError("Hamiltonian/ansatz width mismatch");
  if (!h.is_hermitian()) throw ConfigError("Hamiltonian must be Hermitian");
  const auto bundle = tangent_bundle(ansatz, theta);
  const auto k_total = static_cast<Eigen::Index>(bundle.tangents.size());
  Eigen::MatrixXcd t(bundle.psi.dim(), k_total);
  for (Eigen::Index k = 0; k < k_total; ++k) t.col(k) = bundle.tangents[k].amplitudes();

  MvSystem out;
  out.M = (t.adjoint() * t).real();
  out.M = (out.M + out.M.transpose()) / 2.0;
  const Eigen::VectorXcd h_psi = to_matrix(h) * bundle.psi.amplitudes();
  out.V = (t.adjoint() * h_psi).imag();
  out.M_stderr = Eigen::MatrixXd::Zero(k_total, k_total);
  out.V_stderr = Eigen::VectorXd::Zero(k_total);
  return out;
}

Circuit m_element_circuit(const Ansatz& ansatz, const Eigen::VectorXd& theta, std::size_t k,
                          std::size_t l) {
  if (k > l || l >= ansatz.num_parameters()) throw ConfigError("M element index out of range");
  const std::size_t n = ansatz.num_qubits();
  const Circuit u = ansatz_circuit(ansatz, theta);
  Circuit c = element_prefix(ansatz, u, k);
  for (std::size_t j = k + 1; j <= l; ++j) c.append(widen(Circuit(n).add(u.gates()[j]), n + 1));
  c.add(ControlledPauli{n, widen_string(ansatz.generator(l), n + 1)});
  c.add(Hadamard{n});
  return c;
}

Circuit v_element_circuit(const Ansatz& ansatz, const Eigen::VectorXd& theta, std::size_t k,
                          const PauliString& term) {
  if (k >= ansatz.num_parameters()) throw ConfigError("V element index out of range");
  if (term.num_qubits() != ansatz.num_qubits()) throw ConfigError("term width mismatch");
  const std::size_t n = ansatz.num_qubits();
  const Circuit u = ansatz_circuit(ansatz, theta);
  Circuit c = element_prefix(ansatz, u, k);
  for (std::size_t j = k + 1; j < u.size(); ++j) {
    c.append(widen(Circuit(n).add(u.gates()[j]), n + 1));
  }
  c.add(ControlledPauli{n, widen_string(term, n + 1)});
  c.add(Hadamard{n});
  return c;
}

MvSystem build_mv_sampled(const Ansatz& ansatz, const Eigen::VectorXd& theta, const PauliSum& h,
                          const VqaBackend& backend, std::mt19937_64& rng) {
  backend.validate();
  if (h.num_qubits() != ansatz.num_qubits()) throw ConfigError("Hamiltonian/ansatz width mismatch");
  for (const auto& t : h.terms()) {
    if (std::abs(t.coeff.imag()) > 1e-12) throw ConfigError("Hamiltonian must be Hermitian");
  }
  const ExecutionBackend exec = execution_backend(backend);
  const auto k_total = static_cast<Eigen::Index>(ansatz.num_parameters());
  MvSystem out;
  out.M = Eigen::MatrixXd::Zero(k_total, k_total);
  out.M_stderr = Eigen::MatrixXd::Zero(k_total, k_total);
  out.V = Eigen::VectorXd::Zero(k_total);
  out.V_stderr = Eigen::VectorXd::Zero(k_total);

  for (Eigen::Index k = 0; k < k_total; ++k) {
    for (Eigen::Index l = k; l < k_total; ++l) {
      const auto est = estimate_ancilla_z(
          m_element_circuit(ansatz, theta, static_cast<std::size_t>(k), static_cast<std::size_t>(l)),
          exec, rng);
      out.M(k, l) = out.M(l, k) = est.value;
      out.M_stderr(k, l) = out.M_stderr(l, k) = est.std_error;
    }
  }
  for (Eigen::Index k = 0; k < k_total; ++k) {
    double var = 0.0;
    for (const auto& t : h.terms()) {
      if (t.string.is_identity()) continue;
      const double c = t.coeff.real();
      const auto est = estimate_ancilla_z(
          v_element_circuit(ansatz, theta, static_cast<std::size_t>(k), t.string), exec, rng);
      out.V(k) -= c * est.value;
      var += c * c * est.std_error * est.std_error;
    }
    out.V_stderr(k) = std::sqrt(var);
  }
  return out;
}

MvSystem build_mv(const Ansatz& ansatz, const Eigen::VectorXd& theta, const PauliSum& h,
                  const VqaBackend& backend, std::mt19937_64& rng) {
  if (backend.kind == VqaBackend::Kind::kAnalytic) return build_mv_analytic(ansatz, theta, h);
  return build_mv_sampled(ansatz, theta, h, backend, rng);
}

ThetaDotSolution solve_thetadot(const Eigen::MatrixXd& M, const Eigen::VectorXd& V, double eps) {
  if (M.rows() != M.cols() || M.rows() != V.size()) throw ConfigError("M/V dimension mismatch");
  if (eps < 0.0) throw ConfigError("regularization must be non-negative");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const Eigen::VectorXd proj = svd.matrixU().transpose() * V;
  ThetaDotSolution out;
  out.singular_values = s;
  out.x = Eigen::VectorXd::Zero(M.cols());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double denom = s(i) * s(i) + eps;
    if (denom <= 0.0) continue;
    out.x += (s(i) / denom) * proj(i) * svd.matrixV().col(i);
  }
  if (!out.x.allFinite()) throw NumericalError("theta_dot solve produced non-finite values");
  return out;
}

void VqaConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("VQA dt must be positive");
  if (!(total_time >= 0.0)) throw ConfigError("VQA total_time must be non-negative");
  if (!(eps >= 0.0)) throw ConfigError("regularization eps must be non-negative");
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  backend.validate();
}

VqaResult run_vqa(const HamiltonianSource& source, const Ansatz& ansatz, const VqaConfig& config) {
  config.validate();
  ansatz.validate();
  if (source.num_qubits() != ansatz.num_qubits()) {
    throw ConfigError("Hamiltonian/ansatz width mismatch");
  }
  const auto k_total = static_cast<Eigen::Index>(ansatz.num_parameters());
  Eigen::VectorXd theta = config.theta0.size() == 0 ? Eigen::VectorXd::Zero(k_total) : config.theta0;
  if (theta.size() != k_total) throw ConfigError("theta0 has the wrong length");

  const double record_step = config.dt / config.alpha;
  const auto steps =
      static_cast<std::size_t>(std::ceil(config.total_time / record_step - 1e-9));
  const double end = config.start_time + config.total_time;
  if (end > source.end_time() + 1e-9 * std::max(1.0, source.end_time())) {
    throw ConfigError("Hamiltonian trajectory is shorter than the VQA run");
  }

  VqaResult out;
  for (std::size_t k = 0; k < ansatz.num_parameters(); ++k) {
    out.generator_labels.push_back(ansatz.generator(k).str());
  }
  double t = config.start_time;
  out.times.push_back(t);
  out.parameters.push_back(theta);
  out.states.push_back(prepare_state(ansatz, theta));
  for (std::size_t step = 0; step < steps; ++step) {
    const PauliSum h = source.at(t).without_identity();
    std::mt19937_64 rng(derive_seed(config.backend.seed, step));
    const MvSystem mv = build_mv(ansatz, theta, h, config.backend, rng);
    const Eigen::VectorXd thetadot = solve_thetadot(mv.M, mv.V, config.eps).x / source.hbar();
    out.thetadot_norms.push_back(thetadot.norm());
    // The last step may be shortened to land on the requested end time.
    const double advance = std::min(record_step, end - t);
    theta += thetadot * (advance * config.alpha);
    t = step + 1 == steps ? end : t + advance;
    out.times.push_back(t);
    out.parameters.push_back(theta);
    out.states.push_back(prepare_state(ansatz, theta));
  }
  return out;
}

void write_theta_csv(std::ostream& out, const VqaResult& result) {
  const std::size_t k_total = result.parameters.empty() ? 0 : result.parameters.front().size();
  out << "t_fs";
  for (std::size_t k = 0; k < k_total; ++k) out << ",theta_" << k + 1;
  out << '\n';
  const auto old = out.precision(17);
  for (std::size_t i = 0; i < result.times.size(); ++i) {
    out << result.times[i];
    for (std::size_t k = 0; k < k_total; ++k) out << ',' << result.parameters[i](k);
    out << '\n';
  }
  out.precision(old);
}

}  // namespace qdyn
