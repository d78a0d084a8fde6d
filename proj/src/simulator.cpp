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

#include "qdyn/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "qdyn/errors.hpp"

namespace qdyn {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr cplx kI{0.0, 1.0};

// In-place kernels on one amplitude column of length `dim`. `mask`/`want`
// restrict the action to indices i with (i & mask) == want (used for
// controls; mask = 0 for uncontrolled gates).

void kernel_rotation(cplx* v, std::uint64_t dim, const PauliString& p, double angle,
                     std::uint64_t mask, std::uint64_t want) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const std::uint64_t x = p.x_mask();
  if (x == 0) {
    for (std::uint64_t k = 0; k < dim; ++k) {
      if ((k & mask) != want) continue;
      v[k] *= c + kI * s * p.basis_phase(k);
    }
    return;
  }
  for (std::uint64_t k = 0; k < dim; ++k) {
    if ((k & mask) != want) continue;
    const std::uint64_t j = k ^ x;
    if (j < k) continue;
    // P|k> = ph_k |j>, P|j> = ph_j |k>.
    const cplx ph_k = p.basis_phase(k);
    const cplx ph_j = p.basis_phase(j);
    const cplx vk = v[k];
    const cplx vj = v[j];
    v[k] = c * vk + kI * s * ph_j * vj;
    v[j] = c * vj + kI * s * ph_k * vk;
  }
}

void kernel_pauli(cplx* v, std::uint64_t dim, const PauliString& p, std::uint64_t mask,
                  std::uint64_t want) {
  const std::uint64_t x = p.x_mask();
  for (std::uint64_t k = 0; k < dim; ++k) {
    if ((k & mask) != want) continue;
    const std::uint64_t j = k ^ x;
    if (j < k) continue;
    if (j == k) {
      v[k] *= p.basis_phase(k);
      continue;
    }
    const cplx vk = v[k];
    v[k] = p.basis_phase(j) * v[j];
    v[j] = p.basis_phase(k) * vk;
  }
}

void kernel_hadamard(cplx* v, std::uint64_t dim, std::size_t qubit) {
  const std::uint64_t b = std::uint64_t{1} << qubit;
  const double r = 1.0 / std::sqrt(2.0);
  for (std::uint64_t k = 0; k < dim; ++k) {
    if (k & b) continue;
    const cplx a0 = v[k];
    const cplx a1 = v[k | b];
    v[k] = r * (a0 + a1);
    v[k | b] = r * (a0 - a1);
  }
}

void kernel_rz(cplx* v, std::uint64_t dim, std::size_t qubit, double phi) {
  const std::uint64_t b = std::uint64_t{1} << qubit;
  const cplx p0 = std::exp(-kI * (phi / 2.0));
  const cplx p1 = std::exp(kI * (phi / 2.0));
  for (std::uint64_t k = 0; k < dim; ++k) v[k] *= (k & b) ? p1 : p0;
}

void apply_kernel(cplx* v, std::uint64_t dim, const Gate& gate) {
  std::visit(Overloaded{
                 [&](const PauliRotation& g) { kernel_rotation(v, dim, g.generator, g.angle, 0, 0); },
                 [&](const PauliGate& g) { kernel_pauli(v, dim, g.pauli, 0, 0); },
                 [&](const Hadamard& g) { kernel_hadamard(v, dim, g.qubit); },
                 [&](const RzGate& g) { kernel_rz(v, dim, g.qubit, g.phi); },
                 [&](const ControlledPauli& g) {
                   const std::uint64_t b = std::uint64_t{1} << g.control;
                   kernel_pauli(v, dim, g.target, b, b);
                 },
                 [&](const ControlledRotation& g) {
                   const std::uint64_t b = std::uint64_t{1} << g.control;
                   kernel_rotation(v, dim, g.generator, g.angle, b, b);
                 },
             },
             gate);
}

void check_width(std::size_t state_qubits, const Gate& gate) {
  const std::uint64_t support = gate_support(gate);
  if (state_qubits < 64 && (support >> state_qubits) != 0) {
    throw ConfigError("gate acts outside the state's qubits");
  }
}

double ancilla_z_from_probabilities(const Eigen::VectorXd& probs, std::size_t ancilla) {
  const std::uint64_t b = std::uint64_t{1} << ancilla;
  double z = 0.0;
  for (Eigen::Index k = 0; k < probs.size(); ++k) {
    z += (static_cast<std::uint64_t>(k) & b) ? -probs(k) : probs(k);
  }
  return z;
}

}  // namespace

void NoiseModel::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ConfigError("noise lambda must lie in [0, 1]");
  }
}

void apply_gate(StateVector& state, const Gate& gate, const NoiseModel& noise) {
  if (noise.mode != NoiseMode::kOff) {
    throw ConfigError("noise requires the density-matrix backend");
  }
  check_width(state.num_qubits(), gate);
  apply_kernel(state.amplitudes().data(), state.dim(), gate);
}

void apply_gate(DensityMatrix& state, const Gate& gate, const NoiseModel& noise) {
  noise.validate();
  check_width(state.num_qubits(), gate);
  auto& rho = state.entries();
  const std::uint64_t dim = state.dim();
  // rho -> U (U rho)^dag = U rho U^dag for Hermitian rho.
  for (Eigen::Index c = 0; c < rho.cols(); ++c) apply_kernel(rho.col(c).data(), dim, gate);
  rho.adjointInPlace();
  for (Eigen::Index c = 0; c < rho.cols(); ++c) apply_kernel(rho.col(c).data(), dim, gate);
  if (noise.mode == NoiseMode::kPerGate && noise.lambda > 0.0) {
    depolarize_qubits(state, gate_support(gate), noise.lambda);
  }
}

void run(StateVector& state, const Circuit& circuit, const NoiseModel& noise) {
  if (circuit.num_qubits() != state.num_qubits()) {
    throw ConfigError("circuit width does not match state");
  }
  for (const auto& g : circuit.gates()) apply_gate(state, g, noise);
}

void run(DensityMatrix& state, const Circuit& circuit, const NoiseModel& noise) {
  if (circuit.num_qubits() != state.num_qubits()) {
    throw ConfigError("circuit width does not match state");
  }
  noise.validate();
  const NoiseModel per_gate =
      noise.mode == NoiseMode::kPerGate ? noise : NoiseModel::off();
  for (const auto& g : circuit.gates()) apply_gate(state, g, per_gate);
  if (noise.mode == NoiseMode::kGlobalOnce && noise.lambda > 0.0) {
    state = apply_depolarizing(state, noise.lambda);
  }
}

DensityMatrix apply_depolarizing(const DensityMatrix& rho, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("lambda must lie in [0, 1]");
  const auto d = static_cast<Eigen::Index>(rho.dim());
  Eigen::MatrixXcd out = (1.0 - lambda) * rho.entries();
  out.diagonal().array() += lambda / static_cast<double>(d);
  return DensityMatrix(rho.num_qubits(), std::move(out));
}

void depolarize_qubits(DensityMatrix& state, std::uint64_t mask, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("lambda must lie in [0, 1]");
  if (mask == 0 || lambda == 0.0) return;
  auto& rho = state.entries();
  const std::uint64_t dim = state.dim();
  const std::uint64_t rest = ~mask;
  const double share = lambda / static_cast<double>(std::uint64_t{1} << std::popcount(mask));
  Eigen::MatrixXcd reduced = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  for (std::uint64_t c = 0; c < dim; ++c) {
    for (std::uint64_t r = 0; r < dim; ++r) {
      if (((r ^ c) & mask) == 0) reduced(r & rest, c & rest) += rho(r, c);
    }
  }
  rho *= (1.0 - lambda);
  for (std::uint64_t c = 0; c < dim; ++c) {
    for (std::uint64_t r = 0; r < dim; ++r) {
      if (((r ^ c) & mask) == 0) rho(r, c) += share * reduced(r & rest, c & rest);
    }
  }
}

cplx pauli_expectation(const StateVector& state, const PauliString& p) {
  if (p.num_qubits() != state.num_qubits()) throw ConfigError("expectation: qubit-count mismatch");
  const auto& a = state.amplitudes();
  const std::uint64_t x = p.x_mask();
  cplx acc = 0.0;
  for (std::uint64_t j = 0; j < state.dim(); ++j) {
    acc += std::conj(a(j ^ x)) * p.basis_phase(j) * a(j);
  }
  return acc;
}

cplx pauli_expectation(const DensityMatrix& state, const PauliString& p) {
  if (p.num_qubits() != state.num_qubits()) throw ConfigError("expectation: qubit-count mismatch");
  const auto& rho = state.entries();
  const std::uint64_t x = p.x_mask();
  cplx acc = 0.0;
  for (std::uint64_t j = 0; j < state.dim(); ++j) acc += p.basis_phase(j) * rho(j, j ^ x);
  return acc;
}

namespace {

template <class State>
double hermitian_expectation(const State& state, const PauliSum& obs) {
  if (obs.num_qubits() != state.num_qubits()) {
    throw ConfigError("expectation: qubit-count mismatch");
  }
  if (!obs.is_hermitian(1e-12)) throw ConfigError("expectation: observable is not Hermitian");
  cplx acc = 0.0;
  for (const auto& t : obs.terms()) acc += t.coeff * pauli_expectation(state, t.string);
  return acc.real();
}

}  // namespace

double expectation(const StateVector& state, const PauliSum& obs) {
  return hermitian_expectation(state, obs);
}

double expectation(const DensityMatrix& state, const PauliSum& obs) {
  return hermitian_expectation(state, obs);
}

std::uint64_t Histogram::shots() const {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

std::string Histogram::bitstring(std::uint64_t index) const {
  std::string s(num_qubits, '0');
  for (std::size_t q = 0; q < num_qubits; ++q) {
    if ((index >> q) & 1) s[num_qubits - 1 - q] = '1';
  }
  return s;
}

Eigen::VectorXd Histogram::frequencies() const {
  Eigen::VectorXd f(static_cast<Eigen::Index>(counts.size()));
  const double total = static_cast<double>(shots());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    f(static_cast<Eigen::Index>(i)) = total > 0 ? static_cast<double>(counts[i]) / total : 0.0;
  }
  return f;
}

std::string Histogram::to_csv() const {
  std::ostringstream out;
  out << "bitstring,count\n";
  for (std::uint64_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) out << bitstring(i) << ',' << counts[i] << '\n';
  }
  return out.str();
}

Histogram sample_probabilities(const Eigen::VectorXd& probabilities, std::size_t num_qubits,
                               std::uint64_t shots, std::mt19937_64& rng) {
  if (shots == 0) throw ConfigError("shots must be >= 1");
  Histogram h{num_qubits, std::vector<std::uint64_t>(probabilities.size(), 0)};
  // Multinomial draw as a chain of conditional binomials.
  double remaining_mass = probabilities.cwiseMax(0.0).sum();
  std::uint64_t remaining = shots;
  for (Eigen::Index i = 0; i < probabilities.size() && remaining > 0; ++i) {
    const double p = std::max(0.0, probabilities(i));
    if (i + 1 == probabilities.size() || remaining_mass <= 0.0) {
      h.counts[i] = remaining;
      remaining = 0;
      break;
    }
    const double cond = std::clamp(p / remaining_mass, 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> dist(remaining, cond);
    const std::uint64_t k = dist(rng);
    h.counts[i] = k;
    remaining -= k;
    remaining_mass -= p;
  }
  return h;
}

Histogram sample_bitstrings(const StateVector& state, std::uint64_t shots, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_probabilities(state.probabilities(), state.num_qubits(), shots, rng);
}

Histogram sample_bitstrings(const DensityMatrix& state, std::uint64_t shots, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_probabilities(state.probabilities(), state.num_qubits(), shots, rng);
}

Estimate estimate_ancilla_z(const Circuit& circuit, const ExecutionBackend& backend,
                            std::mt19937_64& rng) {
  const std::size_t n = circuit.num_qubits();
  if (n == 0) throw ConfigError("ancilla circuit has no qubits");
  double z = 0.0;
  if (backend.kind == ExecutionBackend::Kind::kStatevector) {
    StateVector psi(n);
    run(psi, circuit, backend.noise);
    z = ancilla_z_from_probabilities(psi.probabilities(), n - 1);
  } else {
    DensityMatrix rho(n);
    run(rho, circuit, backend.noise);
    z = ancilla_z_from_probabilities(rho.probabilities(), n - 1);
  }
  z = std::clamp(z, -1.0, 1.0);
  if (backend.shots == 0) return {z, 0.0};
  const double shots = static_cast<double>(backend.shots);
  std::binomial_distribution<std::uint64_t> dist(backend.shots, (1.0 + z) / 2.0);
  const double zeros = static_cast<double>(dist(rng));
  return {(2.0 * zeros - shots) / shots, std::sqrt(std::max(0.0, 1.0 - z * z) / shots)};
}

double ancilla_phase(OverlapPart part) { return part == OverlapPart::kReal ? 0.0 : -kPi / 2.0; }

Circuit hadamard_test_circuit(const Circuit& psi0_prep, const Circuit& branch0,
                              const Circuit& branch1, OverlapPart part) {
  const std::size_t n = psi0_prep.num_qubits();
  if (branch0.num_qubits() != n || branch1.num_qubits() != n) {
    throw ConfigError("hadamard_test: branch circuits must act on the system register only");
  }
  const std::size_t anc = n;
  Circuit c(n + 1);
  c.add(Hadamard{anc});
  if (part == OverlapPart::kImag) c.add(RzGate{anc, ancilla_phase(part)});
  c.append(widen(psi0_prep, n + 1));
  const auto x_anc = PauliGate{PauliString::single(n + 1, anc, Pauli::X)};
  c.add(x_anc);
  c.append(controlled(widen(branch0, n + 1), anc));
  c.add(x_anc);
  c.append(controlled(widen(branch1, n + 1), anc));
  c.add(Hadamard{anc});
  return c;
}

Estimate hadamard_test(const Circuit& psi0_prep, const Circuit& branch0, const Circuit& branch1,
                       OverlapPart part, const ExecutionBackend& backend, std::mt19937_64& rng) {
  return estimate_ancilla_z(hadamard_test_circuit(psi0_prep, branch0, branch1, part), backend,
                            rng);
}

}  // namespace qdyn
