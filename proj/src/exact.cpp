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

#include "qdyn/exact.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qdyn/errors.hpp"

namespace qdyn {

namespace {

struct Spectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

Spectrum diagonalize(const PauliSum& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(to_matrix(h));
  if (eig.info() != Eigen::Success) throw NumericalError("Hamiltonian diagonalization failed");
  return {eig.eigenvalues(), eig.eigenvectors()};
}

Eigen::VectorXcd apply_phase(const Spectrum& s, const Eigen::VectorXcd& v, double t, double hbar) {
  Eigen::VectorXcd c = s.vectors.adjoint() * v;
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= std::polar(1.0, -s.values(i) * t / hbar);
  return s.vectors * c;
}

void check_grid(const std::vector<double>& t_grid) {
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!std::isfinite(t_grid[i]) || t_grid[i] < 0.0) {
      throw ConfigError("time grid must be finite and non-negative");
    }
    if (i > 0 && t_grid[i] < t_grid[i - 1]) throw ConfigError("time grid must be non-decreasing");
  }
}

// Time-dependent evolution at a fixed micro-step size.
std::vector<StateVector> evolve_stepped(const HamiltonianSource& source, const StateVector& psi0,
                                        const std::vector<double>& t_grid, double micro_dt) {
  std::vector<double> marks = t_grid;
  for (double b : source.breakpoints()) {
    if (b > 0.0 && b < t_grid.back()) marks.push_back(b);
  }
  marks.push_back(0.0);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end(),
                          [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
              marks.end());

  std::vector<StateVector> out;
  out.reserve(t_grid.size());
  Eigen::VectorXcd v = psi0.amplitudes();
  std::size_t next = 0;
  auto record = [&](double t) {
    while (next < t_grid.size() && std::abs(t_grid[next] - t) <= 1e-12) {
      out.emplace_back(psi0.num_qubits(), v);
      ++next;
    }
  };
  record(0.0);
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
    const double a = marks[i];
    const double len = marks[i + 1] - a;
    const auto steps = static_cast<std::size_t>(std::ceil(len / micro_dt - 1e-9));
    const double h = len / static_cast<double>(std::max<std::size_t>(steps, 1));
    for (std::size_t k = 0; k < std::max<std::size_t>(steps, 1); ++k) {
      const double mid = a + (static_cast<double>(k) + 0.5) * h;
      v = apply_phase(diagonalize(source.at(mid)), v, h, source.hbar());
    }
    v.normalize();
    record(marks[i + 1]);
  }
  return out;
}

}  // namespace

StateVector propagate(const PauliSum& h, const StateVector& psi, double t, double hbar) {
  if (h.num_qubits() != psi.num_qubits()) throw ConfigError("state/Hamiltonian qubit mismatch");
  return StateVector(psi.num_qubits(), apply_phase(diagonalize(h), psi.amplitudes(), t, hbar));
}

std::vector<StateVector> evolve_exact(const HamiltonianSource& source, const StateVector& psi0,
                                      const std::vector<double>& t_grid,
                                      const ExactOptions& options) {
  if (source.num_qubits() != psi0.num_qubits()) {
    throw ConfigError("initial state does not match the Hamiltonian's qubit count");
  }
  if (!(options.micro_dt > 0.0)) throw ConfigError("micro_dt must be positive");
  check_grid(t_grid);
  if (t_grid.empty()) return {};
  if (t_grid.back() > source.end_time() + 1e-9 * std::max(1.0, source.end_time())) {
    throw ConfigError("Hamiltonian trajectory is shorter than the requested time grid");
  }

  if (source.is_static()) {
    const Spectrum s = diagonalize(source.at(0.0));
    std::vector<StateVector> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
      out.emplace_back(psi0.num_qubits(), apply_phase(s, psi0.amplitudes(), t, source.hbar()));
    }
    return out;
  }

  double dt = options.micro_dt;
  auto coarse = evolve_stepped(source, psi0, t_grid, dt);
  if (!options.auto_refine) return coarse;
  for (int i = 0; i < options.max_halvings; ++i) {
    dt /= 2.0;
    auto fine = evolve_stepped(source, psi0, t_grid, dt);
    const double diff = (fine.back().amplitudes() - coarse.back().amplitudes()).norm();
    if (diff < options.tolerance) return fine;
    coarse = std::move(fine);
  }
  throw NumericalError("exact propagation did not converge after " +
                       std::to_string(options.max_halvings) + " micro-step halvings");
}

}  // namespace qdyn
