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

// Multi-exciton Hamiltonians on N two-level chromophores (one qubit each,
// |1> = excited) and the two-qubit transverse-field Ising benchmark.

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdyn/pauli.hpp"

namespace qdyn {

/// Coulomb constant e^2 / (4 pi eps0) in eV * Angstrom.
inline constexpr double kDipoleKappa = 14.39964;

struct MoleculeElectronicSpec {
  double excitation_energy = 0.0;  // eV, (1|h|1); (0|h|0) = (0|h|1) = 0
  Eigen::Vector3d mu_ground = Eigen::Vector3d::Zero();      // e*A
  Eigen::Vector3d mu_excited = Eigen::Vector3d::Zero();     // e*A
  Eigen::Vector3d mu_transition = Eigen::Vector3d::Zero();  // e*A
  Eigen::Vector3d position = Eigen::Vector3d::Zero();       // A, center of mass
};

/// kappa * [mu_a . mu_b - 3 (mu_a . r)(mu_b . r)] / |r|^3 with r the unit
/// vector from r_a to r_b. Throws ConfigError for coincident positions.
double dipole_coupling(const Eigen::Vector3d& mu_a, const Eigen::Vector3d& mu_b,
                       const Eigen::Vector3d& r_a, const Eigen::Vector3d& r_b,
                       double kappa = kDipoleKappa);

struct FullSpaceCoefficients {
  double E = 0.0;
  std::vector<double> Z, X;       // per molecule
  Eigen::MatrixXd XX, XZ, ZX, ZZ;  // entry (m, n) used for n < m
  std::vector<double> S, D, T;    // one-body bookkeeping: S_m, D_m, X_m
};

FullSpaceCoefficients fullspace_coefficients(const std::vector<MoleculeElectronicSpec>& specs,
                                             double kappa = kDipoleKappa);

/// H = E I + sum_m (Z_m Z_m + X_m X_m)
///       + sum_{n<m} (XX_mn X_m X_n + XZ_mn X_m Z_n + ZX_mn Z_m X_n + ZZ_mn Z_m Z_n).
/// The identity term is kept.
PauliSum build_fullspace(const std::vector<MoleculeElectronicSpec>& specs,
                         double kappa = kDipoleKappa);
PauliSum fullspace_hamiltonian(const FullSpaceCoefficients& c);

/// H = h (X_1 + X_2) + J Z_1 Z_2 (dimensionless).
PauliSum build_tfi(double h, double J);

/// CSV with header
/// `E,mu00_x,mu00_y,mu00_z,mu11_x,mu11_y,mu11_z,mu01_x,mu01_y,mu01_z,r_x,r_y,r_z`.
std::vector<MoleculeElectronicSpec> read_molecules_csv(std::istream& in);
std::vector<MoleculeElectronicSpec> read_molecules_csv(const std::string& path);
void write_molecules_csv(std::ostream& out, const std::vector<MoleculeElectronicSpec>& specs);

}  // namespace qdyn
