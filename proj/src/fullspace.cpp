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

#include "qdyn/fullspace.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qdyn/errors.hpp"

namespace qdyn {

namespace {

constexpr const char* kMoleculeColumns[] = {"E",      "mu00_x", "mu00_y", "mu00_z", "mu11_x",
                                            "mu11_y", "mu11_z", "mu01_x", "mu01_y", "mu01_z",
                                            "r_x",    "r_y",    "r_z"};
constexpr std::size_t kMoleculeColumnCount = std::size(kMoleculeColumns);

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  return out;
}

// Effective dipoles for the |S), |D) and |T) densities of one molecule.
struct DensityDipoles {
  Eigen::Vector3d s, d, t;
};

DensityDipoles density_dipoles(const MoleculeElectronicSpec& m) {
  return {(m.mu_ground + m.mu_excited) / 2.0, (m.mu_ground - m.mu_excited) / 2.0,
          m.mu_transition};
}

PauliString two_letters(std::size_t n, std::size_t a, Pauli pa, std::size_t b, Pauli pb) {
  std::vector<Pauli> letters(n, Pauli::I);
  letters[a] = pa;
  letters[b] = pb;
  return PauliString(std::move(letters));
}

}  // namespace

double dipole_coupling(const Eigen::Vector3d& mu_a, const Eigen::Vector3d& mu_b,
                       const Eigen::Vector3d& r_a, const Eigen::Vector3d& r_b, double kappa) {
  const Eigen::Vector3d r = r_b - r_a;
  const double dist = r.norm();
  if (!(dist > 0.0)) throw ConfigError("dipole coupling between coincident positions");
  const Eigen::Vector3d u = r / dist;
  return kappa * (mu_a.dot(mu_b) - 3.0 * mu_a.dot(u) * mu_b.dot(u)) / (dist * dist * dist);
}

FullSpaceCoefficients fullspace_coefficients(const std::vector<MoleculeElectronicSpec>& specs,
                                             double kappa) {
  const std::size_t n = specs.size();
  if (n == 0) throw ConfigError("full-space Hamiltonian needs at least one molecule");
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if ((specs[a].position - specs[b].position).norm() == 0.0) {
        throw ConfigError("molecules " + std::to_string(a + 1) + " and " +
                          std::to_string(b + 1) + " share a position");
      }
    }
  }

  FullSpaceCoefficients c;
  c.S.resize(n);
  c.D.resize(n);
  c.T.assign(n, 0.0);
  std::vector<DensityDipoles> dip;
  for (std::size_t m = 0; m < n; ++m) {
    c.S[m] = specs[m].excitation_energy / 2.0;
    c.D[m] = -specs[m].excitation_energy / 2.0;
    dip.push_back(density_dipoles(specs[m]));
  }
  auto coul = [&](const Eigen::Vector3d& a, std::size_t m, const Eigen::Vector3d& b,
                  std::size_t k) {
    return dipole_coupling(a, b, specs[m].position, specs[k].position, kappa);
  };

  c.Z = c.D;
  c.X = c.T;
  c.XX = c.XZ = c.ZX = c.ZZ = Eigen::MatrixXd::Zero(n, n);
  c.E = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    c.E += c.S[m];
    for (std::size_t k = 0; k < n; ++k) {
      if (k == m) continue;
      c.Z[m] += coul(dip[m].d, m, dip[k].s, k);
      c.X[m] += coul(dip[m].t, m, dip[k].s, k);
      if (k < m) {
        c.E += coul(dip[m].s, m, dip[k].s, k);
        c.XX(m, k) = coul(dip[m].t, m, dip[k].t, k);
        c.XZ(m, k) = coul(dip[m].t, m, dip[k].d, k);
        c.ZX(m, k) = coul(dip[m].d, m, dip[k].t, k);
        c.ZZ(m, k) = coul(dip[m].d, m, dip[k].d, k);
      }
    }
  }
  return c;
}

PauliSum fullspace_hamiltonian(const FullSpaceCoefficients& c) {
  const std::size_t n = c.Z.size();
  std::vector<PauliTerm> terms;
  terms.push_back({c.E, PauliString(n)});
  for (std::size_t m = 0; m < n; ++m) {
    terms.push_back({c.Z[m], PauliString::single(n, m, Pauli::Z)});
    terms.push_back({c.X[m], PauliString::single(n, m, Pauli::X)});
    for (std::size_t k = 0; k < m; ++k) {
      terms.push_back({c.XX(m, k), two_letters(n, m, Pauli::X, k, Pauli::X)});
      terms.push_back({c.XZ(m, k), two_letters(n, m, Pauli::X, k, Pauli::Z)});
      terms.push_back({c.ZX(m, k), two_letters(n, m, Pauli::Z, k, Pauli::X)});
      terms.push_back({c.ZZ(m, k), two_letters(n, m, Pauli::Z, k, Pauli::Z)});
    }
  }
  return PauliSum(n, std::move(terms));
}

PauliSum build_fullspace(const std::vector<MoleculeElectronicSpec>& specs, double kappa) {
  return fullspace_hamiltonian(fullspace_coefficients(specs, kappa));
}

PauliSum build_tfi(double h, double J) {
  return PauliSum(2, {{h, PauliString::parse("XI")},
                      {h, PauliString::parse("IX")},
                      {J, PauliString::parse("ZZ")}});
}

std::vector<MoleculeElectronicSpec> read_molecules_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("molecule CSV is empty");
  const auto header = split_fields(line);
  if (header.size() != kMoleculeColumnCount) {
    throw ConfigError("molecule CSV must have " + std::to_string(kMoleculeColumnCount) +
                      " columns");
  }
  for (std::size_t i = 0; i < kMoleculeColumnCount; ++i) {
    if (header[i] != kMoleculeColumns[i]) {
      throw ConfigError(std::string("molecule CSV: expected column ") + kMoleculeColumns[i]);
    }
  }
  std::vector<MoleculeElectronicSpec> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_fields(line);
    if (cells.size() != kMoleculeColumnCount) {
      throw ConfigError("molecule CSV line " + std::to_string(line_no) + ": wrong column count");
    }
    double v[kMoleculeColumnCount];
    for (std::size_t i = 0; i < kMoleculeColumnCount; ++i) {
      try {
        std::size_t used = 0;
        v[i] = std::stod(cells[i], &used);
        if (used != cells[i].size()) throw std::invalid_argument(cells[i]);
      } catch (const std::exception&) {
        throw ConfigError("molecule CSV line " + std::to_string(line_no) +
                          ": cannot parse '" + cells[i] + "'");
      }
    }
    MoleculeElectronicSpec m;
    m.excitation_energy = v[0];
    m.mu_ground = {v[1], v[2], v[3]};
    m.mu_excited = {v[4], v[5], v[6]};
    m.mu_transition = {v[7], v[8], v[9]};
    m.position = {v[10], v[11], v[12]};
    out.push_back(m);
  }
  if (out.empty()) throw ConfigError("molecule CSV has no records");
  return out;
}

std::vector<MoleculeElectronicSpec> read_molecules_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  return read_molecules_csv(in);
}

void write_molecules_csv(std::ostream& out, const std::vector<MoleculeElectronicSpec>& specs) {
  for (std::size_t i = 0; i < kMoleculeColumnCount; ++i) {
    out << (i ? "," : "") << kMoleculeColumns[i];
  }
  out << '\n';
  out.precision(17);
  for (const auto& m : specs) {
    out << m.excitation_energy;
    for (const auto* v : {&m.mu_ground, &m.mu_excited, &m.mu_transition, &m.position}) {
      out << ',' << (*v)(0) << ',' << (*v)(1) << ',' << (*v)(2);
    }
    out << '\n';
  }
}

}  // namespace qdyn
