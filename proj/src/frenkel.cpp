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

#include "qdyn/frenkel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "qdyn/errors.hpp"

namespace qdyn {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
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

double parse_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line_no) + ": cannot parse number '" + s + "'");
  }
}

}  // namespace

FrenkelSnapshot::FrenkelSnapshot(std::vector<double> e, Eigen::MatrixXd v)
    : energies(std::move(e)), couplings(std::move(v)) {
  validate();
}

void FrenkelSnapshot::validate() const {
  const auto n = static_cast<Eigen::Index>(energies.size());
  if (n == 0) throw ConfigError("Frenkel snapshot has no sites");
  if (couplings.rows() != n || couplings.cols() != n) {
    throw ConfigError("coupling matrix must be N x N");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (couplings(i, i) != 0.0) throw ConfigError("coupling matrix diagonal must be zero");
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(couplings(i, j) - couplings(j, i)) > 1e-12) {
        throw ConfigError("coupling matrix must be symmetric");
      }
    }
  }
}

Eigen::MatrixXd FrenkelSnapshot::matrix() const {
  Eigen::MatrixXd h = couplings;
  for (std::size_t m = 0; m < energies.size(); ++m) h(m, m) = energies[m];
  return h;
}

std::size_t encoded_qubit_count(std::size_t num_sites) {
  if (num_sites == 0) throw ConfigError("cannot encode zero sites");
  std::size_t l = 1;
  while ((std::size_t{1} << l) < num_sites) ++l;
  return l;
}

EncodedHamiltonian encode_frenkel_binary(const FrenkelSnapshot& snap) {
  snap.validate();
  const std::size_t n = snap.num_sites();
  const std::size_t l = encoded_qubit_count(n);
  if (l > kDefaultMatrixQubitCap) throw ConfigError("too many sites for binary encoding");
  const std::size_t padded = std::size_t{1} << l;

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(padded, padded);
  h.topLeftCorner(n, n) = snap.matrix();
  for (std::size_t m = n; m < padded; ++m) h(m, m) = kPaddingSiteEnergy;

  // Coefficients indexed by Pauli code sum_q letter_q << 2q.
  std::vector<cplx> coeff(std::size_t{1} << (2 * l), 0.0);
  const cplx half_i{0.0, 0.5};
  for (std::size_t m = 0; m < padded; ++m) {
    for (std::size_t k = 0; k < padded; ++k) {
      const double value = h(m, k);
      if (value == 0.0) continue;
      // |m><k| = prod_q |x_q><x'_q|, each factor a sum of two Paulis.
      for (std::size_t choice = 0; choice < padded; ++choice) {
        cplx c = value;
        std::size_t code = 0;
        for (std::size_t q = 0; q < l; ++q) {
          const bool x = (m >> q) & 1;
          const bool xp = (k >> q) & 1;
          const bool second = (choice >> q) & 1;
          Pauli letter;
          cplx w;
          if (x == xp) {
            // |0><0| = (I + Z)/2, |1><1| = (I - Z)/2
            letter = second ? Pauli::Z : Pauli::I;
            w = second ? (x ? -0.5 : 0.5) : 0.5;
          } else {
            // |0><1| = (X + iY)/2, |1><0| = (X - iY)/2
            letter = second ? Pauli::Y : Pauli::X;
            w = second ? (x ? -half_i : half_i) : cplx(0.5);
          }
          c *= w;
          code |= static_cast<std::size_t>(letter) << (2 * q);
        }
        coeff[code] += c;
      }
    }
  }

  EncodedHamiltonian out;
  out.physical_sites = n;
  out.padded_sites = padded;
  out.offset = coeff[0].real();
  std::vector<PauliTerm> terms;
  std::vector<Pauli> letters(l);
  for (std::size_t code = 1; code < coeff.size(); ++code) {
    // Real symmetric input: imaginary parts cancel pairwise.
    const double re = coeff[code].real();
    if (std::abs(re) < PauliSum::kDropTolerance) continue;
    for (std::size_t q = 0; q < l; ++q) letters[q] = static_cast<Pauli>((code >> (2 * q)) & 3);
    terms.push_back({re, PauliString(letters)});
  }
  out.hamiltonian = PauliSum(l, std::move(terms));
  return out;
}

void HamiltonianTrajectory::validate() const {
  if (times.empty() || times.size() != snapshots.size()) {
    throw ConfigError("trajectory needs one snapshot per time point");
  }
  const std::size_t n = snapshots.front().num_sites();
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw ConfigError("trajectory times must be strictly increasing");
    }
    if (snapshots[i].num_sites() != n) throw ConfigError("trajectory snapshots differ in N");
  }
}

FrenkelSnapshot interpolate(const HamiltonianTrajectory& traj, double t) {
  if (traj.times.empty()) throw ConfigError("empty trajectory");
  const double eps = 1e-9 * std::max(1.0, std::abs(traj.end_time()));
  if (t < traj.start_time() - eps || t > traj.end_time() + eps) {
    throw ConfigError("time " + std::to_string(t) + " fs outside trajectory range");
  }
  t = std::clamp(t, traj.start_time(), traj.end_time());
  auto it = std::upper_bound(traj.times.begin(), traj.times.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - traj.times.begin());
  const std::size_t lo = hi == 0 ? 0 : hi - 1;
  if (hi >= traj.times.size() || traj.times[lo] == t ||
      traj.interpolation == Interpolation::kPiecewiseConstant) {
    return traj.snapshots[lo];
  }
  const double w = (t - traj.times[lo]) / (traj.times[hi] - traj.times[lo]);
  const auto& a = traj.snapshots[lo];
  const auto& b = traj.snapshots[hi];
  FrenkelSnapshot out;
  out.energies.resize(a.num_sites());
  for (std::size_t m = 0; m < a.num_sites(); ++m) {
    out.energies[m] = (1.0 - w) * a.energies[m] + w * b.energies[m];
  }
  out.couplings = (1.0 - w) * a.couplings + w * b.couplings;
  return out;
}

HamiltonianTrajectory synthesize_trajectory(const SynthesisParams& p) {
  p.means.validate();
  const std::size_t n = p.means.num_sites();
  if (!(p.dt > 0.0) || !(p.correlation_time > 0.0) || !(p.duration > 0.0)) {
    throw ConfigError("dt, correlation_time and duration must be positive");
  }
  if (p.energy_stddev.size() != n) throw ConfigError("energy_stddev must have N entries");
  if (p.coupling_stddev.rows() != static_cast<Eigen::Index>(n) ||
      p.coupling_stddev.cols() != static_cast<Eigen::Index>(n)) {
    throw ConfigError("coupling_stddev must be N x N");
  }
  for (double s : p.energy_stddev) {
    if (s < 0.0) throw ConfigError("standard deviations must be non-negative");
  }
  if (p.coupling_stddev.minCoeff() < 0.0) {
    throw ConfigError("standard deviations must be non-negative");
  }

  std::mt19937_64 rng(p.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double decay = std::exp(-p.dt / p.correlation_time);
  const double kick = std::sqrt(1.0 - decay * decay);

  const auto steps = static_cast<std::size_t>(std::floor(p.duration / p.dt + 1e-9));
  HamiltonianTrajectory traj;
  traj.times.reserve(steps + 1);
  traj.snapshots.reserve(steps + 1);

  // Stationary start, then the exact OU update
  // x' = mu + (x - mu) e^{-dt/tau} + sigma sqrt(1 - e^{-2 dt/tau}) xi.
  FrenkelSnapshot cur = p.means;
  for (std::size_t m = 0; m < n; ++m) cur.energies[m] += p.energy_stddev[m] * normal(rng);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = p.means.couplings(i, j) + p.coupling_stddev(i, j) * normal(rng);
      cur.couplings(i, j) = v;
      cur.couplings(j, i) = v;
    }
  }
  for (std::size_t k = 0; k <= steps; ++k) {
    if (k > 0) {
      for (std::size_t m = 0; m < n; ++m) {
        const double mu = p.means.energies[m];
        cur.energies[m] = mu + (cur.energies[m] - mu) * decay +
                          p.energy_stddev[m] * kick * normal(rng);
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const double mu = p.means.couplings(i, j);
          const double v = mu + (cur.couplings(i, j) - mu) * decay +
                           p.coupling_stddev(i, j) * kick * normal(rng);
          cur.couplings(i, j) = v;
          cur.couplings(j, i) = v;
        }
      }
    }
    traj.times.push_back(static_cast<double>(k) * p.dt);
    traj.snapshots.push_back(cur);
  }
  return traj;
}

void write_trajectory_csv(std::ostream& out, const HamiltonianTrajectory& traj) {
  traj.validate();
  const std::size_t n = traj.num_sites();
  out << "t_fs";
  for (std::size_t m = 0; m < n; ++m) out << ",E_" << m + 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out << ",V_" << i + 1 << '_' << j + 1;
  }
  out << '\n';
  out.precision(17);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto& s = traj.snapshots[k];
    out << traj.times[k];
    for (double e : s.energies) out << ',' << e;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) out << ',' << s.couplings(i, j);
    }
    out << '\n';
  }
}

HamiltonianTrajectory read_trajectory_csv(std::istream& in, Interpolation interpolation) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("trajectory CSV is empty");
  const auto header = split_csv_line(line);
  if (header.empty() || header[0] != "t_fs") throw ConfigError("trajectory CSV must start with t_fs");
  std::size_t n = 0;
  while (1 + n < header.size() && header[1 + n] == "E_" + std::to_string(n + 1)) ++n;
  if (n == 0) throw ConfigError("trajectory CSV has no E_m columns");
  std::size_t col = 1 + n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++col) {
      const std::string want = "V_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
      if (col >= header.size() || header[col] != want) {
        throw ConfigError("trajectory CSV: expected column " + want);
      }
    }
  }
  if (col != header.size()) throw ConfigError("trajectory CSV has unexpected extra columns");

  HamiltonianTrajectory traj;
  traj.interpolation = interpolation;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw ConfigError("trajectory CSV line " + std::to_string(line_no) + ": wrong column count");
    }
    FrenkelSnapshot s;
    s.energies.resize(n);
    s.couplings = Eigen::MatrixXd::Zero(n, n);
    traj.times.push_back(parse_double(cells[0], line_no));
    for (std::size_t m = 0; m < n; ++m) s.energies[m] = parse_double(cells[1 + m], line_no);
    std::size_t c = 1 + n;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j, ++c) {
        const double v = parse_double(cells[c], line_no);
        s.couplings(i, j) = v;
        s.couplings(j, i) = v;
      }
    }
    traj.snapshots.push_back(std::move(s));
  }
  traj.validate();
  return traj;
}

void write_trajectory_csv(const std::string& path, const HamiltonianTrajectory& traj) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  write_trajectory_csv(out, traj);
}

HamiltonianTrajectory read_trajectory_csv(const std::string& path, Interpolation interpolation) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  return read_trajectory_csv(in, interpolation);
}

}  // namespace qdyn
