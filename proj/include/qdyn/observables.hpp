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

// Site populations, inverse participation ratio and population time series.

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qdyn/simulator.hpp"
#include "qdyn/state.hpp"

namespace qdyn {

/// How site populations are read from a register.
///  - kBinary: site m is basis index m of a log2-encoded register; padding
///    sites are dropped and the remaining vector renormalized.
///  - kFullspace: site m is qubit m, p_m = <(I - Z_m)/2>; not normalized.
struct PopulationEncoding {
  enum class Kind { kBinary, kFullspace };
  Kind kind = Kind::kBinary;
  std::size_t num_sites = 0;

  static PopulationEncoding binary(std::size_t n) { return {Kind::kBinary, n}; }
  static PopulationEncoding fullspace(std::size_t n) { return {Kind::kFullspace, n}; }
  std::size_t num_qubits() const;
};

struct SitePopulations {
  Eigen::VectorXd p;
  /// Binary encoding: probability mass on physical sites before
  /// renormalization. Fullspace: 1.
  double renormalization = 1.0;
};

/// From a full 2^L basis-probability vector (e.g. histogram frequencies).
SitePopulations site_populations(const Eigen::VectorXd& basis_probabilities,
                                 const PopulationEncoding& enc);
SitePopulations site_populations(const StateVector& state, const PopulationEncoding& enc);
SitePopulations site_populations(const DensityMatrix& state, const PopulationEncoding& enc);
SitePopulations site_populations(const Histogram& counts, const PopulationEncoding& enc);

/// 1 / sum p_m^2. Throws ConfigError for vectors that do not sum to 1 within
/// 1e-8 or contain negative entries.
double ipr(const Eigen::VectorXd& p);
/// IPR of p / sum(p); NaN when p carries no mass.
double ipr_renormalized(const Eigen::VectorXd& p);

struct PopulationSeries {
  std::vector<double> times;  // fs
  std::vector<Eigen::VectorXd> populations;
  std::vector<double> ipr;
  /// Mean of per-member IPRs (ensembles only).
  std::optional<std::vector<double>> ipr_member_mean;

  std::size_t size() const { return times.size(); }
  std::size_t num_sites() const {
    return populations.empty() ? 0 : static_cast<std::size_t>(populations.front().size());
  }
  /// Appends a row with IPR computed from the (renormalized) populations.
  void push(double t, const Eigen::VectorXd& p);
  /// Site column m (0-based).
  std::vector<double> site(std::size_t m) const;
  /// Times strictly increasing, consistent row widths.
  void validate() const;
};

/// Piecewise-linear value of `values` over `times` at t (no extrapolation).
double interpolate_linear(const std::vector<double>& times, const std::vector<double>& values,
                          double t);

/// Linear interpolation of every column onto `new_times` (within range).
PopulationSeries resample(const PopulationSeries& s, const std::vector<double>& new_times);

}  // namespace qdyn
