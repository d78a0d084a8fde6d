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

#include "qdyn/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qdyn/errors.hpp"
#include "qdyn/frenkel.hpp"

namespace qdyn {

std::size_t PopulationEncoding::num_qubits() const {
  return kind == Kind::kBinary ? encoded_qubit_count(num_sites) : num_sites;
}

SitePopulations site_populations(const Eigen::VectorXd& probs, const PopulationEncoding& enc) {
  if (enc.num_sites == 0) throw ConfigError("encoding has no sites");
  const std::size_t l = enc.num_qubits();
  if (static_cast<std::size_t>(probs.size()) != (std::size_t{1} << l)) {
    throw ConfigError("state dimension does not match the population encoding");
  }
  SitePopulations out;
  const auto n = static_cast<Eigen::Index>(enc.num_sites);
  if (enc.kind == PopulationEncoding::Kind::kBinary) {
    out.p = probs.head(n);
    out.renormalization = out.p.sum();
    if (!(out.renormalization > 0.0)) throw NumericalError("no population on physical sites");
    out.p /= out.renormalization;
    return out;
  }
  out.p = Eigen::VectorXd::Zero(n);
  for (Eigen::Index idx = 0; idx < probs.size(); ++idx) {
    for (Eigen::Index m = 0; m < n; ++m) {
      if ((idx >> m) & 1) out.p(m) += probs(idx);
    }
  }
  return out;
}

SitePopulations site_populations(const StateVector& state, const PopulationEncoding& enc) {
  return site_populations(state.probabilities(), enc);
}

SitePopulations site_populations(const DensityMatrix& state, const PopulationEncoding& enc) {
  return site_populations(state.probabilities(), enc);
}

SitePopulations site_populations(const Histogram& counts, const PopulationEncoding& enc) {
  return site_populations(counts.frequencies(), enc);
}

double ipr(const Eigen::VectorXd& p) {
  if (p.size() == 0 || p.minCoeff() < -1e-12) throw ConfigError("populations must be non-negative");
  if (std::abs(p.sum() - 1.0) > 1e-8) throw ConfigError("populations must sum to 1 for the IPR");
  return 1.0 / p.squaredNorm();
}

double ipr_renormalized(const Eigen::VectorXd& p) {
  const double total = p.sum();
  if (!(total > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return ipr(p / total);
}

void PopulationSeries::push(double t, const Eigen::VectorXd& p) {
  times.push_back(t);
  populations.push_back(p);
  ipr.push_back(ipr_renormalized(p.cwiseMax(0.0)));
}

std::vector<double> PopulationSeries::site(std::size_t m) const {
  std::vector<double> out;
  out.reserve(populations.size());
  for (const auto& p : populations) out.push_back(p(static_cast<Eigen::Index>(m)));
  return out;
}

void PopulationSeries::validate() const {
  if (populations.size() != times.size() || ipr.size() != times.size()) {
    throw ConfigError("population series columns have different lengths");
  }
  if (ipr_member_mean && ipr_member_mean->size() != times.size()) {
    throw ConfigError("population series columns have different lengths");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw ConfigError("population series times must be strictly increasing");
    }
    if (populations[i].size() != populations.front().size()) {
      throw ConfigError("population series rows have different widths");
    }
  }
}

double interpolate_linear(const std::vector<double>& times, const std::vector<double>& values,
                          double t) {
  if (times.empty() || times.size() != values.size()) throw ConfigError("empty series");
  const double eps = 1e-9 * std::max(1.0, std::abs(times.back()));
  if (t < times.front() - eps || t > times.back() + eps) {
    throw ConfigError("interpolation at t = " + std::to_string(t) + " outside the series");
  }
  auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return values.front();
  if (it == times.end()) return values.back();
  const auto hi = static_cast<std::size_t>(it - times.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - times[lo]) / (times[hi] - times[lo]);
  return (1.0 - w) * values[lo] + w * values[hi];
}

PopulationSeries resample(const PopulationSeries& s, const std::vector<double>& new_times) {
  s.validate();
  if (s.times.empty()) throw ConfigError("cannot resample an empty series");
  const std::size_t n = s.num_sites();
  std::vector<std::vector<double>> cols(n);
  for (std::size_t m = 0; m < n; ++m) cols[m] = s.site(m);
  PopulationSeries out;
  for (double t : new_times) {
    Eigen::VectorXd p(n);
    for (std::size_t m = 0; m < n; ++m) p(m) = interpolate_linear(s.times, cols[m], t);
    out.push(t, p);
  }
  if (s.ipr_member_mean) {
    std::vector<double> col;
    for (double t : new_times) col.push_back(interpolate_linear(s.times, *s.ipr_member_mean, t));
    out.ipr_member_mean = std::move(col);
  }
  return out;
}

}  // namespace qdyn
