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

// Time-dilation mitigation of noisy variational dynamics: a factor alpha is
// fitted so that p_vqa(alpha t) matches a short-time Trotter reference on
// [0, t_cutoff], then the VQA time axis is rescaled by 1/alpha.

#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "qdyn/observables.hpp"
#include "qdyn/state.hpp"

namespace qdyn {

struct AlphaRange {
  double lo = 0.5;
  double hi = 3.0;
  double tolerance = 1e-3;
  void validate() const;
};

struct MitigationResult {
  double alpha = 1.0;
  double t_cutoff = 0.0;
  double objective = 0.0;
  double window_start = 0.0;  // corrected time (fs)
  double window_end = 0.0;
};

/// J(alpha) = int_0^{t_c} (p_vqa(t0 + alpha s) - p_ref(r0 + s))^2 ds for site
/// `site`, where t0 and r0 are the first times of each series. Both series
/// are piecewise linear, so the integral is evaluated exactly.
double alpha_objective(const PopulationSeries& vqa, const PopulationSeries& ref, double t_cutoff,
                       double alpha, std::size_t site = 0);

/// Coarse scan followed by golden-section refinement of J over the range.
/// Throws ConfigError when either series is too short (no extrapolation).
MitigationResult extract_alpha(const PopulationSeries& vqa, const PopulationSeries& ref,
                               double t_cutoff, const AlphaRange& range = {},
                               std::size_t site = 0);

/// Corrected series p_c(t) = p_raw(alpha t): every time t_i becomes t_i / alpha.
PopulationSeries apply_alpha(const PopulationSeries& raw, double alpha);

struct WindowStart {
  std::size_t index = 0;
  double raw_time = 0.0;        // VQA time where the window begins
  double corrected_time = 0.0;  // the same instant on the corrected axis
  const StateVector* state = nullptr;  // VQA state at raw_time, when available
};

/// Produces the reference series for a window: times starting at 0 (or any
/// origin) and covering at least `duration`.
using TrotterRunner = std::function<PopulationSeries(const WindowStart&, double duration)>;

struct WindowedMitigation {
  std::vector<MitigationResult> windows;
  PopulationSeries corrected;
};

/// Splits the corrected time axis into windows of `window_length`; each
/// window gets its own alpha fitted against a fresh reference started from
/// the VQA state at the window's beginning. `states`, when non-null, must be
/// aligned with `vqa.times`.
WindowedMitigation windowed_alpha(const PopulationSeries& vqa,
                                  const std::vector<StateVector>* states,
                                  const TrotterRunner& runner, double window_length,
                                  double t_cutoff, const AlphaRange& range = {},
                                  std::size_t site = 0);

/// delta_thetadot = M0^{-1} dV - M0^{-1} dM M0^{-1} V0. Throws NumericalError
/// for singular M0.
Eigen::VectorXd perturbation_diagnostics(const Eigen::MatrixXd& M0, const Eigen::VectorXd& V0,
                                         const Eigen::MatrixXd& dM, const Eigen::VectorXd& dV);

/// CSV `window_start_fs,alpha,objective`.
void write_mitigation_csv(std::ostream& out, const std::vector<MitigationResult>& results);

}  // namespace qdyn
