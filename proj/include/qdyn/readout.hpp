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

// Measurement-error calibration: C_noisy = W * C_ideal with W column-stochastic.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qdyn/simulator.hpp"

namespace qdyn {

/// Per-qubit readout flip probabilities.
struct ReadoutFlip {
  double p0_to_1 = 0.0;  // P(read 1 | prepared 0)
  double p1_to_0 = 0.0;  // P(read 0 | prepared 1)
};

class ReadoutCalibration {
 public:
  /// Validates that W is square and column-stochastic with entries in [0, 1].
  explicit ReadoutCalibration(Eigen::MatrixXd w);

  const Eigen::MatrixXd& matrix() const { return w_; }
  std::size_t dim() const { return static_cast<std::size_t>(w_.rows()); }
  /// 2-norm condition number of W.
  double condition_number() const;

 private:
  Eigen::MatrixXd w_;
};

/// W = (x)_q [[1-p01, p10], [p01, 1-p10]] in the little-endian index order.
ReadoutCalibration build_readout_calibration(const std::vector<ReadoutFlip>& flips,
                                             std::size_t num_qubits);

/// Empirical W from preparing every basis state and sampling `shots`
/// readouts under the given flip model.
ReadoutCalibration measure_readout_calibration(const std::vector<ReadoutFlip>& flips,
                                               std::uint64_t shots, std::uint64_t seed);

Eigen::VectorXd apply_readout_error(const Eigen::VectorXd& ideal, const ReadoutCalibration& cal);

struct CorrectedReadout {
  /// Solution of W x = c before clipping.
  Eigen::VectorXd raw;
  /// Negative entries clipped to 0 and renormalized.
  Eigen::VectorXd probabilities;
  double condition_number = 0.0;
};

/// Throws NumericalError when W is singular.
CorrectedReadout correct_readout(const Eigen::VectorXd& noisy, const ReadoutCalibration& cal);
CorrectedReadout correct_readout(const Histogram& counts, const ReadoutCalibration& cal);

}  // namespace qdyn
