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

#include "qdyn/readout.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "qdyn/errors.hpp"

namespace qdyn {

ReadoutCalibration::ReadoutCalibration(Eigen::MatrixXd w) : w_(std::move(w)) {
  if (w_.rows() != w_.cols() || w_.rows() == 0) {
    throw ConfigError("calibration matrix must be square and non-empty");
  }
  if (w_.minCoeff() < 0.0 || w_.maxCoeff() > 1.0) {
    throw ConfigError("calibration entries must lie in [0, 1]");
  }
  for (Eigen::Index c = 0; c < w_.cols(); ++c) {
    if (std::abs(w_.col(c).sum() - 1.0) > 1e-10) {
      throw ConfigError("calibration column " + std::to_string(c) + " does not sum to 1");
    }
  }
}

double ReadoutCalibration::condition_number() const {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(w_);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

ReadoutCalibration build_readout_calibration(const std::vector<ReadoutFlip>& flips,
                                             std::size_t num_qubits) {
  if (flips.size() != num_qubits) throw ConfigError("one readout flip model per qubit required");
  Eigen::MatrixXd w = Eigen::MatrixXd::Ones(1, 1);
  // Qubit 1 is the least-significant bit, so it is the innermost factor.
  for (std::size_t q = 0; q < num_qubits; ++q) {
    const auto& f = flips[q];
    if (f.p0_to_1 < 0 || f.p0_to_1 > 1 || f.p1_to_0 < 0 || f.p1_to_0 > 1) {
      throw ConfigError("flip probabilities must lie in [0, 1]");
    }
    Eigen::Matrix2d single;
    single << 1.0 - f.p0_to_1, f.p1_to_0, f.p0_to_1, 1.0 - f.p1_to_0;
    Eigen::MatrixXd next(w.rows() * 2, w.cols() * 2);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        next.block(a * w.rows(), b * w.cols(), w.rows(), w.cols()) = single(a, b) * w;
      }
    }
    w = std::move(next);
  }
  return ReadoutCalibration(std::move(w));
}

ReadoutCalibration measure_readout_calibration(const std::vector<ReadoutFlip>& flips,
                                               std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw ConfigError("calibration needs at least one shot");
  const std::size_t n = flips.size();
  const auto exact = build_readout_calibration(flips, n);
  const auto dim = static_cast<Eigen::Index>(exact.dim());
  Eigen::MatrixXd w(dim, dim);
  std::mt19937_64 rng(seed);
  for (Eigen::Index prepared = 0; prepared < dim; ++prepared) {
    const auto h = sample_probabilities(exact.matrix().col(prepared), n, shots, rng);
    w.col(prepared) = h.frequencies();
  }
  return ReadoutCalibration(std::move(w));
}

Eigen::VectorXd apply_readout_error(const Eigen::VectorXd& ideal, const ReadoutCalibration& cal) {
  if (static_cast<std::size_t>(ideal.size()) != cal.dim()) {
    throw ConfigError("probability vector does not match calibration size");
  }
  return cal.matrix() * ideal;
}

CorrectedReadout correct_readout(const Eigen::VectorXd& noisy, const ReadoutCalibration& cal) {
  if (static_cast<std::size_t>(noisy.size()) != cal.dim()) {
    throw ConfigError("probability vector does not match calibration size");
  }
  CorrectedReadout out;
  out.condition_number = cal.condition_number();
  if (!std::isfinite(out.condition_number) || out.condition_number > 1e12) {
    throw NumericalError("readout calibration matrix is singular");
  }
  out.raw = cal.matrix().partialPivLu().solve(noisy);
  out.probabilities = out.raw.cwiseMax(0.0);
  const double total = out.probabilities.sum();
  if (total <= 0.0) throw NumericalError("corrected readout has no positive mass");
  out.probabilities /= total;
  return out;
}

CorrectedReadout correct_readout(const Histogram& counts, const ReadoutCalibration& cal) {
  return correct_readout(counts.frequencies(), cal);
}

}  // namespace qdyn
