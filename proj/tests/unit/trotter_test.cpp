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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qdyn/errors.hpp"
#include "qdyn/exact.hpp"
#include "qdyn/hamiltonian_source.hpp"
#include "qdyn/trotter.hpp"
#include "test_util.hpp"

using namespace qdyn;

namespace {

PauliSum chain_model() { return PauliSum::parse("0.01 0 IZ\n0.04 0 XI\n0.04 0 XX\n"); }

double terminal_error(double dt) {
  auto src = HamiltonianSource::constant(chain_model());
  TrotterConfig cfg;
  cfg.total_time = 50.0;
  cfg.dt = dt;
  auto tr = trotter_states(src, StateVector::basis(2, 0), cfg);
  auto ex = evolve_exact(src, StateVector::basis(2, 0), {50.0});
  return (tr.back().amplitudes() - ex[0].amplitudes()).norm();
}

}  // namespace

TEST(Trotter, StepCircuitAngles) {
  auto c = trotter_step_circuit(PauliSum::parse("3 0 II\n0.5 0 XI\n-0.2 0 ZZ\n"), 0.1, 2.0);
  ASSERT_EQ(c.size(), 2u);
  auto g0 = std::get<PauliRotation>(c.gates()[0]);
  EXPECT_EQ(g0.generator.str(), "XI");
  EXPECT_NEAR(g0.angle, -0.5 * 0.1 / 2.0, 1e-15);
  auto g1 = std::get<PauliRotation>(c.gates()[1]);
  EXPECT_NEAR(g1.angle, 0.2 * 0.1 / 2.0, 1e-15);
  EXPECT_THROW(trotter_step_circuit(PauliSum::parse("0 1 XI\n"), 0.1), ConfigError);
}

TEST(Trotter, CommutingHamiltonianIsExact) {
  auto h = PauliSum::parse("0.03 0 ZI\n-0.02 0 IZ\n0.05 0 ZZ\n");
  auto src = HamiltonianSource::constant(h);
  std::mt19937_64 rng(1);
  StateVector psi(2, qdyn_test::random_state(4, rng));
  TrotterConfig cfg;
  cfg.total_time = 37.0;
  cfg.dt = 5.0;
  auto tr = trotter_states(src, psi, cfg);
  auto ex = propagate(h, psi, 37.0, kHbarEvFs);
  EXPECT_LT((tr.back().amplitudes() - ex.amplitudes()).norm(), 1e-10);
}

TEST(Trotter, FirstOrderConvergence) {
  const double e1 = terminal_error(0.5);
  const double e2 = terminal_error(0.25);
  const double ratio = e1 / e2;
  EXPECT_GT(ratio, 1.6);
  EXPECT_LT(ratio, 2.4);
}

TEST(Trotter, LogLogSlopeIsOne) {
  const std::vector<double> dts{0.5, 0.25, 0.125, 0.0625};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double dt : dts) {
    const double x = std::log(dt), y = std::log(terminal_error(dt));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(dts.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  EXPECT_NEAR(slope, 1.0, 0.2);
}

TEST(Trotter, GridAndShortenedFinalStep) {
  auto src = HamiltonianSource::constant(chain_model());
  TrotterConfig cfg;
  cfg.total_time = 2.5;
  cfg.dt = 1.0;
  auto s = run_trotter(src, StateVector::basis(2, 0), cfg, PopulationEncoding::binary(4));
  ASSERT_EQ(s.times.size(), 4u);
  EXPECT_DOUBLE_EQ(s.times.back(), 2.5);
  EXPECT_DOUBLE_EQ(s.populations.front()(0), 1.0);
}

TEST(Trotter, NoiselessDensityMatchesStatevector) {
  auto src = HamiltonianSource::constant(chain_model());
  TrotterConfig cfg;
  cfg.total_time = 20.0;
  cfg.dt = 1.0;
  auto clean = run_trotter(src, StateVector::basis(2, 0), cfg, PopulationEncoding::binary(4));
  cfg.noisy = true;
  cfg.lambda = 0.0;
  auto dm = run_trotter(src, StateVector::basis(2, 0), cfg, PopulationEncoding::binary(4));
  for (std::size_t i = 0; i < clean.size(); ++i)
    EXPECT_LT((clean.populations[i] - dm.populations[i]).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Trotter, NoiseDampsTowardUniform) {
  auto src = HamiltonianSource::constant(chain_model());
  TrotterConfig cfg;
  cfg.total_time = 200.0;
  cfg.dt = 0.5;
  cfg.noisy = true;
  cfg.lambda = 0.05;
  auto s = run_trotter(src, StateVector::basis(2, 0), cfg, PopulationEncoding::binary(4));
  EXPECT_LT((s.populations.back().array() - 0.25).abs().maxCoeff(), 1e-3);
}

TEST(Trotter, ShotsAreSeeded) {
  auto src = HamiltonianSource::constant(chain_model());
  TrotterConfig cfg;
  cfg.total_time = 10.0;
  cfg.dt = 1.0;
  cfg.shots = 2000;
  cfg.seed = 5;
  auto a = run_trotter(src, StateVector::basis(2, 0), cfg, PopulationEncoding::binary(4));
  auto b = run_trotter(src, StateVector::basis(2, 0), cfg, PopulationEncoding::binary(4));
  EXPECT_EQ(a.populations.back(), b.populations.back());
  cfg.dt = 0.0;
  EXPECT_THROW(run_trotter(src, StateVector::basis(2, 0), cfg, PopulationEncoding::binary(4)),
               ConfigError);
}
