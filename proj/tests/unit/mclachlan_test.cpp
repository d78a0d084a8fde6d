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

#include "qdyn/ansatz.hpp"
#include "qdyn/errors.hpp"
#include "qdyn/exact.hpp"
#include "qdyn/hamiltonian_source.hpp"
#include "qdyn/mclachlan.hpp"
#include "test_util.hpp"

using namespace qdyn;

namespace {

PauliSum chain_model() { return PauliSum::parse("0.01 0 IZ\n0.04 0 XI\n0.04 0 XX\n"); }

// M and V straight from finite-difference tangents.
MvSystem mv_reference(const Ansatz& a, const Eigen::VectorXd& th, const PauliSum& h) {
  const std::size_t k = a.num_parameters();
  std::vector<Eigen::VectorXcd> d(k);
  for (std::size_t i = 0; i < k; ++i) {
    Eigen::VectorXd tp = th, tm = th;
    tp(i) += 1e-6;
    tm(i) -= 1e-6;
    d[i] = (prepare_state(a, tp).amplitudes() - prepare_state(a, tm).amplitudes()) / 2e-6;
  }
  Eigen::VectorXcd hpsi = to_matrix(h) * prepare_state(a, th).amplitudes();
  MvSystem out;
  out.M.resize(k, k);
  out.V.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) out.M(i, j) = d[i].dot(d[j]).real();
    out.V(i) = d[i].dot(hpsi).imag();
  }
  return out;
}

}  // namespace

TEST(McLachlan, SignOracleSingleRotation) {
  // psi = exp(i theta X)|0>, H = c X: M = 1, V = -c and the exact
  // solution is theta(t) = -c t / hbar.
  const double c = 0.3;
  auto a = make_custom_ansatz(1, {"X"});
  auto h = PauliSum::parse("0.3 0 X\n");
  Eigen::VectorXd th(1);
  th << 0.2;
  auto mv = build_mv_analytic(a, th, h);
  EXPECT_NEAR(mv.M(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(mv.V(0), -c, 1e-14);

  VqaConfig cfg;
  cfg.dt = 0.5;
  cfg.total_time = 10.0;
  cfg.eps = 0.0;
  auto src = HamiltonianSource::constant(h, 1.0);
  auto r = run_vqa(src, a, cfg);
  ASSERT_EQ(r.times.size(), 21u);
  EXPECT_NEAR(r.parameters.back()(0), -c * 10.0, 1e-6);
  auto ex = evolve_exact(src, StateVector::basis(1, 0), {10.0});
  EXPECT_NEAR(std::abs(r.states.back().inner(ex[0])), 1.0, 1e-9);
}

TEST(McLachlan, AnalyticMatchesFiniteDifferences) {
  std::mt19937_64 rng(2);
  auto a = make_default_ansatz(2);
  auto h = chain_model();
  for (int rep = 0; rep < 3; ++rep) {
    Eigen::VectorXd th = qdyn_test::random_theta(a.num_parameters(), rng);
    auto mv = build_mv_analytic(a, th, h);
    auto ref = mv_reference(a, th, h);
    EXPECT_LT((mv.M - ref.M).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT((mv.V - ref.V).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT((mv.M - mv.M.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(McLachlan, CircuitsMatchAnalyticExactly) {
  std::mt19937_64 rng(9);
  auto a = make_default_ansatz(2);
  auto h = chain_model();
  std::mt19937_64 shot_rng(1);
  for (int rep = 0; rep < 3; ++rep) {
    Eigen::VectorXd th = qdyn_test::random_theta(a.num_parameters(), rng);
    auto ref = build_mv_analytic(a, th, h);
    for (auto be : {VqaBackend::sampled(0, 0), VqaBackend::noisy(0.0, 0, 0)}) {
      auto mv = build_mv(a, th, h, be, shot_rng);
      EXPECT_LT((mv.M - ref.M).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_LT((mv.V - ref.V).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(McLachlan, ShotEstimatesWithinFiveSigma) {
  std::mt19937_64 rng(4);
  auto a = make_hamiltonian_ansatz(chain_model(), 2);
  auto h = chain_model();
  Eigen::VectorXd th = qdyn_test::random_theta(a.num_parameters(), rng);
  auto ref = build_mv_analytic(a, th, h);
  std::mt19937_64 shot_rng(77);
  auto mv = build_mv(a, th, h, VqaBackend::sampled(8192, 0), shot_rng);
  int inside = 0, total = 0;
  for (Eigen::Index i = 0; i < ref.M.rows(); ++i)
    for (Eigen::Index j = 0; j < ref.M.cols(); ++j) {
      ++total;
      inside += std::abs(mv.M(i, j) - ref.M(i, j)) <= 5 * mv.M_stderr(i, j) + 1e-12;
    }
  for (Eigen::Index i = 0; i < ref.V.size(); ++i) {
    ++total;
    inside += std::abs(mv.V(i) - ref.V(i)) <= 5 * mv.V_stderr(i) + 1e-12;
  }
  EXPECT_EQ(inside, total);
}

TEST(McLachlan, NoiseShrinksV) {
  std::mt19937_64 rng(6);
  auto a = make_hamiltonian_ansatz(chain_model(), 1);
  auto h = chain_model();
  Eigen::VectorXd th = qdyn_test::random_theta(a.num_parameters(), rng, 0.5);
  const double ref = build_mv_analytic(a, th, h).V.norm();
  double mean = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    std::mt19937_64 shot_rng(s);
    mean += build_mv(a, th, h, VqaBackend::noisy(0.2, 8192, s), shot_rng).V.norm() / 20.0;
  }
  EXPECT_LT(mean, ref);
}

TEST(McLachlan, SolveThetadot) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = 1.0;
  auto sol = solve_thetadot(m, Eigen::Vector2d(1, 0), 1e-6);
  EXPECT_NEAR(sol.x(0), 1.0, 1e-5);
  EXPECT_NEAR(sol.x(1), 0.0, 1e-15);
  EXPECT_NEAR(sol.singular_values(1), 0.0, 1e-15);

  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(5, 5);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = g(rng);
  Eigen::MatrixXd spd = a * a.transpose() + Eigen::MatrixXd::Identity(5, 5);
  Eigen::VectorXd v = qdyn_test::random_theta(5, rng);
  auto s2 = solve_thetadot(spd, v, 0.0);
  EXPECT_LT((spd * s2.x - v).norm(), 1e-8);
}

TEST(McLachlan, AlphaRelabelsTime) {
  auto a = make_custom_ansatz(1, {"X"});
  auto src = HamiltonianSource::constant(PauliSum::parse("0.3 0 X\n"), 1.0);
  VqaConfig cfg;
  cfg.dt = 0.5;
  cfg.total_time = 5.0;
  auto plain = run_vqa(src, a, cfg);
  cfg.alpha = 2.0;
  auto scaled = run_vqa(src, a, cfg);
  // Same parameters, reached at half the recorded time.
  ASSERT_EQ(scaled.times.size(), 2 * plain.times.size() - 1);
  for (std::size_t i = 0; i < plain.times.size(); ++i) {
    EXPECT_NEAR(scaled.times[i], plain.times[i] / 2.0, 1e-12);
    EXPECT_NEAR(scaled.parameters[i](0), plain.parameters[i](0), 1e-12);
  }
}

TEST(McLachlan, SeededRunsAreReproducible) {
  auto h = chain_model();
  auto a = make_hamiltonian_ansatz(h, 1);
  auto src = HamiltonianSource::constant(h);
  VqaConfig cfg;
  cfg.dt = 1.0;
  cfg.total_time = 5.0;
  cfg.backend = VqaBackend::noisy(0.05, 4096, 11);
  cfg.theta0 = Eigen::VectorXd::Constant(3, 0.2);
  auto r1 = run_vqa(src, a, cfg);
  auto r2 = run_vqa(src, a, cfg);
  EXPECT_EQ(r1.parameters.back(), r2.parameters.back());
  cfg.backend.seed = 12;
  EXPECT_NE(run_vqa(src, a, cfg).parameters.back(), r1.parameters.back());
}

TEST(McLachlan, ConfigValidation) {
  auto a = make_custom_ansatz(1, {"X"});
  auto src = HamiltonianSource::constant(PauliSum::parse("0.3 0 X\n"), 1.0);
  VqaConfig cfg;
  cfg.dt = -1.0;
  EXPECT_THROW(run_vqa(src, a, cfg), ConfigError);
  cfg.dt = 0.1;
  cfg.alpha = 0.0;
  EXPECT_THROW(run_vqa(src, a, cfg), ConfigError);
  cfg.alpha = 1.0;
  cfg.eps = -1.0;
  EXPECT_THROW(run_vqa(src, a, cfg), ConfigError);
}
