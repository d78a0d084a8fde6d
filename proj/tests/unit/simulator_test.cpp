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

#include "qdyn/errors.hpp"
#include "qdyn/simulator.hpp"
#include "test_util.hpp"

using namespace qdyn;
using qdyn_test::reference_matrix;

namespace {

Eigen::MatrixXcd rotation_matrix(const std::string& p, double angle) {
  // exp(i a P) = cos a + i sin a P
  auto m = reference_matrix(p);
  return std::cos(angle) * Eigen::MatrixXcd::Identity(m.rows(), m.cols()) +
         cplx(0, std::sin(angle)) * m;
}

Circuit mixed_circuit(std::size_t n) {
  Circuit c(n);
  c.add(Hadamard{0});
  c.add(PauliRotation{PauliString::parse(n == 2 ? "XY" : "XYZ"), 0.37});
  c.add(RzGate{1, 0.9});
  c.add(ControlledRotation{0, PauliString::parse(n == 2 ? "IZ" : "IZX"), -0.6});
  c.add(ControlledPauli{1, PauliString::parse(n == 2 ? "YI" : "YIZ")});
  return c;
}

}  // namespace

TEST(Simulator, RotationMatchesClosedForm) {
  std::mt19937_64 rng(3);
  for (const std::string p : {"XI", "YZ", "ZZ", "IY"}) {
    StateVector psi(2, qdyn_test::random_state(4, rng));
    Eigen::VectorXcd ref = rotation_matrix(p, 0.41) * psi.amplitudes();
    apply_gate(psi, PauliRotation{PauliString::parse(p), 0.41});
    EXPECT_LT((psi.amplitudes() - ref).norm(), 1e-14) << p;
  }
}

TEST(Simulator, RzAndHadamard) {
  StateVector psi = StateVector::basis(1, 0);
  apply_gate(psi, Hadamard{0});
  EXPECT_NEAR(std::abs(psi.amplitudes()(1) - 1 / std::sqrt(2.0)), 0.0, 1e-15);
  apply_gate(psi, RzGate{0, 0.8});
  // Relative phase e^{i phi} between |1> and |0>.
  cplx rel = psi.amplitudes()(1) / psi.amplitudes()(0);
  EXPECT_NEAR(std::arg(rel), 0.8, 1e-14);
}

TEST(Simulator, ControlledGatesActOnlyOnOne) {
  // Control qubit 1 = |0>: nothing happens.
  StateVector a = StateVector::basis(2, 0);
  apply_gate(a, ControlledPauli{0, PauliString::parse("IX")});
  EXPECT_NEAR(std::abs(a.amplitudes()(0)), 1.0, 1e-15);
  // Control qubit 1 = |1>: X on qubit 2 takes index 1 to 3.
  StateVector b = StateVector::basis(2, 1);
  apply_gate(b, ControlledPauli{0, PauliString::parse("IX")});
  EXPECT_NEAR(std::abs(b.amplitudes()(3)), 1.0, 1e-15);
  Circuit c(2);
  EXPECT_THROW(c.add(ControlledPauli{0, PauliString::parse("XX")}), ConfigError);
}

TEST(Simulator, DensityMatchesStatevector) {
  std::mt19937_64 rng(5);
  for (std::size_t n : {2u, 3u}) {
    StateVector psi(n, qdyn_test::random_state(std::size_t{1} << n, rng));
    DensityMatrix rho = DensityMatrix::from_pure(psi);
    const Circuit c = mixed_circuit(n);
    run(psi, c);
    run(rho, c);
    Eigen::MatrixXcd ref = psi.amplitudes() * psi.amplitudes().adjoint();
    EXPECT_LT((rho.entries() - ref).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(Simulator, NormAndTracePreserved) {
  std::mt19937_64 rng(8);
  StateVector psi(3, qdyn_test::random_state(8, rng));
  DensityMatrix rho = DensityMatrix::from_pure(psi);
  const Circuit c = mixed_circuit(3);
  for (int rep = 0; rep < 200; ++rep) {
    run(psi, c);
    run(rho, c, NoiseModel::per_gate(0.03));
  }
  EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
  EXPECT_TRUE(rho.is_valid());
}

TEST(Simulator, DepolarizingScalesBlochComponents) {
  std::mt19937_64 rng(9);
  StateVector psi(2, qdyn_test::random_state(4, rng));
  const DensityMatrix rho = DensityMatrix::from_pure(psi);
  for (double lambda : {0.0, 0.01, 0.2, 0.7}) {
    const DensityMatrix out = apply_depolarizing(rho, lambda);
    for (const std::string p : {"XI", "IY", "ZZ", "XY", "YZ"}) {
      const auto s = PauliString::parse(p);
      EXPECT_NEAR(std::abs(pauli_expectation(out, s) - (1 - lambda) * pauli_expectation(rho, s)),
                  0.0, 1e-15)
          << p;
    }
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-15);
  }
  EXPECT_THROW(apply_depolarizing(rho, 1.5), ConfigError);
}

TEST(Simulator, PerGateNoiseTouchesSupportOnly) {
  // X on qubit 1 of |00>, then depolarize qubit 1: qubit 2 stays pure |0>.
  DensityMatrix rho(2);
  apply_gate(rho, PauliGate{PauliString::parse("XI")}, NoiseModel::per_gate(0.2));
  auto p = rho.probabilities();
  EXPECT_NEAR(p(1), 0.9, 1e-15);
  EXPECT_NEAR(p(0), 0.1, 1e-15);
  EXPECT_NEAR(p(2) + p(3), 0.0, 1e-15);
}

TEST(Simulator, GlobalOnceNoise) {
  DensityMatrix rho(2);
  Circuit c(2);
  c.add(PauliGate{PauliString::parse("XI")});
  c.add(PauliGate{PauliString::parse("IX")});
  run(rho, c, NoiseModel::global_once(0.4));
  auto p = rho.probabilities();
  EXPECT_NEAR(p(3), 0.6 + 0.1, 1e-15);
  EXPECT_NEAR(p(0), 0.1, 1e-15);
}

TEST(Simulator, ExpectationOfSum) {
  std::mt19937_64 rng(12);
  StateVector psi(2, qdyn_test::random_state(4, rng));
  auto h = PauliSum::parse("0.3 0 XI\n-1.2 0 ZZ\n0.5 0 YX\n");
  cplx ref = psi.amplitudes().dot(to_matrix(h) * psi.amplitudes());
  EXPECT_NEAR(expectation(psi, h), ref.real(), 1e-14);
  EXPECT_NEAR(expectation(DensityMatrix::from_pure(psi), h), ref.real(), 1e-14);
}

TEST(Sampling, BasisStateIsDeterministic) {
  auto h = sample_bitstrings(StateVector::basis(2, 0), 1000, 1);
  EXPECT_EQ(h.counts[0], 1000u);
  EXPECT_EQ(h.shots(), 1000u);
  EXPECT_EQ(h.bitstring(0), "00");
  EXPECT_EQ(h.bitstring(1), "01");
  EXPECT_EQ(h.to_csv(), "bitstring,count\n00,1000\n");
}

TEST(Sampling, PlusStateWithinFiveSigma) {
  StateVector psi(1);
  apply_gate(psi, Hadamard{0});
  auto h = sample_bitstrings(psi, 8192, 2024);
  EXPECT_EQ(h.shots(), 8192u);
  EXPECT_NEAR(static_cast<double>(h.counts[0]), 4096.0, 5 * std::sqrt(8192 * 0.25));
}

TEST(Sampling, SeedDeterminism) {
  std::mt19937_64 rng(1);
  StateVector psi(2, qdyn_test::random_state(4, rng));
  EXPECT_EQ(sample_bitstrings(psi, 5000, 77).counts, sample_bitstrings(psi, 5000, 77).counts);
  EXPECT_NE(sample_bitstrings(psi, 5000, 77).counts, sample_bitstrings(psi, 5000, 78).counts);
  EXPECT_THROW(sample_bitstrings(psi, 0, 1), ConfigError);
}

TEST(HadamardTest, ReadsRealAndImaginaryOverlap) {
  Circuit prep(2);
  prep.add(PauliRotation{PauliString::parse("XI"), 0.4});
  prep.add(PauliRotation{PauliString::parse("YZ"), 0.7});
  Circuit b0(2);
  b0.add(PauliRotation{PauliString::parse("XY"), 0.3});
  Circuit b1(2);
  b1.add(PauliRotation{PauliString::parse("ZX"), -0.8});
  b1.add(PauliRotation{PauliString::parse("IY"), 0.5});
  StateVector psi(2);
  run(psi, prep);
  StateVector a = psi, b = psi;
  run(a, b0);
  run(b, b1);
  const cplx z = a.inner(b);
  ASSERT_GT(std::abs(z.imag()), 1e-3);
  std::mt19937_64 rng(1);
  for (auto kind : {ExecutionBackend::Kind::kStatevector, ExecutionBackend::Kind::kDensity}) {
    ExecutionBackend be{kind, NoiseModel::off(), 0};
    EXPECT_NEAR(hadamard_test(prep, b0, b1, OverlapPart::kReal, be, rng).value, z.real(), 1e-13);
    EXPECT_NEAR(hadamard_test(prep, b0, b1, OverlapPart::kImag, be, rng).value, z.imag(), 1e-13);
  }
}

TEST(HadamardTest, ShotEstimateAndStandardError) {
  Circuit prep(1), b0(1), b1(1);
  b1.add(PauliRotation{PauliString::parse("X"), 0.5});
  // <0|exp(0.5 i X)|0> = cos 0.5
  std::mt19937_64 rng(4);
  ExecutionBackend be{ExecutionBackend::Kind::kStatevector, NoiseModel::off(), 20000};
  auto est = hadamard_test(prep, b0, b1, OverlapPart::kReal, be, rng);
  EXPECT_GT(est.std_error, 0.0);
  EXPECT_NEAR(est.value, std::cos(0.5), 5 * est.std_error);
}
