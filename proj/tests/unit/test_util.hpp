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

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <string>

namespace qdyn_test {

using cplx = std::complex<double>;

inline Eigen::Matrix2cd pauli2(char c) {
  Eigen::Matrix2cd m;
  const cplx i(0, 1);
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m = Eigen::Matrix2cd::Identity();
  }
  return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

// Letters are qubit 1 first; qubit 1 is the least significant index bit, so
// it is the rightmost kron factor.
inline Eigen::MatrixXcd reference_matrix(const std::string& letters) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : letters) m = kron(pauli2(c), m);
  return m;
}

inline Eigen::VectorXcd random_state(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(dim);
  for (auto& a : v) a = cplx(g(rng), g(rng));
  return v.normalized();
}

inline Eigen::VectorXd random_theta(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::VectorXd v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

// exp(-i H t) through a Hermitian eigendecomposition.
inline Eigen::MatrixXcd expm_herm(const Eigen::MatrixXcd& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd ph(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < ph.size(); ++k) ph(k) = std::exp(cplx(0, -es.eigenvalues()(k) * t));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace qdyn_test
