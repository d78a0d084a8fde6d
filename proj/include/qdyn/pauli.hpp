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

// Pauli strings and weighted Pauli sums.
//
// Qubit ordering: qubit q (0-based; "qubit q+1" in 1-based physics notation)
// is bit q of a basis-state index, i.e. basis index m = x_1*2^0 + x_2*2^1 + ...
// Letter strings are written qubit 1 first: "ZX" is Z on qubit 1 and X on
// qubit 2.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qdyn/units.hpp"

namespace qdyn {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

/// Dense matrices are refused above this many qubits unless the caller
/// raises the cap explicitly.
inline constexpr std::size_t kDefaultMatrixQubitCap = 12;

/// Tensor product of single-qubit Paulis over a fixed number of qubits.
class PauliString {
 public:
  PauliString() = default;
  /// Identity on `num_qubits` qubits.
  explicit PauliString(std::size_t num_qubits);
  explicit PauliString(std::vector<Pauli> letters);

  /// Parses letters over {I,X,Y,Z} (also accepts '_' for I), qubit 1 first.
  static PauliString parse(std::string_view letters);
  static PauliString single(std::size_t num_qubits, std::size_t qubit, Pauli p);

  std::size_t num_qubits() const { return letters_.size(); }
  Pauli operator[](std::size_t qubit) const { return letters_[qubit]; }
  const std::vector<Pauli>& letters() const { return letters_; }

  bool is_identity() const { return x_mask_ == 0 && z_mask_ == 0; }
  std::size_t weight() const;
  std::vector<std::size_t> support() const;
  std::string str() const;

  /// Bit q set when the letter on qubit q is X or Y.
  std::uint64_t x_mask() const { return x_mask_; }
  /// Bit q set when the letter on qubit q is Y or Z.
  std::uint64_t z_mask() const { return z_mask_; }

  /// P|k> = phase |k ^ x_mask()>.
  cplx basis_phase(std::uint64_t k) const;

  /// Canonical order: by weight, then lexicographically over letters with
  /// qubit 1 most significant and I < X < Y < Z.
  std::strong_ordering operator<=>(const PauliString& other) const;
  bool operator==(const PauliString& other) const { return letters_ == other.letters_; }

 private:
  void refresh_masks();

  std::vector<Pauli> letters_;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;
  std::uint8_t y_count_mod4_ = 0;
};

/// a*b = phase * product, phase in {1, i, -1, -i}.
struct PauliProduct {
  cplx phase;
  PauliString product;
};

PauliProduct pauli_multiply(const PauliString& a, const PauliString& b);

struct PauliTerm {
  cplx coeff;
  PauliString string;
};

/// Canonical weighted sum of Pauli strings: sorted in PauliString order,
/// duplicates merged, terms with |coeff| < kDropTolerance removed.
class PauliSum {
 public:
  static constexpr double kDropTolerance = 1e-14;

  PauliSum() = default;
  explicit PauliSum(std::size_t num_qubits);
  PauliSum(std::size_t num_qubits, std::vector<PauliTerm> terms);

  /// One term per non-empty line: `<coeff_re> <coeff_im> <letters>`.
  /// Lines starting with '#' are comments.
  static PauliSum parse(std::string_view text);
  std::string to_text() const;

  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  bool is_hermitian(double tol = 1e-12) const;
  cplx identity_coefficient() const;
  PauliSum without_identity() const;

  PauliSum operator+(const PauliSum& other) const;
  PauliSum operator*(const PauliSum& other) const;
  PauliSum scaled(cplx factor) const;

 private:
  std::size_t num_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

Eigen::MatrixXcd to_matrix(const PauliString& s, std::size_t qubit_cap = kDefaultMatrixQubitCap);
Eigen::MatrixXcd to_matrix(const PauliSum& s, std::size_t qubit_cap = kDefaultMatrixQubitCap);

/// Decomposition c_P = Tr[P A] / 2^L over all 4^L strings.
PauliSum matrix_to_pauli_sum(const Eigen::MatrixXcd& a, std::size_t num_qubits);

}  // namespace qdyn
