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

#include "qdyn/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>

#include "qdyn/errors.hpp"

namespace qdyn {

namespace {

constexpr cplx kI{0.0, 1.0};

// Single-qubit product table: a*b = phase * letter.
std::pair<cplx, Pauli> multiply_letters(Pauli a, Pauli b) {
  if (a == Pauli::I) return {1.0, b};
  if (b == Pauli::I) return {1.0, a};
  if (a == b) return {1.0, Pauli::I};
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  // X=1, Y=2, Z=3; cyclic (X,Y), (Y,Z), (Z,X) carry +i.
  const int third = 6 - ia - ib;
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {cyclic ? kI : -kI, static_cast<Pauli>(third)};
}

cplx i_power(unsigned n) {
  switch (n % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw ConfigError("dense matrix requested for " + std::to_string(n) +
                      " qubits exceeds cap of " + std::to_string(cap));
  }
}

}  // namespace

char pauli_char(Pauli p) {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(p)];
}

PauliString::PauliString(std::size_t num_qubits) : letters_(num_qubits, Pauli::I) {
  if (num_qubits > 64) throw ConfigError("PauliString supports at most 64 qubits");
}

PauliString::PauliString(std::vector<Pauli> letters) : letters_(std::move(letters)) {
  if (letters_.size() > 64) throw ConfigError("PauliString supports at most 64 qubits");
  refresh_masks();
}

PauliString PauliString::parse(std::string_view letters) {
  std::vector<Pauli> out;
  out.reserve(letters.size());
  for (char c : letters) {
    switch (c) {
      case 'I': case 'i': case '_': out.push_back(Pauli::I); break;
      case 'X': case 'x': out.push_back(Pauli::X); break;
      case 'Y': case 'y': out.push_back(Pauli::Y); break;
      case 'Z': case 'z': out.push_back(Pauli::Z); break;
      default:
        throw ConfigError(std::string("invalid Pauli letter '") + c + "'");
    }
  }
  return PauliString(std::move(out));
}

PauliString PauliString::single(std::size_t num_qubits, std::size_t qubit, Pauli p) {
  if (qubit >= num_qubits) throw ConfigError("qubit index out of range");
  std::vector<Pauli> letters(num_qubits, Pauli::I);
  letters[qubit] = p;
  return PauliString(std::move(letters));
}

void PauliString::refresh_masks() {
  x_mask_ = 0;
  z_mask_ = 0;
  unsigned ys = 0;
  for (std::size_t q = 0; q < letters_.size(); ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (letters_[q]) {
      case Pauli::I: break;
      case Pauli::X: x_mask_ |= bit; break;
      case Pauli::Y: x_mask_ |= bit; z_mask_ |= bit; ++ys; break;
      case Pauli::Z: z_mask_ |= bit; break;
    }
  }
  y_count_mod4_ = static_cast<std::uint8_t>(ys % 4);
}

std::size_t PauliString::weight() const {
  return static_cast<std::size_t>(std::popcount(x_mask_ | z_mask_));
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < letters_.size(); ++q) {
    if (letters_[q] != Pauli::I) out.push_back(q);
  }
  return out;
}

std::string PauliString::str() const {
  std::string out;
  out.reserve(letters_.size());
  for (Pauli p : letters_) out.push_back(pauli_char(p));
  return out;
}

cplx PauliString::basis_phase(std::uint64_t k) const {
  // Y = i X Z, so each Y contributes a factor i and every Z-type letter a
  // sign (-1)^bit.
  const bool negative = (std::popcount(k & z_mask_) & 1) != 0;
  const cplx phase = i_power(y_count_mod4_);
  return negative ? -phase : phase;
}

std::strong_ordering PauliString::operator<=>(const PauliString& other) const {
  if (auto c = letters_.size() <=> other.letters_.size(); c != 0) return c;
  if (auto c = weight() <=> other.weight(); c != 0) return c;
  for (std::size_t q = 0; q < letters_.size(); ++q) {
    if (auto c = letters_[q] <=> other.letters_[q]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

PauliProduct pauli_multiply(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw ConfigError("pauli_multiply: length mismatch");
  }
  cplx phase = 1.0;
  std::vector<Pauli> letters(a.num_qubits());
  for (std::size_t q = 0; q < a.num_qubits(); ++q) {
    auto [p, letter] = multiply_letters(a[q], b[q]);
    phase *= p;
    letters[q] = letter;
  }
  return {phase, PauliString(std::move(letters))};
}

PauliSum::PauliSum(std::size_t num_qubits) : num_qubits_(num_qubits) {}

PauliSum::PauliSum(std::size_t num_qubits, std::vector<PauliTerm> terms)
    : num_qubits_(num_qubits) {
  std::map<PauliString, cplx> merged;
  for (auto& t : terms) {
    if (t.string.num_qubits() != num_qubits) {
      throw ConfigError("PauliSum: term '" + t.string.str() + "' has wrong qubit count");
    }
    merged[t.string] += t.coeff;
  }
  terms_.reserve(merged.size());
  for (auto& [s, c] : merged) {
    if (std::abs(c) >= kDropTolerance) terms_.push_back({c, s});
  }
}

PauliSum PauliSum::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<PauliTerm> terms;
  std::size_t n = 0;
  bool have_n = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    std::string letters;
    if (!(ls >> re >> im >> letters)) {
      throw ConfigError("PauliSum line " + std::to_string(line_no) +
                        ": expected '<re> <im> <letters>'");
    }
    auto s = PauliString::parse(letters);
    if (!have_n) {
      n = s.num_qubits();
      have_n = true;
    } else if (s.num_qubits() != n) {
      throw ConfigError("PauliSum line " + std::to_string(line_no) + ": qubit count mismatch");
    }
    terms.push_back({cplx(re, im), std::move(s)});
  }
  return PauliSum(n, std::move(terms));
}

std::string PauliSum::to_text() const {
  std::ostringstream out;
  out.precision(17);
  for (const auto& t : terms_) {
    out << t.coeff.real() << ' ' << t.coeff.imag() << ' ' << t.string.str() << '\n';
  }
  return out.str();
}

bool PauliSum::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [tol](const PauliTerm& t) { return std::abs(t.coeff.imag()) <= tol; });
}

cplx PauliSum::identity_coefficient() const {
  for (const auto& t : terms_) {
    if (t.string.is_identity()) return t.coeff;
  }
  return 0.0;
}

PauliSum PauliSum::without_identity() const {
  std::vector<PauliTerm> kept;
  for (const auto& t : terms_) {
    if (!t.string.is_identity()) kept.push_back(t);
  }
  return PauliSum(num_qubits_, std::move(kept));
}

PauliSum PauliSum::operator+(const PauliSum& other) const {
  if (other.num_qubits_ != num_qubits_) throw ConfigError("PauliSum +: qubit count mismatch");
  std::vector<PauliTerm> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return PauliSum(num_qubits_, std::move(all));
}

PauliSum PauliSum::operator*(const PauliSum& other) const {
  if (other.num_qubits_ != num_qubits_) throw ConfigError("PauliSum *: qubit count mismatch");
  std::vector<PauliTerm> out;
  out.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      auto [phase, s] = pauli_multiply(a.string, b.string);
      out.push_back({a.coeff * b.coeff * phase, std::move(s)});
    }
  }
  return PauliSum(num_qubits_, std::move(out));
}

PauliSum PauliSum::scaled(cplx factor) const {
  std::vector<PauliTerm> out = terms_;
  for (auto& t : out) t.coeff *= factor;
  return PauliSum(num_qubits_, std::move(out));
}

Eigen::MatrixXcd to_matrix(const PauliString& s, std::size_t qubit_cap) {
  check_cap(s.num_qubits(), qubit_cap);
  const std::uint64_t dim = std::uint64_t{1} << s.num_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t k = 0; k < dim; ++k) {
    m(k ^ s.x_mask(), k) = s.basis_phase(k);
  }
  return m;
}

Eigen::MatrixXcd to_matrix(const PauliSum& s, std::size_t qubit_cap) {
  check_cap(s.num_qubits(), qubit_cap);
  const std::uint64_t dim = std::uint64_t{1} << s.num_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : s.terms()) {
    for (std::uint64_t k = 0; k < dim; ++k) {
      m(k ^ t.string.x_mask(), k) += t.coeff * t.string.basis_phase(k);
    }
  }
  return m;
}

PauliSum matrix_to_pauli_sum(const Eigen::MatrixXcd& a, std::size_t num_qubits) {
  check_cap(num_qubits, kDefaultMatrixQubitCap);
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  if (a.rows() != a.cols()) throw ConfigError("matrix_to_pauli_sum: matrix is not square");
  if (static_cast<std::uint64_t>(a.rows()) != dim) {
    throw ConfigError("matrix_to_pauli_sum: dimension does not match 2^L");
  }
  std::vector<PauliTerm> terms;
  const std::uint64_t count = std::uint64_t{1} << (2 * num_qubits);
  std::vector<Pauli> letters(num_qubits);
  for (std::uint64_t code = 0; code < count; ++code) {
    for (std::size_t q = 0; q < num_qubits; ++q) {
      letters[q] = static_cast<Pauli>((code >> (2 * q)) & 3);
    }
    PauliString s(letters);
    // Tr[P A] = sum_k <k|P A|k>; P|j> = phase_j |j^x>, so P_{j^x, j} = phase_j.
    cplx trace = 0.0;
    for (std::uint64_t j = 0; j < dim; ++j) {
      trace += s.basis_phase(j) * a(j, j ^ s.x_mask());
    }
    terms.push_back({trace / static_cast<double>(dim), std::move(s)});
  }
  return PauliSum(num_qubits, std::move(terms));
}

}  // namespace qdyn
