// Copyright 2026 The noisebound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOISEBOUND_QCORE_HPP_
#define NOISEBOUND_QCORE_HPP_

// Dense complex linear algebra for small closed quantum systems.
//
// Basis convention: |0> = [1, 0]^T, |1> = [0, 1]^T. Multi-qubit spaces are
// built with Kronecker products where the leftmost factor is the most
// significant qubit, so tensor(X, I) flips the first qubit and the index of
// |q0 q1 ... q(n-1)> is q0 * 2^(n-1) + ... + q(n-1).

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace noisebound {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

// Validation thresholds for Hermiticity, normalization and unitarity.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kNormTol = 1e-10;

// Normalized pure state, dim >= 2. Raw (un-normalized) vectors produced by
// the Euler-Maruyama stepper or by ensemble averaging are plain CVector.
class StateVector {
 public:
  // Throws DomainError unless |amplitudes| = 1 within kNormTol and dim >= 2.
  explicit StateVector(CVector amplitudes);

  // Divides by the norm first; throws on a zero vector.
  static StateVector normalized(CVector amplitudes);

  // Product state from a label, one character per qubit from {0, 1, +, -}.
  // "+0" is |+> (x) |0>.
  static StateVector from_label(std::string_view label);

  const CVector& amplitudes() const { return amplitudes_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  Complex operator[](Eigen::Index i) const { return amplitudes_[i]; }

 private:
  CVector amplitudes_;
};

class HermitianOperator {
 public:
  // Throws DomainError if the matrix is not square or max|M - M^dagger| > kHermitianTol.
  explicit HermitianOperator(CMatrix entries);

  static HermitianOperator identity(Eigen::Index dim);
  static HermitianOperator zero(Eigen::Index dim);

  const CMatrix& matrix() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }

  CVector apply(const CVector& v) const;

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  friend HermitianOperator operator*(double scale, const HermitianOperator& op);

 private:
  CMatrix entries_;
};

// Pure-state density matrix |s><s| (or any unit-trace PSD matrix).
class DensityMatrix {
 public:
  // Throws DomainError unless Hermitian, unit trace and eigenvalues >= -1e-10.
  explicit DensityMatrix(CMatrix entries);
  static DensityMatrix pure(const StateVector& s);

  const CMatrix& matrix() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }

 private:
  CMatrix entries_;
};

enum class Pauli { I, X, Y, Z };

HermitianOperator pauli(Pauli which);

// Kronecker product; `a` acts on the leading (most significant) factor.
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
StateVector tensor(const StateVector& a, const StateVector& b);

// Parses a Pauli tensor string such as "X", "X@I" or "Z@Y@X".
HermitianOperator pauli_string(std::string_view text);

// <a|b>, conjugating the first argument.
Complex inner(const CVector& a, const CVector& b);
Complex inner(const StateVector& a, const StateVector& b);

// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

// arccos |<a|b>| with the magnitude clamped to [0, 1].
double bures_angle(const StateVector& a, const StateVector& b);

// Tr[a b] for density matrices; equals fidelity for pure states.
double trace_overlap(const DensityMatrix& a, const DensityMatrix& b);

// <s|op^2|s> - <s|op|s>^2, floored at zero.
double variance(const HermitianOperator& op, const StateVector& s);

double expectation(const HermitianOperator& op, const StateVector& s);

// exp(scale * h) through the eigendecomposition of h. Unitary whenever
// `scale` is purely imaginary.
CMatrix expm_hermitian(const HermitianOperator& h, Complex scale);

struct ExpWorkspace {
  CVector term;
  CVector next;
};

// Computes exp(-i g) v for Hermitian g in place, without forming the matrix
// exponential: closed form for d = 2, otherwise a Taylor series on the vector
// with substeps of 1-norm <= 1/2, summed until terms drop below double
// precision.
void apply_unitary_exp(const CMatrix& g, CVector& v, ExpWorkspace& ws);

double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace noisebound

#endif  // NOISEBOUND_QCORE_HPP_
