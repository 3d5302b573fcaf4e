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


#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "noisebound/error.hpp"
#include "noisebound/qcore.hpp"

namespace noisebound {
namespace {

constexpr double kPi = std::numbers::pi;

CVector random_vector(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> n;
  CVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = Complex(n(rng), n(rng));
  return v;
}

HermitianOperator random_hermitian(std::mt19937_64& rng, Eigen::Index dim, double scale) {
  CMatrix m(dim, dim);
  std::normal_distribution<double> n;
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = Complex(n(rng), n(rng));
  CMatrix h = 0.5 * scale * (m + m.adjoint());
  return HermitianOperator(h);
}

TEST(StateVector, RejectsUnnormalizedAndTooSmall) {
  CVector v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(StateVector{v}, DomainError);
  CVector one(1);
  one << 1.0;
  EXPECT_THROW(StateVector{one}, DomainError);
  EXPECT_THROW(StateVector::normalized(CVector::Zero(2)), DomainError);
  EXPECT_NEAR(StateVector::normalized(v).amplitudes().norm(), 1.0, 1e-15);
}

TEST(StateVector, Labels) {
  auto plus = StateVector::from_label("+");
  EXPECT_NEAR(plus[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(plus[1].real(), 1.0 / std::sqrt(2.0), 1e-15);
  auto s = StateVector::from_label("+0");
  ASSERT_EQ(s.dim(), 4);
  // |+>|0> = (|00> + |10>) / sqrt 2
  EXPECT_NEAR(s[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(s[1]), 0.0, 1e-15);
  EXPECT_NEAR(s[2].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(s[3]), 0.0, 1e-15);
  EXPECT_THROW(StateVector::from_label("0x"), DomainError);
  EXPECT_THROW(StateVector::from_label(""), DomainError);
}

TEST(HermitianOperator, RejectsNonHermitian) {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 0.0, 0.0;
  EXPECT_THROW(HermitianOperator{m}, DomainError);
  EXPECT_THROW(HermitianOperator{CMatrix::Zero(2, 3)}, DomainError);
  EXPECT_THROW(pauli(Pauli::X) + pauli_string("X@X"), DimensionError);
}

TEST(Pauli, YActsOnOne) {
  // Y|1> = -i|0>
  CVector out = pauli(Pauli::Y).apply(StateVector::from_label("1").amplitudes());
  EXPECT_NEAR(std::abs(out[0] - Complex(0.0, -1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out[1]), 0.0, 1e-15);
}

TEST(Pauli, SquaresToIdentity) {
  for (auto p : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
    CMatrix sq = pauli(p).matrix() * pauli(p).matrix();
    EXPECT_LT(max_abs_diff(sq, CMatrix::Identity(2, 2)), 1e-15);
  }
  auto xx = pauli_string("X@X");
  EXPECT_LT(max_abs_diff(xx.matrix() * xx.matrix(), CMatrix::Identity(4, 4)), 1e-15);
  EXPECT_LT(max_abs_diff(pauli_string("X@Z").matrix(),
                         tensor(pauli(Pauli::X), pauli(Pauli::Z)).matrix()),
            1e-300);
}

TEST(Tensor, LeftFactorIsMostSignificant) {
  auto s = tensor(StateVector::from_label("1"), StateVector::from_label("0"));
  EXPECT_NEAR(std::abs(s[2]), 1.0, 1e-15);
  auto xi = pauli_string("X@I");
  CVector out = xi.apply(StateVector::from_label("00").amplitudes());
  EXPECT_NEAR(std::abs(out[2]), 1.0, 1e-15);
}

TEST(SwapHamiltonian, Spectrum) {
  // (XX + YY + ZZ) / 2 has eigenvalues {1/2 (x3), -3/2}; shifted by -1/2 below.
  CMatrix h = 0.5 * (pauli_string("X@X").matrix() + pauli_string("Y@Y").matrix() +
                     pauli_string("Z@Z").matrix()) -
              0.5 * CMatrix::Identity(4, 4);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  Eigen::VectorXd ev = es.eigenvalues();
  EXPECT_NEAR(ev[0], -2.0, 1e-14);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(ev[i], 0.0, 1e-14);
}

TEST(Metrics, FidelityAndBuresAngle) {
  auto plus = StateVector::from_label("+");
  auto zero = StateVector::from_label("0");
  EXPECT_NEAR(fidelity(plus, zero), 0.5, 1e-15);
  EXPECT_NEAR(bures_angle(plus, zero), kPi / 4.0, 1e-15);
  EXPECT_NEAR(bures_angle(zero, StateVector::from_label("1")), kPi / 2.0, 1e-15);
  EXPECT_NEAR(bures_angle(zero, zero), 0.0, 1e-7);
  EXPECT_NEAR(trace_overlap(DensityMatrix::pure(plus), DensityMatrix::pure(zero)), 0.5, 1e-15);
}

TEST(Metrics, Variance) {
  auto one = StateVector::from_label("1");
  EXPECT_NEAR(variance(pauli(Pauli::Y), one), 1.0, 1e-15);
  EXPECT_NEAR(variance(pauli(Pauli::Z), one), 0.0, 1e-15);
  EXPECT_NEAR(variance(0.7 * pauli(Pauli::X), one), 0.49, 1e-15);
  EXPECT_NEAR(expectation(pauli(Pauli::Z), one), -1.0, 1e-15);
}

TEST(Expm, QubitFlip) {
  // exp(-i pi/2 Y) = -iY and Y|1> = -i|0>, so the result is -|0>.
  CMatrix u = expm_hermitian(pauli(Pauli::Y), Complex(0.0, -kPi / 2.0));
  CVector out = u * StateVector::from_label("1").amplitudes();
  EXPECT_NEAR(std::abs(out[0] - Complex(-1.0, 0.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(out[1]), 0.0, 1e-14);
}

TEST(Expm, SwapGate) {
  auto h = 0.5 * (pauli_string("X@X") + pauli_string("Y@Y") + pauli_string("Z@Z"));
  CMatrix u = expm_hermitian(h, Complex(0.0, -kPi / 2.0));
  CMatrix swap = CMatrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = 1.0;
  swap(1, 2) = swap(2, 1) = 1.0;
  // (XX + YY + ZZ) / 2 = SWAP - I/2, so U = e^{i pi/4} exp(-i pi/2 SWAP) = e^{i pi/4} (-i) SWAP.
  Complex phase = std::exp(Complex(0.0, kPi / 4.0)) * Complex(0.0, -1.0);
  EXPECT_LT(max_abs_diff(u, phase * swap), 1e-14);
}

TEST(Expm, UnitaryProperty) {
  std::mt19937_64 rng(7);
  for (Eigen::Index dim : {2, 4, 8, 3}) {
    auto h = random_hermitian(rng, dim, 2.0);
    CMatrix u = expm_hermitian(h, Complex(0.0, -0.8));
    EXPECT_LT(max_abs_diff(u.adjoint() * u, CMatrix::Identity(dim, dim)), 1e-13) << dim;
  }
}

TEST(TaylorAction, MatchesEigendecomposition) {
  std::mt19937_64 rng(11);
  ExpWorkspace ws;
  for (Eigen::Index dim : {2, 3, 4, 8, 16}) {
    for (double scale : {1e-3, 0.1, 1.0, 5.0}) {
      auto h = random_hermitian(rng, dim, scale);
      CVector v = random_vector(rng, dim).normalized();
      CVector expected = expm_hermitian(h, Complex(0.0, -1.0)) * v;
      CVector got = v;
      apply_unitary_exp(h.matrix(), got, ws);
      EXPECT_LT((got - expected).norm(), 1e-12) << dim << " " << scale;
      EXPECT_NEAR(got.norm(), 1.0, 1e-13);
    }
  }
}

TEST(Properties, GlobalPhaseInvariance) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = StateVector::normalized(random_vector(rng, 4));
    auto b = StateVector::normalized(random_vector(rng, 4));
    Complex phase = std::exp(Complex(0.0, 0.37 * trial));
    StateVector b2(phase * b.amplitudes());
    EXPECT_NEAR(fidelity(a, b), fidelity(a, b2), 1e-14);
    EXPECT_NEAR(std::cos(bures_angle(a, b)) * std::cos(bures_angle(a, b)), fidelity(a, b), 1e-13);
    EXPECT_NEAR(trace_overlap(DensityMatrix::pure(a), DensityMatrix::pure(b)), fidelity(a, b),
                1e-13);
    EXPECT_GE(fidelity(a, b), 0.0);
    EXPECT_LE(fidelity(a, b), 1.0);
  }
}

TEST(DensityMatrix, Validation) {
  CMatrix m = CMatrix::Identity(2, 2);
  EXPECT_THROW(DensityMatrix{m}, DomainError);
  EXPECT_NO_THROW(DensityMatrix{0.5 * m});
  CMatrix neg(2, 2);
  neg << 1.5, 0.0, 0.0, -0.5;
  EXPECT_THROW(DensityMatrix{neg}, DomainError);
}

}  // namespace
}  // namespace noisebound
