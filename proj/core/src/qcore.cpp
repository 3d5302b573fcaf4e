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

#include "noisebound/qcore.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <optional>
#include <string>

#include "noisebound/error.hpp"

namespace noisebound {
namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

double hermitian_defect(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector single_qubit(char c) {
  const double r = 1.0 / std::sqrt(2.0);
  CVector v(2);
  switch (c) {
    case '0': v << 1.0, 0.0; break;
    case '1': v << 0.0, 1.0; break;
    case '+': v << r, r; break;
    case '-': v << r, -r; break;
    default:
      throw DomainError(std::string("unknown single-qubit state label '") + c + "'");
  }
  return v;
}

constexpr int kMaxTaylorTerms = 40;
// Squared relative size below which a Taylor term no longer changes v.
constexpr double kTaylorCutoff = 1e-33;

// Upper bound on the induced 1-norm using |re| + |im| >= |z| (avoids hypot).
template <typename M>
double norm1_bound(const M& g) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    double col = 0.0;
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      col += std::abs(g(i, j).real()) + std::abs(g(i, j).imag());
    }
    best = std::max(best, col);
  }
  return best;
}

int taylor_substeps(double norm1) {
  return std::max(1, static_cast<int>(std::ceil(norm1 / 0.5)));
}

// Fixed-size variant of the Taylor action for the common multi-qubit sizes,
// on split real/imaginary storage so the inner loops stay in plain doubles.
template <int D>
void taylor_exp_fixed(const CMatrix& g, CVector& v) {
  std::array<double, D * D> gr;
  std::array<double, D * D> gi;
  for (int i = 0; i < D; ++i) {
    for (int j = 0; j < D; ++j) {
      gr[i * D + j] = g(i, j).real();
      gi[i * D + j] = g(i, j).imag();
    }
  }
  std::array<double, D> vr, vi, tr, ti, nr, ni;
  for (int i = 0; i < D; ++i) {
    vr[i] = v[i].real();
    vi[i] = v[i].imag();
  }
  const int substeps = taylor_substeps(norm1_bound(g));
  const double inv_substeps = 1.0 / substeps;
  for (int s = 0; s < substeps; ++s) {
    tr = vr;
    ti = vi;
    for (int k = 1; k < kMaxTaylorTerms; ++k) {
      // t <- -i g t / (k * substeps)
      const double c = inv_substeps / k;
      double term_max = 0.0;
      double v_max = 0.0;
      for (int i = 0; i < D; ++i) {
        double re = 0.0;
        double im = 0.0;
        for (int j = 0; j < D; ++j) {
          re += gr[i * D + j] * tr[j] - gi[i * D + j] * ti[j];
          im += gr[i * D + j] * ti[j] + gi[i * D + j] * tr[j];
        }
        nr[i] = c * im;
        ni[i] = -c * re;
      }
      for (int i = 0; i < D; ++i) {
        vr[i] += nr[i];
        vi[i] += ni[i];
        term_max = std::max(term_max, nr[i] * nr[i] + ni[i] * ni[i]);
        v_max = std::max(v_max, vr[i] * vr[i] + vi[i] * vi[i]);
      }
      tr = nr;
      ti = ni;
      if (term_max <= kTaylorCutoff * v_max) break;
    }
  }
  for (int i = 0; i < D; ++i) v[i] = Complex(vr[i], vi[i]);
}

}  // namespace

StateVector::StateVector(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 2) {
    throw DomainError("state dimension must be at least 2");
  }
  const double norm = amplitudes_.norm();
  if (!(std::abs(norm - 1.0) <= kNormTol)) {
    throw DomainError("state is not normalized (norm = " + std::to_string(norm) + ")");
  }
}

StateVector StateVector::normalized(CVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DomainError("cannot normalize a zero or non-finite vector");
  }
  amplitudes /= norm;
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::from_label(std::string_view label) {
  if (label.empty()) {
    throw DomainError("empty state label");
  }
  CVector v = single_qubit(label[0]);
  for (std::size_t i = 1; i < label.size(); ++i) {
    CVector q = single_qubit(label[i]);
    CVector next(v.size() * 2);
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      next.segment(2 * k, 2) = v[k] * q;
    }
    v = std::move(next);
  }
  return StateVector(std::move(v));
}

HermitianOperator::HermitianOperator(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw DomainError("operator must be a non-empty square matrix");
  }
  const double defect = hermitian_defect(entries_);
  if (!(defect <= kHermitianTol)) {
    throw DomainError("operator is not Hermitian (max |M - M^dagger| = " +
                      std::to_string(defect) + ")");
  }
}

HermitianOperator HermitianOperator::identity(Eigen::Index dim) {
  return HermitianOperator(CMatrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::zero(Eigen::Index dim) {
  return HermitianOperator(CMatrix::Zero(dim, dim));
}

CVector HermitianOperator::apply(const CVector& v) const {
  require_same_dim(dim(), v.size(), "HermitianOperator::apply");
  return entries_ * v;
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  require_same_dim(dim(), other.dim(), "operator +");
  return HermitianOperator(entries_ + other.entries_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  require_same_dim(dim(), other.dim(), "operator -");
  return HermitianOperator(entries_ - other.entries_);
}

HermitianOperator operator*(double scale, const HermitianOperator& op) {
  return HermitianOperator(scale * op.entries_);
}

DensityMatrix::DensityMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 2) {
    throw DomainError("density matrix must be square with dim >= 2");
  }
  if (!(hermitian_defect(entries_) <= kHermitianTol)) {
    throw DomainError("density matrix is not Hermitian");
  }
  if (!(std::abs(entries_.trace() - Complex(1.0)) <= kNormTol)) {
    throw DomainError("density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(entries_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw DomainError("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& s) {
  const CVector& a = s.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

HermitianOperator pauli(Pauli which) {
  CMatrix m(2, 2);
  switch (which) {
    case Pauli::I: m << 1.0, 0.0, 0.0, 1.0; break;
    case Pauli::X: m << 0.0, 1.0, 1.0, 0.0; break;
    // S_y = i(|1><0| - |0><1|)
    case Pauli::Y: m << 0.0, -kI, kI, 0.0; break;
    case Pauli::Z: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return HermitianOperator(std::move(m));
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(kron(a.matrix(), b.matrix()));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  return StateVector::normalized(kron(a.amplitudes(), b.amplitudes()));
}

HermitianOperator pauli_string(std::string_view text) {
  std::optional<HermitianOperator> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('@', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view factor = text.substr(start, end - start);
    while (!factor.empty() && std::isspace(static_cast<unsigned char>(factor.front()))) {
      factor.remove_prefix(1);
    }
    while (!factor.empty() && std::isspace(static_cast<unsigned char>(factor.back()))) {
      factor.remove_suffix(1);
    }
    if (factor.size() != 1) {
      throw DomainError("malformed Pauli string '" + std::string(text) + "'");
    }
    Pauli p;
    switch (std::toupper(static_cast<unsigned char>(factor[0]))) {
      case 'I': p = Pauli::I; break;
      case 'X': p = Pauli::X; break;
      case 'Y': p = Pauli::Y; break;
      case 'Z': p = Pauli::Z; break;
      default:
        throw DomainError("unknown Pauli factor '" + std::string(factor) + "' in '" +
                          std::string(text) + "'");
    }
    out = out ? tensor(*out, pauli(p)) : pauli(p);
    start = end + 1;
  }
  return *out;
}

Complex inner(const CVector& a, const CVector& b) {
  require_same_dim(a.size(), b.size(), "inner");
  return a.dot(b);  // Eigen conjugates the left operand
}

Complex inner(const StateVector& a, const StateVector& b) {
  return inner(a.amplitudes(), b.amplitudes());
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner(a, b));
}

double bures_angle(const StateVector& a, const StateVector& b) {
  return std::acos(std::clamp(std::abs(inner(a, b)), 0.0, 1.0));
}

double trace_overlap(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "trace_overlap");
  return (a.matrix() * b.matrix()).trace().real();
}

double expectation(const HermitianOperator& op, const StateVector& s) {
  require_same_dim(op.dim(), s.dim(), "expectation");
  return inner(s.amplitudes(), op.matrix() * s.amplitudes()).real();
}

double variance(const HermitianOperator& op, const StateVector& s) {
  require_same_dim(op.dim(), s.dim(), "variance");
  const CVector hs = op.matrix() * s.amplitudes();
  const double mean = inner(s.amplitudes(), hs).real();
  return std::max(0.0, hs.squaredNorm() - mean * mean);
}

CMatrix expm_hermitian(const HermitianOperator& h, Complex scale) {
  if (scale == Complex(0.0)) {
    return CMatrix::Identity(h.dim(), h.dim());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix());
  const CMatrix& v = es.eigenvectors();
  CVector phases = (scale * es.eigenvalues().cast<Complex>()).array().exp();
  return v * phases.asDiagonal() * v.adjoint();
}

void apply_unitary_exp(const CMatrix& g, CVector& v, ExpWorkspace& ws) {
  const Eigen::Index d = g.rows();
  if (d == 2) {
    // g = a0 I + n.sigma; exp(-i g) = e^{-i a0} (cos r I - i sin(r)/r (g - a0 I))
    const double a0 = 0.5 * (g(0, 0).real() + g(1, 1).real());
    const double z = 0.5 * (g(0, 0).real() - g(1, 1).real());
    const Complex b = g(0, 1);
    const double r = std::sqrt(z * z + std::norm(b));
    const double c = std::cos(r);
    const double sinc = r > 1e-6 ? std::sin(r) / r : 1.0 - r * r / 6.0;
    const Complex v0 = v[0];
    const Complex v1 = v[1];
    const Complex w0 = z * v0 + b * v1;
    const Complex w1 = std::conj(b) * v0 - z * v1;
    const Complex phase = std::polar(1.0, -a0);
    v[0] = phase * (c * v0 - kI * sinc * w0);
    v[1] = phase * (c * v1 - kI * sinc * w1);
    return;
  }

  switch (d) {
    case 4: taylor_exp_fixed<4>(g, v); return;
    case 8: taylor_exp_fixed<8>(g, v); return;
    default: break;
  }
  const int substeps = taylor_substeps(norm1_bound(g));
  const Complex factor = -kI / static_cast<double>(substeps);
  for (int s = 0; s < substeps; ++s) {
    ws.term = v;
    for (int k = 1; k < kMaxTaylorTerms; ++k) {
      ws.next.noalias() = g * ws.term;
      ws.next *= factor / static_cast<double>(k);
      ws.term.swap(ws.next);
      v += ws.term;
      if (ws.term.cwiseAbs2().maxCoeff() <= kTaylorCutoff * v.cwiseAbs2().maxCoeff()) break;
    }
  }
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a.rows(), b.rows(), "max_abs_diff");
  require_same_dim(a.cols(), b.cols(), "max_abs_diff");
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace noisebound
