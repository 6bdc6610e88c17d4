#pragma once

// Fano (Bloch) form of a two-qubit state:
//
//   rho = I/4 + 1/2 sum_i x_i s_i (x) I + 1/2 sum_j y_j I (x) s_j
//             + 1/2 sum_ij T_ij s_i (x) s_j
//
// with x_i = tr[rho (s_i (x) I)]/2, y_j = tr[rho (I (x) s_j)]/2 and
// T_ij = tr[rho (s_i (x) s_j)]/2. Every closed-form measure consumes this
// normalization. Purity reads tr(rho^2) = 1/4 + |x|^2 + |y|^2 + sum T_ij^2.

#include <array>

#include "qcorr/qmat.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

struct BlochForm {
  Vec3 x{};
  Vec3 y{};
  Mat3 t{};
};

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm2(const Vec3& a) { return dot(a, a); }

inline Mat3 mul_transpose(const Mat3& a) {
  Mat3 out{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out[i][j] = dot(a[i], a[j]);
  return out;
}

inline Vec3 mul(const Mat3& a, const Vec3& v) { return {dot(a[0], v), dot(a[1], v), dot(a[2], v)}; }

inline double trace(const Mat3& a) { return a[0][0] + a[1][1] + a[2][2]; }

/// Eigenvalues of a real symmetric 3x3 matrix, ascending.
inline Vec3 symmetric_eigenvalues(const Mat3& a) {
  CMatrix<3> m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = a[i][j];
  const auto es = hermitian_eig(m);
  return {es.values[0], es.values[1], es.values[2]};
}

inline BlochForm decompose(const TwoQubitState& state) {
  const Mat4& rho = state.matrix();
  const auto s = paulis();
  const Mat2 id = Mat2::identity();
  BlochForm f;
  for (std::size_t i = 0; i < 3; ++i) {
    f.x[i] = 0.5 * (rho * kron(s[i], id)).trace().real();
    f.y[i] = 0.5 * (rho * kron(id, s[i])).trace().real();
    for (std::size_t j = 0; j < 3; ++j) f.t[i][j] = 0.5 * (rho * kron(s[i], s[j])).trace().real();
  }
  return f;
}

struct Reconstruction {
  Mat4 matrix;
  bool valid_state;  // PSD at kStateTol
};

/// Inverse of decompose. Always Hermitian with unit trace; PSD only for
/// consistent inputs, reported through `valid_state`.
inline Reconstruction reconstruct(const BlochForm& f) {
  const auto s = paulis();
  const Mat2 id = Mat2::identity();
  Mat4 m = Mat4::identity() * 0.25;
  for (std::size_t i = 0; i < 3; ++i) {
    m += kron(s[i], id) * (0.5 * f.x[i]);
    m += kron(id, s[i]) * (0.5 * f.y[i]);
    for (std::size_t j = 0; j < 3; ++j) m += kron(s[i], s[j]) * (0.5 * f.t[i][j]);
  }
  return {m, m.is_psd(kStateTol)};
}

/// Reduced state of qubit A rebuilt from x alone: I/2 + sum_i x_i s_i.
inline Mat2 marginal_a(const BlochForm& f) {
  const auto s = paulis();
  Mat2 m = Mat2::identity() * 0.5;
  for (std::size_t i = 0; i < 3; ++i) m += s[i] * f.x[i];
  return m;
}

} // namespace qcorr
