#pragma once

// Closed-form correlation measures of a two-qubit state.
//
// Geometric discord here is the closed formula 2(tr S - k_max) in the Fano
// normalization of bloch.hpp. It is exactly half of the convention-free
// minimum of ||rho - Pi(rho)||^2 over local projective measurements on A
// (see oracle.hpp), while MIN matches its convention-free definition with
// no extra factor: N(Bell) = 1/2.

#include <algorithm>
#include <cmath>

#include "qcorr/bloch.hpp"
#include "qcorr/qmat.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

/// Below this |x| the marginal of A is treated as I/2.
inline constexpr double kMarginalEps = 1e-9;
inline constexpr double kRadicandClamp = 1e-12;

enum class MinBranch { XZero, XNonzero };

inline const char* to_string(MinBranch b) { return b == MinBranch::XZero ? "x_zero" : "x_nonzero"; }

struct MinResult {
  double value = 0.0;
  MinBranch branch = MinBranch::XZero;
};

struct MeasureReport {
  double concurrence = 0.0;
  double min_value = 0.0;
  double gmod_exact = 0.0;
  double gmod_lower = 0.0;
  MinBranch branch = MinBranch::XZero;
};

/// (s_y (x) s_y) rho^* (s_y (x) s_y)
inline Mat4 spin_flip(const Mat4& rho) {
  const Mat4 yy = kron(pauli_y(), pauli_y());
  return yy * rho.conjugate() * yy;
}

/// Square roots of the spectrum of rho * spin_flip(rho), descending. Computed
/// from the Hermitian sqrt(rho) rho~ sqrt(rho), which has the same spectrum.
inline std::array<double, 4> spin_flip_roots(const TwoQubitState& state) {
  const Mat4 root = mat_sqrt(state.matrix());
  const Mat4 m = hermitian_part(root * spin_flip(state.matrix()) * root);
  const auto es = hermitian_eig(m);
  std::array<double, 4> l{};
  for (std::size_t k = 0; k < 4; ++k) l[k] = std::sqrt(std::max(es.values[3 - k], 0.0));
  return l;
}

inline double concurrence(const TwoQubitState& state) {
  const auto l = spin_flip_roots(state);
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

inline MinResult min_closed(const BlochForm& f) {
  const Mat3 tt = mul_transpose(f.t);
  const double x2 = norm2(f.x);
  if (std::sqrt(x2) <= kMarginalEps) return {trace(tt) - symmetric_eigenvalues(tt)[0], MinBranch::XZero};
  return {trace(tt) - dot(f.x, mul(tt, f.x)) / x2, MinBranch::XNonzero};
}

/// S = (x x^t + T T^t) / 4
inline Mat3 discord_matrix(const BlochForm& f) {
  Mat3 s = mul_transpose(f.t);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s[i][j] = 0.25 * (s[i][j] + f.x[i] * f.x[j]);
  return s;
}

inline double gmod_exact(const BlochForm& f) {
  const Mat3 s = discord_matrix(f);
  return std::max(0.0, 2.0 * (trace(s) - symmetric_eigenvalues(s)[2]));
}

/// Lower bound (2/3)(2 tr S - sqrt(6 tr S^2 - 2 (tr S)^2)); needs only tr S
/// and tr S^2.
inline double gmod_lower(const BlochForm& f) {
  const Mat3 s = discord_matrix(f);
  // 6 tr S^2 - 2 (tr S)^2 = 6 tr S0^2 with S0 the traceless part. Summing
  // squares of S0 avoids cancellation when the spectrum is nearly degenerate.
  const double tr = trace(s);
  double tr2 = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const double v = s[i][j] - (i == j ? tr / 3.0 : 0.0);
      tr2 += v * v;
    }
  double radicand = 6.0 * tr2;
  if (!(radicand >= -kRadicandClamp)) throw NegativeRadicand("gmod_lower: negative radicand");
  radicand = std::max(radicand, 0.0);
  // Zero analytically for rank-one S; rounding can leave a tiny negative.
  return std::max(0.0, (2.0 / 3.0) * (2.0 * tr - std::sqrt(radicand)));
}

inline MeasureReport report(const TwoQubitState& state) {
  const BlochForm f = decompose(state);
  const MinResult n = min_closed(f);
  return {concurrence(state), n.value, gmod_exact(f), gmod_lower(f), n.branch};
}

} // namespace qcorr
