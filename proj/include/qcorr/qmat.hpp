#pragma once

// Dense complex linear algebra for the small fixed dimensions of two-qubit
// physics (2, 3, 4 and the 8x8 embedding used by the concurrence route).
// Everything is a value type; no allocation.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>

#include "qcorr/errors.hpp"

namespace qcorr {

using cplx = std::complex<double>;

/// Square complex matrix of compile-time dimension, row-major.
template <std::size_t N>
struct CMatrix {
  static constexpr std::size_t dim = N;
  std::array<cplx, N * N> entries{};

  cplx& operator()(std::size_t r, std::size_t c) { return entries[r * N + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return entries[r * N + c]; }

  static CMatrix zero() { return {}; }

  static CMatrix identity() {
    CMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMatrix diagonal(const std::array<double, N>& d) {
    CMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  CMatrix adjoint() const {
    CMatrix m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) m(r, c) = std::conj((*this)(c, r));
    return m;
  }

  CMatrix conjugate() const {
    CMatrix m;
    for (std::size_t i = 0; i < N * N; ++i) m.entries[i] = std::conj(entries[i]);
    return m;
  }

  CMatrix transpose() const {
    CMatrix m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) m(r, c) = (*this)(c, r);
    return m;
  }

  bool all_finite() const {
    return std::all_of(entries.begin(), entries.end(), [](const cplx& z) {
      return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : entries) m = std::max(m, std::abs(z));
    return m;
  }

  bool is_hermitian(double tol) const {
    if (!all_finite()) return false;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = r; c < N; ++c)
        if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
    return true;
  }

  bool is_unit_trace(double tol) const {
    const cplx t = trace();
    return std::isfinite(t.real()) && std::abs(t - 1.0) <= tol;
  }

  // Defined after hermitian_eig.
  bool is_psd(double tol) const;

  CMatrix& operator+=(const CMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) entries[i] += o.entries[i];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) entries[i] -= o.entries[i];
    return *this;
  }
  CMatrix& operator*=(cplx s) {
    for (auto& z : entries) z *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(CMatrix a, double s) { return a *= cplx(s); }
  friend CMatrix operator*(double s, CMatrix a) { return a *= cplx(s); }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    CMatrix m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t k = 0; k < N; ++k) {
        const cplx ark = a(r, k);
        if (ark == cplx(0.0)) continue;
        for (std::size_t c = 0; c < N; ++c) m(r, c) += ark * b(k, c);
      }
    return m;
  }

  friend bool operator==(const CMatrix&, const CMatrix&) = default;
};

using Mat2 = CMatrix<2>;
using Mat4 = CMatrix<4>;

inline Mat2 pauli_x() {
  Mat2 m;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

inline Mat2 pauli_y() {
  Mat2 m;
  m(0, 1) = cplx(0.0, -1.0);
  m(1, 0) = cplx(0.0, 1.0);
  return m;
}

inline Mat2 pauli_z() { return Mat2::diagonal({1.0, -1.0}); }

/// (sigma_x, sigma_y, sigma_z), the fixed basis order used throughout.
inline std::array<Mat2, 3> paulis() { return {pauli_x(), pauli_y(), pauli_z()}; }

/// Tensor product; row index of the result is (row of a) * M + (row of b).
template <std::size_t N, std::size_t M>
CMatrix<N * M> kron(const CMatrix<N>& a, const CMatrix<M>& b) {
  CMatrix<N * M> out;
  for (std::size_t ar = 0; ar < N; ++ar)
    for (std::size_t ac = 0; ac < N; ++ac) {
      const cplx s = a(ar, ac);
      for (std::size_t br = 0; br < M; ++br)
        for (std::size_t bc = 0; bc < M; ++bc) out(ar * M + br, ac * M + bc) = s * b(br, bc);
    }
  return out;
}

/// Squared Hilbert-Schmidt norm tr(A^dagger A).
template <std::size_t N>
double hs_norm2(const CMatrix<N>& a) {
  double s = 0.0;
  for (const auto& z : a.entries) s += std::norm(z);
  return s;
}

/// tr(A^dagger B).
template <std::size_t N>
cplx hs_inner(const CMatrix<N>& a, const CMatrix<N>& b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) s += std::conj(a.entries[i]) * b.entries[i];
  return s;
}

template <std::size_t N>
CMatrix<N> hermitian_part(const CMatrix<N>& m) {
  return 0.5 * (m + m.adjoint());
}

enum class Subsystem { A, B };

/// Partial trace of a two-qubit operator; `traced` names the qubit removed.
inline Mat2 partial_trace(const Mat4& rho, Subsystem traced) {
  Mat2 out;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t k = 0; k < 2; ++k)
        out(r, c) += traced == Subsystem::B ? rho(2 * r + k, 2 * c + k) : rho(2 * k + r, 2 * k + c);
  return out;
}

/// Transpose on qubit B only.
inline Mat4 partial_transpose_b(const Mat4& rho) {
  Mat4 out;
  for (std::size_t a1 = 0; a1 < 2; ++a1)
    for (std::size_t b1 = 0; b1 < 2; ++b1)
      for (std::size_t a2 = 0; a2 < 2; ++a2)
        for (std::size_t b2 = 0; b2 < 2; ++b2) out(2 * a1 + b1, 2 * a2 + b2) = rho(2 * a1 + b2, 2 * a2 + b1);
  return out;
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kJacobiOffTol = 1e-12;
inline constexpr int kJacobiMaxSweeps = 50;
inline constexpr double kPsdClampTol = 1e-10;

/// Spectrum in ascending order; column k of `vectors` belongs to values[k].
template <std::size_t N>
struct EigenSystem {
  std::array<double, N> values{};
  CMatrix<N> vectors;

  /// V f(diag) V^dagger for a real function of the eigenvalues.
  template <class F>
  CMatrix<N> apply(F&& f) const {
    CMatrix<N> out;
    for (std::size_t k = 0; k < N; ++k) {
      const double w = f(values[k]);
      if (w == 0.0) continue;
      for (std::size_t r = 0; r < N; ++r) {
        const cplx vr = vectors(r, k) * w;
        for (std::size_t c = 0; c < N; ++c) out(r, c) += vr * std::conj(vectors(c, k));
      }
    }
    return out;
  }
};

namespace detail {

template <std::size_t N>
double off_diagonal_norm(const CMatrix<N>& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// a <- G^dagger a G and v <- v G, with G acting on the (p, q) plane.
template <std::size_t N>
void apply_rotation(CMatrix<N>& a, CMatrix<N>& v, std::size_t p, std::size_t q, cplx gpp, cplx gpq,
                    cplx gqp, cplx gqq) {
  for (std::size_t r = 0; r < N; ++r) {
    const cplx arp = a(r, p), arq = a(r, q);
    a(r, p) = arp * gpp + arq * gqp;
    a(r, q) = arp * gpq + arq * gqq;
    const cplx vrp = v(r, p), vrq = v(r, q);
    v(r, p) = vrp * gpp + vrq * gqp;
    v(r, q) = vrp * gpq + vrq * gqq;
  }
  for (std::size_t c = 0; c < N; ++c) {
    const cplx apc = a(p, c), aqc = a(q, c);
    a(p, c) = std::conj(gpp) * apc + std::conj(gqp) * aqc;
    a(q, c) = std::conj(gpq) * apc + std::conj(gqq) * aqc;
  }
}

} // namespace detail

/// Cyclic complex Jacobi. Throws NonHermitianInput when |M - M^dagger| exceeds
/// 1e-10 (scaled by max(1, max|M_ij|)).
template <std::size_t N>
EigenSystem<N> hermitian_eig(const CMatrix<N>& m) {
  if (!m.is_hermitian(kHermitianTol * std::max(1.0, m.max_abs())))
    throw NonHermitianInput("hermitian_eig: input is not Hermitian");

  CMatrix<N> a = hermitian_part(m);
  CMatrix<N> v = CMatrix<N>::identity();

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (detail::off_diagonal_norm(a) <= kJacobiOffTol) break;
    for (std::size_t p = 0; p + 1 < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const cplx phase = std::conj(apq / mag);
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = std::abs(theta) > 1e150
                             ? 0.5 / theta
                             : std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        detail::apply_rotation(a, v, p, q, cplx(c), cplx(s), -s * phase, c * phase);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem<N> es;
  for (std::size_t k = 0; k < N; ++k) {
    es.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < N; ++r) es.vectors(r, k) = v(r, order[k]);
  }
  return es;
}

template <std::size_t N>
bool CMatrix<N>::is_psd(double tol) const {
  if (!is_hermitian(kHermitianTol * std::max(1.0, max_abs()))) return false;
  return hermitian_eig(*this).values[0] >= -tol;
}

/// Normalized exp(-beta H). The largest exponent is subtracted before
/// exponentiation, so large beta*|H| cannot overflow.
template <std::size_t N>
CMatrix<N> gibbs(const CMatrix<N>& h, double beta) {
  if (!std::isfinite(beta) || beta <= 0.0) throw NonFiniteParameter("gibbs: beta must be finite and > 0");
  if (!h.all_finite()) throw NonFiniteParameter("gibbs: Hamiltonian has non-finite entries");
  const auto es = hermitian_eig(h);
  const double shift = -beta * es.values[0];
  double z = 0.0;
  for (double e : es.values) z += std::exp(-beta * e - shift);
  return es.apply([&](double e) { return std::exp(-beta * e - shift) / z; });
}

/// Principal square root of a PSD matrix. Eigenvalues in [-1e-10, 0) are
/// clamped to zero; anything below throws NotPositiveSemidefinite.
template <std::size_t N>
CMatrix<N> mat_sqrt(const CMatrix<N>& m) {
  const auto es = hermitian_eig(m);
  if (es.values[0] < -kPsdClampTol) throw NotPositiveSemidefinite("mat_sqrt: negative eigenvalue");
  return es.apply([](double e) { return std::sqrt(std::max(e, 0.0)); });
}

} // namespace qcorr
