#pragma once

// Reproducible random states. The generator and the transforms below are
// fully specified so other implementations can regenerate the same states:
//
//   state' = 6364136223846793005 * state + 1442695040888963407  (mod 2^64)
//   uniform = (state' >> 11) * 2^-53                           in [0, 1)
//   normals (Box-Muller, both outputs used, cosine first):
//     r = sqrt(-2 ln(1 - u1)), g1 = r cos(2 pi u2), g2 = r sin(2 pi u2)
//
// The seed is the initial state. Complex Gaussians take (re, im) = (g1, g2).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qcorr/bloch.hpp"
#include "qcorr/qmat.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

using Lcg64 = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0ULL>;

class StateSampler {
public:
  explicit StateSampler(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  cplx complex_gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

  double gaussian() { return complex_gaussian().real(); }

  /// G G^dagger / tr(G G^dagger), entries of G drawn row-major.
  template <std::size_t N>
  CMatrix<N> ginibre_density() {
    CMatrix<N> g;
    for (auto& z : g.entries) z = complex_gaussian();
    CMatrix<N> m = g * g.adjoint();
    return m * (1.0 / m.trace().real());
  }

  TwoQubitState two_qubit_state() { return TwoQubitState::from_matrix(ginibre_density<4>()); }

  Mat2 qubit_state() { return ginibre_density<2>(); }

  /// Haar-distributed SU(2) element from a normalized Gaussian quaternion.
  Mat2 qubit_unitary() {
    const cplx p = complex_gaussian();
    const cplx q = complex_gaussian();
    const double n = std::sqrt(std::norm(p) + std::norm(q));
    const cplx a = p / n, b = q / n;
    Mat2 u;
    u(0, 0) = a;
    u(0, 1) = -std::conj(b);
    u(1, 0) = b;
    u(1, 1) = std::conj(a);
    return u;
  }

  Vec3 unit_vector() {
    for (;;) {
      const Vec3 v{gaussian(), gaussian(), gaussian()};
      const double n = std::sqrt(norm2(v));
      if (n > 1e-6) return {v[0] / n, v[1] / n, v[2] / n};
    }
  }

private:
  Lcg64 engine_;
};

/// Same correlations as `state` with the A-side Bloch vector removed. When the
/// result is not PSD it is mixed toward I/4 (weights halved each step) until it
/// is; the marginal of A stays I/2 throughout.
inline TwoQubitState zero_marginal_a(const TwoQubitState& state) {
  BlochForm f = decompose(state);
  f.x = {0.0, 0.0, 0.0};
  for (;;) {
    const auto r = reconstruct(f);
    if (r.valid_state) return TwoQubitState::from_matrix(r.matrix);
    for (auto& v : f.y) v *= 0.5;
    for (auto& row : f.t)
      for (auto& v : row) v *= 0.5;
  }
}

} // namespace qcorr
