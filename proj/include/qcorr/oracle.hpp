#pragma once

// Brute-force references for the closed-form measures. Nothing here uses
// the Fano decomposition except to read off the marginal direction of A.
//
// The disturbance ||rho - Pi_n(rho)||^2 of the projective measurement on A
// along unit vector n is maximized (MIN) or minimized (geometric discord)
// over a Fibonacci lattice on the sphere, then polished by coordinate
// descent on the spherical angles with step halving.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "qcorr/bloch.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/qmat.hpp"
#include "qcorr/random.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

inline constexpr double kPptTol = 1e-10;
inline constexpr double kRefineStartStep = 0.1;
inline constexpr double kRefineFinalStep = 1e-7;

struct SphereGrid {
  std::size_t n_points = 0;
  std::size_t refinement_iters = 0;  // cap on accepted refinement moves; 0 disables refinement
  std::vector<Vec3> directions;

  static SphereGrid fibonacci(std::size_t n_points, std::size_t refinement_iters = 10000) {
    SphereGrid g{n_points, refinement_iters, {}};
    g.directions.reserve(n_points);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < n_points; ++i) {
      const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n_points);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * static_cast<double>(i);
      g.directions.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    return g;
  }
};

struct OracleResult {
  double value = 0.0;
  Vec3 direction{};
  std::size_t evaluations = 0;
};

/// Projector (I + s n.sigma)/2 with s = +1 or -1.
inline Mat2 axis_projector(const Vec3& n, double sign) {
  const auto s = paulis();
  Mat2 p = Mat2::identity();
  for (std::size_t i = 0; i < 3; ++i) p += s[i] * (sign * n[i]);
  return p * 0.5;
}

/// sum_k (P_k (x) I) rho (P_k (x) I) without validation.
inline Mat4 dephase_a(const Mat4& rho, const Vec3& n) {
  const Mat2 id = Mat2::identity();
  const Mat4 p = kron(axis_projector(n, 1.0), id);
  const Mat4 m = kron(axis_projector(n, -1.0), id);
  return p * rho * p + m * rho * m;
}

inline double disturbance(const Mat4& rho, const Vec3& n) { return hs_norm2(rho - dephase_a(rho, n)); }

inline TwoQubitState post_measurement(const TwoQubitState& state, const Vec3& n) {
  if (!(std::abs(std::sqrt(norm2(n)) - 1.0) <= 1e-9)) throw NonUnitDirection("measurement direction must be a unit vector");
  return TwoQubitState::from_matrix(dephase_a(state.matrix(), n));
}

namespace detail {

inline Vec3 from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

enum class Sense { Maximize, Minimize };

inline OracleResult extremize(const Mat4& rho, const SphereGrid& grid, Sense sense) {
  const auto better = [sense](double a, double b) { return sense == Sense::Maximize ? a > b : a < b; };

  OracleResult best{sense == Sense::Maximize ? -std::numeric_limits<double>::infinity()
                                             : std::numeric_limits<double>::infinity(),
                    {0.0, 0.0, 1.0}, 0};
  for (const auto& n : grid.directions) {
    const double v = disturbance(rho, n);
    ++best.evaluations;
    if (better(v, best.value)) {
      best.value = v;
      best.direction = n;
    }
  }
  if (grid.refinement_iters == 0 || grid.directions.empty()) return best;

  double theta = std::acos(std::clamp(best.direction[2], -1.0, 1.0));
  double phi = std::atan2(best.direction[1], best.direction[0]);
  std::size_t moves = 0;
  for (double step = kRefineStartStep; step >= kRefineFinalStep && moves < grid.refinement_iters;) {
    bool improved = false;
    for (int coord = 0; coord < 2; ++coord)
      for (double sign : {1.0, -1.0}) {
        const double t = theta + (coord == 0 ? sign * step : 0.0);
        const double p = phi + (coord == 1 ? sign * step : 0.0);
        const Vec3 n = from_angles(t, p);
        const double v = disturbance(rho, n);
        ++best.evaluations;
        if (better(v, best.value)) {
          best = {v, n, best.evaluations};
          theta = t;
          phi = p;
          improved = true;
          ++moves;
        }
      }
    if (!improved) step *= 0.5;
  }
  return best;
}

} // namespace detail

/// Eq. MIN by search. When the marginal of A is not I/2 the only
/// marginal-preserving measurement axis is x/|x|, so that axis is evaluated
/// directly.
inline OracleResult min_oracle(const TwoQubitState& state, const SphereGrid& grid) {
  const Vec3 x = decompose(state).x;
  const double xn = std::sqrt(norm2(x));
  if (xn <= kMarginalEps) return detail::extremize(state.matrix(), grid, detail::Sense::Maximize);
  const Vec3 n{x[0] / xn, x[1] / xn, x[2] / xn};
  return {disturbance(state.matrix(), n), n, 1};
}

/// Minimum disturbance over all measurement axes on A. For a fixed axis the
/// Hilbert-Schmidt-nearest classical-quantum state is the dephased state, so
/// this is the convention-free geometric discord (= 2 * gmod_exact).
inline OracleResult gmod_oracle(const TwoQubitState& state, const SphereGrid& grid) {
  return detail::extremize(state.matrix(), grid, detail::Sense::Minimize);
}

/// Smallest ||rho - chi||^2 over k random classical-quantum states
/// chi = p P_+ (x) rho_1 + (1 - p) P_- (x) rho_2 in the basis fixed by n.
/// Never below the dephased distance when the dephasing reduction is right.
inline double nested_gmod_spotcheck(const TwoQubitState& state, const Vec3& n, std::size_t k,
                                    StateSampler& sampler) {
  const Mat2 pp = axis_projector(n, 1.0);
  const Mat2 pm = axis_projector(n, -1.0);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    const double p = sampler.uniform();
    const Mat2 r1 = sampler.qubit_state();
    const Mat2 r2 = sampler.qubit_state();
    const Mat4 chi = kron(pp, r1) * p + kron(pm, r2) * (1.0 - p);
    best = std::min(best, hs_norm2(state.matrix() - chi));
  }
  return best;
}

/// Negative partial transpose; for two qubits this is equivalent to entanglement.
inline bool ppt_entangled(const TwoQubitState& state) {
  return hermitian_eig(partial_transpose_b(state.matrix())).values[0] < -kPptTol;
}

} // namespace qcorr
