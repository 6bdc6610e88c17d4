#pragma once

// Two-spin Heisenberg models in units of kT.
//
//   isotropic + DM (D along z):  H/kT = 1/2 [ j (XX + YY + ZZ) + d (XY - YX) ]
//   XXZ in a z field:            H/kT = 1/2 [ j (XX + YY + (1 + delta) ZZ) + b (Z1 + Z2) ]
//
// with j = J/kT, d = D/kT, b = B/kT. Both thermal states are X-states whose
// entries have closed forms; every closed-form result can be cross-checked
// against the generic pipeline gibbs -> decompose -> measures.
//
// Erratum handled here: the commonly printed XXZ partition function
// e^-a cosh b + e^a cosh j is half the trace of the unnormalized state. The
// state is normalized by its trace; the printed value is kept as
// `printed_z` for comparison.

#include <cmath>
#include <complex>
#include <functional>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

#include "qcorr/bloch.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/qmat.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

inline constexpr double kClosedFormTol = 1e-10;

struct IsoDMParams {
  double j = 0.0;
  double d = 0.0;
};

struct XXZParams {
  double j = 0.0;
  double delta = 0.0;
  double b = 0.0;
};

namespace detail {

inline void require_finite(std::initializer_list<double> values, const char* what) {
  for (double v : values)
    if (!std::isfinite(v)) throw NonFiniteParameter(std::string(what) + ": parameters must be finite");
}

inline Mat4 two_site(const Mat2& a, const Mat2& b) { return kron(a, b); }

/// sinh(x)/x with the removable singularity at 0.
inline double sinhc(double x) {
  if (std::abs(x) < 1e-6) return 1.0 + x * x / 6.0;
  return std::sinh(x) / x;
}

/// log(sinh(x)) for x > 0 without overflow.
inline double log_sinh(double x) {
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  if (x < 20.0) return std::log(std::sinh(x));
  return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0);
}

} // namespace detail

inline Mat4 hamiltonian_isodm(const IsoDMParams& p) {
  detail::require_finite({p.j, p.d}, "hamiltonian_isodm");
  const Mat2 x = pauli_x(), y = pauli_y(), z = pauli_z();
  using detail::two_site;
  const Mat4 heis = two_site(x, x) + two_site(y, y) + two_site(z, z);
  const Mat4 dm = two_site(x, y) - two_site(y, x);
  return 0.5 * (p.j * heis + p.d * dm);
}

inline Mat4 hamiltonian_xxz(const XXZParams& p) {
  detail::require_finite({p.j, p.delta, p.b}, "hamiltonian_xxz");
  const Mat2 x = pauli_x(), y = pauli_y(), z = pauli_z(), id = Mat2::identity();
  using detail::two_site;
  const Mat4 exchange = two_site(x, x) + two_site(y, y) + (1.0 + p.delta) * two_site(z, z);
  const Mat4 field = two_site(z, id) + two_site(id, z);
  return 0.5 * (p.j * exchange + p.b * field);
}

/// Unnormalized entries mu, omega, nu and partition function Z.
struct IsoDMThermal {
  double mu = 0.0;
  double omega = 0.0;
  cplx nu = 0.0;
  double z = 0.0;
  Mat4 matrix;
};

struct XXZThermal {
  double delta_plus = 0.0;
  double delta_minus = 0.0;
  double epsilon = 0.0;
  double kappa = 0.0;
  double z = 0.0;          // trace normalization actually used
  double printed_z = 0.0;  // e^-a cosh b + e^a cosh j
  Mat4 matrix;
};

inline IsoDMThermal thermal_isodm(const IsoDMParams& p) {
  detail::require_finite({p.j, p.d}, "thermal_isodm");
  const double eta = std::hypot(p.j, p.d);
  IsoDMThermal s;
  s.mu = std::exp(-p.j / 2.0);
  s.omega = std::exp(p.j / 2.0) * std::cosh(eta);
  s.nu = -cplx(p.j, p.d) * (std::exp(p.j / 2.0) * detail::sinhc(eta));
  s.z = 2.0 * (s.mu + s.omega);
  detail::require_finite({s.mu, s.omega, s.nu.real(), s.nu.imag(), s.z}, "thermal_isodm (overflow)");

  Mat4& m = s.matrix;
  m(0, 0) = s.mu;
  m(1, 1) = s.omega;
  m(1, 2) = s.nu;
  m(2, 1) = std::conj(s.nu);
  m(2, 2) = s.omega;
  m(3, 3) = s.mu;
  m *= 1.0 / s.z;
  return s;
}

inline XXZThermal thermal_xxz(const XXZParams& p) {
  detail::require_finite({p.j, p.delta, p.b}, "thermal_xxz");
  const double alpha = p.j * (1.0 + p.delta) / 2.0;
  XXZThermal s;
  s.delta_plus = std::exp(-(alpha + p.b));
  s.delta_minus = std::exp(-(alpha - p.b));
  s.epsilon = std::exp(alpha) * std::cosh(p.j);
  s.kappa = -std::exp(alpha) * std::sinh(p.j);
  s.z = s.delta_plus + s.delta_minus + 2.0 * s.epsilon;
  s.printed_z = std::exp(-alpha) * std::cosh(p.b) + std::exp(alpha) * std::cosh(p.j);
  detail::require_finite({s.delta_plus, s.delta_minus, s.epsilon, s.kappa, s.z}, "thermal_xxz (overflow)");

  Mat4& m = s.matrix;
  m(0, 0) = s.delta_plus;
  m(1, 1) = s.epsilon;
  m(1, 2) = s.kappa;
  m(2, 1) = s.kappa;
  m(2, 2) = s.epsilon;
  m(3, 3) = s.delta_minus;
  m *= 1.0 / s.z;
  return s;
}

/// Closed-form measures of a model point next to the generic pipeline.
struct ModelReport {
  double concurrence = 0.0;  // closed form
  double min_value = 0.0;    // closed form
  double gmod_paper = 0.0;   // closed form, asserted to be N/2
  double gmod_lower = 0.0;   // lower-bound formula on the Gibbs state
  double gmod_exact = 0.0;   // exact closed formula on the Gibbs state
  MeasureReport pipeline;

  /// |Q - N/2|: zero only where the proportionality claim holds.
  double proportionality_gap() const { return std::abs(gmod_lower - gmod_paper); }
};

namespace detail {

inline ModelReport finish_report(double c, double n, const Mat4& h, bool cross_check, const char* model) {
  const auto state = TwoQubitState::from_matrix(gibbs(h, 1.0));
  ModelReport r;
  r.concurrence = c;
  r.min_value = n;
  r.gmod_paper = n / 2.0;
  r.pipeline = report(state);
  r.gmod_lower = r.pipeline.gmod_lower;
  r.gmod_exact = r.pipeline.gmod_exact;
  if (cross_check && (std::abs(c - r.pipeline.concurrence) > kClosedFormTol ||
                      std::abs(n - r.pipeline.min_value) > kClosedFormTol))
    throw ClosedFormMismatch(std::string(model) + ": closed form disagrees with Gibbs pipeline");
  return r;
}

} // namespace detail

/// N = 2 t^2 with t the transverse correlation, valid while |t| >= |t_zz| or
/// the A marginal is nondegenerate. With x = 0 and |t_zz| > |t| the maximizing
/// measurement is transverse and N = t^2 + t_zz^2 instead.
inline double min_x_state(double t2, double tzz2, bool marginal_degenerate) {
  return marginal_degenerate ? t2 + std::max(t2, tzz2) : 2.0 * t2;
}

/// C = (2/Z) max(0, |nu| - mu), N = 2|nu|^2/Z^2 (branch-corrected), Q_paper = N/2.
inline ModelReport measures_isodm(const IsoDMParams& p, bool cross_check = true) {
  const auto s = thermal_isodm(p);
  const double c = 2.0 / s.z * std::max(0.0, std::abs(s.nu) - s.mu);
  const double z2 = s.z * s.z;
  const double n = min_x_state(std::norm(s.nu) / z2, (s.mu - s.omega) * (s.mu - s.omega) / z2, true);
  return detail::finish_report(c, n, hamiltonian_isodm(p), cross_check, "measures_isodm");
}

/// C = (2/Z) max(0, |kappa| - sqrt(delta+ delta-)), N = 2 kappa^2/Z^2
/// (branch-corrected at b = 0), Q_paper = N/2.
inline ModelReport measures_xxz(const XXZParams& p, bool cross_check = true) {
  const auto s = thermal_xxz(p);
  const double c = 2.0 / s.z * std::max(0.0, std::abs(s.kappa) - std::sqrt(s.delta_plus * s.delta_minus));
  const double z2 = s.z * s.z;
  const double tzz = (s.delta_plus + s.delta_minus - 2.0 * s.epsilon) / 2.0;
  const double xz = std::abs(s.delta_plus - s.delta_minus) / (2.0 * s.z);
  const double n = min_x_state(s.kappa * s.kappa / z2, tzz * tzz / z2, xz <= kMarginalEps);
  return detail::finish_report(c, n, hamiltonian_xxz(p), cross_check, "measures_xxz");
}

// ---------------------------------------------------------------------------
// Entanglement thresholds

struct RootScan {
  double lo = -50.0;
  double hi = 50.0;
  std::size_t points = 2001;
  double tol = 1e-12;
};

/// All roots of f on [lo, hi] found by a uniform sign scan followed by
/// bisection of each bracket, ascending.
inline std::vector<double> sign_change_roots(const std::function<double(double)>& f, const RootScan& scan) {
  std::vector<double> roots;
  const auto at = [&](std::size_t k) {
    return scan.lo + (scan.hi - scan.lo) * static_cast<double>(k) / static_cast<double>(scan.points - 1);
  };
  double a = at(0);
  double fa = f(a);
  for (std::size_t k = 1; k < scan.points; ++k) {
    const double b = at(k);
    const double fb = f(b);
    if ((fa < 0.0) != (fb < 0.0)) {
      double lo = a, hi = b;
      const bool rising = fa < 0.0;
      while (hi - lo > scan.tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        ((f(mid) < 0.0) == rising ? lo : hi) = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

/// log|nu| - log(mu) = j + log sinh(sqrt(j^2 + d^2)); positive iff entangled.
inline double entanglement_margin_isodm(double j, double d) { return j + detail::log_sinh(std::hypot(j, d)); }

/// log|kappa| - log sqrt(delta+ delta-) = j (1 + delta) + log|sinh j|. The
/// field cancels from delta+ delta-, so the threshold does not depend on b.
inline double entanglement_margin_xxz(double j, double delta, double /*b*/) {
  return j * (1.0 + delta) + detail::log_sinh(std::abs(j));
}

/// Largest coupling j in [-50, 50] at which concurrence switches on/off.
inline double critical_coupling_isodm(double d, const RootScan& scan = {}) {
  detail::require_finite({d}, "critical_coupling_isodm");
  const auto roots = sign_change_roots([d](double j) { return entanglement_margin_isodm(j, d); }, scan);
  if (roots.empty()) throw NoSignChange("critical_coupling_isodm: no threshold in the scanned range");
  return roots.back();
}

inline double critical_coupling_xxz(double delta, double b, const RootScan& scan = {}) {
  detail::require_finite({delta, b}, "critical_coupling_xxz");
  const auto roots =
      sign_change_roots([delta, b](double j) { return entanglement_margin_xxz(j, delta, b); }, scan);
  if (roots.empty()) throw NoSignChange("critical_coupling_xxz: no threshold in the scanned range");
  return roots.back();
}

} // namespace qcorr
