#pragma once

#include <string>

#include "qcorr/qmat.hpp"

namespace qcorr {

inline constexpr double kStateTol = 1e-9;

/// A validated two-qubit density matrix: Hermitian, unit trace, PSD.
/// The stored matrix is the exact Hermitian part of the input.
class TwoQubitState {
public:
  /// Throws InvalidState if any check fails at tolerance `tol`.
  static TwoQubitState from_matrix(const Mat4& m, double tol = kStateTol) {
    if (!m.all_finite()) throw InvalidState("state has non-finite entries");
    if (!m.is_hermitian(tol)) throw InvalidState("state is not Hermitian");
    if (!m.is_unit_trace(tol)) throw InvalidState("state trace is not 1");
    Mat4 h = hermitian_part(m);
    if (!h.is_psd(tol)) throw InvalidState("state is not positive semidefinite");
    return TwoQubitState(h);
  }

  /// Like from_matrix, then removes residual error: eigenvalues are clamped
  /// at zero and the trace renormalized. Used for externally supplied data.
  static TwoQubitState from_matrix_projected(const Mat4& m, double tol) {
    const auto checked = from_matrix(m, tol);
    auto es = hermitian_eig(checked.rho_);
    double total = 0.0;
    for (double& e : es.values) total += (e = std::max(e, 0.0));
    return TwoQubitState(es.apply([&](double e) { return e / total; }));
  }

  static TwoQubitState maximally_mixed() { return TwoQubitState(Mat4::identity() * 0.25); }

  /// |psi><psi| for a normalized 4-vector in the |00>,|01>,|10>,|11> basis.
  static TwoQubitState pure(const std::array<cplx, 4>& psi) {
    double n = 0.0;
    for (const auto& a : psi) n += std::norm(a);
    if (!(std::abs(n - 1.0) <= 1e-12)) throw InvalidState("pure state vector is not normalized");
    Mat4 m;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) m(r, c) = psi[r] * std::conj(psi[c]);
    return TwoQubitState(m);
  }

  const Mat4& matrix() const { return rho_; }

private:
  explicit TwoQubitState(const Mat4& m) : rho_(m) {}
  Mat4 rho_;
};

/// (|01> + |10>)/sqrt(2)
inline TwoQubitState bell_psi_plus() {
  const double s = 1.0 / std::sqrt(2.0);
  return TwoQubitState::pure({0.0, s, s, 0.0});
}

inline TwoQubitState product_state(const Mat2& a, const Mat2& b) {
  return TwoQubitState::from_matrix(kron(a, b));
}

} // namespace qcorr
