#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace qcorr;
using qcorr::test::hs_distance;

namespace {

void expect_vec(const Vec3& v, const Vec3& expected, double tol) {
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(v[i], expected[i], tol) << "component " << i;
}

void expect_mat(const Mat3& m, const Mat3& expected, double tol) {
  for (std::size_t i = 0; i < 3; ++i) expect_vec(m[i], expected[i], tol);
}

double purity(const Mat4& rho) { return (rho * rho).trace().real(); }

double fano_purity(const BlochForm& f) {
  double t2 = 0.0;
  for (const auto& row : f.t)
    for (double v : row) t2 += v * v;
  return 0.25 + norm2(f.x) + norm2(f.y) + t2;
}

} // namespace

TEST(Decompose, MaximallyMixed) {
  const auto f = decompose(TwoQubitState::maximally_mixed());
  expect_vec(f.x, {0, 0, 0}, 0.0);
  expect_vec(f.y, {0, 0, 0}, 0.0);
  expect_mat(f.t, {}, 0.0);
}

TEST(Decompose, BellPsiPlus) {
  const auto f = decompose(bell_psi_plus());
  expect_vec(f.x, {0, 0, 0}, 1e-15);
  expect_vec(f.y, {0, 0, 0}, 1e-15);
  expect_mat(f.t, {Vec3{0.5, 0, 0}, Vec3{0, 0.5, 0}, Vec3{0, 0, -0.5}}, 1e-15);
}

TEST(Decompose, ProductZeroZero) {
  const auto f = decompose(test::basis_state_00());
  expect_vec(f.x, {0, 0, 0.5}, 0.0);
  expect_vec(f.y, {0, 0, 0.5}, 0.0);
  expect_mat(f.t, {Vec3{0, 0, 0}, Vec3{0, 0, 0}, Vec3{0, 0, 0.5}}, 0.0);
}

TEST(Decompose, IsotropicThermalCorrelations) {
  for (double j : {-3.0, 0.7, 2.0})
    for (double d : {0.0, 1.5}) {
      const auto s = thermal_isodm({j, d});
      const auto f = decompose(TwoQubitState::from_matrix(s.matrix));
      expect_vec(f.x, {0, 0, 0}, 1e-15);
      expect_vec(f.y, {0, 0, 0}, 1e-15);
      const Vec3 sv = symmetric_eigenvalues(mul_transpose(f.t));
      std::array<double, 3> expected{std::norm(s.nu) / (s.z * s.z), std::norm(s.nu) / (s.z * s.z),
                                     (s.omega - s.mu) * (s.omega - s.mu) / (s.z * s.z)};
      std::sort(expected.begin(), expected.end());
      for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(sv[i], expected[i], 1e-14);
    }
}

TEST(Decompose, EntriesBoundedAndPurityIdentityProperty) {
  StateSampler s(21);
  for (int trial = 0; trial < 300; ++trial) {
    const auto state = s.two_qubit_state();
    const auto f = decompose(state);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_LE(std::abs(f.x[i]), 0.5);
      EXPECT_LE(std::abs(f.y[i]), 0.5);
      for (std::size_t j = 0; j < 3; ++j) EXPECT_LE(std::abs(f.t[i][j]), 0.5);
    }
    EXPECT_NEAR(purity(state.matrix()), fano_purity(f), 1e-10);
  }
  for (double j = -5.0; j <= 5.0; j += 0.25) {
    const auto st = TwoQubitState::from_matrix(thermal_xxz({j, -1.0, 2.0}).matrix);
    EXPECT_NEAR(purity(st.matrix()), fano_purity(decompose(st)), 1e-10);
  }
}

TEST(Reconstruct, ZeroFormIsMaximallyMixed) {
  const auto r = reconstruct(BlochForm{});
  EXPECT_TRUE(r.valid_state);
  EXPECT_LE(hs_distance(r.matrix, Mat4::identity() * 0.25), 0.0);
}

TEST(Reconstruct, BellForm) {
  BlochForm f;
  f.t = {Vec3{0.5, 0, 0}, Vec3{0, 0.5, 0}, Vec3{0, 0, -0.5}};
  const auto r = reconstruct(f);
  EXPECT_TRUE(r.valid_state);
  EXPECT_LE(hs_distance(r.matrix, bell_psi_plus().matrix()), 1e-15);
}

TEST(Reconstruct, FlagsInconsistentForms) {
  BlochForm f;
  f.t = {Vec3{0.5, 0, 0}, Vec3{0, 0.5, 0}, Vec3{0, 0, 0.5}};  // would need a negative eigenvalue
  const auto r = reconstruct(f);
  EXPECT_FALSE(r.valid_state);
  EXPECT_TRUE(r.matrix.is_hermitian(0.0));
  EXPECT_TRUE(r.matrix.is_unit_trace(1e-15));
}

TEST(Reconstruct, RoundTripProperty) {
  StateSampler s(23);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto state = s.two_qubit_state();
    const auto f = decompose(state);
    const auto r = reconstruct(f);
    ASSERT_TRUE(r.valid_state);
    worst = std::max(worst, hs_distance(r.matrix, state.matrix()));
    const auto g = decompose(TwoQubitState::from_matrix(r.matrix));
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(g.x[i], f.x[i], 1e-12);
      EXPECT_NEAR(g.y[i], f.y[i], 1e-12);
      for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(g.t[i][j], f.t[i][j], 1e-12);
    }
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(MarginalLink, PartialTraceMatchesBlochVector) {
  StateSampler s(29);
  for (int trial = 0; trial < 100; ++trial) {
    const auto state = s.two_qubit_state();
    EXPECT_LE(hs_distance(partial_trace(state.matrix(), Subsystem::B), marginal_a(decompose(state))), 1e-12);
  }
  // x = 0 exactly when the marginal is I/2.
  const auto zeroed = zero_marginal_a(s.two_qubit_state());
  EXPECT_LE(hs_distance(partial_trace(zeroed.matrix(), Subsystem::B), Mat2::identity() * 0.5), 1e-12);
}
