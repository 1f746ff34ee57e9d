#include <gtest/gtest.h>

#include <cmath>

#include <mbslie/errors.hpp>
#include <mbslie/rotmaps.hpp>

#include "oracles.hpp"

using namespace mbslie;

namespace {

Mat3 quarter_turn_e1() {
  Mat3 R;
  R << 1, 0, 0, 0, 0, -1, 0, 1, 0;
  return R;
}

// Central difference of s -> f(x + s y).
template <class F>
Mat3 directional_derivative(F&& f, const Vec3& x, const Vec3& y,
                            double h = 1e-6) {
  return (f(Vec3(x + h * y)) - f(Vec3(x - h * y))) / (2.0 * h);
}

}  // namespace

TEST(Sinc, RemovableSingularityAndZero) {
  EXPECT_EQ(sinc(0.0), 1.0);
  EXPECT_NEAR(sinc(kPi), 0.0, 1e-16);
}

TEST(Sinc, TinyArgumentMatchesSeries) {
  const double phi = 1e-9;
  EXPECT_NEAR(sinc(phi), 1.0 - phi * phi / 6.0, 1e-15);
}

TEST(Sinc, EvenAndContinuousAtCrossover) {
  for (double phi : {0.3, 1.0, 2.5, kSmallAngle}) {
    EXPECT_EQ(sinc(phi), sinc(-phi));
  }
  const double below = std::nextafter(kSmallAngle, 0.0);
  EXPECT_NEAR(sinc(below), std::sin(kSmallAngle) / kSmallAngle, 1e-15);
}

TEST(TrigCoefficients, IdentityAtZero) {
  const TrigCoefficients tc = trig_coefficients(0.0);
  EXPECT_EQ(tc.alpha, 1.0);
  EXPECT_EQ(tc.beta, 1.0);
  EXPECT_EQ(tc.gamma, 1.0);
}

TEST(SeriesCoefficients, AgreeWithExtendedPrecisionClosedForm) {
  // Closed forms in long double are accurate well away from zero; the
  // double-precision values must agree there and across the switch point.
  for (double phi = 0.02; phi <= 1.0; phi += 0.01) {
    const long double p = phi;
    const long double a = std::sin(p) / p;
    const long double b = std::pow(std::sin(p / 2) / (p / 2), 2.0L);
    const long double g = a / b;
    const long double dexp = (1 - a) / (p * p);
    const long double dinv = (1 - g) / (p * p);
    const long double dse3 = (1 / b + g - 2) / (p * p * p * p);
    const double tol = phi < 0.1 ? 1e-10 : 1e-13;
    EXPECT_NEAR(coeff::dexp(phi), static_cast<double>(dexp), tol) << phi;
    EXPECT_NEAR(coeff::dexp_inv(phi), static_cast<double>(dinv), tol) << phi;
    EXPECT_NEAR(coeff::dexp_inv_se3(phi), static_cast<double>(dse3), tol) << phi;
  }
}

TEST(SeriesCoefficients, LimitsAtZero) {
  EXPECT_DOUBLE_EQ(coeff::dexp(0.0), 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(coeff::dexp_inv(0.0), 1.0 / 12.0);
  EXPECT_DOUBLE_EQ(coeff::dexp_inv_se3(0.0), 1.0 / 360.0);
}

TEST(SeriesCoefficients, ContinuousAcrossSwitchPoint) {
  const double below = std::nextafter(kSeriesAngle, 0.0);
  EXPECT_NEAR(coeff::dexp(below), coeff::dexp(kSeriesAngle), 1e-13);
  EXPECT_NEAR(coeff::dexp_inv(below), coeff::dexp_inv(kSeriesAngle), 1e-13);
  EXPECT_NEAR(coeff::dexp_inv_se3(below), coeff::dexp_inv_se3(kSeriesAngle),
              1e-13);
}

TEST(ExpSO3, IdentityAndQuarterTurn) {
  EXPECT_TRUE(exp_so3(Vec3::Zero()).isApprox(Mat3::Identity(), 0.0));
  EXPECT_LT((exp_so3(Vec3(kPi / 2, 0, 0)) - quarter_turn_e1()).norm(), 1e-15);
}

TEST(ExpSO3, MatchesPowerSeriesOnUnitSphere) {
  oracle::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const Vec3 x = rng.unit_vector();
    EXPECT_LT((exp_so3(x) - oracle::power_series_exp(skew(x))).norm(), 1e-13);
  }
}

TEST(ExpSO3, OrthonormalAndInverseIsNegation) {
  oracle::Rng rng(12);
  for (int i = 0; i < 500; ++i) {
    const Vec3 x = rng.vector(0.0, 6.0);
    const Mat3 R = exp_so3(x);
    EXPECT_LT((R.transpose() * R - Mat3::Identity()).norm(), 1e-12);
    EXPECT_NEAR(R.determinant(), 1.0, 1e-12);
    EXPECT_LT((R * exp_so3(-x) - Mat3::Identity()).norm(), 1e-13);
  }
}

TEST(LogSO3, IdentityAndQuarterTurn) {
  EXPECT_EQ(log_so3(Mat3::Identity()), Vec3::Zero());
  EXPECT_LT((log_so3(quarter_turn_e1()) - Vec3(kPi / 2, 0, 0)).norm(), 1e-15);
}

TEST(LogSO3, RoundTrip) {
  oracle::Rng rng(13);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 x = rng.vector(0.0, kPi - 0.01);
    EXPECT_LT((log_so3(exp_so3(x)) - x).norm(), 1e-10);
  }
  for (int i = 0; i < 200; ++i) {
    const Vec3 x = rng.vector(kPi - 1e-3, kPi - 1e-6);
    EXPECT_LT((log_so3(exp_so3(x)) - x).norm(), 1e-10);
  }
}

TEST(LogSO3, NearHalfTurnUsesSymmetricPart) {
  oracle::Rng rng(14);
  for (int i = 0; i < 200; ++i) {
    const Vec3 n = rng.unit_vector();
    const Mat3 R = oracle::axis_angle_rotation(n, kPi);
    const SO3Log lg = log_so3_checked(R);
    EXPECT_TRUE(lg.near_pi);
    EXPECT_NEAR(lg.x.norm(), kPi, 1e-12);
    EXPECT_LT((exp_so3(lg.x) - R).norm(), 1e-10);
  }
  EXPECT_FALSE(log_so3_checked(exp_so3(Vec3(1, 0, 0))).near_pi);
}

TEST(DexpSO3, IdentityAtZero) {
  EXPECT_EQ(dexp_so3(Vec3::Zero()), Mat3::Identity());
  EXPECT_EQ(dexp_inv_so3(Vec3::Zero()), Mat3::Identity());
}

TEST(DexpSO3, RightTrivializedDirectionalDerivative) {
  oracle::Rng rng(15);
  auto f = [](const Vec3& v) { return oracle::power_series_exp(skew(v), 40); };
  for (int i = 0; i < 200; ++i) {
    const Vec3 x = rng.vector(0.0, 3.0);
    const Vec3 y = rng.box(1.0);
    const Mat3 D = directional_derivative(f, x, y);
    EXPECT_LT((D - skew(dexp_so3(x) * y) * exp_so3(x)).norm(), 1e-6);
  }
}

TEST(DexpSO3, ProductWithInverseIsIdentity) {
  oracle::Rng rng(16);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 x = rng.vector(0.0, 3.0);
    EXPECT_LT((dexp_so3(x) * dexp_inv_so3(x) - Mat3::Identity()).norm(), 1e-12);
  }
}

TEST(DexpInvSO3, ChartBoundary) {
  EXPECT_THROW(dexp_inv_so3(Vec3(0, 0, kTwoPi - 1e-12)), ChartBoundary);
  EXPECT_NO_THROW(dexp_inv_so3(Vec3(0, 0, kPi)));
}

TEST(CaySO3, IdentityAndQuarterTurn) {
  EXPECT_EQ(cay_so3(Vec3::Zero()), Mat3::Identity());
  EXPECT_LT((cay_so3(Vec3(1, 0, 0)) - quarter_turn_e1()).norm(), 1e-15);
}

TEST(CaySO3, MatchesAxisAngleRotation) {
  oracle::Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 c = rng.vector(1e-3, 5.0);
    const Mat3 ref = oracle::axis_angle_rotation(c, 2.0 * std::atan(c.norm()));
    EXPECT_LT((cay_so3(c) - ref).norm(), 1e-12);
  }
}

TEST(DcaySO3, ValuesAtZero) {
  EXPECT_EQ(dcay_so3(Vec3::Zero()), 2.0 * Mat3::Identity());
  EXPECT_EQ(dcay_inv_so3(Vec3::Zero()), 0.5 * Mat3::Identity());
}

TEST(DcaySO3, ProductWithInverseIsIdentity) {
  oracle::Rng rng(18);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 c = rng.vector(0.0, 5.0);
    EXPECT_LT((dcay_so3(c) * dcay_inv_so3(c) - Mat3::Identity()).norm(), 1e-13);
  }
}

TEST(DcaySO3, RightTrivializedDirectionalDerivative) {
  oracle::Rng rng(19);
  auto f = [](const Vec3& c) {
    const Mat3 C = skew(c);
    return Mat3((Mat3::Identity() - C).inverse() * (Mat3::Identity() + C));
  };
  for (int i = 0; i < 200; ++i) {
    const Vec3 c = rng.vector(0.0, 3.0);
    const Vec3 y = rng.box(1.0);
    const Mat3 D = directional_derivative(f, c, y);
    EXPECT_LT((D - skew(dcay_so3(c) * y) * cay_so3(c)).norm(), 1e-6);
  }
}

TEST(DcaySO3, TransposeIsDifferentialAtNegatedArgument) {
  oracle::Rng rng(20);
  for (int i = 0; i < 100; ++i) {
    const Vec3 c = rng.vector(0.0, 3.0);
    EXPECT_LT((dcay_so3(-c) - dcay_so3(c).transpose()).norm(), 1e-15);
    EXPECT_LT((dcay_inv_so3(-c) - dcay_inv_so3(c).transpose()).norm(), 1e-15);
  }
}

TEST(QuatMul, IdentityAndConjugate) {
  const UnitQuaternion e;
  const UnitQuaternion ee = quat_mul(e, e);
  EXPECT_EQ(ee.p0, 1.0);
  EXPECT_EQ(ee.p, Vec3::Zero());
  oracle::Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const UnitQuaternion q = rng.quaternion();
    const UnitQuaternion r = quat_mul(q, q.conjugate());
    EXPECT_NEAR(r.p0, 1.0, 1e-15);
    EXPECT_LT(r.p.norm(), 1e-15);
  }
}

TEST(QuatMul, HomomorphismAndNormPreservation) {
  oracle::Rng rng(22);
  for (int i = 0; i < 1000; ++i) {
    const UnitQuaternion a = rng.quaternion();
    const UnitQuaternion b = rng.quaternion();
    const UnitQuaternion ab = quat_mul(a, b);
    EXPECT_NEAR(ab.norm(), 1.0, 1e-14);
    EXPECT_LT((quat_to_rotmat(ab) - quat_to_rotmat(a) * quat_to_rotmat(b)).norm(),
              1e-12);
  }
}

TEST(ExpSp1, Examples) {
  const UnitQuaternion e = exp_sp1(Vec3::Zero());
  EXPECT_EQ(e.p0, 1.0);
  EXPECT_EQ(e.p, Vec3::Zero());
  const UnitQuaternion h = exp_sp1(Vec3(kPi, 0, 0));
  EXPECT_NEAR(h.p0, 0.0, 1e-16);
  EXPECT_LT((h.p - Vec3(1, 0, 0)).norm(), 1e-16);
}

TEST(ExpSp1, ConsistentWithExpSO3) {
  oracle::Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 x = rng.vector(0.0, 6.0);
    const UnitQuaternion q = exp_sp1(x);
    EXPECT_NEAR(q.norm(), 1.0, 1e-15);
    EXPECT_LT((quat_to_rotmat(q) - exp_so3(x)).norm(), 1e-12);
  }
}

TEST(QuatToRotmat, ExamplesAndDoubleCover) {
  EXPECT_EQ(quat_to_rotmat(UnitQuaternion{}), Mat3::Identity());
  EXPECT_EQ(quat_to_rotmat(UnitQuaternion{0.0, Vec3(1, 0, 0)}),
            Mat3(Vec3(1, -1, -1).asDiagonal()));
  oracle::Rng rng(24);
  for (int i = 0; i < 100; ++i) {
    const UnitQuaternion q = rng.quaternion();
    EXPECT_LT((quat_to_rotmat(-q) - quat_to_rotmat(q)).norm(), 1e-15);
  }
}

TEST(QuatRotate, MatchesRotationMatrix) {
  oracle::Rng rng(25);
  for (int i = 0; i < 100; ++i) {
    const UnitQuaternion q = rng.quaternion();
    const Vec3 v = rng.box(2.0);
    EXPECT_LT((quat_rotate(q, v) - quat_to_rotmat(q) * v).norm(), 1e-14);
  }
}

TEST(RotmatToQuat, RoundTripWithNonNegativeScalar) {
  oracle::Rng rng(26);
  for (int i = 0; i < 200; ++i) {
    const UnitQuaternion q = rng.quaternion();
    const UnitQuaternion back = rotmat_to_quat(quat_to_rotmat(q));
    EXPECT_GE(back.p0, 0.0);
    const double s = q.p0 >= 0.0 ? 1.0 : -1.0;
    EXPECT_NEAR(back.p0, s * q.p0, 1e-10);
    EXPECT_LT((back.p - s * q.p).norm(), 1e-10);
  }
}

TEST(RodriguesToQuat, Examples) {
  const UnitQuaternion e = rodrigues_to_quat(Vec3::Zero());
  EXPECT_EQ(e.p0, 1.0);
  EXPECT_EQ(e.p, Vec3::Zero());
  const UnitQuaternion q = rodrigues_to_quat(Vec3(1, 0, 0));
  EXPECT_NEAR(q.p0, std::sqrt(0.5), 1e-16);
  EXPECT_LT((q.p - Vec3(std::sqrt(0.5), 0, 0)).norm(), 1e-16);
}

TEST(RodriguesToQuat, UnitNormAndCayleyConsistency) {
  oracle::Rng rng(27);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 c = rng.vector(0.0, 5.0);
    const UnitQuaternion q = rodrigues_to_quat(c);
    EXPECT_NEAR(q.norm(), 1.0, 1e-14);
    EXPECT_LT((quat_to_rotmat(q) - cay_so3(c)).norm(), 1e-12);
  }
}

TEST(WrapRotationVector, EquivalentRotationWithinPi) {
  oracle::Rng rng(28);
  for (int i = 0; i < 500; ++i) {
    const Vec3 x = rng.vector(0.0, 20.0);
    const Vec3 w = wrap_rotation_vector(x);
    EXPECT_LE(w.norm(), kPi + 1e-12);
    EXPECT_LT((exp_so3(w) - exp_so3(x)).norm(), 1e-11);
  }
}

TEST(BchSO3, IdentityElement) {
  oracle::Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    const Vec3 x = rng.vector(0.0, 3.0);
    EXPECT_LT((bch_so3(x, Vec3::Zero()) - x).norm(), 1e-14);
    EXPECT_LT((bch_so3(Vec3::Zero(), x) - x).norm(), 1e-14);
  }
}

TEST(BchSO3, CoaxialAnglesAdd) {
  const Vec3 n = Vec3(1, 2, -2).normalized();
  EXPECT_LT((bch_so3(0.7 * n, 1.9 * n) - 2.6 * n).norm(), 1e-14);
  EXPECT_LT((bch_so3(-0.4 * n, 1.1 * n) - 0.7 * n).norm(), 1e-14);
  // Beyond pi the result is rewrapped.
  EXPECT_LT((bch_so3(2.0 * n, 2.0 * n) - (4.0 - kTwoPi) * n).norm(), 1e-13);
}

TEST(BchSO3, ComposesRotations) {
  oracle::Rng rng(30);
  int checked = 0;
  while (checked < 1000) {
    const Vec3 x1 = rng.vector(0.0, kPi);
    const Vec3 x2 = rng.vector(0.0, kPi);
    const Mat3 R = oracle::axis_angle_rotation(x1, x1.norm()) *
                   oracle::axis_angle_rotation(x2, x2.norm());
    if (oracle::rotation_distance(Mat3::Identity(), R) > kPi - 1e-3) continue;
    EXPECT_LT((exp_so3(bch_so3(x1, x2)) - R).norm(), 1e-10);
    ++checked;
  }
}

TEST(BchSO3, CompoundFullTurnThrows) {
  const Vec3 n(0, 0, 1);
  EXPECT_THROW(bch_so3(kPi * n, kPi * n), CompoundAnglePi);
}

TEST(ComposeAxisAngleRodrigues, Examples) {
  const Vec3 rho(0.3, -1.2, 0.5);
  EXPECT_LT((compose_axisangle_rodrigues(rho, Vec3::Zero()) - rho).norm(), 1e-14);
  const Vec3 c(0.4, 0.1, -0.8);
  const Vec3 expect = 2.0 * std::atan(c.norm()) * c / c.norm();
  EXPECT_LT((compose_axisangle_rodrigues(Vec3::Zero(), c) - expect).norm(), 1e-14);
}

TEST(ComposeAxisAngleRodrigues, ComposesRotations) {
  oracle::Rng rng(31);
  int checked = 0;
  while (checked < 1000) {
    const Vec3 rho = rng.vector(0.0, kPi);
    const Vec3 c = rng.vector(0.0, 5.0);
    const Mat3 R = oracle::axis_angle_rotation(rho, rho.norm()) *
                   oracle::axis_angle_rotation(c, 2.0 * std::atan(c.norm()));
    if (oracle::rotation_distance(Mat3::Identity(), R) > kPi - 1e-3) continue;
    EXPECT_LT((exp_so3(compose_axisangle_rodrigues(rho, c)) - R).norm(), 1e-10);
    ++checked;
  }
}
