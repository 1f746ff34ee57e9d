#pragma once

// Closed-form coordinate maps on SO(3) and Sp(1): exponential and Cayley
// charts, their right-trivialized differentials, quaternion algebra and the
// closed-form composition rules for scaled rotation vectors.
//
// Conventions: x is a scaled rotation vector (angle * unit axis), c a
// Gibbs-Rodrigues vector (tan(angle/2) * unit axis). A right-trivialized
// differential d of a chart psi satisfies
//   d/ds psi(x + s y)|_{s=0} = skew(d_x y) * psi(x),
// and body-fixed angular velocity follows as omega = d_{-x} xdot.

#include <cmath>

#include <mbslie/types.hpp>

namespace mbslie {

/// Below this angle the trig coefficients switch to Taylor series.
inline constexpr double kSmallAngle = 1e-4;
/// Below this angle the coefficients with 1/phi^2 and 1/phi^4 denominators
/// switch to Taylor series.
inline constexpr double kSeriesAngle = 0.25;
/// Distance to 2*pi at which the exponential chart is treated as singular.
inline constexpr double kChartTol = 1e-6;

struct UnitQuaternion {
  double p0 = 1.0;
  Vec3 p = Vec3::Zero();

  static UnitQuaternion identity() { return {}; }

  UnitQuaternion conjugate() const { return {p0, -p}; }
  UnitQuaternion operator-() const { return {-p0, -p}; }
  double norm() const { return std::sqrt(p0 * p0 + p.squaredNorm()); }
};

/// alpha = sinc(phi), beta = sinc^2(phi/2), gamma = alpha / beta.
struct TrigCoefficients {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
};

double sinc(double phi);
TrigCoefficients trig_coefficients(double phi);

// Coefficients with removable singularities at phi = 0.
namespace coeff {
/// (1 - alpha) / phi^2
double dexp(double phi);
/// (1 - gamma) / phi^2
double dexp_inv(double phi);
/// (1/beta + gamma - 2) / phi^4
double dexp_inv_se3(double phi);
}  // namespace coeff

RotationMatrix exp_so3(const Vec3& x);

struct SO3Log {
  Vec3 x = Vec3::Zero();
  /// Set when trace(R) is within tolerance of -1 and the axis was extracted
  /// from the symmetric part instead of the skew part.
  bool near_pi = false;
};

/// Principal logarithm, |x| in [0, pi].
SO3Log log_so3_checked(const RotationMatrix& R);
Vec3 log_so3(const RotationMatrix& R);

Mat3 dexp_so3(const Vec3& x);
/// Throws ChartBoundary when |x| >= 2*pi - kChartTol.
Mat3 dexp_inv_so3(const Vec3& x);

RotationMatrix cay_so3(const Vec3& c);
Mat3 dcay_so3(const Vec3& c);
Mat3 dcay_inv_so3(const Vec3& c);

UnitQuaternion quat_mul(const UnitQuaternion& a, const UnitQuaternion& b);
UnitQuaternion exp_sp1(const Vec3& x);
RotationMatrix quat_to_rotmat(const UnitQuaternion& q);
/// Sign is chosen so that p0 >= 0.
UnitQuaternion rotmat_to_quat(const RotationMatrix& R);
/// Q * (0, v) * Q^*
Vec3 quat_rotate(const UnitQuaternion& q, const Vec3& v);
/// Gnomonic projection: unit quaternion of the rotation with Rodrigues
/// vector c, p0 = sqrt(sigma/2), p = sqrt(sigma/2) c.
UnitQuaternion rodrigues_to_quat(const Vec3& c);

/// Maps x onto the equivalent rotation vector with |x| <= pi.
Vec3 wrap_rotation_vector(const Vec3& x);

/// Scaled rotation vector of exp(x1) exp(x2), wrapped to |x| <= pi.
/// Throws CompoundAnglePi when the compound angle reaches 2*pi.
Vec3 bch_so3(const Vec3& x1, const Vec3& x2);

/// Scaled rotation vector of exp(rho) cay(c), wrapped to |x| <= pi.
Vec3 compose_axisangle_rodrigues(const Vec3& rho, const Vec3& c);

}  // namespace mbslie
