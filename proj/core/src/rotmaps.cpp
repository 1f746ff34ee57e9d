#include <mbslie/rotmaps.hpp>

#include <algorithm>
#include <cmath>

#include <mbslie/errors.hpp>

namespace mbslie {

double sinc(double phi) {
  if (std::abs(phi) < kSmallAngle) {
    const double p2 = phi * phi;
    return 1.0 - p2 / 6.0 + p2 * p2 / 120.0;
  }
  return std::sin(phi) / phi;
}

TrigCoefficients trig_coefficients(double phi) {
  TrigCoefficients tc;
  tc.alpha = sinc(phi);
  const double s = sinc(0.5 * phi);
  tc.beta = s * s;
  tc.gamma = tc.alpha / tc.beta;
  return tc;
}

namespace coeff {

// Series through phi^10; truncation error at kSeriesAngle is below 1e-17.
double dexp(double phi) {
  if (std::abs(phi) < kSeriesAngle) {
    const double p2 = phi * phi;
    return 1.0 / 6.0 +
           p2 * (-1.0 / 120.0 +
                 p2 * (1.0 / 5040.0 +
                       p2 * (-1.0 / 362880.0 +
                             p2 * (1.0 / 39916800.0 - p2 / 6227020800.0))));
  }
  return (1.0 - std::sin(phi) / phi) / (phi * phi);
}

double dexp_inv(double phi) {
  if (std::abs(phi) < kSeriesAngle) {
    const double p2 = phi * phi;
    return 1.0 / 12.0 +
           p2 * (1.0 / 720.0 +
                 p2 * (1.0 / 30240.0 +
                       p2 * (1.0 / 1209600.0 +
                             p2 * (1.0 / 47900160.0 +
                                   p2 * 691.0 / 1307674368000.0))));
  }
  const TrigCoefficients tc = trig_coefficients(phi);
  return (1.0 - tc.gamma) / (phi * phi);
}

double dexp_inv_se3(double phi) {
  if (std::abs(phi) < kSeriesAngle) {
    const double p2 = phi * phi;
    return 1.0 / 360.0 +
           p2 * (1.0 / 7560.0 +
                 p2 * (1.0 / 201600.0 +
                       p2 * (1.0 / 5987520.0 +
                             p2 * (691.0 / 130767436800.0 +
                                   p2 / 6227020800.0))));
  }
  const TrigCoefficients tc = trig_coefficients(phi);
  const double p2 = phi * phi;
  return (1.0 / tc.beta + tc.gamma - 2.0) / (p2 * p2);
}

}  // namespace coeff

RotationMatrix exp_so3(const Vec3& x) {
  const TrigCoefficients tc = trig_coefficients(x.norm());
  const Mat3 X = skew(x);
  return Mat3::Identity() + tc.alpha * X + 0.5 * tc.beta * X * X;
}

SO3Log log_so3_checked(const RotationMatrix& R) {
  SO3Log out;
  const double cos_phi = std::clamp(0.5 * (R.trace() - 1.0), -1.0, 1.0);
  const Vec3 w = unskew(R);  // sin(phi) * n
  const double sin_phi = w.norm();
  const double phi = std::atan2(sin_phi, cos_phi);

  if (R.trace() + 1.0 > 1e-8) {
    out.x = w / sinc(phi);
    return out;
  }

  // trace(R) ~ -1: the skew part carries almost no axis information.
  out.near_pi = true;
  const Mat3 B = 0.5 * (R + R.transpose()) - cos_phi * Mat3::Identity();
  Eigen::Index i = 0;
  B.diagonal().maxCoeff(&i);
  Vec3 n = B.col(i) / std::sqrt(std::max(B(i, i), 0.0));
  n.normalize();
  if (n.dot(w) < 0.0) n = -n;
  out.x = phi * n;
  return out;
}

Vec3 log_so3(const RotationMatrix& R) { return log_so3_checked(R).x; }

Mat3 dexp_so3(const Vec3& x) {
  const double phi = x.norm();
  const TrigCoefficients tc = trig_coefficients(phi);
  const Mat3 X = skew(x);
  return Mat3::Identity() + 0.5 * tc.beta * X + coeff::dexp(phi) * X * X;
}

Mat3 dexp_inv_so3(const Vec3& x) {
  const double phi = x.norm();
  if (phi >= kTwoPi - kChartTol) {
    throw ChartBoundary("dexp_inv_so3: |x| = " + std::to_string(phi) +
                        " at the 2*pi chart boundary");
  }
  const Mat3 X = skew(x);
  return Mat3::Identity() - 0.5 * X + coeff::dexp_inv(phi) * X * X;
}

RotationMatrix cay_so3(const Vec3& c) {
  const double sigma = 2.0 / (1.0 + c.squaredNorm());
  const Mat3 C = skew(c);
  return Mat3::Identity() + sigma * (C + C * C);
}

Mat3 dcay_so3(const Vec3& c) {
  const double sigma = 2.0 / (1.0 + c.squaredNorm());
  return sigma * (Mat3::Identity() + skew(c));
}

Mat3 dcay_inv_so3(const Vec3& c) {
  const double sigma = 2.0 / (1.0 + c.squaredNorm());
  const Mat3 C = skew(c);
  return Mat3::Identity() / sigma + 0.5 * (C * C - C);
}

UnitQuaternion quat_mul(const UnitQuaternion& a, const UnitQuaternion& b) {
  return {a.p0 * b.p0 - a.p.dot(b.p), a.p0 * b.p + b.p0 * a.p + a.p.cross(b.p)};
}

UnitQuaternion exp_sp1(const Vec3& x) {
  const double half = 0.5 * x.norm();
  return {std::cos(half), 0.5 * sinc(half) * x};
}

RotationMatrix quat_to_rotmat(const UnitQuaternion& q) {
  const Mat3 P = skew(q.p);
  return Mat3::Identity() + 2.0 * (q.p0 * P + P * P);
}

UnitQuaternion rotmat_to_quat(const RotationMatrix& R) {
  return exp_sp1(log_so3(R));
}

Vec3 quat_rotate(const UnitQuaternion& q, const Vec3& v) {
  return quat_mul(quat_mul(q, {0.0, v}), q.conjugate()).p;
}

UnitQuaternion rodrigues_to_quat(const Vec3& c) {
  const double k = std::sqrt(1.0 / (1.0 + c.squaredNorm()));  // sqrt(sigma/2)
  return {k, k * c};
}

Vec3 wrap_rotation_vector(const Vec3& x) {
  const double phi = x.norm();
  if (phi <= kPi) return x;
  return x * (std::remainder(phi, kTwoPi) / phi);
}

namespace {

// Shared tail of both composition formulas: given the vector part of the
// compound quaternion, return the compound angle. The angle is taken from
// atan2 of (|vector part|, scalar part), which equals 2*arccos(scalar part)
// for a unit quaternion but stays accurate near 0 and 2*pi.
double compound_angle(double q0, const Vec3& qv) {
  return 2.0 * std::atan2(qv.norm(), q0);
}

Vec3 rewrap(const Vec3& x, double phi) {
  if (phi <= kPi) return x;
  return x * ((phi - kTwoPi) / phi);
}

void check_compound(double phi, const char* who) {
  if (phi >= kTwoPi - 1e-9) {
    throw CompoundAnglePi(std::string(who) +
                          ": compound rotation angle reached 2*pi");
  }
}

}  // namespace

Vec3 bch_so3(const Vec3& x1, const Vec3& x2) {
  const double h1 = 0.5 * x1.norm();
  const double h2 = 0.5 * x2.norm();
  const double s1 = sinc(h1), c1 = std::cos(h1);
  const double s2 = sinc(h2), c2 = std::cos(h2);

  const double q0 = c1 * c2 - 0.25 * s1 * s2 * x1.dot(x2);
  const Vec3 x12 = x1.cross(x2);
  const Vec3 qv = 0.5 * s1 * c2 * x1 + 0.5 * c1 * s2 * x2 + 0.25 * s1 * s2 * x12;
  const double phi = compound_angle(q0, qv);
  check_compound(phi, "bch_so3");

  const double s = sinc(0.5 * phi);
  const double alpha = s1 * c2 / s;
  const double beta = c1 * s2 / s;
  const double gamma = s1 * s2 / (2.0 * s);
  return rewrap(alpha * x1 + beta * x2 + gamma * x12, phi);
}

Vec3 compose_axisangle_rodrigues(const Vec3& rho, const Vec3& c) {
  const double h1 = 0.5 * rho.norm();
  const double s1 = sinc(h1), c1 = std::cos(h1);
  const double k = std::sqrt(1.0 / (1.0 + c.squaredNorm()));  // sqrt(sigma/2)

  const double q0 = k * c1 - 0.5 * k * s1 * rho.dot(c);
  const Vec3 rc = rho.cross(c);
  const Vec3 qv = 0.5 * k * s1 * rho + k * c1 * c + 0.5 * k * s1 * rc;
  const double phi = compound_angle(q0, qv);
  check_compound(phi, "compose_axisangle_rodrigues");

  const double s = sinc(0.5 * phi);
  const double alpha = k * s1 / s;
  const double beta = 2.0 * k * c1 / s;
  const double gamma = k * s1 / s;
  return rewrap(alpha * rho + beta * c + gamma * rc, phi);
}

}  // namespace mbslie
