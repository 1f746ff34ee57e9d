#include <mbslie/motiongroups.hpp>

namespace mbslie {

const char* to_string(GroupModel g) {
  return g == GroupModel::SemiDirect ? "SemiDirect" : "DirectProduct";
}

const char* to_string(TwistFrame f) {
  return f == TwistFrame::BodyFixed ? "BodyFixed" : "Mixed";
}

Mat4 Pose::homogeneous() const {
  Mat4 H = Mat4::Identity();
  H.topLeftCorner<3, 3>() = R;
  H.topRightCorner<3, 1>() = r;
  return H;
}

Pose Pose::from_homogeneous(const Mat4& H) {
  return {H.topLeftCorner<3, 3>(), H.topRightCorner<3, 1>()};
}

Vec6 Twist::stacked() const {
  Vec6 V;
  V << w, v;
  return V;
}

Twist Twist::from_stacked(const Vec6& V, TwistFrame frame) {
  return {V.head<3>(), V.tail<3>(), frame};
}

Twist Twist::in_frame(TwistFrame target, const RotationMatrix& R) const {
  if (target == frame) return *this;
  if (target == TwistFrame::Mixed) return {w, R * v, target};
  return {w, R.transpose() * v, target};
}

Pose compose(GroupModel g, const Pose& a, const Pose& b) {
  if (g == GroupModel::SemiDirect) return {a.R * b.R, a.r + a.R * b.r};
  return {a.R * b.R, a.r + b.r};
}

Pose inverse(GroupModel g, const Pose& a) {
  const Mat3 Rt = a.R.transpose();
  if (g == GroupModel::SemiDirect) return {Rt, -(Rt * a.r)};
  return {Rt, -a.r};
}

Pose exp_se3(const ScrewCoords& X) {
  return {exp_so3(X.x), dexp_so3(X.x) * X.y};
}

Mat6 dexp_inv_se3(const ScrewCoords& X) {
  const double phi = X.x.norm();
  const Mat3 A = dexp_inv_so3(X.x);
  const Mat3 xt = skew(X.x);
  const Mat3 yt = skew(X.y);
  const Mat3 B = -0.5 * yt + coeff::dexp_inv(phi) * (xt * yt + yt * xt) +
                 X.x.dot(X.y) * coeff::dexp_inv_se3(phi) * xt * xt;
  Mat6 D = Mat6::Zero();
  D.topLeftCorner<3, 3>() = A;
  D.bottomLeftCorner<3, 3>() = B;
  D.bottomRightCorner<3, 3>() = A;
  return D;
}

Pose cay_se3(const ExtRodriguesCoords& X) {
  const Mat3 R = cay_so3(X.c);
  return {R, (Mat3::Identity() + R) * X.d};
}

Mat6 dcay_inv_se3(const ExtRodriguesCoords& X) {
  const Mat3 I = Mat3::Identity();
  const Mat3 ct = skew(X.c);
  Mat6 D = Mat6::Zero();
  D.topLeftCorner<3, 3>() = dcay_inv_so3(X.c);
  D.bottomLeftCorner<3, 3>() = 0.5 * (ct - I) * skew(X.d);
  D.bottomRightCorner<3, 3>() = 0.5 * (I - ct);
  return D;
}

Pose exp_dp(const Vec3& x, const Vec3& r) { return {exp_so3(x), r}; }

Mat6 dexp_dp(const Vec3& x) {
  Mat6 D = Mat6::Identity();
  D.topLeftCorner<3, 3>() = dexp_so3(x);
  return D;
}

std::pair<UnitQuaternion, Vec3> exp_sp1xr3(const Vec3& x, const Vec3& r) {
  return {exp_sp1(x), r};
}

}  // namespace mbslie
