#pragma once

// Poses and coordinate maps on SE(3) and on the direct products
// SO(3) x R^3 and Sp(1) x R^3.

#include <utility>

#include <mbslie/rotmaps.hpp>
#include <mbslie/types.hpp>

namespace mbslie {

/// Selects how two poses compose.
///   DirectProduct: (R1 R2, r1 + r2)
///   SemiDirect:    (R1 R2, r1 + R1 r2)   (SE(3))
enum class GroupModel { DirectProduct, SemiDirect };

/// BodyFixed twists resolve both parts in the body frame. Mixed twists pair
/// a body-fixed angular velocity with the IFR velocity of the frame origin.
enum class TwistFrame { BodyFixed, Mixed };

constexpr TwistFrame frame_for(GroupModel g) {
  return g == GroupModel::SemiDirect ? TwistFrame::BodyFixed : TwistFrame::Mixed;
}

const char* to_string(GroupModel g);
const char* to_string(TwistFrame f);

struct Pose {
  RotationMatrix R = RotationMatrix::Identity();
  Vec3 r = Vec3::Zero();

  static Pose identity() { return {}; }

  /// [[R, r], [0, 1]]
  Mat4 homogeneous() const;
  static Pose from_homogeneous(const Mat4& H);
};

/// Canonical coordinates (x, y) of the SE(3) exponential.
struct ScrewCoords {
  Vec3 x = Vec3::Zero();
  Vec3 y = Vec3::Zero();
};

/// Coordinates (c, d) of the SE(3) Cayley map.
struct ExtRodriguesCoords {
  Vec3 c = Vec3::Zero();
  Vec3 d = Vec3::Zero();
};

/// Velocity of one body, ordered (angular, linear).
struct Twist {
  Vec3 w = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  TwistFrame frame = TwistFrame::BodyFixed;

  Vec6 stacked() const;
  static Twist from_stacked(const Vec6& V, TwistFrame frame);

  /// Re-expresses the twist of a body with orientation R in another frame.
  Twist in_frame(TwistFrame target, const RotationMatrix& R) const;
};

Pose compose(GroupModel g, const Pose& a, const Pose& b);
Pose inverse(GroupModel g, const Pose& a);

/// (exp_so3(x), dexp_so3(x) y)
Pose exp_se3(const ScrewCoords& X);
/// Inverse of the right-trivialized differential of exp_se3. Block lower
/// triangular with dexp_inv_so3(x) on the diagonal.
Mat6 dexp_inv_se3(const ScrewCoords& X);

/// (cay_so3(c), (I + cay_so3(c)) d)
Pose cay_se3(const ExtRodriguesCoords& X);
/// Inverse of the right-trivialized differential of cay_se3.
Mat6 dcay_inv_se3(const ExtRodriguesCoords& X);

/// Exponential on SO(3) x R^3: (exp_so3(x), r).
Pose exp_dp(const Vec3& x, const Vec3& r);
/// blockdiag(dexp_so3(x), I)
Mat6 dexp_dp(const Vec3& x);

/// Exponential on Sp(1) x R^3: (exp_sp1(x), r).
std::pair<UnitQuaternion, Vec3> exp_sp1xr3(const Vec3& x, const Vec3& r);

}  // namespace mbslie
