#pragma once

// Rigid bodies connected by spherical joints under uniform gravity.

#include <vector>

#include <mbslie/dynamics.hpp>
#include <mbslie/lgt.hpp>
#include <mbslie/types.hpp>

namespace mbslie::models {

struct BodyParams {
  double mass = 1.0;
  /// Principal moments about the centre of mass, resolved in the body frame.
  Vec3 inertia = Vec3::Ones();
  /// Centre of mass relative to the body-frame origin, body frame.
  Vec3 com_offset = Vec3::Zero();
  /// Gravitational acceleration in the IFR.
  Vec3 gravity = Vec3::Zero();
};

/// Throws std::invalid_argument unless mass and inertia are positive.
void validate(const BodyParams& p);

/// Spherical joint between a point of body_a and a point of body_b.
/// body_a == kGround fixes point_a in the IFR.
struct SphericalJoint {
  static constexpr int kGround = -1;

  int body_a = kGround;
  Vec3 point_a = Vec3::Zero();
  int body_b = 0;
  Vec3 point_b = Vec3::Zero();
};

class RigidBodySystem final : public MbsModel {
 public:
  RigidBodySystem(std::vector<BodyParams> bodies,
                  std::vector<SphericalJoint> joints, GroupModel group);

  std::size_t num_bodies() const override { return bodies_.size(); }
  GroupModel group() const override { return group_; }
  std::size_t num_constraints() const override { return 3 * joints_.size(); }

  MatX mass_matrix(const Configuration& C) const override;
  VecX forces(const Configuration& C, const VecX& V, double t) const override;
  VecX constraints(const Configuration& C) const override;
  MatX jacobian(const Configuration& C) const override;
  VecX adot_v(const Configuration& C, const VecX& V) const override;
  double energy(const Configuration& C, const VecX& V) const override;

  /// Total angular momentum about the IFR origin, resolved in the IFR.
  Vec3 angular_momentum(const Configuration& C, const VecX& V) const;

  /// Body-fixed mass matrix of body i about its frame origin.
  Mat6 body_mass_matrix(std::size_t i) const;

  const std::vector<BodyParams>& bodies() const { return bodies_; }
  const std::vector<SphericalJoint>& joints() const { return joints_; }

 private:
  Vec6 body_twist(const Pose& C, const Vec6& V) const;

  std::vector<BodyParams> bodies_;
  std::vector<SphericalJoint> joints_;
  GroupModel group_;
  std::vector<Mat6> body_mass_;
};

/// Single unconstrained body.
RigidBodySystem free_rigid_body(const BodyParams& params, GroupModel group);

/// Body whose point pin_point_body is held at anchor.
RigidBodySystem pinned_body(const BodyParams& params, const Vec3& pin_point_body,
                            GroupModel group, const Vec3& anchor = Vec3::Zero());

struct ChainJoints {
  /// Ground point of the first joint.
  Vec3 anchor = Vec3::Zero();
  /// Point of body 1 at the ground joint.
  Vec3 body1_at_ground = Vec3::Zero();
  /// Point of body 1 at the joint with body 2.
  Vec3 body1_at_body2 = Vec3::Zero();
  /// Point of body 2 at the joint with body 1.
  Vec3 body2_at_body1 = Vec3::Zero();
};

/// Ground - body 1 - body 2 chain of spherical joints.
RigidBodySystem two_body_chain(const BodyParams& params1,
                               const BodyParams& params2,
                               const ChainJoints& joints, GroupModel group);

/// Builds a state from per-body orientations and angular velocities.
/// Positions and IFR velocities of bodies not placed by a joint are taken
/// from the optional lists (default zero). Joints are processed in order and
/// place body_b so that the joint is closed at position and velocity level;
/// body_a must already be placed.
MbsState assemble_state(const RigidBodySystem& sys, AbsKind kind,
                        const std::vector<Vec3>& rotvecs,
                        const std::vector<Vec3>& omegas,
                        const std::vector<Vec3>& positions = {},
                        const std::vector<Vec3>& velocities = {});

}  // namespace mbslie::models
