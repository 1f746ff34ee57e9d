#include <mbslie/models.hpp>

#include <stdexcept>
#include <string>

namespace mbslie::models {

namespace {

Eigen::Index at(std::size_t i) { return static_cast<Eigen::Index>(6 * i); }

}  // namespace

void validate(const BodyParams& p) {
  if (!(p.mass > 0.0)) throw std::invalid_argument("mass must be positive");
  if (!(p.inertia.minCoeff() > 0.0)) {
    throw std::invalid_argument("principal inertias must be positive");
  }
  if (!p.com_offset.allFinite() || !p.gravity.allFinite()) {
    throw std::invalid_argument("body parameters must be finite");
  }
}

RigidBodySystem::RigidBodySystem(std::vector<BodyParams> bodies,
                                 std::vector<SphericalJoint> joints,
                                 GroupModel group)
    : bodies_(std::move(bodies)), joints_(std::move(joints)), group_(group) {
  const int n = static_cast<int>(bodies_.size());
  for (const BodyParams& b : bodies_) validate(b);
  for (const SphericalJoint& j : joints_) {
    if (j.body_a < SphericalJoint::kGround || j.body_a >= n || j.body_b < 0 ||
        j.body_b >= n || j.body_a == j.body_b) {
      throw std::invalid_argument("joint references an invalid body");
    }
  }
  body_mass_.reserve(bodies_.size());
  for (const BodyParams& b : bodies_) {
    const Mat3 S = skew(b.com_offset);
    Mat6 M;
    M << Mat3(b.inertia.asDiagonal()) - b.mass * S * S, b.mass * S,
        -b.mass * S, b.mass * Mat3::Identity();
    body_mass_.push_back(M);
  }
}

Mat6 RigidBodySystem::body_mass_matrix(std::size_t i) const {
  return body_mass_.at(i);
}

Vec6 RigidBodySystem::body_twist(const Pose& C, const Vec6& V) const {
  if (frame() == TwistFrame::BodyFixed) return V;
  Vec6 Vb;
  Vb << V.head<3>(), C.R.transpose() * V.tail<3>();
  return Vb;
}

MatX RigidBodySystem::mass_matrix(const Configuration& C) const {
  const std::size_t n = bodies_.size();
  MatX M = MatX::Zero(at(n), at(n));
  for (std::size_t i = 0; i < n; ++i) {
    Mat6 Mi = body_mass_[i];
    if (frame() == TwistFrame::Mixed) {
      const Mat3& R = C[i].R;
      Mi.topRightCorner<3, 3>() = Mi.topRightCorner<3, 3>() * R.transpose();
      Mi.bottomLeftCorner<3, 3>() = R * Mi.bottomLeftCorner<3, 3>();
    }
    M.block<6, 6>(at(i), at(i)) = Mi;
  }
  return M;
}

VecX RigidBodySystem::forces(const Configuration& C, const VecX& V,
                             double /*t*/) const {
  const std::size_t n = bodies_.size();
  VecX Q(at(n));
  for (std::size_t i = 0; i < n; ++i) {
    const BodyParams& b = bodies_[i];
    const Mat3& R = C[i].R;
    const Vec6 Vb = body_twist(C[i], V.segment<6>(at(i)));
    const Vec3 w = Vb.head<3>();
    const Vec3 v = Vb.tail<3>();
    const Vec6 h = body_mass_[i] * Vb;
    const Vec3 L = h.head<3>();
    const Vec3 P = h.tail<3>();
    const Vec3 f = b.mass * (R.transpose() * b.gravity);

    Vec6 Qb;
    Qb << -w.cross(L) - v.cross(P) + b.com_offset.cross(f), -w.cross(P) + f;
    if (frame() == TwistFrame::Mixed) {
      // Vb = T Vm with T = blockdiag(I, R^T); Tdot Vm = (0, -w x v).
      Vec6 tdot_v;
      tdot_v << Vec3::Zero(), -w.cross(v);
      Qb -= body_mass_[i] * tdot_v;
      Qb.tail<3>() = R * Qb.tail<3>();
    }
    Q.segment<6>(at(i)) = Qb;
  }
  return Q;
}

VecX RigidBodySystem::constraints(const Configuration& C) const {
  VecX g(3 * joints_.size());
  for (std::size_t k = 0; k < joints_.size(); ++k) {
    const SphericalJoint& j = joints_[k];
    const Vec3 pa = j.body_a == SphericalJoint::kGround
                        ? j.point_a
                        : Vec3(C[j.body_a].r + C[j.body_a].R * j.point_a);
    const Vec3 pb = C[j.body_b].r + C[j.body_b].R * j.point_b;
    g.segment<3>(static_cast<Eigen::Index>(3 * k)) = pb - pa;
  }
  return g;
}

MatX RigidBodySystem::jacobian(const Configuration& C) const {
  MatX A = MatX::Zero(3 * joints_.size(), at(bodies_.size()));
  auto point_jacobian = [&](int body, const Vec3& s) {
    Eigen::Matrix<double, 3, 6> J;
    const Mat3& R = C[body].R;
    J.leftCols<3>() = -R * skew(s);
    J.rightCols<3>() = frame() == TwistFrame::BodyFixed ? R : Mat3::Identity();
    return J;
  };
  for (std::size_t k = 0; k < joints_.size(); ++k) {
    const SphericalJoint& j = joints_[k];
    const auto row = static_cast<Eigen::Index>(3 * k);
    A.block<3, 6>(row, at(j.body_b)) += point_jacobian(j.body_b, j.point_b);
    if (j.body_a != SphericalJoint::kGround) {
      A.block<3, 6>(row, at(j.body_a)) -= point_jacobian(j.body_a, j.point_a);
    }
  }
  return A;
}

VecX RigidBodySystem::adot_v(const Configuration& C, const VecX& V) const {
  auto bias = [&](int body, const Vec3& s) -> Vec3 {
    const Vec6 Vi = V.segment<6>(at(static_cast<std::size_t>(body)));
    const Vec3 w = Vi.head<3>();
    Vec3 inner = w.cross(s);
    if (frame() == TwistFrame::BodyFixed) inner += Vi.tail<3>();
    return C[body].R * w.cross(inner);
  };
  VecX out(3 * joints_.size());
  for (std::size_t k = 0; k < joints_.size(); ++k) {
    const SphericalJoint& j = joints_[k];
    Vec3 b = bias(j.body_b, j.point_b);
    if (j.body_a != SphericalJoint::kGround) b -= bias(j.body_a, j.point_a);
    out.segment<3>(static_cast<Eigen::Index>(3 * k)) = b;
  }
  return out;
}

double RigidBodySystem::energy(const Configuration& C, const VecX& V) const {
  double e = 0.0;
  for (std::size_t i = 0; i < bodies_.size(); ++i) {
    const BodyParams& b = bodies_[i];
    const Vec6 Vb = body_twist(C[i], V.segment<6>(at(i)));
    e += 0.5 * Vb.dot(body_mass_[i] * Vb);
    e -= b.mass * b.gravity.dot(C[i].r + C[i].R * b.com_offset);
  }
  return e;
}

Vec3 RigidBodySystem::angular_momentum(const Configuration& C,
                                       const VecX& V) const {
  Vec3 h = Vec3::Zero();
  for (std::size_t i = 0; i < bodies_.size(); ++i) {
    const BodyParams& b = bodies_[i];
    const Mat3& R = C[i].R;
    const Vec6 Vb = body_twist(C[i], V.segment<6>(at(i)));
    const Vec3 w = Vb.head<3>();
    const Vec3 p_com = C[i].r + R * b.com_offset;
    const Vec3 v_com = R * (Vb.tail<3>() + w.cross(b.com_offset));
    h += R * (b.inertia.asDiagonal() * w) + b.mass * p_com.cross(v_com);
  }
  return h;
}

RigidBodySystem free_rigid_body(const BodyParams& params, GroupModel group) {
  return RigidBodySystem({params}, {}, group);
}

RigidBodySystem pinned_body(const BodyParams& params, const Vec3& pin_point_body,
                            GroupModel group, const Vec3& anchor) {
  SphericalJoint j;
  j.body_a = SphericalJoint::kGround;
  j.point_a = anchor;
  j.body_b = 0;
  j.point_b = pin_point_body;
  return RigidBodySystem({params}, {j}, group);
}

RigidBodySystem two_body_chain(const BodyParams& params1,
                               const BodyParams& params2,
                               const ChainJoints& joints, GroupModel group) {
  SphericalJoint ground{SphericalJoint::kGround, joints.anchor, 0,
                        joints.body1_at_ground};
  SphericalJoint link{0, joints.body1_at_body2, 1, joints.body2_at_body1};
  return RigidBodySystem({params1, params2}, {ground, link}, group);
}

MbsState assemble_state(const RigidBodySystem& sys, AbsKind kind,
                        const std::vector<Vec3>& rotvecs,
                        const std::vector<Vec3>& omegas,
                        const std::vector<Vec3>& positions,
                        const std::vector<Vec3>& velocities) {
  const std::size_t n = sys.num_bodies();
  if (rotvecs.size() != n || omegas.size() != n ||
      (!positions.empty() && positions.size() != n) ||
      (!velocities.empty() && velocities.size() != n)) {
    throw std::invalid_argument("assemble_state: expected " +
                                std::to_string(n) + " entries per list");
  }

  std::vector<Mat3> R(n);
  std::vector<Vec3> r(n, Vec3::Zero());
  std::vector<Vec3> rdot(n, Vec3::Zero());
  for (std::size_t i = 0; i < n; ++i) {
    R[i] = exp_so3(rotvecs[i]);
    if (!positions.empty()) r[i] = positions[i];
    if (!velocities.empty()) rdot[i] = velocities[i];
  }

  std::vector<bool> placed(n, false);
  for (const SphericalJoint& j : sys.joints()) {
    Vec3 pa = j.point_a;
    Vec3 pa_dot = Vec3::Zero();
    if (j.body_a != SphericalJoint::kGround) {
      const auto a = static_cast<std::size_t>(j.body_a);
      pa = r[a] + R[a] * j.point_a;
      pa_dot = rdot[a] + R[a] * omegas[a].cross(j.point_a);
    }
    const auto b = static_cast<std::size_t>(j.body_b);
    if (placed[b]) {
      throw std::invalid_argument("assemble_state: joints do not form a tree");
    }
    r[b] = pa - R[b] * j.point_b;
    rdot[b] = pa_dot - R[b] * omegas[b].cross(j.point_b);
    placed[b] = true;
  }

  MbsState s;
  s.V.resize(static_cast<Eigen::Index>(6 * n));
  for (std::size_t i = 0; i < n; ++i) {
    const Pose C{R[i], r[i]};
    s.q.push_back(to_abs_coords(kind, C));
    const Vec3 v = sys.frame() == TwistFrame::BodyFixed
                       ? Vec3(R[i].transpose() * rdot[i])
                       : rdot[i];
    s.V.segment<6>(static_cast<Eigen::Index>(6 * i)) << omegas[i], v;
  }
  return s;
}

}  // namespace mbslie::models
