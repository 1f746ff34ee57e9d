#pragma once

// Absolute coordinates, within-step local coordinates, and the
// local-global transition maps tau(q, X) for the eight combinations of
// absolute parameterization and local chart.

#include <array>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <mbslie/motiongroups.hpp>
#include <mbslie/rotmaps.hpp>
#include <mbslie/types.hpp>

namespace mbslie {

/// Unit quaternion and position (7 parameters).
struct QuatPos {
  UnitQuaternion Q;
  Vec3 r = Vec3::Zero();
};

/// Scaled rotation vector and position (6 parameters), |rho| <= pi.
struct AxisAnglePos {
  Vec3 rho = Vec3::Zero();
  Vec3 r = Vec3::Zero();
};

using AbsCoords = std::variant<QuatPos, AxisAnglePos>;

/// Scaled rotation vector plus IFR displacement on SO(3) x R^3.
struct AxisAngleDelta {
  Vec3 x = Vec3::Zero();
  Vec3 dr = Vec3::Zero();
};

/// Rodrigues vector plus IFR displacement on SO(3) x R^3.
struct RodriguesDelta {
  Vec3 c = Vec3::Zero();
  Vec3 dr = Vec3::Zero();
};

using LocalCoords =
    std::variant<ScrewCoords, AxisAngleDelta, RodriguesDelta, ExtRodriguesCoords>;

enum class Chart { Exp, Cay };

enum class AbsKind { QuatPos = 1, AxisAnglePos = 2 };

enum class LocalKind { Screw, AxisAngleDelta, RodriguesDelta, ExtRodrigues };

/// One cell of the combination table, named "1a" ... "2d".
///   column a: SE(3), exp    column b: SO(3)xR3, exp
///   column c: SO(3)xR3, cay column d: SE(3), cay
struct LgtCombo {
  AbsKind absolute = AbsKind::QuatPos;
  LocalKind local = LocalKind::Screw;

  /// Throws std::invalid_argument on an unknown id.
  static LgtCombo parse(std::string_view id);
  static const std::array<LgtCombo, 8>& all();

  std::string id() const;
  GroupModel group() const;
  Chart chart() const;
  TwistFrame frame() const { return frame_for(group()); }

  friend bool operator==(const LgtCombo&, const LgtCombo&) = default;
};

AbsKind kind_of(const AbsCoords& q);
LocalKind kind_of(const LocalCoords& X);

Pose alpha_map(const AbsCoords& q);
RotationMatrix rotation_of(const AbsCoords& q);
Vec3 position_of(const AbsCoords& q);

/// Absolute coordinates of kind k for a pose; quaternions are returned with
/// p0 >= 0 and rotation vectors with |rho| <= pi.
AbsCoords to_abs_coords(AbsKind k, const Pose& C);

/// Q * exp_sp1(x) or Q * rodrigues_to_quat(c).
UnitQuaternion tau_R_quat(const UnitQuaternion& Q, const Vec3& rot_local,
                          Chart chart);
/// bch_so3(rho, x) or compose_axisangle_rodrigues(rho, c).
Vec3 tau_R_axisangle(const Vec3& rho, const Vec3& rot_local, Chart chart);

/// dexp_so3(x) y
Vec3 delta_r_screw(const ScrewCoords& X);
/// (I + cay_so3(c)) d
Vec3 delta_r_cayley(const ExtRodriguesCoords& X);

/// r + R(q) dr_body
Vec3 tau_T(const AbsCoords& q, const Vec3& dr_body);

/// Updated absolute coordinates. Throws VariantMismatch when q or X does not
/// belong to the combination.
AbsCoords apply_lgt(const LgtCombo& combo, const AbsCoords& q,
                    const LocalCoords& X);

/// Group element psi(X) of the combination's chart.
Pose psi(const LgtCombo& combo, const LocalCoords& X);

/// Inverse right-trivialized differential of psi at X. The local kinematics
/// read Xdot = dpsi_inv(combo, -X) V.
Mat6 dpsi_inv(const LgtCombo& combo, const LocalCoords& X);

/// Local coordinates of the combination's kind from (rotation, translation).
LocalCoords make_local(const LgtCombo& combo, const Vec6& X);
Vec6 to_vector(const LocalCoords& X);

// Stacked helpers over N bodies. Local coordinates are stacked as 6N
// vectors, body i occupying entries [6i, 6i + 6).

using Configuration = std::vector<Pose>;

Configuration alpha_map(const std::vector<AbsCoords>& q);
std::vector<AbsCoords> apply_lgt(const LgtCombo& combo,
                                 const std::vector<AbsCoords>& q,
                                 const VecX& X);
/// Checks that every body uses the absolute kind of the combination.
void check_abs_kind(const LgtCombo& combo, const std::vector<AbsCoords>& q);

}  // namespace mbslie
