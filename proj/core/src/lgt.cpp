#include <mbslie/lgt.hpp>

#include <stdexcept>

#include <mbslie/errors.hpp>

namespace mbslie {

namespace {

constexpr std::array<LgtCombo, 8> kAllCombos = {{
    {AbsKind::QuatPos, LocalKind::Screw},
    {AbsKind::QuatPos, LocalKind::AxisAngleDelta},
    {AbsKind::QuatPos, LocalKind::RodriguesDelta},
    {AbsKind::QuatPos, LocalKind::ExtRodrigues},
    {AbsKind::AxisAnglePos, LocalKind::Screw},
    {AbsKind::AxisAnglePos, LocalKind::AxisAngleDelta},
    {AbsKind::AxisAnglePos, LocalKind::RodriguesDelta},
    {AbsKind::AxisAnglePos, LocalKind::ExtRodrigues},
}};

[[noreturn]] void mismatch(const LgtCombo& combo, const char* what) {
  throw VariantMismatch("combo " + combo.id() + ": " + what);
}

template <class T>
const T& expect(const LgtCombo& combo, const LocalCoords& X) {
  const T* p = std::get_if<T>(&X);
  if (!p) mismatch(combo, "local coordinates of the wrong kind");
  return *p;
}

Mat6 blockdiag_rot(const Mat3& A) {
  Mat6 D = Mat6::Identity();
  D.topLeftCorner<3, 3>() = A;
  return D;
}

}  // namespace

LgtCombo LgtCombo::parse(std::string_view id) {
  for (const LgtCombo& c : kAllCombos) {
    if (c.id() == id) return c;
  }
  throw std::invalid_argument("unknown combination id '" + std::string(id) +
                              "', expected one of 1a..1d, 2a..2d");
}

const std::array<LgtCombo, 8>& LgtCombo::all() { return kAllCombos; }

std::string LgtCombo::id() const {
  std::string s;
  s += absolute == AbsKind::QuatPos ? '1' : '2';
  s += static_cast<char>('a' + static_cast<int>(local));
  return s;
}

GroupModel LgtCombo::group() const {
  return (local == LocalKind::Screw || local == LocalKind::ExtRodrigues)
             ? GroupModel::SemiDirect
             : GroupModel::DirectProduct;
}

Chart LgtCombo::chart() const {
  return (local == LocalKind::Screw || local == LocalKind::AxisAngleDelta)
             ? Chart::Exp
             : Chart::Cay;
}

AbsKind kind_of(const AbsCoords& q) {
  return std::holds_alternative<QuatPos>(q) ? AbsKind::QuatPos
                                            : AbsKind::AxisAnglePos;
}

LocalKind kind_of(const LocalCoords& X) {
  return static_cast<LocalKind>(X.index());
}

RotationMatrix rotation_of(const AbsCoords& q) {
  if (const auto* a = std::get_if<QuatPos>(&q)) return quat_to_rotmat(a->Q);
  return exp_so3(std::get<AxisAnglePos>(q).rho);
}

Vec3 position_of(const AbsCoords& q) {
  return std::visit([](const auto& a) { return a.r; }, q);
}

Pose alpha_map(const AbsCoords& q) { return {rotation_of(q), position_of(q)}; }

AbsCoords to_abs_coords(AbsKind k, const Pose& C) {
  if (k == AbsKind::QuatPos) return QuatPos{rotmat_to_quat(C.R), C.r};
  return AxisAnglePos{log_so3(C.R), C.r};
}

UnitQuaternion tau_R_quat(const UnitQuaternion& Q, const Vec3& rot_local,
                          Chart chart) {
  const UnitQuaternion dQ =
      chart == Chart::Exp ? exp_sp1(rot_local) : rodrigues_to_quat(rot_local);
  return quat_mul(Q, dQ);
}

Vec3 tau_R_axisangle(const Vec3& rho, const Vec3& rot_local, Chart chart) {
  return chart == Chart::Exp ? bch_so3(rho, rot_local)
                             : compose_axisangle_rodrigues(rho, rot_local);
}

Vec3 delta_r_screw(const ScrewCoords& X) { return dexp_so3(X.x) * X.y; }

Vec3 delta_r_cayley(const ExtRodriguesCoords& X) {
  return (Mat3::Identity() + cay_so3(X.c)) * X.d;
}

Vec3 tau_T(const AbsCoords& q, const Vec3& dr_body) {
  if (const auto* a = std::get_if<QuatPos>(&q)) {
    const UnitQuaternion& Q = a->Q;
    const Mat3 P = skew(Q.p);
    return a->r + dr_body + 2.0 * (Q.p0 * P + P * P) * dr_body;
  }
  const auto& a = std::get<AxisAnglePos>(q);
  return a.r + exp_so3(a.rho) * dr_body;
}

AbsCoords apply_lgt(const LgtCombo& combo, const AbsCoords& q,
                    const LocalCoords& X) {
  if (kind_of(q) != combo.absolute) {
    mismatch(combo, "absolute coordinates of the wrong kind");
  }
  if (kind_of(X) != combo.local) {
    mismatch(combo, "local coordinates of the wrong kind");
  }

  Vec3 rot;
  Vec3 r_new;
  switch (combo.local) {
    case LocalKind::Screw: {
      const auto& s = std::get<ScrewCoords>(X);
      rot = s.x;
      r_new = tau_T(q, delta_r_screw(s));
      break;
    }
    case LocalKind::AxisAngleDelta: {
      const auto& s = std::get<AxisAngleDelta>(X);
      rot = s.x;
      r_new = position_of(q) + s.dr;
      break;
    }
    case LocalKind::RodriguesDelta: {
      const auto& s = std::get<RodriguesDelta>(X);
      rot = s.c;
      r_new = position_of(q) + s.dr;
      break;
    }
    case LocalKind::ExtRodrigues: {
      const auto& s = std::get<ExtRodriguesCoords>(X);
      rot = s.c;
      r_new = tau_T(q, delta_r_cayley(s));
      break;
    }
  }

  if (const auto* a = std::get_if<QuatPos>(&q)) {
    return QuatPos{tau_R_quat(a->Q, rot, combo.chart()), r_new};
  }
  const auto& a = std::get<AxisAnglePos>(q);
  return AxisAnglePos{tau_R_axisangle(a.rho, rot, combo.chart()), r_new};
}

Pose psi(const LgtCombo& combo, const LocalCoords& X) {
  switch (combo.local) {
    case LocalKind::Screw:
      return exp_se3(expect<ScrewCoords>(combo, X));
    case LocalKind::AxisAngleDelta: {
      const auto& s = expect<AxisAngleDelta>(combo, X);
      return exp_dp(s.x, s.dr);
    }
    case LocalKind::RodriguesDelta: {
      const auto& s = expect<RodriguesDelta>(combo, X);
      return {cay_so3(s.c), s.dr};
    }
    case LocalKind::ExtRodrigues:
      return cay_se3(expect<ExtRodriguesCoords>(combo, X));
  }
  mismatch(combo, "unknown local kind");
}

Mat6 dpsi_inv(const LgtCombo& combo, const LocalCoords& X) {
  switch (combo.local) {
    case LocalKind::Screw:
      return dexp_inv_se3(expect<ScrewCoords>(combo, X));
    case LocalKind::AxisAngleDelta:
      return blockdiag_rot(dexp_inv_so3(expect<AxisAngleDelta>(combo, X).x));
    case LocalKind::RodriguesDelta:
      return blockdiag_rot(dcay_inv_so3(expect<RodriguesDelta>(combo, X).c));
    case LocalKind::ExtRodrigues:
      return dcay_inv_se3(expect<ExtRodriguesCoords>(combo, X));
  }
  mismatch(combo, "unknown local kind");
}

LocalCoords make_local(const LgtCombo& combo, const Vec6& X) {
  const Vec3 a = X.head<3>();
  const Vec3 b = X.tail<3>();
  switch (combo.local) {
    case LocalKind::Screw:
      return ScrewCoords{a, b};
    case LocalKind::AxisAngleDelta:
      return AxisAngleDelta{a, b};
    case LocalKind::RodriguesDelta:
      return RodriguesDelta{a, b};
    case LocalKind::ExtRodrigues:
      return ExtRodriguesCoords{a, b};
  }
  mismatch(combo, "unknown local kind");
}

Vec6 to_vector(const LocalCoords& X) {
  return std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        Vec6 v;
        if constexpr (std::is_same_v<T, ScrewCoords>) {
          v << s.x, s.y;
        } else if constexpr (std::is_same_v<T, AxisAngleDelta>) {
          v << s.x, s.dr;
        } else if constexpr (std::is_same_v<T, RodriguesDelta>) {
          v << s.c, s.dr;
        } else {
          v << s.c, s.d;
        }
        return v;
      },
      X);
}

Configuration alpha_map(const std::vector<AbsCoords>& q) {
  Configuration C;
  C.reserve(q.size());
  for (const AbsCoords& qi : q) C.push_back(alpha_map(qi));
  return C;
}

std::vector<AbsCoords> apply_lgt(const LgtCombo& combo,
                                 const std::vector<AbsCoords>& q,
                                 const VecX& X) {
  if (X.size() != static_cast<Eigen::Index>(6 * q.size())) {
    mismatch(combo, "stacked local coordinates have the wrong length");
  }
  std::vector<AbsCoords> out;
  out.reserve(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Vec6 Xi = X.segment<6>(static_cast<Eigen::Index>(6 * i));
    out.push_back(apply_lgt(combo, q[i], make_local(combo, Xi)));
  }
  return out;
}

void check_abs_kind(const LgtCombo& combo, const std::vector<AbsCoords>& q) {
  for (const AbsCoords& qi : q) {
    if (kind_of(qi) != combo.absolute) {
      mismatch(combo, "absolute coordinates of the wrong kind");
    }
  }
}

}  // namespace mbslie
