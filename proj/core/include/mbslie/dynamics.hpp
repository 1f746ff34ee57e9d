#pragma once

// Descriptor-form equations of motion
//   [M  A^T] [Vdot  ]   [Q     ]
//   [A  0  ] [lambda] = [-Adot V]
// together with the local-coordinate right-hand side used by the
// integrators.

#include <cstddef>
#include <vector>

#include <mbslie/lgt.hpp>
#include <mbslie/motiongroups.hpp>
#include <mbslie/types.hpp>

namespace mbslie {

/// Multibody model in absolute coordinates. Every body shares the model's
/// GroupModel; twists are stacked as 6N vectors in frame_for(group()).
class MbsModel {
 public:
  virtual ~MbsModel() = default;

  virtual std::size_t num_bodies() const = 0;
  virtual GroupModel group() const = 0;
  TwistFrame frame() const { return frame_for(group()); }

  /// Number of rows of g(q) and of A(q).
  virtual std::size_t num_constraints() const = 0;

  /// 6N x 6N, symmetric positive definite.
  virtual MatX mass_matrix(const Configuration& C) const = 0;
  /// Applied and velocity-dependent forces Q(q, V, t).
  virtual VecX forces(const Configuration& C, const VecX& V, double t) const = 0;
  /// Geometric constraints g(q).
  virtual VecX constraints(const Configuration& C) const = 0;
  /// Constraint Jacobian A(q), so that d/dt g = A V.
  virtual MatX jacobian(const Configuration& C) const = 0;
  /// Adot(q, V) V.
  virtual VecX adot_v(const Configuration& C, const VecX& V) const = 0;
  /// Total mechanical energy.
  virtual double energy(const Configuration& C, const VecX& V) const = 0;
};

struct MbsState {
  std::vector<AbsCoords> q;
  VecX V;
  double t = 0.0;
};

struct KktSolution {
  VecX vdot;
  VecX lambda;
};

/// Reciprocal condition number below which the KKT matrix is treated as
/// singular.
inline constexpr double kKktRcondMin = 1e-12;

/// Ratio of smallest to largest eigenvalue of a symmetric matrix.
double symmetric_rcond(const MatX& S);

/// Solved by block elimination with a Cholesky factorization of M. Throws
/// SingularKkt when M is not positive definite or A M^-1 A^T has reciprocal
/// condition number below kKktRcondMin.
KktSolution solve_kkt(const MbsModel& model, const Configuration& C,
                      const VecX& V, double t);
KktSolution solve_kkt(const MbsModel& model, const MbsState& state);

VecX forward_dynamics(const MbsModel& model, const Configuration& C,
                      const VecX& V, double t);
VecX forward_dynamics(const MbsModel& model, const MbsState& state);

struct LocalRhs {
  VecX vdot;
  VecX xdot;
};

/// Right-hand side of the local model at the configuration
/// apply_lgt(combo, q_k, X): Vdot from the KKT system and
/// Xdot_i = dpsi_inv(combo, -X_i) V_i.
LocalRhs local_rhs(const MbsModel& model, const LgtCombo& combo,
                   const std::vector<AbsCoords>& q_k, const VecX& X,
                   const VecX& V, double t);

/// Xdot_i = dpsi_inv(combo, -X_i) V_i for every body.
VecX local_kinematics(const LgtCombo& combo, const VecX& X, const VecX& V);

struct ConstraintResiduals {
  double gnorm = 0.0;
  double gvnorm = 0.0;
};

/// Infinity norms of g(q) and A(q) V.
ConstraintResiduals constraint_residuals(const MbsModel& model,
                                         const MbsState& state);

/// Throws VariantMismatch when the combination's group differs from the
/// model's.
void check_combo(const MbsModel& model, const LgtCombo& combo);

}  // namespace mbslie
