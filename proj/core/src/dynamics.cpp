#include <mbslie/dynamics.hpp>

#include <sstream>

#include <mbslie/errors.hpp>

namespace mbslie {

double symmetric_rcond(const MatX& S) {
  if (S.size() == 0) return 1.0;
  const Eigen::SelfAdjointEigenSolver<MatX> es(S, Eigen::EigenvaluesOnly);
  const VecX& ev = es.eigenvalues();
  const double hi = ev.cwiseAbs().maxCoeff();
  if (!(hi > 0.0)) return 0.0;
  return ev.minCoeff() / hi;
}

KktSolution solve_kkt(const MbsModel& model, const Configuration& C,
                      const VecX& V, double t) {
  const auto m = static_cast<Eigen::Index>(model.num_constraints());

  // Block elimination: Vdot = M^-1 (Q - A^T lambda) with
  // (A M^-1 A^T) lambda = A M^-1 Q + Adot V.
  const Eigen::LLT<MatX> llt(model.mass_matrix(C));
  if (llt.info() != Eigen::Success) {
    throw SingularKkt("mass matrix is not positive definite");
  }
  const VecX Q = model.forces(C, V, t);
  VecX vdot = llt.solve(Q);
  if (m == 0) return {vdot, VecX()};

  const MatX A = model.jacobian(C);
  const MatX MinvAt = llt.solve(A.transpose());
  const MatX S = A * MinvAt;
  const double rcond = symmetric_rcond(S);
  if (!(rcond >= kKktRcondMin)) {
    std::ostringstream msg;
    msg << "KKT matrix is singular (constraint Schur complement rcond = "
        << rcond << ")";
    throw SingularKkt(msg.str());
  }
  const VecX lambda = S.ldlt().solve(A * vdot + model.adot_v(C, V));
  vdot -= MinvAt * lambda;
  return {vdot, lambda};
}

KktSolution solve_kkt(const MbsModel& model, const MbsState& state) {
  return solve_kkt(model, alpha_map(state.q), state.V, state.t);
}

VecX forward_dynamics(const MbsModel& model, const Configuration& C,
                      const VecX& V, double t) {
  return solve_kkt(model, C, V, t).vdot;
}

VecX forward_dynamics(const MbsModel& model, const MbsState& state) {
  return solve_kkt(model, state).vdot;
}

VecX local_kinematics(const LgtCombo& combo, const VecX& X, const VecX& V) {
  VecX xdot(X.size());
  for (Eigen::Index i = 0; i < X.size(); i += 6) {
    const Vec6 Xi = X.segment<6>(i);
    xdot.segment<6>(i) =
        dpsi_inv(combo, make_local(combo, -Xi)) * V.segment<6>(i);
  }
  return xdot;
}

LocalRhs local_rhs(const MbsModel& model, const LgtCombo& combo,
                   const std::vector<AbsCoords>& q_k, const VecX& X,
                   const VecX& V, double t) {
  const Configuration C = alpha_map(apply_lgt(combo, q_k, X));
  return {forward_dynamics(model, C, V, t), local_kinematics(combo, X, V)};
}

ConstraintResiduals constraint_residuals(const MbsModel& model,
                                         const MbsState& state) {
  if (model.num_constraints() == 0) return {};
  const Configuration C = alpha_map(state.q);
  return {model.constraints(C).lpNorm<Eigen::Infinity>(),
          (model.jacobian(C) * state.V).lpNorm<Eigen::Infinity>()};
}

void check_combo(const MbsModel& model, const LgtCombo& combo) {
  if (combo.group() != model.group()) {
    throw VariantMismatch("combo " + combo.id() + " uses " +
                          to_string(combo.group()) + " but the model uses " +
                          to_string(model.group()));
  }
}

}  // namespace mbslie
