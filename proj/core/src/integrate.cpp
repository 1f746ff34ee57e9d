#include <mbslie/integrate.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include <mbslie/errors.hpp>

namespace mbslie {

namespace {

void check_chart_budget(const LgtCombo& combo, const VecX& X) {
  if (combo.chart() != Chart::Exp) return;
  for (Eigen::Index i = 0; i < X.size(); i += 6) {
    const double phi = X.segment<3>(i).norm();
    if (phi >= kPi) {
      std::ostringstream msg;
      msg << "local rotation angle " << phi << " of body " << i / 6
          << " reached pi within one step; reduce the step size";
      throw ChartBoundary(msg.str());
    }
  }
}

MbsState rk4_local(const MbsModel& model, const LgtCombo& combo,
                   const MbsState& state, double h) {
  check_combo(model, combo);
  check_abs_kind(combo, state.q);

  const VecX& V0 = state.V;
  const double t = state.t;
  auto rhs = [&](const VecX& X, const VecX& V, double ts) {
    check_chart_budget(combo, X);
    return local_rhs(model, combo, state.q, X, V, ts);
  };

  const VecX X0 = VecX::Zero(V0.size());
  const LocalRhs k1 = rhs(X0, V0, t);
  const LocalRhs k2 = rhs(0.5 * h * k1.xdot, V0 + 0.5 * h * k1.vdot, t + 0.5 * h);
  const LocalRhs k3 = rhs(0.5 * h * k2.xdot, V0 + 0.5 * h * k2.vdot, t + 0.5 * h);
  const LocalRhs k4 = rhs(h * k3.xdot, V0 + h * k3.vdot, t + h);

  const VecX X1 = (h / 6.0) * (k1.xdot + 2.0 * k2.xdot + 2.0 * k3.xdot + k4.xdot);
  check_chart_budget(combo, X1);

  MbsState out;
  out.q = apply_lgt(combo, state.q, X1);
  out.V = V0 + (h / 6.0) * (k1.vdot + 2.0 * k2.vdot + 2.0 * k3.vdot + k4.vdot);
  out.t = t + h;
  return out;
}

// Baseline state: per body (p0, p, r) packed as 7 entries, followed by V.
struct BaselineRate {
  VecX qdot;
  VecX vdot;
};

Configuration baseline_configuration(const VecX& y, std::size_t n) {
  Configuration C(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto o = static_cast<Eigen::Index>(7 * i);
    UnitQuaternion Q{y[o], y.segment<3>(o + 1)};
    const double nq = Q.norm();
    Q.p0 /= nq;
    Q.p /= nq;
    C[i] = {quat_to_rotmat(Q), y.segment<3>(o + 4)};
  }
  return C;
}

BaselineRate baseline_rate(const MbsModel& model, const VecX& y, const VecX& V,
                           double t) {
  const std::size_t n = model.num_bodies();
  const Configuration C = baseline_configuration(y, n);
  VecX qdot(y.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto o = static_cast<Eigen::Index>(7 * i);
    const Vec6 Vi = V.segment<6>(static_cast<Eigen::Index>(6 * i));
    const UnitQuaternion Q{y[o], y.segment<3>(o + 1)};
    const UnitQuaternion dQ = quat_mul(Q, {0.0, Vi.head<3>()});
    qdot[o] = 0.5 * dQ.p0;
    qdot.segment<3>(o + 1) = 0.5 * dQ.p;
    qdot.segment<3>(o + 4) = model.frame() == TwistFrame::Mixed
                                 ? Vec3(Vi.tail<3>())
                                 : Vec3(C[i].R * Vi.tail<3>());
  }
  return {qdot, forward_dynamics(model, C, V, t)};
}

LgtCombo baseline_projection_combo(const MbsModel& model) {
  return {AbsKind::QuatPos, model.group() == GroupModel::SemiDirect
                                ? LocalKind::Screw
                                : LocalKind::AxisAngleDelta};
}

MatX gram_inverse_times(const MatX& A, const MatX& rhs) {
  const MatX AAt = A * A.transpose();
  if (!(symmetric_rcond(AAt) >= kKktRcondMin)) {
    throw SingularKkt("constraint Jacobian is rank deficient");
  }
  return AAt.ldlt().solve(rhs);
}

TrajectorySample make_sample(const MbsModel& model, const MbsState& s,
                             std::vector<double> qnorm_err) {
  TrajectorySample out;
  out.t = s.t;
  out.q = s.q;
  out.V = s.V;
  out.energy = model.energy(alpha_map(s.q), s.V);
  const ConstraintResiduals res = constraint_residuals(model, s);
  out.gnorm = res.gnorm;
  out.gvnorm = res.gvnorm;
  out.qnorm_err = std::move(qnorm_err);
  return out;
}

std::vector<double> quaternion_norm_errors(const std::vector<AbsCoords>& q) {
  std::vector<double> e;
  for (const AbsCoords& qi : q) {
    if (const auto* a = std::get_if<QuatPos>(&qi)) {
      e.push_back(std::abs(a->Q.norm() - 1.0));
    }
  }
  return e;
}

// Runs the fixed-step loop, calling on_step(state, qnorm_err) after the
// initial state and after every step.
template <class OnStep>
long run_loop(const MbsModel& model, const IntegratorConfig& config,
              const MbsState& state0, OnStep&& on_step) {
  validate(config);
  const bool baseline = config.scheme == Scheme::BaselineQuatRK4;
  const LgtCombo combo =
      baseline ? baseline_projection_combo(model) : config.combo;
  if (baseline) {
    for (const AbsCoords& qi : state0.q) {
      if (kind_of(qi) != AbsKind::QuatPos) {
        throw VariantMismatch(
            "the baseline scheme requires quaternion absolute coordinates");
      }
    }
  } else {
    check_combo(model, combo);
    check_abs_kind(combo, state0.q);
  }
  if (state0.q.size() != model.num_bodies() ||
      state0.V.size() != static_cast<Eigen::Index>(6 * model.num_bodies())) {
    throw VariantMismatch("state size does not match the model");
  }

  const ConstraintResiduals r0 = constraint_residuals(model, state0);
  if (r0.gnorm > kConsistencyTol || r0.gvnorm > kConsistencyTol) {
    std::ostringstream msg;
    msg << "initial state violates the constraints (|g| = " << r0.gnorm
        << ", |A V| = " << r0.gvnorm << ")";
    throw InconsistentState(msg.str());
  }

  const long n = step_count(config.h, config.t_end);
  long projection_iterations = 0;
  MbsState s = state0;
  on_step(s, quaternion_norm_errors(s.q));
  for (long k = 1; k <= n; ++k) {
    std::vector<double> qerr;
    try {
      if (baseline) {
        s = step_baseline_quat(model, s, config.h, &qerr);
      } else if (config.scheme == Scheme::LocalVectorRK4) {
        s = step_local_vector(model, combo, s, config.h);
      } else {
        s = step_munthe_kaas(model, combo, s, config.h);
      }
      if (config.projection == Projection::PositionVelocity) {
        int it = 0;
        s = project(model, combo, s, config.projection_tol,
                    config.projection_max_iter, &it);
        projection_iterations += it;
      }
    } catch (const Error& e) {
      throw IntegrationFailure(k, e.what());
    }
    s.t = state0.t + static_cast<double>(k) * config.h;
    on_step(s, baseline ? std::move(qerr) : quaternion_norm_errors(s.q));
  }
  return projection_iterations;
}

}  // namespace

Scheme parse_scheme(std::string_view name) {
  if (name == "munthe_kaas_rk4") return Scheme::MuntheKaasRK4;
  if (name == "local_vector_rk4") return Scheme::LocalVectorRK4;
  if (name == "baseline_quat_rk4") return Scheme::BaselineQuatRK4;
  throw std::invalid_argument(
      "unknown scheme '" + std::string(name) +
      "', expected munthe_kaas_rk4, local_vector_rk4 or baseline_quat_rk4");
}

Projection parse_projection(std::string_view name) {
  if (name == "off") return Projection::Off;
  if (name == "position_velocity") return Projection::PositionVelocity;
  throw std::invalid_argument("unknown projection '" + std::string(name) +
                              "', expected off or position_velocity");
}

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::MuntheKaasRK4:
      return "munthe_kaas_rk4";
    case Scheme::LocalVectorRK4:
      return "local_vector_rk4";
    case Scheme::BaselineQuatRK4:
      return "baseline_quat_rk4";
  }
  return "?";
}

const char* to_string(Projection p) {
  return p == Projection::Off ? "off" : "position_velocity";
}

void validate(const IntegratorConfig& c) {
  if (!(c.h > 0.0) || !std::isfinite(c.h)) {
    throw std::invalid_argument("step size h must be positive and finite");
  }
  if (!(c.t_end >= 0.0) || !std::isfinite(c.t_end)) {
    throw std::invalid_argument("t_end must be non-negative and finite");
  }
  if (!(c.projection_tol > 0.0)) {
    throw std::invalid_argument("projection_tol must be positive");
  }
  if (c.projection_max_iter < 1) {
    throw std::invalid_argument("projection_max_iter must be at least 1");
  }
}

long step_count(double h, double t_end) {
  return static_cast<long>(std::floor(t_end / h + 1e-9));
}

MbsState step_munthe_kaas(const MbsModel& model, const LgtCombo& combo,
                          const MbsState& state, double h) {
  return rk4_local(model, combo, state, h);
}

MbsState step_local_vector(const MbsModel& model, const LgtCombo& combo,
                           const MbsState& state, double h) {
  return rk4_local(model, combo, state, h);
}

MbsState step_baseline_quat(const MbsModel& model, const MbsState& state,
                            double h, std::vector<double>* pre_renorm_drift) {
  const std::size_t n = model.num_bodies();
  VecX y(static_cast<Eigen::Index>(7 * n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto* a = std::get_if<QuatPos>(&state.q[i]);
    if (!a) {
      throw VariantMismatch(
          "the baseline scheme requires quaternion absolute coordinates");
    }
    const auto o = static_cast<Eigen::Index>(7 * i);
    y[o] = a->Q.p0;
    y.segment<3>(o + 1) = a->Q.p;
    y.segment<3>(o + 4) = a->r;
  }

  const VecX& V0 = state.V;
  const double t = state.t;
  const BaselineRate k1 = baseline_rate(model, y, V0, t);
  const BaselineRate k2 = baseline_rate(model, y + 0.5 * h * k1.qdot,
                                        V0 + 0.5 * h * k1.vdot, t + 0.5 * h);
  const BaselineRate k3 = baseline_rate(model, y + 0.5 * h * k2.qdot,
                                        V0 + 0.5 * h * k2.vdot, t + 0.5 * h);
  const BaselineRate k4 =
      baseline_rate(model, y + h * k3.qdot, V0 + h * k3.vdot, t + h);
  const VecX y1 = y + (h / 6.0) * (k1.qdot + 2.0 * k2.qdot + 2.0 * k3.qdot + k4.qdot);

  MbsState out;
  out.V = V0 + (h / 6.0) * (k1.vdot + 2.0 * k2.vdot + 2.0 * k3.vdot + k4.vdot);
  out.t = t + h;
  if (pre_renorm_drift) pre_renorm_drift->assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto o = static_cast<Eigen::Index>(7 * i);
    UnitQuaternion Q{y1[o], y1.segment<3>(o + 1)};
    const double nq = Q.norm();
    if (pre_renorm_drift) (*pre_renorm_drift)[i] = std::abs(nq - 1.0);
    Q.p0 /= nq;
    Q.p /= nq;
    out.q.push_back(QuatPos{Q, y1.segment<3>(o + 4)});
  }
  return out;
}

MbsState project(const MbsModel& model, const LgtCombo& combo,
                 const MbsState& state, double tol, int max_iter,
                 int* iterations) {
  if (iterations) *iterations = 0;
  if (model.num_constraints() == 0) return state;
  check_combo(model, combo);
  check_abs_kind(combo, state.q);

  // Chart coordinates of a twist increment at X = 0.
  const Mat6 chart_inv = dpsi_inv(combo, make_local(combo, Vec6::Zero()));
  MbsState s = state;
  Configuration C = alpha_map(s.q);
  VecX g = model.constraints(C);
  int it = 0;
  while (g.lpNorm<Eigen::Infinity>() >= tol) {
    if (it == max_iter) {
      std::ostringstream msg;
      msg << "position projection did not reach " << tol << " in " << max_iter
          << " iterations (|g| = " << g.lpNorm<Eigen::Infinity>() << ")";
      throw NoConvergence(msg.str());
    }
    const MatX A = model.jacobian(C);
    const VecX dxi = -A.transpose() * gram_inverse_times(A, g);
    VecX dX(dxi.size());
    for (Eigen::Index i = 0; i < dxi.size(); i += 6) {
      dX.segment<6>(i) = chart_inv * dxi.segment<6>(i);
    }
    s.q = apply_lgt(combo, s.q, dX);
    C = alpha_map(s.q);
    g = model.constraints(C);
    ++it;
  }
  if (iterations) *iterations = it;

  const MatX A = model.jacobian(C);
  s.V -= A.transpose() * gram_inverse_times(A, A * s.V);
  return s;
}

TrajectoryRecord integrate(const MbsModel& model, const IntegratorConfig& config,
                           const MbsState& state0) {
  TrajectoryRecord rec;
  rec.samples.reserve(static_cast<std::size_t>(
      std::max(0L, step_count(config.h, config.t_end)) + 1));
  rec.projection_iterations = run_loop(
      model, config, state0,
      [&](const MbsState& s, std::vector<double> qerr) {
        rec.samples.push_back(make_sample(model, s, std::move(qerr)));
      });
  return rec;
}

MbsState propagate(const MbsModel& model, const IntegratorConfig& config,
                   const MbsState& state0) {
  MbsState last;
  run_loop(model, config, state0,
           [&](const MbsState& s, const std::vector<double>&) { last = s; });
  return last;
}

}  // namespace mbslie
