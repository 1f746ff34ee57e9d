#pragma once

// Fixed-step integrators for MbsModel:
//   MuntheKaasRK4   RK4 on the local model, restarted at X = 0 every step
//   LocalVectorRK4  the same discretization exposed as a vector-space scheme
//   BaselineQuatRK4 RK4 on (Q, r, V) with quaternion renormalization

#include <string_view>
#include <vector>

#include <mbslie/dynamics.hpp>
#include <mbslie/lgt.hpp>
#include <mbslie/types.hpp>

namespace mbslie {

enum class Scheme { MuntheKaasRK4, LocalVectorRK4, BaselineQuatRK4 };
enum class Projection { Off, PositionVelocity };

/// Throws std::invalid_argument on unknown names.
Scheme parse_scheme(std::string_view name);
Projection parse_projection(std::string_view name);
const char* to_string(Scheme s);
const char* to_string(Projection p);

struct IntegratorConfig {
  Scheme scheme = Scheme::MuntheKaasRK4;
  LgtCombo combo;
  double h = 1e-3;
  double t_end = 1.0;
  Projection projection = Projection::Off;
  double projection_tol = 1e-12;
  int projection_max_iter = 10;
};

/// Throws std::invalid_argument when h, t_end or the tolerances are invalid.
void validate(const IntegratorConfig& config);

/// floor(t_end / h), robust to representation error in t_end / h.
long step_count(double h, double t_end);

struct TrajectorySample {
  double t = 0.0;
  std::vector<AbsCoords> q;
  VecX V;
  double energy = 0.0;
  double gnorm = 0.0;
  double gvnorm = 0.0;
  /// |‖Q‖ - 1| per body; empty for rotation-vector coordinates. For the
  /// baseline scheme this is the drift before renormalization.
  std::vector<double> qnorm_err;
};

struct TrajectoryRecord {
  std::vector<TrajectorySample> samples;
  /// Number of projection iterations summed over the run.
  long projection_iterations = 0;
};

/// One RK4 step of the local model with X(t_k) = 0. Exponential charts throw
/// ChartBoundary when a stage reaches a local rotation angle of pi.
MbsState step_munthe_kaas(const MbsModel& model, const LgtCombo& combo,
                          const MbsState& state, double h);
MbsState step_local_vector(const MbsModel& model, const LgtCombo& combo,
                           const MbsState& state, double h);

/// RK4 on Qdot = Q (0, w) / 2, rdot = v (mixed) or R v (body-fixed), and the
/// dynamics, followed by renormalization of Q. When pre_renorm_drift is
/// given it receives |‖Q_i‖ - 1| per body before renormalization.
MbsState step_baseline_quat(const MbsModel& model, const MbsState& state,
                            double h,
                            std::vector<double>* pre_renorm_drift = nullptr);

/// Position projection by Gauss-Newton through chart increments, followed by
/// the orthogonal velocity projection V <- V - A^T (A A^T)^-1 A V. Throws
/// NoConvergence when ‖g‖∞ >= tol after max_iter iterations and SingularKkt
/// when A A^T is singular.
MbsState project(const MbsModel& model, const LgtCombo& combo,
                 const MbsState& state, double tol, int max_iter,
                 int* iterations = nullptr);

/// Fixed-step driver recording every step. Throws InconsistentState when the
/// initial residuals exceed kConsistencyTol and IntegrationFailure carrying
/// the failing step index when a step throws.
TrajectoryRecord integrate(const MbsModel& model, const IntegratorConfig& config,
                           const MbsState& state0);

/// Same stepping as integrate() returning only the final state.
MbsState propagate(const MbsModel& model, const IntegratorConfig& config,
                   const MbsState& state0);

inline constexpr double kConsistencyTol = 1e-10;

}  // namespace mbslie
