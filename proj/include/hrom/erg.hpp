#pragma once

#include <array>

#include "hrom/types.hpp"

namespace hrom
{

/// Linearized friction pyramid with a minimum normal load per stance foot.
struct FrictionConstraint
{
  double mu_static = 0.25;
  double min_normal = 5.0;

  void validate() const;
};

struct ErgParams
{
  /// Attraction rate [m/s^2] at full safety margin.
  double kappa = 2.0;
  /// Margin [N] at which the dynamic safety factor saturates at 1.
  double margin_scale = 10.0;
  /// Smoothing radius of the normalized attraction field [m/s].
  double eta = 1e-6;
  /// Horizon turning a velocity command into a commanded acceleration [s].
  double horizon = 0.2;

  void validate() const;
};

struct ErgState
{
  Vec3 desired = Vec3::Zero();
  Vec3 applied = Vec3::Zero();
  double margin = 0.0;
};

struct GrfPrediction
{
  std::array<Vec3, 2> forces{Vec3::Zero(), Vec3::Zero()};
  bool valid = false;
  /// Reciprocal condition estimate of the 6x6 force-distribution system.
  double rcond = 0.0;
};

/// Two-point-contact force distribution for a point-mass pendulum supported on two feet.
///
/// Rows: force balance with the commanded acceleration (v_cmd - v) / horizon; moment balance about
/// the centre of mass projected onto the two axes normal to the support line (the moment about the
/// support line itself is left to the thrusters); equal force components along the support line.
GrfPrediction predicted_grf(const RobotState & state,
                            const std::array<Vec3, 2> & stance_feet,
                            const Wrench & thrust,
                            const Vec3 & velocity_command,
                            const ModelParams & params,
                            double horizon);

/// Constraint rows h_r = J_r u + d_r: [mu u_z - |u_x|, mu u_z - |u_y|, u_z - u_min].
Vec3 friction_rows(const Vec3 & force, const FrictionConstraint & constraint);

/// Smallest constraint row; negative when violated.
double constraint_margin(const Vec3 & force, const FrictionConstraint & constraint);

double constraint_margin(const std::array<Vec3, 2> & forces, const FrictionConstraint & constraint);

/// One explicit reference governor step: moves the applied reference toward the desired one at
/// kappa * clamp(margin / margin_scale, 0, 1), without passing it.
ErgState governor_update(const ErgState & erg, double margin, double dt, const ErgParams & params);

/// Governor bundled with the force prediction it filters against. A proposed reference is only
/// accepted when the predicted forces at the new reference still satisfy the constraint.
class ReferenceGovernor
{
public:
  ReferenceGovernor(ErgParams params, FrictionConstraint constraint, ModelParams model);

  void reset(const Vec3 & desired, const Vec3 & applied);
  void set_desired(const Vec3 & desired) { state_.desired = desired; }

  struct Step
  {
    GrfPrediction prediction;
    double margin = 0.0;
    bool accepted = false;
    bool singular = false;
  };

  Step update(const RobotState & state, const std::array<Vec3, 2> & stance_feet, const Wrench & thrust, double dt);

  const ErgState & state() const { return state_; }

private:
  GrfPrediction predict(const RobotState & state,
                        const std::array<Vec3, 2> & feet,
                        const Wrench & thrust,
                        const Vec3 & command,
                        bool & singular);

  ErgParams params_;
  FrictionConstraint constraint_;
  ModelParams model_;
  ErgState state_;
  GrfPrediction last_valid_;
};

} // namespace hrom
