#pragma once

#include <span>
#include <vector>

#include "hrom/types.hpp"

namespace hrom
{

/// Relative singular-value cutoff used by every pseudo-inverse in this module.
inline constexpr double kPinvTolerance = 1e-8;

struct PseudoInverse
{
  Eigen::MatrixXd matrix;
  Eigen::VectorXd singular_values;
  int rank = 0;
};

/// Moore-Penrose pseudo-inverse; singular values below rel_tol * sigma_max are treated as zero.
PseudoInverse pseudo_inverse(const Eigen::MatrixXd & a, double rel_tol = kPinvTolerance);

/// Backward difference (M_k - M_{k-1}) / T_s.
Eigen::MatrixXd numeric_mass_matrix_rate(const Eigen::MatrixXd & m_k, const Eigen::MatrixXd & m_km1, double sample_time);

/// Conjugate momentum observer state. `residual` approximates the unmodeled generalized force.
struct ObserverState
{
  Vec6 residual = Vec6::Zero();
  Vec6 accumulator = Vec6::Zero();
  Vec6 gain = Vec6::Constant(1000.0);
  Mat6 previous_mass = Mat6::Zero();
  Vec6 initial_momentum = Vec6::Zero();
  /// Integrand r - beta + u_t at the previous sample, kept for the trapezoidal rule.
  Vec6 previous_integrand = Vec6::Zero();
  double sample_time = 0.0;
};

/// Starts the observer at rest: zero residual and accumulator, momentum offset M v recorded.
ObserverState make_observer(const Vec6 & gain, const Mat6 & mass, const Vec6 & twist, const Vec6 & bias, const Vec6 & thrust);

/// Advances the residual by one sample. The integral is taken with the trapezoidal rule, which makes
/// the residual update implicit in r_k; with diagonal gains it is solved per axis in closed form.
ObserverState observer_step(const ObserverState & obs,
                            const Vec6 & twist,
                            const Vec6 & thrust,
                            const Vec6 & bias,
                            const Mat6 & mass,
                            double dt);

struct PerFootForces
{
  std::vector<Vec3> forces;
  int rank = 0;
  bool rank_deficient = false;
};

/// Minimum-norm solution of sum_i B_i^T f_i = r over the given foot Jacobians.
PerFootForces per_foot_forces(const Vec6 & residual, std::span<const Mat36> jacobians);

struct ConstrainedEstimate
{
  /// Stacked per-foot forces, 3 entries per stance foot.
  Eigen::VectorXd lambda;
  Eigen::VectorXd singular_values;
  int rank = 0;

  std::size_t feet() const { return static_cast<std::size_t>(lambda.size() / 3); }
  Vec3 foot(std::size_t i) const { return lambda.segment<3>(3 * static_cast<Eigen::Index>(i)); }
};

/// Contact forces that hold the stance feet fixed, J vdot + Jdot v = 0:
///   lambda = (J M^-1 J^T)^+ (J M^-1 (h - u_t) - Jdot v).
/// `jacobian_rates` holds the products Jdot_i v per foot.
ConstrainedEstimate constrained_grf(const Vec6 & thrust,
                                    const Vec6 & bias,
                                    const Mat6 & mass,
                                    std::span<const Mat36> jacobians,
                                    std::span<const Vec3> jacobian_rates);

} // namespace hrom
