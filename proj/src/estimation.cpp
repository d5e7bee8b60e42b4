#include "hrom/estimation.hpp"

#include <stdexcept>

namespace hrom
{

PseudoInverse pseudo_inverse(const Eigen::MatrixXd & a, double rel_tol)
{
  PseudoInverse out;
  out.matrix = Eigen::MatrixXd::Zero(a.cols(), a.rows());
  if(a.size() == 0) return out;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  out.singular_values = svd.singularValues();
  const double cutoff = rel_tol * (out.singular_values.size() > 0 ? out.singular_values(0) : 0.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(out.singular_values.size());
  for(Eigen::Index i = 0; i < out.singular_values.size(); ++i)
  {
    if(out.singular_values(i) > cutoff && out.singular_values(i) > 0.0)
    {
      inv(i) = 1.0 / out.singular_values(i);
      ++out.rank;
    }
  }
  out.matrix = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
  return out;
}

Eigen::MatrixXd numeric_mass_matrix_rate(const Eigen::MatrixXd & m_k, const Eigen::MatrixXd & m_km1, double sample_time)
{
  if(!(sample_time > 0.0)) throw std::invalid_argument("sample time must be positive");
  return (m_k - m_km1) / sample_time;
}

ObserverState make_observer(const Vec6 & gain, const Mat6 & mass, const Vec6 & twist, const Vec6 & bias, const Vec6 & thrust)
{
  if((gain.array() <= 0.0).any()) throw std::invalid_argument("observer gains must be positive");
  ObserverState obs;
  obs.gain = gain;
  obs.previous_mass = mass;
  obs.initial_momentum = mass * twist;
  // At rest beta = h since the mass-matrix rate has no history yet.
  obs.previous_integrand = thrust - bias;
  return obs;
}

ObserverState observer_step(const ObserverState & obs,
                            const Vec6 & twist,
                            const Vec6 & thrust,
                            const Vec6 & bias,
                            const Mat6 & mass,
                            double dt)
{
  if(!(dt > 0.0)) throw std::invalid_argument("observer step must be positive");

  const Mat6 mass_rate = numeric_mass_matrix_rate(mass, obs.previous_mass, dt);
  const Vec6 beta = bias - mass_rate * twist;
  const Vec6 momentum = mass * twist - obs.initial_momentum;
  const Vec6 known = thrust - beta;

  // acc_k = acc_{k-1} + dt/2 (g_{k-1} + known_k + r_k),  r_k = K (p_k - acc_k)
  const Vec6 open = momentum - obs.accumulator - 0.5 * dt * (obs.previous_integrand + known);
  ObserverState out = obs;
  out.residual = (obs.gain.array() * open.array() / (1.0 + 0.5 * dt * obs.gain.array())).matrix();
  out.accumulator = obs.accumulator + 0.5 * dt * (obs.previous_integrand + known + out.residual);
  out.previous_integrand = out.residual + known;
  out.previous_mass = mass;
  out.sample_time = dt;
  return out;
}

PerFootForces per_foot_forces(const Vec6 & residual, std::span<const Mat36> jacobians)
{
  PerFootForces out;
  if(jacobians.empty()) return out;

  const auto k = static_cast<Eigen::Index>(jacobians.size());
  Eigen::MatrixXd map(6, 3 * k);
  for(Eigen::Index i = 0; i < k; ++i) map.middleCols<3>(3 * i) = jacobians[static_cast<std::size_t>(i)].transpose();

  const PseudoInverse pinv = pseudo_inverse(map);
  const Eigen::VectorXd lambda = pinv.matrix * residual;
  out.rank = pinv.rank;
  out.rank_deficient = pinv.rank < std::min<int>(6, static_cast<int>(3 * k));
  out.forces.reserve(jacobians.size());
  for(Eigen::Index i = 0; i < k; ++i) out.forces.emplace_back(lambda.segment<3>(3 * i));
  return out;
}

ConstrainedEstimate constrained_grf(const Vec6 & thrust,
                                    const Vec6 & bias,
                                    const Mat6 & mass,
                                    std::span<const Mat36> jacobians,
                                    std::span<const Vec3> jacobian_rates)
{
  if(jacobians.size() != jacobian_rates.size())
    throw std::invalid_argument("constrained_grf: one Jacobian rate product is required per Jacobian");

  ConstrainedEstimate out;
  if(jacobians.empty()) return out;

  const auto k = static_cast<Eigen::Index>(jacobians.size());
  Eigen::MatrixXd j(3 * k, 6);
  Eigen::VectorXd jdot_v(3 * k);
  for(Eigen::Index i = 0; i < k; ++i)
  {
    j.middleRows<3>(3 * i) = jacobians[static_cast<std::size_t>(i)];
    jdot_v.segment<3>(3 * i) = jacobian_rates[static_cast<std::size_t>(i)];
  }

  const Eigen::LLT<Mat6> chol(mass);
  const Eigen::MatrixXd minv_jt = chol.solve(j.transpose());
  const Eigen::MatrixXd delassus = j * minv_jt;
  const Vec6 free_accel_force = bias - thrust;
  const Eigen::VectorXd rhs = j * chol.solve(free_accel_force) - jdot_v;

  const PseudoInverse pinv = pseudo_inverse(delassus);
  out.lambda = pinv.matrix * rhs;
  out.singular_values = pinv.singular_values;
  out.rank = pinv.rank;
  return out;
}

} // namespace hrom
