#pragma once

#include <cmath>
#include <stdexcept>
#include <type_traits>

#include <Eigen/Core>

namespace hrom
{

class NonFiniteDerivative : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

inline bool all_finite(double x) { return std::isfinite(x); }

template<typename Derived>
bool all_finite(const Eigen::DenseBase<Derived> & x)
{
  return x.allFinite();
}

/// Classical fourth-order Runge-Kutta step. `f` maps a state to its derivative; any inputs it uses
/// are held constant across the four stages. Throws NonFiniteDerivative if a stage is not finite.
template<typename State, typename F>
State rk4_step(F && f, const State & x, double dt)
{
  auto stage = [&f](const State & s) {
    State k = f(s);
    if(!all_finite(k)) throw NonFiniteDerivative("non-finite state derivative in RK4 stage");
    return k;
  };
  const State k1 = stage(x);
  const State k2 = stage(State(x + (0.5 * dt) * k1));
  const State k3 = stage(State(x + (0.5 * dt) * k2));
  const State k4 = stage(State(x + dt * k3));
  return State(x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

} // namespace hrom
