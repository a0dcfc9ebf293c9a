#include "landau/dynamics.hpp"

#include <cmath>

namespace landau {

StateDerivative lorentz_rhs(const PhysicalParams& params, const ClassicalState& s) {
  return {s.vx, s.vy, -params.omega_c * s.vy, params.omega_c * s.vx};
}

namespace {

ClassicalState advance(const ClassicalState& s, const StateDerivative& d, double h) {
  return {s.x + h * d.dx, s.y + h * d.dy, s.vx + h * d.dvx, s.vy + h * d.dvy, s.t + h};
}

}  // namespace

std::vector<ClassicalState> integrate_orbit(const PhysicalParams& params,
                                            const ClassicalState& s0, double dt, int steps) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("time step must be positive");
  if (steps < 1) throw DomainError("steps must be >= 1");

  std::vector<ClassicalState> trajectory;
  trajectory.reserve(static_cast<std::size_t>(steps) + 1);
  trajectory.push_back(s0);
  ClassicalState s = s0;
  for (int n = 1; n <= steps; ++n) {
    const StateDerivative k1 = lorentz_rhs(params, s);
    const StateDerivative k2 = lorentz_rhs(params, advance(s, k1, 0.5 * dt));
    const StateDerivative k3 = lorentz_rhs(params, advance(s, k2, 0.5 * dt));
    const StateDerivative k4 = lorentz_rhs(params, advance(s, k3, dt));
    s.x += dt / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
    s.y += dt / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy);
    s.vx += dt / 6.0 * (k1.dvx + 2.0 * k2.dvx + 2.0 * k3.dvx + k4.dvx);
    s.vy += dt / 6.0 * (k1.dvy + 2.0 * k2.dvy + 2.0 * k3.dvy + k4.dvy);
    // Time from the step count, so long runs do not accumulate dt roundoff.
    s.t = s0.t + n * dt;
    trajectory.push_back(s);
  }
  return trajectory;
}

ConservedPair conserved_pair(const PhysicalParams& params, const ClassicalState& s) {
  return {params.mass * s.vx + params.beta * s.y, params.mass * s.vy - params.beta * s.x};
}

CanonicalMomenta canonical_momenta(const PhysicalParams& params, Gauge gauge,
                                   const ClassicalState& s) {
  if (gauge == Gauge::LandauX) {
    return {params.mass * s.vx + params.beta * s.y, params.mass * s.vy};
  }
  return {params.mass * s.vx, params.mass * s.vy - params.beta * s.x};
}

OscillatorPhase heisenberg_flow(const PhysicalParams& params, double q0, double p0, double t) {
  const double phase = params.omega_c * t;
  const double c = std::cos(phase);
  const double s = std::sin(phase);
  return {q0 * c + (p0 / params.beta) * s, p0 * c - params.beta * q0 * s};
}

}  // namespace landau
