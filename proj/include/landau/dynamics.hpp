#pragma once

#include <vector>

#include "landau/physcore.hpp"

namespace landau {

struct ClassicalState {
  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  double t = 0.0;
};

struct StateDerivative {
  double dx = 0.0;
  double dy = 0.0;
  double dvx = 0.0;
  double dvy = 0.0;
};

/// Guiding-centre constants m vx + beta y and m vy - beta x.
struct ConservedPair {
  double c1 = 0.0;
  double c2 = 0.0;
};

struct CanonicalMomenta {
  double px = 0.0;
  double py = 0.0;
};

/// F = -(e/c) v x B with B along +z:  dvx/dt = -omega_c vy, dvy/dt = +omega_c vx.
StateDerivative lorentz_rhs(const PhysicalParams& params, const ClassicalState& s);

/// Fixed-step classical RK4.  Returns steps + 1 states, starting with s0.
std::vector<ClassicalState> integrate_orbit(const PhysicalParams& params,
                                            const ClassicalState& s0, double dt, int steps);

ConservedPair conserved_pair(const PhysicalParams& params, const ClassicalState& s);

/// p = m v - (e/c) A:  LandauX (m vx + beta y, m vy), LandauY (m vx, m vy - beta x).
CanonicalMomenta canonical_momenta(const PhysicalParams& params, Gauge gauge,
                                   const ClassicalState& s);

struct OscillatorPhase {
  double q = 0.0;
  double p = 0.0;
};

/// Heisenberg evolution of (Q, P) under H = (beta^2 Q^2 + P^2) / 2m:
/// dQ/dt = P/m, dP/dt = -(beta^2/m) Q.  Qbar and Pbar stay constant.
OscillatorPhase heisenberg_flow(const PhysicalParams& params, double q0, double p0, double t);

}  // namespace landau
