#pragma once

#include <functional>
#include <optional>
#include <string>

#include "landau/physcore.hpp"

namespace landau {

/// Free Landau solution, a plane wave along one axis times an oscillator
/// state along the other.
///
/// LandauX: exp(i k x / hbar) Psi_n((y - k/beta) / l).
/// LandauY: conj of the LandauX value at (y, x), i.e.
///          exp(-i k y / hbar) Psi_n((x - k/beta) / l), the eigenfunction of
///          (p_x^2 + (p_y + beta x)^2) / 2m.  Its modulus is the x<->y mirror
///          of the LandauX modulus for every k.
cdouble eval_landau(const PhysicalParams& params, Gauge gauge, int n, double k, double x,
                    double y);

/// Second summand of the non-free wavefunction:
/// LandauX: exp(i (beta/hbar)(x - k'/beta) y) Psi_n((x - k'/beta) / l),
/// LandauY: conj of the LandauX value at (y, x).
cdouble eval_nonfree_term(const PhysicalParams& params, Gauge gauge, int n, double kprime,
                          double x, double y);

struct NonFreeCoefficients {
  cdouble c_plane = 1.0;
  cdouble c_delta = 1.0;
};

/// c_plane * eval_landau(n, k) + c_delta * eval_nonfree_term(n, k').
/// Throws DomainError if both coefficients vanish.
cdouble eval_nonfree(const PhysicalParams& params, Gauge gauge, const QuantumNumbers& qn,
                     const NonFreeCoefficients& coeffs, double x, double y);

using Evaluator = std::function<cdouble(double, double)>;

/// Samples `evaluator` at every grid node.  Throws EvaluationError carrying
/// the first offending (i, j) if any sample is not finite.
ComplexField sample_field(const Evaluator& evaluator, const Grid2D& grid);

/// Momentum 2 pi hbar j / L allowed by a box of length L along the plane-wave
/// axis; the plane-wave factor is then periodic over the box.
double box_momentum(const PhysicalParams& params, int j, double box_length);

/// Warning text when an oscillator centre (k/beta or k'/beta) lies closer
/// than three magnetic lengths to the grid edge, where boundary effects spoil
/// residual tests.
std::optional<std::string> center_warning(const PhysicalParams& params, Gauge gauge,
                                          const QuantumNumbers& qn, bool nonfree,
                                          const Grid2D& grid);

}  // namespace landau
