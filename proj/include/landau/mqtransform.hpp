#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "landau/physcore.hpp"

namespace landau {

/// Integral kernel mapping psi(Q, Qbar) to psi(x, y):
///   (beta / 2 pi) exp[i (beta/hbar)(Q Qbar + x y - x Q - y Qbar)].
cdouble mq_kernel(const PhysicalParams& params, double q, double qbar, double x, double y);

/// Analytic transform of Psi_n(Q / l) exp(i k Qbar / hbar).  The Qbar
/// integral collapses to a delta that pins Q = y - k/beta, leaving
/// hbar * exp(i k x / hbar) Psi_n((y - k/beta) / l); with the kernel's
/// beta/2pi prefactor the overall constant is hbar (1 in natural units).
cdouble transform_planewave(const PhysicalParams& params, int n, double k, double x, double y);

/// Constant acquired by the delta branch:
///   C_n = (-i)^n sqrt(beta hbar / 2 pi).
/// The remaining Q integral is the Fourier transform of Psi_n, whose
/// eigenvalue supplies (-i)^n.
cdouble delta_branch_constant(const PhysicalParams& params, int n);

/// Analytic transform of Psi_n(Q / l) delta(Qbar - k'/beta):
/// C_n * eval_nonfree_term(LandauX, n, k', x, y).
cdouble transform_delta(const PhysicalParams& params, int n, double kprime, double x, double y);

/// Closed-form transform of the isotropic Gaussian
/// exp(-(Q^2 + Qbar^2) / 2 l^2):
///   (hbar / sqrt 2) exp(-(x^2 + y^2) / 4 l^2 + i x y / 2 l^2).
cdouble transform_gaussian(const PhysicalParams& params, double x, double y);

/// The Gaussian above as a CustomInput.
struct CustomInput;
CustomInput gaussian_input(const PhysicalParams& params);

struct PlaneWaveInput {
  int n = 0;
  double k = 0.0;
};

struct DeltaLineInput {
  int n = 0;
  double kprime = 0.0;
};

/// Arbitrary absolutely integrable psi(Q, Qbar), negligible outside
/// |Q| <= half_width_q and |Qbar| <= half_width_qbar (physical units).
struct CustomInput {
  std::function<cdouble(double, double)> f;
  double half_width_q = 8.0;
  double half_width_qbar = 8.0;
};

using TransformInput = std::variant<PlaneWaveInput, DeltaLineInput, CustomInput>;

/// Regularization schedule for the oscillatory and distributional inputs.
///
/// Plane waves are damped by exp(-eps^2 Qbar^2 / 2 l^2); the delta line is
/// replaced by a normalized Gaussian of width eps * l.  Both make the regulated
/// value an even analytic function of eps, extrapolated polynomially in eps^2.
struct RegulatorSchedule {
  std::vector<double> epsilons{0.2, 0.15, 0.1, 0.05};
  /// Q half-width in magnetic lengths; 0 selects default_half_width(n).
  double half_width = 0.0;
  /// Minimum quadrature nodes per magnetic length.
  int nodes_per_unit = 16;
};

/// max(8, sqrt(2n + 1) + 6).
double default_half_width(int n);

/// Throws DomainError unless there are >= 3 strictly decreasing positive
/// epsilons and nodes_per_unit >= 1.
void validate(const RegulatorSchedule& schedule);

struct TransformEstimate {
  cdouble value;
  /// Spread between extrapolants of different order (regulated inputs) or
  /// between two quadrature resolutions (custom input).
  double error = 0.0;
  /// Regulated values in schedule order, or the two resolutions for custom input.
  std::vector<cdouble> sequence;
};

/// Direct 2-D trapezoid quadrature of mq_kernel * input, followed by
/// extrapolation to zero regulator.  Throws DivergenceError with the raw
/// sequence if successive regulated values stop converging.
TransformEstimate transform_numeric(const PhysicalParams& params, const TransformInput& input,
                                    double x, double y, const RegulatorSchedule& schedule);

}  // namespace landau
