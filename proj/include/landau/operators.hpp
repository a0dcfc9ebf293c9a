#pragma once

#include "landau/kernels.hpp"
#include "landau/physcore.hpp"

namespace landau {

/// Operators on ComplexField.  Q, Qbar, P, Pbar are the canonical variables
///   LandauX: Q = -(p_x - beta y)/beta, Qbar = -(p_y - beta x)/beta, P = p_y, Pbar = p_x
///   LandauY: Q =  (p_y + beta x)/beta, Qbar =  (p_x + beta y)/beta, P = p_x, Pbar = p_y
/// so that H = (beta^2 Q^2 + P^2) / 2m in either gauge.
enum class OperatorKind { Px, Py, MultX, MultY, Hamiltonian, Q, Qbar, P, Pbar };

/// kRequireDecay rejects fields that are not negligible at the boundary;
/// kSkinExcluded skips the check and leaves the caller responsible for
/// ignoring the boundary skin.
enum class BoundaryMode { kRequireDecay, kSkinExcluded };

/// Inside H the kinetic momenta are discretized gauge covariantly: p_x - beta y
/// is applied as exp(i beta x y/hbar) p_x exp(-i beta x y/hbar), i.e. central
/// stencils with a link phase.  Q and Qbar are expanded instead, a momentum
/// stencil plus a coordinate multiplication.  The grid is extended by zero
/// outside (Dirichlet), which keeps H exactly Hermitian.
struct DiscreteOperator {
  OperatorKind kind = OperatorKind::Hamiltonian;
  PhysicalParams params;
  Gauge gauge = Gauge::LandauX;
  int order = 4;  // 2 or 4
  /// Q and Qbar only: use the link-phase form that H uses.  The discrete H
  /// then commutes with Qbar up to rounding, which the expanded form only
  /// does to O(h^order).
  bool covariant = false;
  /// Fault-injection hook: reverses the sign of the magnetic link phase in H.
  bool flip_coupling = false;
};

DiscreteOperator make_operator(OperatorKind kind, const PhysicalParams& params,
                               Gauge gauge = Gauge::LandauX, int order = 4);

kernels::StencilOperator build_stencil(const DiscreteOperator& op, const Grid2D& grid);

/// Nodes within this distance of an edge are polluted by one application.
int skin_width(int order);

inline constexpr double kBoundaryDecayTolerance = 1e-8;

/// Throws ContaminationError naming the worst node if any value within the
/// boundary band exceeds tolerance * max|f|.
void check_boundary_decay(const ComplexField& f, int band, double tolerance = kBoundaryDecayTolerance);

ComplexField apply(const DiscreteOperator& op, const ComplexField& f,
                   BoundaryMode mode = BoundaryMode::kRequireDecay);

/// a(b f) - b(a f).  Valid away from a double skin.
ComplexField commutator_apply(const DiscreteOperator& a, const DiscreteOperator& b,
                              const ComplexField& f,
                              BoundaryMode mode = BoundaryMode::kRequireDecay);

/// L2 norm over nodes at least `skin` away from every edge.
double interior_norm(const ComplexField& f, int skin);

/// ||H f - E f|| / ||f|| over the skin-excluded interior.
double eigen_residual(const PhysicalParams& params, Gauge gauge, const ComplexField& f,
                      double energy, int order = 4);

enum class ConservedQuantity { Pbar, Qbar };

/// ||[H, which] f|| / ||f|| over the double-skin interior, with Qbar in its
/// covariant form.
double conserved_operator_check(const PhysicalParams& params, Gauge gauge,
                                ConservedQuantity which, const ComplexField& f,
                                int order = 4);

/// H in canonical form, (beta^2 Q(Q f) + P(P f)) / 2m, built by composing the
/// Q and P operators.  Agrees with apply(Hamiltonian) up to O(h^order).
ComplexField apply_hamiltonian_canonical(const PhysicalParams& params, Gauge gauge,
                                         const ComplexField& f, int order = 4);

}  // namespace landau
