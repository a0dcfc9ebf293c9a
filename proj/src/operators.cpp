#include "landau/operators.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace landau {

using kernels::Axis;
using kernels::StencilTerm;

namespace {

constexpr cdouble kI{0.0, 1.0};

StencilTerm momentum(Axis axis, const PhysicalParams& p, const Grid2D& grid, int order,
                     double factor = 1.0, double phase_rate = 0.0) {
  const double h = axis == Axis::X ? grid.hx() : grid.hy();
  return {axis, kernels::first_derivative_stencil(order), factor * (-kI * p.hbar / h),
          phase_rate};
}

StencilTerm kinetic(Axis axis, const PhysicalParams& p, const Grid2D& grid, int order,
                    double phase_rate = 0.0) {
  const double h = axis == Axis::X ? grid.hx() : grid.hy();
  return {axis, kernels::second_derivative_stencil(order),
          -p.hbar * p.hbar / (2.0 * p.mass * h * h), phase_rate};
}

std::vector<cdouble> coordinate(const Grid2D& grid, Axis axis) {
  std::vector<cdouble> d(grid.size());
  for (int i = 0; i < grid.nx(); ++i) {
    for (int j = 0; j < grid.ny(); ++j) d[grid.index(i, j)] = axis == Axis::X ? grid.x(i) : grid.y(j);
  }
  return d;
}

}  // namespace

DiscreteOperator make_operator(OperatorKind kind, const PhysicalParams& params, Gauge gauge,
                               int order) {
  if (order != 2 && order != 4) {
    throw DomainError("stencil order must be 2 or 4, got " + std::to_string(order));
  }
  DiscreteOperator op;
  op.kind = kind;
  op.params = params;
  op.gauge = gauge;
  op.order = order;
  return op;
}

kernels::StencilOperator build_stencil(const DiscreteOperator& op, const Grid2D& grid) {
  const auto& p = op.params;
  const int order = op.order;
  // Link phase rate for exp(+-i beta x y / hbar) conjugation.
  const double rate = p.beta / p.hbar;
  const bool x_gauge = op.gauge == Gauge::LandauX;

  switch (op.kind) {
    case OperatorKind::Px:
      return {grid, {momentum(Axis::X, p, grid, order)}};
    case OperatorKind::Py:
      return {grid, {momentum(Axis::Y, p, grid, order)}};
    case OperatorKind::MultX:
      return {grid, {}, coordinate(grid, Axis::X)};
    case OperatorKind::MultY:
      return {grid, {}, coordinate(grid, Axis::Y)};
    case OperatorKind::Hamiltonian: {
      const double sign = op.flip_coupling ? -1.0 : 1.0;
      if (x_gauge) {
        return {grid,
                {kinetic(Axis::X, p, grid, order, sign * rate), kinetic(Axis::Y, p, grid, order)}};
      }
      return {grid,
              {kinetic(Axis::X, p, grid, order), kinetic(Axis::Y, p, grid, order, -sign * rate)}};
    }
    // Canonical coordinates are expanded by default: plain momentum stencil
    // plus a coordinate multiplication, so [Q, P] reduces to [y, p_y].
    case OperatorKind::Q:
      if (op.covariant) {
        if (x_gauge) return {grid, {momentum(Axis::X, p, grid, order, -1.0 / p.beta, rate)}};
        return {grid, {momentum(Axis::Y, p, grid, order, 1.0 / p.beta, -rate)}};
      }
      if (x_gauge) {
        return {grid, {momentum(Axis::X, p, grid, order, -1.0 / p.beta)}, coordinate(grid, Axis::Y)};
      }
      return {grid, {momentum(Axis::Y, p, grid, order, 1.0 / p.beta)}, coordinate(grid, Axis::X)};
    case OperatorKind::Qbar:
      if (op.covariant) {
        if (x_gauge) return {grid, {momentum(Axis::Y, p, grid, order, -1.0 / p.beta, rate)}};
        return {grid, {momentum(Axis::X, p, grid, order, 1.0 / p.beta, -rate)}};
      }
      if (x_gauge) {
        return {grid, {momentum(Axis::Y, p, grid, order, -1.0 / p.beta)}, coordinate(grid, Axis::X)};
      }
      return {grid, {momentum(Axis::X, p, grid, order, 1.0 / p.beta)}, coordinate(grid, Axis::Y)};
    case OperatorKind::P:
      return {grid, {momentum(x_gauge ? Axis::Y : Axis::X, p, grid, order)}};
    case OperatorKind::Pbar:
      return {grid, {momentum(x_gauge ? Axis::X : Axis::Y, p, grid, order)}};
  }
  throw DomainError("unknown operator kind");
}

int skin_width(int order) { return order / 2; }

void check_boundary_decay(const ComplexField& f, int band, double tolerance) {
  const auto& g = f.grid();
  double max_all = 0.0;
  for (const auto& v : f.values()) max_all = std::max(max_all, std::abs(v));
  if (max_all == 0.0) return;

  double worst = 0.0;
  int wi = 0, wj = 0;
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.ny(); ++j) {
      const bool in_band = i < band || j < band || i >= g.nx() - band || j >= g.ny() - band;
      if (!in_band) continue;
      const double a = std::abs(f(i, j));
      if (a > worst) {
        worst = a;
        wi = i;
        wj = j;
      }
    }
  }
  if (worst >= tolerance * max_all) {
    std::ostringstream msg;
    msg << "field does not decay at the boundary: |f| = " << worst << " at grid index (" << wi
        << ", " << wj << "), (x, y) = (" << g.x(wi) << ", " << g.y(wj) << "), ratio to max "
        << worst / max_all << " exceeds " << tolerance;
    throw ContaminationError(msg.str(), wi, wj, worst / max_all);
  }
}

namespace {

bool needs_decay(OperatorKind kind) {
  return kind != OperatorKind::MultX && kind != OperatorKind::MultY;
}

ComplexField apply_unchecked(const DiscreteOperator& op, const ComplexField& f) {
  ComplexField out(f.grid());
  build_stencil(op, f.grid()).apply(f.values(), out.values());
  return out;
}

}  // namespace

ComplexField apply(const DiscreteOperator& op, const ComplexField& f, BoundaryMode mode) {
  if (mode == BoundaryMode::kRequireDecay && needs_decay(op.kind)) {
    check_boundary_decay(f, skin_width(op.order));
  }
  return apply_unchecked(op, f);
}

ComplexField commutator_apply(const DiscreteOperator& a, const DiscreteOperator& b,
                              const ComplexField& f, BoundaryMode mode) {
  if (mode == BoundaryMode::kRequireDecay && (needs_decay(a.kind) || needs_decay(b.kind))) {
    check_boundary_decay(f, skin_width(a.order) + skin_width(b.order));
  }
  ComplexField ab = apply_unchecked(a, apply_unchecked(b, f));
  ab -= apply_unchecked(b, apply_unchecked(a, f));
  return ab;
}

double interior_norm(const ComplexField& f, int skin) {
  return std::sqrt(kernels::parallel::interior_sum_abs2(f.grid(), f.values(), skin));
}

double eigen_residual(const PhysicalParams& params, Gauge gauge, const ComplexField& f,
                      double energy, int order) {
  const int skin = skin_width(order);
  const double norm_f = interior_norm(f, skin);
  if (norm_f == 0.0) throw DomainError("eigen_residual: field vanishes on the interior");
  ComplexField r = apply(make_operator(OperatorKind::Hamiltonian, params, gauge, order), f,
                         BoundaryMode::kSkinExcluded);
  r -= energy * f;
  return interior_norm(r, skin) / norm_f;
}

double conserved_operator_check(const PhysicalParams& params, Gauge gauge,
                                ConservedQuantity which, const ComplexField& f, int order) {
  const auto h = make_operator(OperatorKind::Hamiltonian, params, gauge, order);
  auto c = make_operator(
      which == ConservedQuantity::Pbar ? OperatorKind::Pbar : OperatorKind::Qbar, params, gauge,
      order);
  c.covariant = true;
  const int skin = 2 * skin_width(order);
  const double norm_f = interior_norm(f, skin);
  if (norm_f == 0.0) throw DomainError("conserved_operator_check: field vanishes");
  return interior_norm(commutator_apply(h, c, f), skin) / norm_f;
}

ComplexField apply_hamiltonian_canonical(const PhysicalParams& params, Gauge gauge,
                                         const ComplexField& f, int order) {
  const auto q = make_operator(OperatorKind::Q, params, gauge, order);
  const auto p = make_operator(OperatorKind::P, params, gauge, order);
  ComplexField qq = apply_unchecked(q, apply_unchecked(q, f));
  ComplexField pp = apply_unchecked(p, apply_unchecked(p, f));
  qq *= params.beta * params.beta;
  qq += pp;
  qq *= 1.0 / (2.0 * params.mass);
  return qq;
}

}  // namespace landau
