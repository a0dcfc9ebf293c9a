#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "landau/physcore.hpp"

// Data-parallel grid kernels.  `parallel` is what the library uses; `serial`
// is a direct, unoptimized reference kept for tests and benchmarks.  Both
// give the same results up to floating-point reassociation, and every
// reduction in `parallel` uses a fixed row order so results do not depend on
// the thread count.
namespace landau::kernels {

enum class Axis { X, Y };

/// One directional stencil term:
///   out(p) += scale * sum_m coeffs[m] * exp(-i * phase_rate * m * h * t) * in(p + m e_axis)
/// with m running over [-r, r], h the spacing along `axis`, and t the
/// coordinate transverse to it.  Neighbours outside the grid read as zero.
struct StencilTerm {
  Axis axis = Axis::X;
  std::vector<double> coeffs;  // length 2r+1, centred
  cdouble scale = 1.0;
  double phase_rate = 0.0;
};

/// First-derivative (d/dx) and second-derivative (d^2/dx^2) central stencils
/// of order 2 or 4, without the 1/h or 1/h^2 factor.
std::vector<double> first_derivative_stencil(int order);
std::vector<double> second_derivative_stencil(int order);

/// Sum of stencil terms plus an optional pointwise multiplier, with all
/// weights tabulated once at construction.
class StencilOperator {
 public:
  StencilOperator(const Grid2D& grid, std::vector<StencilTerm> terms,
                  std::vector<cdouble> diagonal = {});

  const Grid2D& grid() const { return grid_; }
  int radius() const { return radius_; }

  void apply(std::span<const cdouble> in, std::span<cdouble> out) const;
  void apply_serial(std::span<const cdouble> in, std::span<cdouble> out) const;

  /// Largest absolute row sum; an upper bound on the spectral radius.
  double gershgorin_bound() const;

 private:
  struct Tabulated {
    Axis axis;
    int radius;
    // weights[(m + radius) * n_transverse + t]
    std::vector<cdouble> weights;
  };

  void apply_row(int i, std::span<const cdouble> in, std::span<cdouble> out) const;

  Grid2D grid_;
  std::vector<StencilTerm> terms_;
  std::vector<Tabulated> tables_;
  std::vector<cdouble> diagonal_;
  int radius_ = 0;
};

namespace parallel {

void sample(const Grid2D& grid, const std::function<cdouble(double, double)>& f,
            std::span<cdouble> out);

/// Trapezoid approximation of the integral of conj(a) b over the grid.
cdouble trapezoid_inner(const Grid2D& grid, std::span<const cdouble> a,
                        std::span<const cdouble> b);

/// Plain sum of |a|^2 * hx * hy over nodes at least `skin` away from every edge.
double interior_sum_abs2(const Grid2D& grid, std::span<const cdouble> a, int skin);

}  // namespace parallel

namespace serial {

void sample(const Grid2D& grid, const std::function<cdouble(double, double)>& f,
            std::span<cdouble> out);
cdouble trapezoid_inner(const Grid2D& grid, std::span<const cdouble> a,
                        std::span<const cdouble> b);
double interior_sum_abs2(const Grid2D& grid, std::span<const cdouble> a, int skin);

}  // namespace serial

}  // namespace landau::kernels
