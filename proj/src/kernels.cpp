#include "landau/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace landau::kernels {

std::vector<double> first_derivative_stencil(int order) {
  switch (order) {
    case 2: return {-0.5, 0.0, 0.5};
    case 4: return {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
    default: throw DomainError("stencil order must be 2 or 4, got " + std::to_string(order));
  }
}

std::vector<double> second_derivative_stencil(int order) {
  switch (order) {
    case 2: return {1.0, -2.0, 1.0};
    case 4: return {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};
    default: throw DomainError("stencil order must be 2 or 4, got " + std::to_string(order));
  }
}

StencilOperator::StencilOperator(const Grid2D& grid, std::vector<StencilTerm> terms,
                                 std::vector<cdouble> diagonal)
    : grid_(grid), terms_(std::move(terms)), diagonal_(std::move(diagonal)) {
  if (!diagonal_.empty() && diagonal_.size() != grid_.size()) {
    throw DomainError("stencil diagonal does not match grid size");
  }
  for (const auto& term : terms_) {
    if (term.coeffs.size() % 2 != 1) throw DomainError("stencil must have odd length");
    const int r = static_cast<int>(term.coeffs.size()) / 2;
    radius_ = std::max(radius_, r);

    const bool along_x = term.axis == Axis::X;
    const int n_transverse = along_x ? grid_.ny() : grid_.nx();
    const double h = along_x ? grid_.hx() : grid_.hy();
    Tabulated tab{term.axis, r, std::vector<cdouble>((2 * r + 1) * n_transverse)};
    for (int m = -r; m <= r; ++m) {
      for (int t = 0; t < n_transverse; ++t) {
        const double coord = along_x ? grid_.y(t) : grid_.x(t);
        tab.weights[(m + r) * n_transverse + t] =
            term.scale * term.coeffs[m + r] * std::polar(1.0, -term.phase_rate * m * h * coord);
      }
    }
    tables_.push_back(std::move(tab));
  }
}

void StencilOperator::apply_row(int i, std::span<const cdouble> in,
                                std::span<cdouble> out) const {
  const int nx = grid_.nx();
  const int ny = grid_.ny();
  cdouble* row_out = out.data() + static_cast<std::size_t>(i) * ny;
  const cdouble* row_in = in.data() + static_cast<std::size_t>(i) * ny;

  if (diagonal_.empty()) {
    std::fill(row_out, row_out + ny, cdouble{});
  } else {
    const cdouble* d = diagonal_.data() + static_cast<std::size_t>(i) * ny;
    for (int j = 0; j < ny; ++j) row_out[j] = d[j] * row_in[j];
  }

  for (const auto& tab : tables_) {
    const int r = tab.radius;
    if (tab.axis == Axis::X) {
      // Neighbour rows; weights depend on y_j.
      for (int m = -r; m <= r; ++m) {
        const int ii = i + m;
        if (ii < 0 || ii >= nx) continue;
        const cdouble* w = tab.weights.data() + static_cast<std::size_t>(m + r) * ny;
        const cdouble* src = in.data() + static_cast<std::size_t>(ii) * ny;
        for (int j = 0; j < ny; ++j) row_out[j] += w[j] * src[j];
      }
    } else {
      // Neighbours within the row; weights depend on x_i only.
      for (int m = -r; m <= r; ++m) {
        const cdouble w = tab.weights[static_cast<std::size_t>(m + r) * nx + i];
        if (w == cdouble{}) continue;
        const int j0 = std::max(0, -m);
        const int j1 = std::min(ny, ny - m);
        for (int j = j0; j < j1; ++j) row_out[j] += w * row_in[j + m];
      }
    }
  }
}

void StencilOperator::apply(std::span<const cdouble> in, std::span<cdouble> out) const {
  if (in.size() != grid_.size() || out.size() != grid_.size()) {
    throw DomainError("stencil apply: buffer size does not match grid");
  }
  const int nx = grid_.nx();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nx; ++i) apply_row(i, in, out);
}

void StencilOperator::apply_serial(std::span<const cdouble> in, std::span<cdouble> out) const {
  if (in.size() != grid_.size() || out.size() != grid_.size()) {
    throw DomainError("stencil apply: buffer size does not match grid");
  }
  const int nx = grid_.nx();
  const int ny = grid_.ny();
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      cdouble acc = diagonal_.empty() ? cdouble{} : diagonal_[grid_.index(i, j)] * in[grid_.index(i, j)];
      for (const auto& term : terms_) {
        const int r = static_cast<int>(term.coeffs.size()) / 2;
        const bool along_x = term.axis == Axis::X;
        const double h = along_x ? grid_.hx() : grid_.hy();
        const double coord = along_x ? grid_.y(j) : grid_.x(i);
        for (int m = -r; m <= r; ++m) {
          const int ii = along_x ? i + m : i;
          const int jj = along_x ? j : j + m;
          if (ii < 0 || ii >= nx || jj < 0 || jj >= ny) continue;
          acc += term.scale * term.coeffs[m + r] *
                 std::polar(1.0, -term.phase_rate * m * h * coord) * in[grid_.index(ii, jj)];
        }
      }
      out[grid_.index(i, j)] = acc;
    }
  }
}

double StencilOperator::gershgorin_bound() const {
  double bound = 0.0;
  const int nx = grid_.nx();
  const int ny = grid_.ny();
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      double row = diagonal_.empty() ? 0.0 : std::abs(diagonal_[grid_.index(i, j)]);
      for (const auto& tab : tables_) {
        const int r = tab.radius;
        const bool along_x = tab.axis == Axis::X;
        const int n_t = along_x ? ny : nx;
        const int t = along_x ? j : i;
        for (int m = -r; m <= r; ++m) row += std::abs(tab.weights[(m + r) * n_t + t]);
      }
      bound = std::max(bound, row);
    }
  }
  return bound;
}

namespace {

double trapezoid_weight(int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; }

}  // namespace

namespace parallel {

void sample(const Grid2D& grid, const std::function<cdouble(double, double)>& f,
            std::span<cdouble> out) {
  const int nx = grid.nx();
  const int ny = grid.ny();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nx; ++i) {
    const double x = grid.x(i);
    for (int j = 0; j < ny; ++j) out[grid.index(i, j)] = f(x, grid.y(j));
  }
}

cdouble trapezoid_inner(const Grid2D& grid, std::span<const cdouble> a,
                        std::span<const cdouble> b) {
  const int nx = grid.nx();
  const int ny = grid.ny();
  std::vector<cdouble> partial(nx);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nx; ++i) {
    cdouble s = 0.0;
    for (int j = 0; j < ny; ++j) {
      s += trapezoid_weight(j, ny) * std::conj(a[grid.index(i, j)]) * b[grid.index(i, j)];
    }
    partial[i] = trapezoid_weight(i, nx) * s;
  }
  cdouble total = 0.0;
  for (const auto& p : partial) total += p;
  return total * grid.hx() * grid.hy();
}

double interior_sum_abs2(const Grid2D& grid, std::span<const cdouble> a, int skin) {
  const int nx = grid.nx();
  const int ny = grid.ny();
  if (2 * skin >= nx || 2 * skin >= ny) throw DomainError("skin leaves no interior nodes");
  std::vector<double> partial(nx, 0.0);
#pragma omp parallel for schedule(static)
  for (int i = skin; i < nx - skin; ++i) {
    double s = 0.0;
    for (int j = skin; j < ny - skin; ++j) s += std::norm(a[grid.index(i, j)]);
    partial[i] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total * grid.hx() * grid.hy();
}

}  // namespace parallel

namespace serial {

void sample(const Grid2D& grid, const std::function<cdouble(double, double)>& f,
            std::span<cdouble> out) {
  for (int i = 0; i < grid.nx(); ++i) {
    for (int j = 0; j < grid.ny(); ++j) out[grid.index(i, j)] = f(grid.x(i), grid.y(j));
  }
}

cdouble trapezoid_inner(const Grid2D& grid, std::span<const cdouble> a,
                        std::span<const cdouble> b) {
  cdouble total = 0.0;
  for (int i = 0; i < grid.nx(); ++i) {
    for (int j = 0; j < grid.ny(); ++j) {
      total += trapezoid_weight(i, grid.nx()) * trapezoid_weight(j, grid.ny()) *
               std::conj(a[grid.index(i, j)]) * b[grid.index(i, j)];
    }
  }
  return total * grid.hx() * grid.hy();
}

double interior_sum_abs2(const Grid2D& grid, std::span<const cdouble> a, int skin) {
  if (2 * skin >= grid.nx() || 2 * skin >= grid.ny()) {
    throw DomainError("skin leaves no interior nodes");
  }
  double total = 0.0;
  for (int i = skin; i < grid.nx() - skin; ++i) {
    for (int j = skin; j < grid.ny() - skin; ++j) total += std::norm(a[grid.index(i, j)]);
  }
  return total * grid.hx() * grid.hy();
}

}  // namespace serial

}  // namespace landau::kernels
