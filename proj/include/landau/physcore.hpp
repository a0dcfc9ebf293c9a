#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "landau/errors.hpp"

namespace landau {

using cdouble = std::complex<double>;

/// Dimensional constants of the problem and the quantities derived from them.
/// Construct through derive_params() so the derived members stay consistent.
struct PhysicalParams {
  double hbar = 1.0;
  double mass = 1.0;
  double charge = 1.0;
  double light_speed = 1.0;
  double field = 1.0;

  double omega_c = 1.0;     // e B / (m c)
  double beta = 1.0;        // m omega_c
  double mag_length = 1.0;  // sqrt(hbar / beta)

  /// Landau level n: hbar omega_c (n + 1/2).
  double landau_level(int n) const { return hbar * omega_c * (n + 0.5); }
};

/// Throws DomainError unless every input is strictly positive and finite.
PhysicalParams derive_params(double hbar, double mass, double charge, double light_speed,
                             double field);

inline PhysicalParams natural_units() { return derive_params(1.0, 1.0, 1.0, 1.0, 1.0); }

/// LandauX: A = (-B y, 0, 0).  LandauY: A = (0, B x, 0).
enum class Gauge { LandauX, LandauY };

std::string_view to_string(Gauge gauge);
Gauge gauge_from_string(std::string_view name);

struct QuantumNumbers {
  int n = 0;
  double k = 0.0;
  double kprime = 0.0;
};

void validate(const QuantumNumbers& qn);

struct Bounds {
  double x_min, x_max, y_min, y_max;
};

/// Uniform tensor grid including both endpoints on each axis.
class Grid2D {
 public:
  Grid2D(Bounds bounds, int nx, int ny);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  const Bounds& bounds() const { return bounds_; }

  double x(int i) const;
  double y(int j) const;

  /// Row-major with y varying fastest.
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * ny_ + j; }

  /// The grid with one layer of nodes removed on every side; same spacing.
  Grid2D interior() const;

  bool operator==(const Grid2D& other) const;

 private:
  Bounds bounds_;
  int nx_, ny_;
  double hx_, hy_;
};

inline constexpr int kMinGridPoints = 8;

Grid2D make_grid(Bounds bounds, int nx, int ny);

/// Complex samples on a Grid2D, layout as Grid2D::index.
class ComplexField {
 public:
  explicit ComplexField(Grid2D grid);
  /// Throws DomainError on size mismatch or non-finite entries.
  ComplexField(Grid2D grid, std::vector<cdouble> values);

  const Grid2D& grid() const { return grid_; }
  cdouble operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
  cdouble& operator()(int i, int j) { return values_[grid_.index(i, j)]; }

  std::span<const cdouble> values() const { return values_; }
  std::span<cdouble> values() { return values_; }

  ComplexField& operator+=(const ComplexField& other);
  ComplexField& operator-=(const ComplexField& other);
  ComplexField& operator*=(cdouble alpha);

  bool all_finite() const;

 private:
  Grid2D grid_;
  std::vector<cdouble> values_;
};

ComplexField operator+(ComplexField a, const ComplexField& b);
ComplexField operator-(ComplexField a, const ComplexField& b);
ComplexField operator*(cdouble alpha, ComplexField f);

/// Trapezoid-weighted L2 norm over the whole grid.
double field_norm(const ComplexField& field);

/// Trapezoid approximation of the integral of conj(f) g.  Grids must match.
cdouble overlap(const ComplexField& f, const ComplexField& g);

}  // namespace landau
