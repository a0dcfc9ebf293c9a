#include "landau/physcore.hpp"

#include <cmath>
#include <string>

#include "landau/kernels.hpp"

namespace landau {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be positive and finite, got " +
                      std::to_string(value));
  }
}

}  // namespace

PhysicalParams derive_params(double hbar, double mass, double charge, double light_speed,
                             double field) {
  require_positive(hbar, "hbar");
  require_positive(mass, "mass");
  require_positive(charge, "charge");
  require_positive(light_speed, "light speed");
  require_positive(field, "field");

  PhysicalParams p;
  p.hbar = hbar;
  p.mass = mass;
  p.charge = charge;
  p.light_speed = light_speed;
  p.field = field;
  p.omega_c = charge * field / (mass * light_speed);
  p.beta = mass * p.omega_c;
  p.mag_length = std::sqrt(hbar / p.beta);
  return p;
}

std::string_view to_string(Gauge gauge) {
  return gauge == Gauge::LandauX ? "landau-x" : "landau-y";
}

Gauge gauge_from_string(std::string_view name) {
  if (name == "landau-x") return Gauge::LandauX;
  if (name == "landau-y") return Gauge::LandauY;
  throw DomainError("unknown gauge '" + std::string(name) + "'");
}

void validate(const QuantumNumbers& qn) {
  if (qn.n < 0) throw DomainError("oscillator level n must be >= 0");
  if (!std::isfinite(qn.k) || !std::isfinite(qn.kprime)) {
    throw DomainError("momenta k, k' must be finite");
  }
}

Grid2D::Grid2D(Bounds bounds, int nx, int ny) : bounds_(bounds), nx_(nx), ny_(ny) {
  if (!(bounds.x_max > bounds.x_min) || !(bounds.y_max > bounds.y_min) ||
      !std::isfinite(bounds.x_min) || !std::isfinite(bounds.x_max) ||
      !std::isfinite(bounds.y_min) || !std::isfinite(bounds.y_max)) {
    throw DomainError("grid bounds must be finite with max > min");
  }
  if (nx < kMinGridPoints || ny < kMinGridPoints) {
    throw DomainError("grid needs at least " + std::to_string(kMinGridPoints) +
                      " points per axis");
  }
  hx_ = (bounds.x_max - bounds.x_min) / (nx - 1);
  hy_ = (bounds.y_max - bounds.y_min) / (ny - 1);
}

double Grid2D::x(int i) const {
  return std::lerp(bounds_.x_min, bounds_.x_max, static_cast<double>(i) / (nx_ - 1));
}

double Grid2D::y(int j) const {
  return std::lerp(bounds_.y_min, bounds_.y_max, static_cast<double>(j) / (ny_ - 1));
}

Grid2D Grid2D::interior() const {
  return Grid2D({x(1), x(nx_ - 2), y(1), y(ny_ - 2)}, nx_ - 2, ny_ - 2);
}

bool Grid2D::operator==(const Grid2D& other) const {
  return nx_ == other.nx_ && ny_ == other.ny_ && bounds_.x_min == other.bounds_.x_min &&
         bounds_.x_max == other.bounds_.x_max && bounds_.y_min == other.bounds_.y_min &&
         bounds_.y_max == other.bounds_.y_max;
}

Grid2D make_grid(Bounds bounds, int nx, int ny) { return Grid2D(bounds, nx, ny); }

ComplexField::ComplexField(Grid2D grid) : grid_(grid), values_(grid.size()) {}

ComplexField::ComplexField(Grid2D grid, std::vector<cdouble> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw DomainError("field has " + std::to_string(values_.size()) + " values, grid needs " +
                      std::to_string(grid_.size()));
  }
  if (!all_finite()) throw DomainError("field values must be finite");
}

ComplexField& ComplexField::operator+=(const ComplexField& other) {
  if (!(grid_ == other.grid_)) throw DomainError("field grids differ");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

ComplexField& ComplexField::operator-=(const ComplexField& other) {
  if (!(grid_ == other.grid_)) throw DomainError("field grids differ");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

ComplexField& ComplexField::operator*=(cdouble alpha) {
  for (auto& v : values_) v *= alpha;
  return *this;
}

bool ComplexField::all_finite() const {
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
ComplexField operator-(ComplexField a, const ComplexField& b) { return a -= b; }
ComplexField operator*(cdouble alpha, ComplexField f) { return f *= alpha; }

double field_norm(const ComplexField& field) {
  const auto& g = field.grid();
  const double integral =
      kernels::parallel::trapezoid_inner(g, field.values(), field.values()).real();
  return std::sqrt(std::max(0.0, integral));
}

cdouble overlap(const ComplexField& f, const ComplexField& g) {
  if (!(f.grid() == g.grid())) throw DomainError("overlap requires identical grids");
  return kernels::parallel::trapezoid_inner(f.grid(), f.values(), g.values());
}

}  // namespace landau
