#include "landau/wavefunctions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "landau/hermite.hpp"
#include "landau/kernels.hpp"

namespace landau {

namespace {

cdouble landau_x(const PhysicalParams& p, int n, double k, double x, double y) {
  return std::polar(1.0, k * x / p.hbar) * psi_n(n, (y - k / p.beta) / p.mag_length);
}

cdouble nonfree_term_x(const PhysicalParams& p, int n, double kprime, double x, double y) {
  const double u = x - kprime / p.beta;
  return std::polar(1.0, p.beta * u * y / p.hbar) * psi_n(n, u / p.mag_length);
}

}  // namespace

cdouble eval_landau(const PhysicalParams& params, Gauge gauge, int n, double k, double x,
                    double y) {
  if (gauge == Gauge::LandauX) return landau_x(params, n, k, x, y);
  return std::conj(landau_x(params, n, k, y, x));
}

cdouble eval_nonfree_term(const PhysicalParams& params, Gauge gauge, int n, double kprime,
                          double x, double y) {
  if (gauge == Gauge::LandauX) return nonfree_term_x(params, n, kprime, x, y);
  return std::conj(nonfree_term_x(params, n, kprime, y, x));
}

cdouble eval_nonfree(const PhysicalParams& params, Gauge gauge, const QuantumNumbers& qn,
                     const NonFreeCoefficients& coeffs, double x, double y) {
  if (coeffs.c_plane == cdouble{} && coeffs.c_delta == cdouble{}) {
    throw DomainError("non-free coefficients must not both be zero");
  }
  cdouble value = 0.0;
  if (coeffs.c_plane != cdouble{}) {
    value += coeffs.c_plane * eval_landau(params, gauge, qn.n, qn.k, x, y);
  }
  if (coeffs.c_delta != cdouble{}) {
    value += coeffs.c_delta * eval_nonfree_term(params, gauge, qn.n, qn.kprime, x, y);
  }
  return value;
}

ComplexField sample_field(const Evaluator& evaluator, const Grid2D& grid) {
  std::vector<cdouble> values(grid.size());
  kernels::parallel::sample(grid, evaluator, values);
  for (int i = 0; i < grid.nx(); ++i) {
    for (int j = 0; j < grid.ny(); ++j) {
      const cdouble v = values[grid.index(i, j)];
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream msg;
        msg << "non-finite sample at grid index (" << i << ", " << j << ")";
        throw EvaluationError(msg.str(), i, j);
      }
    }
  }
  return ComplexField(grid, std::move(values));
}

double box_momentum(const PhysicalParams& params, int j, double box_length) {
  if (!(box_length > 0.0)) throw DomainError("box length must be positive");
  return 2.0 * std::numbers::pi * params.hbar * j / box_length;
}

std::optional<std::string> center_warning(const PhysicalParams& params, Gauge gauge,
                                          const QuantumNumbers& qn, bool nonfree,
                                          const Grid2D& grid) {
  const auto& b = grid.bounds();
  const double margin = 3.0 * params.mag_length;
  std::ostringstream msg;
  bool warn = false;

  // LandauX: the free state is centred in y, the non-free term in x.
  // LandauY mirrors both.
  const bool free_along_y = gauge == Gauge::LandauX;
  auto check = [&](double center, bool along_y, const char* label) {
    const double lo = along_y ? b.y_min : b.x_min;
    const double hi = along_y ? b.y_max : b.x_max;
    if (center - lo < margin || hi - center < margin) {
      if (warn) msg << "; ";
      msg << label << " oscillator centre " << (along_y ? "y" : "x") << " = " << center
          << " is within 3 magnetic lengths of the grid edge";
      warn = true;
    }
  };
  check(qn.k / params.beta, free_along_y, "free-term");
  if (nonfree) check(qn.kprime / params.beta, !free_along_y, "non-free-term");
  if (!warn) return std::nullopt;
  return msg.str();
}

}  // namespace landau
