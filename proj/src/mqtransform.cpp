#include "landau/mqtransform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "landau/hermite.hpp"
#include "landau/wavefunctions.hpp"

namespace landau {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Gaussian tails are cut at exp(-kTailExponent).
constexpr double kTailExponent = 40.0;

cdouble minus_i_power(int n) {
  switch (n % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

struct Axis1D {
  double lo;
  double step;
  int count;
  double node(int i) const { return lo + step * i; }
  double weight(int i) const { return (i == 0 || i == count - 1) ? 0.5 * step : step; }
};

Axis1D make_axis(double center, double half_width, double max_step) {
  const int intervals = std::max(2, static_cast<int>(std::ceil(2.0 * half_width / max_step)));
  return {center - half_width, 2.0 * half_width / intervals, intervals + 1};
}

// Trapezoid sum of kernel * f over a tensor grid; parallel over Q rows with a
// fixed-order final reduction.
template <typename F>
cdouble quadrature_2d(const PhysicalParams& params, const Axis1D& qa, const Axis1D& qba,
                      double x, double y, F&& f) {
  std::vector<cdouble> partial(qa.count);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < qa.count; ++i) {
    const double q = qa.node(i);
    cdouble row = 0.0;
    for (int j = 0; j < qba.count; ++j) {
      const double qb = qba.node(j);
      row += qba.weight(j) * mq_kernel(params, q, qb, x, y) * f(q, qb);
    }
    partial[i] = qa.weight(i) * row;
  }
  cdouble total = 0.0;
  for (const auto& v : partial) total += v;
  return total;
}

// Same quadrature for separable inputs a(Q) b(Qbar), tabulated once.
cdouble quadrature_separable(const PhysicalParams& params, const Axis1D& qa, const Axis1D& qba,
                             double x, double y, const std::function<cdouble(double)>& a,
                             const std::function<cdouble(double)>& b) {
  std::vector<cdouble> av(qa.count), bv(qba.count);
  for (int i = 0; i < qa.count; ++i) av[i] = qa.weight(i) * a(qa.node(i));
  for (int j = 0; j < qba.count; ++j) bv[j] = qba.weight(j) * b(qba.node(j));
  std::vector<cdouble> partial(qa.count);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < qa.count; ++i) {
    if (av[i] == cdouble{}) continue;
    const double q = qa.node(i);
    cdouble row = 0.0;
    for (int j = 0; j < qba.count; ++j) row += mq_kernel(params, q, qba.node(j), x, y) * bv[j];
    partial[i] = av[i] * row;
  }
  cdouble total = 0.0;
  for (const auto& v : partial) total += v;
  return total;
}

// Neville extrapolation of values at abscissae t to t = 0.
cdouble extrapolate_to_zero(std::vector<double> t, std::vector<cdouble> v) {
  const std::size_t n = t.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      v[i] = (t[i + level] * v[i] - t[i] * v[i + 1]) / (t[i + level] - t[i]);
    }
  }
  return v[0];
}

void check_monotone(const std::vector<cdouble>& seq) {
  // Differences between successive regulated values must shrink as the
  // regulator is removed; differences at roundoff level are ignored.
  double scale = 0.0;
  for (const auto& v : seq) scale = std::max(scale, std::abs(v));
  const double floor = 1e-12 * std::max(scale, 1.0);
  for (std::size_t i = 2; i < seq.size(); ++i) {
    const double prev = std::abs(seq[i - 1] - seq[i - 2]);
    const double cur = std::abs(seq[i] - seq[i - 1]);
    if (cur > floor && cur > prev * 1.0001) {
      throw DivergenceError("regulated transform does not converge along the schedule", seq);
    }
  }
}

}  // namespace

cdouble mq_kernel(const PhysicalParams& params, double q, double qbar, double x, double y) {
  const double phase = (params.beta / params.hbar) * (q * qbar + x * y - x * q - y * qbar);
  return (params.beta / kTwoPi) * std::polar(1.0, phase);
}

cdouble transform_planewave(const PhysicalParams& params, int n, double k, double x, double y) {
  return params.hbar * eval_landau(params, Gauge::LandauX, n, k, x, y);
}

cdouble delta_branch_constant(const PhysicalParams& params, int n) {
  if (n < 0) throw DomainError("delta_branch_constant: level must be >= 0");
  return minus_i_power(n) * std::sqrt(params.beta * params.hbar / kTwoPi);
}

cdouble transform_delta(const PhysicalParams& params, int n, double kprime, double x, double y) {
  return delta_branch_constant(params, n) *
         eval_nonfree_term(params, Gauge::LandauX, n, kprime, x, y);
}

cdouble transform_gaussian(const PhysicalParams& params, double x, double y) {
  const double l2 = params.mag_length * params.mag_length;
  const double re = -(x * x + y * y) / (4.0 * l2);
  return (params.hbar / std::numbers::sqrt2) * std::exp(cdouble(re, x * y / (2.0 * l2)));
}

CustomInput gaussian_input(const PhysicalParams& params) {
  const double l = params.mag_length;
  const double half = std::sqrt(2.0 * kTailExponent) * l;
  return {[l](double q, double qb) {
            return cdouble(std::exp(-0.5 * (q * q + qb * qb) / (l * l)));
          },
          half, half};
}

double default_half_width(int n) { return std::max(8.0, std::sqrt(2.0 * n + 1.0) + 6.0); }

void validate(const RegulatorSchedule& schedule) {
  if (schedule.epsilons.size() < 3) {
    throw DomainError("regulator schedule needs at least 3 epsilons");
  }
  for (std::size_t i = 0; i < schedule.epsilons.size(); ++i) {
    const double e = schedule.epsilons[i];
    if (!(e > 0.0) || !std::isfinite(e)) throw DomainError("epsilons must be positive");
    if (i > 0 && !(e < schedule.epsilons[i - 1])) {
      throw DomainError("epsilons must be strictly decreasing");
    }
  }
  if (schedule.nodes_per_unit < 1) throw DomainError("nodes_per_unit must be >= 1");
  if (schedule.half_width < 0.0) throw DomainError("half_width must be >= 0");
}

namespace {

// Regulated value at one epsilon.  Works in physical units; l is the
// magnetic length and every width below is a multiple of it.
cdouble regulated_planewave(const PhysicalParams& p, const PlaneWaveInput& in, double x,
                            double y, double eps, double half_width, int nodes_per_unit) {
  const double l = p.mag_length;
  // Qbar: damping exp(-eps^2 Qbar^2 / 2 l^2) reaches the tail cut at
  // |Qbar| = sqrt(2 * tail) l / eps.  The phase frequency in Qbar is
  // (beta/hbar)(Q - y) + k/hbar, bounded over the Q range.
  const double qbar_half = std::sqrt(2.0 * kTailExponent) * l / eps;
  const double freq = (p.beta / p.hbar) * (half_width * l + std::abs(y)) + std::abs(in.k) / p.hbar;
  const double qbar_step = std::min(l / nodes_per_unit, std::numbers::pi / (freq + 2.0 / l));
  // Q: the Qbar integral leaves a Gaussian of width eps * l in Q.
  const double q_step = std::min(l / nodes_per_unit, eps * l / 1.5);

  const Axis1D qa = make_axis(0.0, half_width * l, q_step);
  const Axis1D qba = make_axis(0.0, qbar_half, qbar_step);
  return quadrature_separable(
      p, qa, qba, x, y, [&](double q) { return cdouble(psi_n(in.n, q / l)); },
      [&](double qb) {
        const double damp = std::exp(-0.5 * eps * eps * qb * qb / (l * l));
        return damp * std::polar(1.0, in.k * qb / p.hbar);
      });
}

cdouble regulated_delta(const PhysicalParams& p, const DeltaLineInput& in, double x, double y,
                        double eps, double half_width, int nodes_per_unit) {
  const double l = p.mag_length;
  const double sigma = eps * l;
  const double center = in.kprime / p.beta;
  const double qbar_half = std::sqrt(2.0 * kTailExponent) * sigma;
  const double freq = (p.beta / p.hbar) * (half_width * l + std::abs(y));
  const double qbar_step = std::min(sigma / 1.5, std::numbers::pi / (freq + 2.0 / l));
  const double q_step = l / nodes_per_unit;

  const Axis1D qa = make_axis(0.0, half_width * l, q_step);
  const Axis1D qba = make_axis(center, qbar_half, qbar_step);
  const double norm = 1.0 / (std::sqrt(kTwoPi) * sigma);
  return quadrature_separable(
      p, qa, qba, x, y, [&](double q) { return cdouble(psi_n(in.n, q / l)); },
      [&](double qb) {
        const double d = (qb - center) / sigma;
        return cdouble(norm * std::exp(-0.5 * d * d));
      });
}

TransformEstimate extrapolate(std::vector<double> eps, std::vector<cdouble> seq) {
  check_monotone(seq);
  std::vector<double> t(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) t[i] = eps[i] * eps[i];
  TransformEstimate est;
  est.value = extrapolate_to_zero(t, seq);
  // Same extrapolation without the coarsest point.
  const cdouble reduced = extrapolate_to_zero(std::vector<double>(t.begin() + 1, t.end()),
                                              std::vector<cdouble>(seq.begin() + 1, seq.end()));
  est.error = std::abs(est.value - reduced);
  est.sequence = std::move(seq);
  return est;
}

}  // namespace

TransformEstimate transform_numeric(const PhysicalParams& params, const TransformInput& input,
                                    double x, double y, const RegulatorSchedule& schedule) {
  validate(schedule);

  if (const auto* pw = std::get_if<PlaneWaveInput>(&input)) {
    if (pw->n < 0) throw DomainError("transform input level must be >= 0");
    const double hw = schedule.half_width > 0 ? schedule.half_width : default_half_width(pw->n);
    std::vector<cdouble> seq;
    for (double eps : schedule.epsilons) {
      seq.push_back(regulated_planewave(params, *pw, x, y, eps, hw, schedule.nodes_per_unit));
    }
    return extrapolate(schedule.epsilons, std::move(seq));
  }

  if (const auto* dl = std::get_if<DeltaLineInput>(&input)) {
    if (dl->n < 0) throw DomainError("transform input level must be >= 0");
    const double hw = schedule.half_width > 0 ? schedule.half_width : default_half_width(dl->n);
    std::vector<cdouble> seq;
    for (double eps : schedule.epsilons) {
      seq.push_back(regulated_delta(params, *dl, x, y, eps, hw, schedule.nodes_per_unit));
    }
    return extrapolate(schedule.epsilons, std::move(seq));
  }

  const auto& custom = std::get<CustomInput>(input);
  if (!custom.f) throw DomainError("custom transform input has no function");
  if (!(custom.half_width_q > 0.0) || !(custom.half_width_qbar > 0.0)) {
    throw DomainError("custom input half-widths must be positive");
  }
  // Absolutely convergent: no regulator, two resolutions.
  const double l = params.mag_length;
  const double freq = (params.beta / params.hbar) *
                      (std::max(custom.half_width_q, custom.half_width_qbar) + std::abs(x) + std::abs(y));
  const double base_step = std::min(l / schedule.nodes_per_unit, std::numbers::pi / (freq + 2.0 / l));
  TransformEstimate est;
  for (double step : {base_step, 0.5 * base_step}) {
    const Axis1D qa = make_axis(0.0, custom.half_width_q, step);
    const Axis1D qba = make_axis(0.0, custom.half_width_qbar, step);
    est.sequence.push_back(quadrature_2d(params, qa, qba, x, y, custom.f));
  }
  est.value = est.sequence.back();
  est.error = std::abs(est.sequence[1] - est.sequence[0]);
  return est;
}

}  // namespace landau
