#include "landau/hermite.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cfloat>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "landau/errors.hpp"

namespace landau {

namespace {

constexpr double kCutoff = 60.0;
// Rescale the running recurrence before it can overflow; the scale is carried
// as a log so the Gaussian factor is applied exactly once at the end.
constexpr double kRescaleAbove = 1e150;

const double kPiQuarter = std::pow(std::numbers::pi, -0.25);

// Runs the normalized recurrence without the Gaussian factor.  Returns
// values[j] * exp(log_scale) == Psi_j(s) * exp(s^2/2).
double recurrence(int nmax, double s, std::span<double> values, double& log_scale) {
  log_scale = 0.0;
  double prev = 0.0;
  double cur = kPiQuarter;
  if (!values.empty()) values[0] = cur;
  for (int j = 0; j < nmax; ++j) {
    const double next =
        std::sqrt(2.0 / (j + 1)) * s * cur - std::sqrt(static_cast<double>(j) / (j + 1)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleAbove) {
      cur /= kRescaleAbove;
      prev /= kRescaleAbove;
      log_scale += std::log(kRescaleAbove);
      for (int q = 0; q <= j && !values.empty(); ++q) values[q] /= kRescaleAbove;
    }
    if (!values.empty()) values[j + 1] = cur;
  }
  return cur;
}

double finish(double raw, double log_scale, double s) {
  if (raw == 0.0) return 0.0;
  const double log_mag = std::log(std::abs(raw)) + log_scale - 0.5 * s * s;
  if (log_mag < std::log(DBL_MIN)) return 0.0;
  return std::copysign(std::exp(log_mag), raw);
}

}  // namespace

double psi_n(int n, double s) {
  if (n < 0) throw DomainError("psi_n: level must be >= 0, got " + std::to_string(n));
  if (!(std::abs(s) < kCutoff)) return 0.0;
  double log_scale = 0.0;
  const double raw = recurrence(n, s, {}, log_scale);
  return finish(raw, log_scale, s);
}

void psi_upto(int nmax, double s, std::span<double> out) {
  if (nmax < 0) throw DomainError("psi_upto: nmax must be >= 0");
  if (out.size() < static_cast<std::size_t>(nmax) + 1) {
    throw DomainError("psi_upto: output span too short");
  }
  if (!(std::abs(s) < kCutoff)) {
    std::fill(out.begin(), out.begin() + nmax + 1, 0.0);
    return;
  }
  // Rescaling is applied to the whole prefix, so one shared scale is valid.
  double log_scale = 0.0;
  recurrence(nmax, s, out.first(nmax + 1), log_scale);
  for (int j = 0; j <= nmax; ++j) out[j] = finish(out[j], log_scale, s);
}

namespace {

QuadratureRule build_rule(int order) {
  QuadratureRule rule;
  rule.order = order;

  // Golub-Welsch: Jacobi matrix of the normalized Hermite recurrence.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd sub(std::max(order - 1, 0));
  for (int k = 1; k < order; ++k) sub[k - 1] = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();

  // Enforce exact symmetry about the origin.
  rule.nodes.resize(order);
  for (int i = 0; i < order; ++i) rule.nodes[i] = 0.5 * (ev[i] - ev[order - 1 - i]);
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;

  // Christoffel numbers from the normalized functions; accurate even where the
  // raw weights are tiny:  w_i exp(s_i^2) = 1 / sum_k Psi_k(s_i)^2.
  rule.weights.resize(order);
  rule.scaled_weights.resize(order);
  std::vector<double> psi(order);
  for (int i = 0; i < order; ++i) {
    const double s = rule.nodes[i];
    psi_upto(order - 1, s, psi);
    double sum = 0.0;
    for (double v : psi) sum += v * v;
    rule.scaled_weights[i] = 1.0 / sum;
    rule.weights[i] = rule.scaled_weights[i] * std::exp(-s * s);
  }
  for (int i = 0; i < order / 2; ++i) {
    const int mirror = order - 1 - i;
    const double w = 0.5 * (rule.weights[i] + rule.weights[mirror]);
    const double sw = 0.5 * (rule.scaled_weights[i] + rule.scaled_weights[mirror]);
    rule.weights[i] = rule.weights[mirror] = w;
    rule.scaled_weights[i] = rule.scaled_weights[mirror] = sw;
  }
  return rule;
}

struct RuleTable {
  std::array<std::once_flag, kMaxQuadratureOrder + 1> once;
  std::array<std::unique_ptr<const QuadratureRule>, kMaxQuadratureOrder + 1> rules;
};

RuleTable& table() {
  static RuleTable t;
  return t;
}

}  // namespace

const QuadratureRule& gauss_hermite(int order) {
  if (order < 1 || order > kMaxQuadratureOrder) {
    throw DomainError("gauss_hermite: order must be in [1, " +
                      std::to_string(kMaxQuadratureOrder) + "], got " + std::to_string(order));
  }
  auto& t = table();
  std::call_once(t.once[order], [&] {
    t.rules[order] = std::make_unique<const QuadratureRule>(build_rule(order));
  });
  return *t.rules[order];
}

std::complex<double> fourier_of_psi(int n, double t, const QuadratureRule& rule) {
  if (n < 0) throw DomainError("fourier_of_psi: level must be >= 0");
  if (rule.order < 2 * n + 20) {
    throw AccuracyError("fourier_of_psi: rule order " + std::to_string(rule.order) +
                        " is below 2n+20 = " + std::to_string(2 * n + 20));
  }
  // Substitute s = sqrt(2) u so the Gaussian in Psi_n becomes the rule's
  // weight and the remaining integrand is entire.
  const double root2 = std::numbers::sqrt2;
  std::complex<double> sum = 0.0;
  for (int i = 0; i < rule.order; ++i) {
    const double u = rule.nodes[i];
    sum += rule.scaled_weights[i] * psi_n(n, root2 * u) * std::polar(1.0, -root2 * t * u);
  }
  sum /= std::sqrt(std::numbers::pi);

  const double forbidden = (n % 2 == 0) ? sum.imag() : sum.real();
  if (std::abs(forbidden) > 1e-10) {
    throw AccuracyError("fourier_of_psi: parity-forbidden component " +
                        std::to_string(forbidden) + " exceeds 1e-10");
  }
  return sum;
}

}  // namespace landau
