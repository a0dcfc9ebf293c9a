#include <doctest.h>

#include <cmath>
#include <numbers>

#include "landau/hermite.hpp"
#include "landau/mqtransform.hpp"
#include "landau/operators.hpp"
#include "landau/wavefunctions.hpp"
#include "oracles.hpp"

using namespace landau;

namespace {

const double pi = std::numbers::pi;
const double pi_m14 = std::pow(pi, -0.25);

// Delta branch straight from the 1-D Fourier oracle:
//   (beta/2pi) exp(i (beta/hbar)(x - k'/beta) y) * l * sqrt(2 pi) * F[Psi_n]((x - k'/beta)/l).
cdouble delta_oracle(const PhysicalParams& p, int n, double kprime, double x, double y) {
  const double l = p.mag_length, u = x - kprime / p.beta;
  const cdouble ft = oracle::fourier([n](double s) { return oracle::psi(n, s); }, u / l);
  return p.beta / (2 * pi) * std::polar(1.0, p.beta / p.hbar * u * y) * l * std::sqrt(2 * pi) * ft;
}

}  // namespace

TEST_SUITE("mqtransform") {

TEST_CASE("kernel") {
  const auto p = derive_params(1.0, 2.0, 1.0, 1.0, 1.5);
  CHECK(mq_kernel(p, 0, 0, 0, 0) == cdouble(p.beta / (2 * pi)));
  CHECK(std::abs(mq_kernel(p, 1.3, -0.4, 2.0, 0.7)) == doctest::Approx(p.beta / (2 * pi)));
  const double phase = p.beta / p.hbar * (1.3 * -0.4 + 2.0 * 0.7 - 2.0 * 1.3 - 0.7 * -0.4);
  CHECK(std::abs(mq_kernel(p, 1.3, -0.4, 2.0, 0.7) - p.beta / (2 * pi) * std::polar(1.0, phase)) < 1e-15);
  // Symmetric under (Q, Qbar, x, y) -> (Qbar, Q, y, x).
  CHECK(mq_kernel(p, 0.2, 0.9, -1.1, 0.4) == mq_kernel(p, 0.9, 0.2, 0.4, -1.1));
}

TEST_CASE("plane-wave branch") {
  const auto p = natural_units();
  CHECK(std::abs(transform_planewave(p, 0, 0.0, 0.0, 0.0) - pi_m14) < 1e-15);
  for (int n : {0, 1, 4}) {
    for (double x : {-1.0, 0.3}) {
      for (double y : {-0.2, 1.9}) {
        CHECK(transform_planewave(p, n, 0.7, x, y) == eval_landau(p, Gauge::LandauX, n, 0.7, x, y));
      }
    }
  }
  const auto q = derive_params(2.0, 1.0, 1.0, 1.0, 0.5);
  CHECK(std::abs(transform_planewave(q, 2, 0.3, 0.5, 1.0) - 2.0 * eval_landau(q, Gauge::LandauX, 2, 0.3, 0.5, 1.0)) < 1e-15);
}

TEST_CASE("delta branch constant against the Fourier oracle") {
  for (const auto& p : {natural_units(), derive_params(0.6, 1.7, 1.0, 1.0, 2.2)}) {
    for (int n = 0; n <= 5; ++n) {
      for (double kp : {0.0, 0.8}) {
        for (auto [x, y] : {std::pair{0.37, 0.21}, {-0.9, 1.3}, {1.6, -0.5}}) {
          const cdouble want = delta_oracle(p, n, kp * p.beta, x * p.mag_length, y * p.mag_length);
          const cdouble got = transform_delta(p, n, kp * p.beta, x * p.mag_length, y * p.mag_length);
          CHECK(std::abs(got - want) < 1e-10 * std::sqrt(p.beta * p.hbar));
        }
      }
    }
  }
  const auto p = natural_units();
  CHECK(std::abs(delta_branch_constant(p, 0) - 1.0 / std::sqrt(2 * pi)) < 1e-15);
  CHECK(std::abs(delta_branch_constant(p, 1) - cdouble(0, -1) / std::sqrt(2 * pi)) < 1e-15);
  CHECK(std::abs(delta_branch_constant(p, 2) + 1.0 / std::sqrt(2 * pi)) < 1e-15);
}

TEST_CASE("delta branch ratio and phase") {
  const auto p = derive_params(1.0, 1.0, 1.0, 1.0, 1.3);
  for (int n = 0; n <= 4; ++n) {
    const double c = std::abs(delta_branch_constant(p, n));
    for (int i = 0; i < 9; ++i) {
      for (int j = 0; j < 9; ++j) {
        const double x = -2.0 + 0.5 * i, y = -2.0 + 0.5 * j;
        const cdouble t = eval_nonfree_term(p, Gauge::LandauX, n, 0.4, x, y);
        if (std::abs(t) < 1e-6) continue;
        CHECK(std::abs(std::abs(transform_delta(p, n, 0.4, x, y)) / std::abs(t) - c) < 1e-9 * c);
      }
    }
  }
  CHECK(std::arg(transform_delta(p, 0, 0.0, 0.37, 0.21) / eval_nonfree_term(p, Gauge::LandauX, 0, 0.0, 0.37, 0.21)) ==
        doctest::Approx(0.0).epsilon(1e-14));
  const double d = std::arg(transform_delta(p, 1, 0.0, 0.37, 0.21) /
                            eval_nonfree_term(p, Gauge::LandauX, 1, 0.0, 0.37, 0.21));
  CHECK(std::abs(d + pi / 2) < 1e-12);
}

TEST_CASE("numeric transform matches the analytic branches") {
  const auto p = natural_units();
  const RegulatorSchedule s;
  const auto pw = transform_numeric(p, PlaneWaveInput{0, 0.0}, 0.0, 0.0, s);
  CHECK(std::abs(pw.value - pi_m14) < 1e-3);
  CHECK(pw.error <= 1e-3);
  CHECK(pw.sequence.size() == s.epsilons.size());
  const auto dl = transform_numeric(p, DeltaLineInput{0, 0.0}, 0.0, 0.0, s);
  CHECK(std::abs(dl.value - delta_branch_constant(p, 0) * pi_m14) < 1e-3);
  CHECK(dl.error <= 1e-3);

  const auto q = derive_params(1.0, 1.0, 1.0, 1.0, 2.0);
  const double l = q.mag_length;
  for (auto [x, y] : {std::pair{-2.0, 1.0}, {1.0, -1.0}, {2.0, 2.0}}) {
    const auto a = transform_numeric(q, PlaneWaveInput{1, 0.5}, x * l, y * l, s);
    CHECK(std::abs(a.value - transform_planewave(q, 1, 0.5, x * l, y * l)) < 1e-3);
    const auto b = transform_numeric(q, DeltaLineInput{2, -0.5}, x * l, y * l, s);
    CHECK(std::abs(b.value - transform_delta(q, 2, -0.5, x * l, y * l)) < 1e-3);
  }
}

TEST_CASE("custom Gaussian against brute force and the closed form") {
  for (const auto& p : {natural_units(), derive_params(1.5, 1.0, 1.0, 1.0, 0.8)}) {
    const auto in = gaussian_input(p);
    const double l = p.mag_length;
    auto f = [l](double q, double qb) { return cdouble(std::exp(-0.5 * (q * q + qb * qb) / (l * l))); };
    for (auto [x, y] : {std::pair{0.0, 0.0}, {0.7, -1.2}, {-1.5, -0.4}}) {
      const auto est = transform_numeric(p, in, x * l, y * l, RegulatorSchedule{});
      const cdouble brute = oracle::mq_brute_force(p, f, x * l, y * l, 9.0 * l, 600);
      CHECK(std::abs(est.value - brute) < 1e-6 * p.hbar);
      CHECK(std::abs(est.value - transform_gaussian(p, x * l, y * l)) < 1e-10 * p.hbar);
      CHECK(est.sequence.size() == 2);
    }
  }
}

TEST_CASE("linearity on custom inputs") {
  const auto p = natural_units();
  auto f1 = [](double q, double qb) { return cdouble(q, 1.0) * std::exp(-0.5 * (q * q + qb * qb)); };
  auto f2 = [](double q, double qb) { return std::exp(cdouble(-0.6 * (q - 0.5) * (q - 0.5) - 0.4 * qb * qb, 0.3 * qb)); };
  const cdouble c1(0.4, -1.1), c2(-2.0, 0.25);
  auto combo = [&](double q, double qb) { return c1 * f1(q, qb) + c2 * f2(q, qb); };
  const RegulatorSchedule s;
  for (auto [x, y] : {std::pair{0.3, -0.8}, {-1.2, 0.9}}) {
    const cdouble a = transform_numeric(p, CustomInput{f1, 9.0, 9.0}, x, y, s).value;
    const cdouble b = transform_numeric(p, CustomInput{f2, 9.0, 9.0}, x, y, s).value;
    const cdouble ab = transform_numeric(p, CustomInput{combo, 9.0, 9.0}, x, y, s).value;
    CHECK(std::abs(ab - (c1 * a + c2 * b)) < 1e-10);
  }
}

TEST_CASE("unitarity surrogate in natural units") {
  const auto p = natural_units();
  auto f = [](double q, double qb) { return cdouble(std::exp(-0.5 * (q * q + qb * qb))); };
  auto g = [](double q, double qb) {
    return std::exp(cdouble(-0.5 * ((q - 0.5) * (q - 0.5) + (qb + 0.3) * (qb + 0.3)), 0.4 * q));
  };
  // <f, g> in closed form: product of two 1-D Gaussian overlaps.
  const cdouble fg = pi * std::exp(cdouble(-0.125, 0.1));
  const Grid2D grid({-8, 8, -8, 8}, 33, 33);
  RegulatorSchedule s;
  s.nodes_per_unit = 8;
  const auto tf = sample_field([&](double x, double y) { return transform_numeric(p, CustomInput{f, 9.0, 9.0}, x, y, s).value; }, grid);
  const auto tg = sample_field([&](double x, double y) { return transform_numeric(p, CustomInput{g, 9.0, 9.0}, x, y, s).value; }, grid);
  CHECK(std::abs(overlap(tf, tf) - pi) < 1e-4);
  CHECK(std::abs(overlap(tf, tg) - fg) < 1e-4);
}

TEST_CASE("analytic branches solve the Landau problem") {
  const auto p = derive_params(1.0, 1.0, 1.0, 1.0, 1.2);
  const Grid2D g({-10, 10, -10, 10}, 1001, 1001);
  for (int n : {0, 2}) {
    const auto a = sample_field([&](double x, double y) { return transform_planewave(p, n, 0.3, x, y); }, g);
    CHECK(eigen_residual(p, Gauge::LandauX, a, p.landau_level(n)) < 1e-5);
    const auto b = sample_field([&](double x, double y) { return transform_delta(p, n, -0.4, x, y); }, g);
    CHECK(eigen_residual(p, Gauge::LandauX, b, p.landau_level(n)) < 1e-5);
  }
}

TEST_CASE("errors") {
  const auto p = natural_units();
  RegulatorSchedule bad;
  bad.epsilons = {0.2, 0.1};
  CHECK_THROWS_AS(validate(bad), DomainError);
  bad.epsilons = {0.2, 0.2, 0.1};
  CHECK_THROWS_AS(validate(bad), DomainError);
  bad.epsilons = {0.2, 0.1, -0.05};
  CHECK_THROWS_AS(validate(bad), DomainError);
  bad.epsilons = {0.2, 0.1, 0.05};
  bad.nodes_per_unit = 0;
  CHECK_THROWS_AS(validate(bad), DomainError);
  CHECK_THROWS_AS(transform_numeric(p, PlaneWaveInput{-1, 0.0}, 0, 0, RegulatorSchedule{}), DomainError);
  CHECK_THROWS_AS(transform_numeric(p, CustomInput{}, 0, 0, RegulatorSchedule{}), DomainError);

  CHECK(default_half_width(0) == 8.0);
  CHECK(default_half_width(50) == doctest::Approx(std::sqrt(101.0) + 6.0));

  // Steps that grow as the regulator shrinks.
  RegulatorSchedule growing;
  growing.epsilons = {1.0, 0.99, 0.5};
  try {
    transform_numeric(p, PlaneWaveInput{0, 0.0}, 0.5, 0.3, growing);
    FAIL("expected DivergenceError");
  } catch (const DivergenceError& e) {
    CHECK(e.sequence().size() == 3);
  }
}

}
