#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "landau/dynamics.hpp"
#include "oracles.hpp"

using namespace landau;

namespace {
const double two_pi = 2.0 * std::numbers::pi;
}

TEST_SUITE("dynamics") {

TEST_CASE("Lorentz force") {
  const auto p = natural_units();
  const auto d = lorentz_rhs(p, {1, 0, 0, 1, 0});
  CHECK(d.dx == 0.0);
  CHECK(d.dy == 1.0);
  CHECK(d.dvx == -1.0);
  CHECK(d.dvy == 0.0);
  const auto z = lorentz_rhs(p, {3, -2, 0, 0, 5});
  CHECK(z.dvx == 0.0);
  CHECK(z.dvy == 0.0);
  const auto q = derive_params(1.0, 2.0, 1.0, 1.0, 3.0);
  const auto a = lorentz_rhs(q, {0, 0, 0.3, -0.7, 0});
  const auto b = lorentz_rhs(q, {0, 0, 0.6, -1.4, 0});
  CHECK(b.dvx == doctest::Approx(2 * a.dvx));
  CHECK(b.dvy == doctest::Approx(2 * a.dvy));
  CHECK(a.dvx == doctest::Approx(-q.omega_c * -0.7));
}

TEST_CASE("one period returns to the start") {
  const auto p = natural_units();
  const ClassicalState s0{1, 0, 0, 1, 0};
  const auto tr = integrate_orbit(p, s0, two_pi / 1000, 1000);
  REQUIRE(tr.size() == 1001);
  CHECK(tr.front().x == s0.x);
  const auto& e = tr.back();
  CHECK(std::abs(e.x - 1) < 1e-8);
  CHECK(std::abs(e.y) < 1e-8);
  CHECK(std::abs(e.vx) < 1e-8);
  CHECK(std::abs(e.vy - 1) < 1e-8);
  CHECK(e.t == doctest::Approx(two_pi));
  for (const auto& s : tr) {
    CHECK(std::abs(std::hypot(s.vx, s.vy) - 1.0) < 1e-10);
    CHECK(std::abs(std::hypot(s.x, s.y) - 1.0) < 1e-8);  // circle about the origin
  }
  CHECK_THROWS_AS(integrate_orbit(p, s0, 0.0, 10), DomainError);
  CHECK_THROWS_AS(integrate_orbit(p, s0, 0.1, 0), DomainError);
}

TEST_CASE("trajectory follows the closed form") {
  const auto p = derive_params(1.0, 1.5, 1.0, 1.0, 2.5);
  const ClassicalState s0{0.3, -0.2, 1.0, 0.5, 0};
  const double T = two_pi / p.omega_c;
  const auto tr = integrate_orbit(p, s0, T / 1000, 3000);
  for (std::size_t i = 0; i < tr.size(); i += 97) {
    const auto ex = oracle::cyclotron(p.omega_c, {s0.x, s0.y, s0.vx, s0.vy}, tr[i].t);
    CHECK(std::abs(tr[i].x - ex.x) < 1e-9);
    CHECK(std::abs(tr[i].y - ex.y) < 1e-9);
    CHECK(std::abs(tr[i].vx - ex.vx) < 1e-9);
    CHECK(std::abs(tr[i].vy - ex.vy) < 1e-9);
  }
}

TEST_CASE("conserved quantities and guiding centre") {
  const auto p = natural_units();
  CHECK(conserved_pair(p, {1, 0, 0, 1, 0}).c1 == 0.0);
  CHECK(conserved_pair(p, {1, 0, 0, 1, 0}).c2 == 0.0);
  CHECK(conserved_pair(p, {}).c1 == 0.0);

  const auto q = derive_params(1.0, 2.0, 1.0, 1.0, 0.7);
  const ClassicalState s0{0.3, -0.2, 1.0, 0.5, 0};
  const double T = two_pi / q.omega_c;
  const auto tr = integrate_orbit(q, s0, T / 1000, 10000);
  const auto c0 = conserved_pair(q, s0);
  const double scale = q.mass * std::hypot(s0.vx, s0.vy);
  const double gx0 = s0.x - s0.vy / q.omega_c, gy0 = s0.y + s0.vx / q.omega_c;
  double py_min = 1e300, py_max = -1e300;
  for (const auto& s : tr) {
    const auto c = conserved_pair(q, s);
    CHECK(std::abs(c.c1 - c0.c1) < 1e-9 * scale);
    CHECK(std::abs(c.c2 - c0.c2) < 1e-9 * scale);
    CHECK(std::abs(s.x - s.vy / q.omega_c - gx0) < 1e-8);
    CHECK(std::abs(s.y + s.vx / q.omega_c - gy0) < 1e-8);
    const auto m = canonical_momenta(q, Gauge::LandauX, s);
    CHECK(m.px == c.c1);
    CHECK(m.py == q.mass * s.vy);
    CHECK(std::abs((m.py - q.beta * s.x) - c0.c2) < 1e-9 * scale);
    py_min = std::min(py_min, m.py);
    py_max = std::max(py_max, m.py);
    const auto my = canonical_momenta(q, Gauge::LandauY, s);
    CHECK(my.px == q.mass * s.vx);
    CHECK(my.py == c.c2);
  }
  CHECK(py_max - py_min > q.mass * std::hypot(s0.vx, s0.vy));
}

TEST_CASE("doubling the field halves the radius") {
  const ClassicalState s0{0, 0, 1.0, 0.0, 0};
  auto radius = [&](double b) {
    const auto p = derive_params(1.0, 1.0, 1.0, 1.0, b);
    const auto tr = integrate_orbit(p, s0, two_pi / p.omega_c / 1000, 1000);
    const double gx = s0.x - s0.vy / p.omega_c, gy = s0.y + s0.vx / p.omega_c;
    double r = 0.0;
    for (const auto& s : tr) r = std::max(r, std::hypot(s.x - gx, s.y - gy));
    return r;
  };
  CHECK(radius(1.0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(radius(2.0) == doctest::Approx(0.5 * radius(1.0)).epsilon(1e-8));
}

TEST_CASE("Heisenberg flow") {
  const auto p = derive_params(1.0, 1.3, 1.0, 1.0, 1.9);
  const double T = two_pi / p.omega_c;
  const auto z = heisenberg_flow(p, 0.4, -1.1, 0.0);
  CHECK(z.q == 0.4);
  CHECK(z.p == -1.1);
  const auto full = heisenberg_flow(p, 0.4, -1.1, T);
  CHECK(std::abs(full.q - 0.4) < 1e-14);
  CHECK(std::abs(full.p + 1.1) < 1e-14);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0), ut(0.0, 3.0 * T);
  const double dt = 1e-3 * T;
  for (int i = 0; i < 50; ++i) {
    const double q0 = u(rng), p0 = u(rng) * p.beta, t = ut(rng);
    auto at = [&](double s) { return heisenberg_flow(p, q0, p0, s); };
    // Fourth-order central differences in t.
    const auto m2 = at(t - 2 * dt), m1 = at(t - dt), p1 = at(t + dt), p2 = at(t + 2 * dt), c = at(t);
    const double dq = (m2.q - 8 * m1.q + 8 * p1.q - p2.q) / (12 * dt);
    const double dp = (m2.p - 8 * m1.p + 8 * p1.p - p2.p) / (12 * dt);
    const double sq = std::abs(c.p / p.mass) + std::abs(p.beta * c.q / p.mass) + 1e-3;
    CHECK(std::abs(dq - c.p / p.mass) < 1e-6 * sq);
    CHECK(std::abs(dp + p.beta * p.beta / p.mass * c.q) < 1e-6 * p.beta * sq);
    const double e0 = (p.beta * p.beta * q0 * q0 + p0 * p0) / (2 * p.mass);
    const double e = (p.beta * p.beta * c.q * c.q + c.p * c.p) / (2 * p.mass);
    CHECK(std::abs(e - e0) < 1e-12 * e0);
  }
}

}
