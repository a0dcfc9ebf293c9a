#include "verify.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>

#include "landau/dynamics.hpp"
#include "landau/eigensolver.hpp"
#include "landau/hermite.hpp"
#include "landau/io.hpp"
#include "landau/mqtransform.hpp"
#include "landau/operators.hpp"
#include "landau/wavefunctions.hpp"

namespace landau::cli {

namespace {

struct Check {
  std::string name;
  double observed = NAN;
  double lo = -INFINITY;
  double hi = INFINITY;
  Json details = nullptr;
  std::string note;

  bool passed() const { return std::isfinite(observed) && observed >= lo && observed <= hi; }

  Json to_json() const {
    Json j;
    j["name"] = name;
    j["observed"] = std::isfinite(observed) ? Json(observed) : Json(nullptr);
    Json t = Json::object();
    if (std::isfinite(lo)) t["min"] = lo;
    if (std::isfinite(hi)) t["max"] = hi;
    j["threshold"] = t;
    j["passed"] = passed();
    if (!details.is_null()) j["details"] = details;
    if (!note.empty()) j["note"] = note;
    return j;
  }
};

Check at_most(std::string name, double observed, double hi) {
  return {std::move(name), observed, -INFINITY, hi, nullptr, {}};
}
Check at_least(std::string name, double observed, double lo) {
  return {std::move(name), observed, lo, INFINITY, nullptr, {}};
}

using Checks = std::vector<Check>;

constexpr Gauge kGauges[] = {Gauge::LandauX, Gauge::LandauY};

std::string gauge_tag(Gauge g) { return std::string(to_string(g)); }

DiscreteOperator hamiltonian(const PhysicalParams& p, Gauge g, int order, bool flip) {
  auto op = make_operator(OperatorKind::Hamiltonian, p, g, order);
  op.flip_coupling = flip;
  return op;
}

double residual(const DiscreteOperator& h, const ComplexField& f, double energy) {
  const int skin = skin_width(h.order);
  ComplexField r = apply(h, f, BoundaryMode::kSkinExcluded);
  r -= energy * f;
  return interior_norm(r, skin) / interior_norm(f, skin);
}

Grid2D square_grid(double lo, double hi, double h) {
  const long n = std::lround((hi - lo) / h);
  if (std::abs(n * h - (hi - lo)) > 1e-9 * (hi - lo)) {
    throw UsageError("verify: --h must divide the grid extent");
  }
  return Grid2D({lo, hi, lo, hi}, static_cast<int>(n) + 1, static_cast<int>(n) + 1);
}

// Smooth, decaying test fields of unit width or wider.
std::vector<Evaluator> test_fields() {
  return {
      [](double x, double y) { return cdouble(std::exp(-0.5 * (x * x + y * y))); },
      [](double x, double y) {
        const double dx = x - 0.3, dy = y + 0.2;
        return cdouble(x, 0.5 * y) * std::exp(-0.5 * (dx * dx + dy * dy));
      },
      [](double x, double y) {
        return std::exp(cdouble(-0.5 * (x * x / 1.44 + y * y), 0.7 * x));
      },
      [](double x, double y) {
        const double dx = x + 0.4, dy = y - 0.6;
        return cdouble(1.0 + 0.3 * x * y) * std::exp(-(dx * dx + dy * dy) / 2.42);
      },
      [](double x, double y) {
        return cdouble(x * x - 1.0) * std::exp(cdouble(-(x * x + y * y) / 2.5, -0.5 * y));
      },
  };
}

// ------------------------------------------------------------ residuals

Checks residual_checks(const CommonSettings& c, const VerifySettings& v) {
  const PhysicalParams p = c.params();
  const AxisSpec ax = parse_axis(c.gridx);
  const int order = c.order;
  const int expect = v.expect_order > 0 ? v.expect_order : order;
  if (!(v.h > 0.0)) throw UsageError("verify: --h must be positive");
  const Grid2D fine = square_grid(ax.min, ax.max, v.h);
  const Grid2D coarse = square_grid(ax.min, ax.max, 2.0 * v.h);
  const double threshold = 1e-5 * std::pow(v.h / 0.02, order);

  Checks out;
  double rmin = INFINITY, rmax = 0.0;
  Json ratios = Json::array();
  for (Gauge g : kGauges) {
    const auto h = hamiltonian(p, g, order, v.break_gauge);
    for (bool nonfree : {false, true}) {
      double worst = 0.0;
      for (int n = 0; n <= 3; ++n) {
        for (double k : {0.0, 1.0}) {
          for (double kp : nonfree ? std::vector<double>{0.0, 1.0} : std::vector<double>{0.0}) {
            const QuantumNumbers qn{n, k, kp};
            const Evaluator f = [&](double x, double y) {
              return nonfree ? eval_nonfree(p, g, qn, {}, x, y) : eval_landau(p, g, n, k, x, y);
            };
            const double rf = residual(h, sample_field(f, fine), p.landau_level(n));
            const double rc = residual(h, sample_field(f, coarse), p.landau_level(n));
            worst = std::max(worst, rf);
            const double ratio = rc / rf;
            rmin = std::min(rmin, ratio);
            rmax = std::max(rmax, ratio);
            ratios.push_back(ratio);
          }
        }
      }
      out.push_back(at_most("residual." + std::string(nonfree ? "nonfree." : "free.") + gauge_tag(g),
                            worst, threshold));
    }
  }
  const double target = std::pow(2.0, expect);
  Check lo = at_least("convergence.ratio_min", rmin, 0.75 * target);
  Check hi = at_most("convergence.ratio_max", rmax, 1.25 * target);
  hi.details = ratios;
  out.push_back(lo);
  out.push_back(hi);
  return out;
}

// ---------------------------------------------- commutators, conserved

Checks operator_checks(const CommonSettings& c, const VerifySettings& v) {
  const PhysicalParams p = c.params();
  const int order = c.order;
  const int skin = 2 * skin_width(order);
  const Grid2D grid = square_grid(-8.0, 8.0, 0.02);
  std::vector<ComplexField> fields;
  for (const auto& f : test_fields()) fields.push_back(sample_field(f, grid));

  const OperatorKind kinds[] = {OperatorKind::Q, OperatorKind::Qbar, OperatorKind::P,
                                OperatorKind::Pbar};
  const char* names[] = {"Q", "Qbar", "P", "Pbar"};
  Checks out;
  for (int a = 0; a < 4; ++a) {
    for (int b = a; b < 4; ++b) {
      const bool canonical = (a == 0 && b == 2) || (a == 1 && b == 3);
      const cdouble expect = canonical ? cdouble(0.0, p.hbar) : cdouble(0.0);
      double worst = 0.0;
      for (Gauge g : kGauges) {
        const auto A = make_operator(kinds[a], p, g, order);
        const auto B = make_operator(kinds[b], p, g, order);
        for (const auto& f : fields) {
          ComplexField r = commutator_apply(A, B, f);
          r -= expect * f;
          worst = std::max(worst, interior_norm(r, skin) / (p.hbar * interior_norm(f, skin)));
        }
      }
      out.push_back(at_most(std::string("commutator.[") + names[a] + "," + names[b] + "]", worst, 1e-6));
    }
  }

  double wp = 0.0, wq = 0.0, wx = INFINITY;
  for (Gauge g : kGauges) {
    const auto h = hamiltonian(p, g, order, v.break_gauge);
    const auto pbar = make_operator(OperatorKind::Pbar, p, g, order);
    auto qbar = make_operator(OperatorKind::Qbar, p, g, order);
    qbar.covariant = true;
    const auto x = make_operator(OperatorKind::MultX, p, g, order);
    for (const auto& f : fields) {
      const double nf = interior_norm(f, skin);
      wp = std::max(wp, interior_norm(commutator_apply(h, pbar, f), skin) / nf);
      wq = std::max(wq, interior_norm(commutator_apply(h, qbar, f), skin) / nf);
      wx = std::min(wx, interior_norm(commutator_apply(h, x, f), skin) / nf);
    }
  }
  // dQ/dt = [Q, H] / (i hbar) should equal P / m; the reading with an extra
  // factor i hbar must be measurably off.
  double wh = 0.0, wl = INFINITY;
  for (Gauge g : kGauges) {
    const auto h = hamiltonian(p, g, order, v.break_gauge);
    const auto q = make_operator(OperatorKind::Q, p, g, order);
    const auto pp = make_operator(OperatorKind::P, p, g, order);
    const cdouble ih(0.0, p.hbar);
    for (const auto& f : fields) {
      const double nf = interior_norm(f, skin);
      const ComplexField qh = commutator_apply(q, h, f);
      const ComplexField pf = apply(pp, f);
      wh = std::max(wh, interior_norm(qh - (ih / p.mass) * pf, skin) / (p.hbar * nf));
      wl = std::min(wl, interior_norm((1.0 / ih) * qh - (ih / p.mass) * pf, skin) / nf);
    }
  }
  out.push_back(at_most("heisenberg.[Q,H]", wh, 1e-6));
  out.push_back(at_least("control.literal_dQdt", wl, 1e-2));
  out.push_back(at_most("conserved.[H,Pbar]", wp, 1e-7));
  out.push_back(at_most("conserved.[H,Qbar]", wq, 1e-7));
  out.push_back(at_least("control.[H,x]", wx, 1e-2));
  return out;
}

// Both forms of H differ by O(h^order); 0.00625 puts that well below 1e-8.
Checks form_checks(const CommonSettings& c, const VerifySettings& v) {
  const PhysicalParams p = c.params();
  const int skin = 2 * skin_width(c.order);
  const Grid2D grid = square_grid(-7.0, 7.0, 0.00625);
  const ComplexField f = sample_field(test_fields()[1], grid);
  double worst = 0.0;
  for (Gauge g : kGauges) {
    const ComplexField h1 = apply(hamiltonian(p, g, c.order, v.break_gauge), f);
    const ComplexField h2 = apply_hamiltonian_canonical(p, g, f, c.order);
    worst = std::max(worst, interior_norm(h1 - h2, skin) / interior_norm(h1, skin));
  }
  return {at_most("hamiltonian.canonical_form", worst, 1e-8)};
}

// ------------------------------------------------------------ transform

Checks transform_checks(const CommonSettings& c) {
  const PhysicalParams p = c.params();
  const double l = p.mag_length;
  const RegulatorSchedule sched;
  auto probe = [&](int i, int count, double extent) {
    return std::lerp(-extent, extent, double(i) / (count - 1)) * l;
  };
  double dpw = 0.0, ddl = 0.0, dg = 0.0;
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      const double x = probe(a, 5, 2.0), y = probe(b, 5, 2.0);
      for (int n = 0; n <= 1; ++n) {
        const auto pw = transform_numeric(p, PlaneWaveInput{n, 1.0}, x, y, sched);
        dpw = std::max(dpw, std::abs(pw.value - transform_planewave(p, n, 1.0, x, y)));
        const auto dl = transform_numeric(p, DeltaLineInput{n, 1.0}, x, y, sched);
        ddl = std::max(ddl, std::abs(dl.value - transform_delta(p, n, 1.0, x, y)));
      }
      const auto gs = transform_numeric(p, gaussian_input(p), x, y, sched);
      dg = std::max(dg, std::abs(gs.value - transform_gaussian(p, x, y)));
    }
  }

  double spread = 0.0;
  for (int n = 0; n <= 4; ++n) {
    double lo = INFINITY, hi = 0.0;
    for (int a = 0; a < 9; ++a) {
      for (int b = 0; b < 9; ++b) {
        const double x = probe(a, 9, 2.0), y = probe(b, 9, 2.0);
        const cdouble term = eval_nonfree_term(p, Gauge::LandauX, n, 0.5, x, y);
        if (std::abs(term) < 1e-12) continue;
        const double r = std::abs(transform_delta(p, n, 0.5, x, y) / term);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
    }
    spread = std::max(spread, (hi - lo) / hi);
  }

  // Phase of the numeric delta transform relative to the unscaled term.
  double phase = 0.0;
  const cdouble minus_i(0.0, -1.0);
  for (int n = 0; n <= 4; ++n) {
    const double x = 0.37 * l, y = 0.21 * l;
    const cdouble num = transform_numeric(p, DeltaLineInput{n, 0.0}, x, y, sched).value;
    const cdouble ratio = num / eval_nonfree_term(p, Gauge::LandauX, n, 0.0, x, y);
    phase = std::max(phase, std::abs(ratio / std::abs(ratio) - std::pow(minus_i, n)));
  }

  return {at_most("transform.planewave", dpw, 1e-3), at_most("transform.delta", ddl, 1e-3),
          at_most("transform.gaussian", dg, 1e-6), at_most("transform.cn_modulus_spread", spread, 1e-9),
          at_most("transform.cn_phase", phase, 1e-3)};
}

// ------------------------------------------------------------- dynamics

Checks dynamics_checks(const CommonSettings& c) {
  const PhysicalParams p = c.params();
  const double period = 2.0 * std::numbers::pi / p.omega_c;
  const ClassicalState s0{0.3, -0.2, 1.0, 0.5, 0.0};
  const auto traj = integrate_orbit(p, s0, period / 1000.0, 10000);
  const double scale = p.mass * std::hypot(s0.vx, s0.vy);
  const ConservedPair c0 = conserved_pair(p, s0);
  double d1 = 0.0, d2 = 0.0, ret = 0.0, pyx = 0.0, pymin = INFINITY, pymax = -INFINITY;
  long mismatch = 0;
  const double pyx0 = canonical_momenta(p, Gauge::LandauX, s0).py - p.beta * s0.x;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& s = traj[i];
    const ConservedPair ci = conserved_pair(p, s);
    d1 = std::max(d1, std::abs(ci.c1 - c0.c1) / scale);
    d2 = std::max(d2, std::abs(ci.c2 - c0.c2) / scale);
    const CanonicalMomenta m = canonical_momenta(p, Gauge::LandauX, s);
    if (m.px != ci.c1) ++mismatch;
    pyx = std::max(pyx, std::abs(m.py - p.beta * s.x - pyx0) / scale);
    pymin = std::min(pymin, m.py);
    pymax = std::max(pymax, m.py);
    if (i > 0 && i % 1000 == 0) {
      ret = std::max({ret, std::abs(s.x - s0.x), std::abs(s.y - s0.y), std::abs(s.vx - s0.vx),
                      std::abs(s.vy - s0.vy)});
    }
  }
  const OscillatorPhase back = heisenberg_flow(p, 1.0, 0.5, period);
  const double hret = std::max(std::abs(back.q - 1.0), std::abs(back.p - 0.5));

  return {at_most("orbit.drift_c1", d1, 1e-8),
          at_most("orbit.drift_c2", d2, 1e-8),
          at_most("orbit.period_return", ret, 1e-8),
          at_most("orbit.px_minus_c1_mismatches", double(mismatch), 0.0),
          at_most("orbit.py_minus_beta_x_drift", pyx, 1e-9),
          at_least("orbit.py_swing", (pymax - pymin) / scale, 1.0),
          at_most("heisenberg.period_return", hret, 1e-12)};
}

// ---------------------------------------------------- spectrum, hermite

Checks spectrum_checks(const CommonSettings& c) {
  const PhysicalParams p = c.params();
  const Grid2D grid({-6.0, 6.0, -6.0, 6.0}, 65, 65);
  SpectrumOptions opt;
  opt.n_eigs = 8;
  opt.seed = c.seed;
  opt.order = c.order;
  const SpectrumResult r = spectrum(p, c.gauge_value(), grid, opt);
  double worst = 0.0;
  for (double e : r.eigenvalues) worst = std::max(worst, std::abs(e - p.landau_level(0)));
  return {at_most("spectrum.lowest_level", worst / (p.hbar * p.omega_c), 1e-2)};
}

Checks hermite_checks() {
  double worst = 0.0;
  const double step = 0.01;
  for (int n = 0; n <= 20; ++n) {
    double sum = 0.0;
    for (int i = -2500; i <= 2500; ++i) {
      const double v = psi_n(n, i * step);
      sum += v * v;
    }
    worst = std::max(worst, std::abs(sum * step - 1.0));
  }
  return {at_most("hermite.normalization", worst, 1e-12)};
}

template <typename F>
void run_group(Checks& all, const std::string& name, F&& group) {
  try {
    for (auto& c : group()) all.push_back(std::move(c));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    Check failed = at_most(name + ".error", NAN, 0.0);
    failed.note = e.what();
    all.push_back(std::move(failed));
  }
}

}  // namespace

int run_verify(const CommonSettings& c, const VerifySettings& v, Manifest& m) {
  const PhysicalParams p = c.params();
  m.set_params(p);
  m.add_output("verify.json");
  m.write();
  try {
    Checks all;
    run_group(all, "residual", [&] { return residual_checks(c, v); });
    run_group(all, "operators", [&] { return operator_checks(c, v); });
    run_group(all, "hamiltonian", [&] { return form_checks(c, v); });
    run_group(all, "transform", [&] { return transform_checks(c); });
    run_group(all, "orbit", [&] { return dynamics_checks(c); });
    run_group(all, "spectrum", [&] { return spectrum_checks(c); });
    run_group(all, "hermite", [&] { return hermite_checks(); });

    Json report;
    bool ok = true;
    Json checks = Json::array();
    Json failed = Json::array();
    for (const auto& ch : all) {
      checks.push_back(ch.to_json());
      ok = ok && ch.passed();
      if (!ch.passed()) failed.push_back(ch.name);
      std::printf("%s  %-34s observed %-24s %s\n", ch.passed() ? "PASS" : "FAIL", ch.name.c_str(),
                  std::isfinite(ch.observed) ? io::format_double(ch.observed).c_str() : "n/a",
                  ch.to_json()["threshold"].dump().c_str());
    }
    report["passed"] = ok;
    report["checks"] = checks;
    std::ofstream(m.file("verify.json")) << report.dump(2) << '\n';

    auto& r = m.results();
    r["passed"] = ok;
    r["n_checks"] = all.size();
    r["failed"] = failed;
    std::printf("%zu checks, %zu failed\n", all.size(), failed.size());
    m.finish(ok ? "ok" : "failed");
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    m.finish("failed", e.what());
    throw;
  }
}

}  // namespace landau::cli
