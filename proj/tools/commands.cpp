#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>

#include "config.hpp"
#include "landau/dynamics.hpp"
#include "landau/eigensolver.hpp"
#include "landau/io.hpp"
#include "landau/mqtransform.hpp"
#include "landau/operators.hpp"
#include "landau/wavefunctions.hpp"
#include "manifest.hpp"
#include "verify.hpp"

namespace landau::cli {

namespace {

Json complex_json(cdouble z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

// Runs `body`; on any exception the manifest is closed as failed first.
template <typename F>
int guarded(Manifest& manifest, F&& body) {
  try {
    const int code = body();
    manifest.finish(code == kExitOk ? "ok" : "failed");
    return code;
  } catch (const std::exception& e) {
    manifest.finish("failed", e.what());
    throw;
  }
}

// ---------------------------------------------------------------- eval

int cmd_eval(const CommonSettings& c, const EvalSettings& s, Manifest& m) {
  if (s.n < 0) throw UsageError("eval: --n is required and must be >= 0");
  const PhysicalParams params = c.params();
  const Gauge gauge = c.gauge_value();
  const Grid2D grid = c.grid();
  const QuantumNumbers qn{s.n, s.k, s.kprime};
  const NonFreeCoefficients coeffs{{s.c_plane_re, s.c_plane_im}, {s.c_delta_re, s.c_delta_im}};
  try {
    validate(qn);
    if (s.nonfree) eval_nonfree(params, gauge, qn, coeffs, 0.0, 0.0);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  m.set_params(params);
  m.set_grid(grid);
  m.derived()["energy"] = params.landau_level(s.n);
  if (auto w = center_warning(params, gauge, qn, s.nonfree, grid)) m.warn(*w);
  m.add_output("field.csv");
  if (s.png) m.add_output("density.png");

  return guarded(m, [&] {
    m.write();
    const ComplexField plane = sample_field(
        [&](double x, double y) { return coeffs.c_plane * eval_landau(params, gauge, s.n, s.k, x, y); },
        grid);
    std::unique_ptr<ComplexField> delta;
    ComplexField total = plane;
    if (s.nonfree) {
      delta = std::make_unique<ComplexField>(sample_field(
          [&](double x, double y) {
            return coeffs.c_delta * eval_nonfree_term(params, gauge, s.n, s.kprime, x, y);
          },
          grid));
      total = sample_field(
          [&](double x, double y) { return eval_nonfree(params, gauge, qn, coeffs, x, y); }, grid);
    }
    try {
      check_boundary_decay(total, skin_width(c.order));
    } catch (const ContaminationError& e) {
      m.warn(e.what());
    }

    double max_abs2 = 0.0;
    int imax = 0, jmax = 0;
    for (int i = 0; i < grid.nx(); ++i) {
      for (int j = 0; j < grid.ny(); ++j) {
        const double a = std::norm(total(i, j));
        if (a > max_abs2) max_abs2 = a, imax = i, jmax = j;
      }
    }
    auto& r = m.results();
    r["max_abs2"] = max_abs2;
    r["argmax"] = Json{{"x", grid.x(imax)}, {"y", grid.y(jmax)}};
    r["norm"] = field_norm(total);

    io::write_field_csv(m.file("field.csv"), total);
    if (s.png) {
      std::vector<const ComplexField*> panels{&total};
      if (delta) panels.insert(panels.end(), {&plane, delta.get()});
      io::write_density_png(m.file("density.png"), panels);
    }
    std::cout << "eval: " << grid.nx() << "x" << grid.ny() << " samples, max |psi|^2 = "
              << io::format_double(max_abs2) << " at (" << grid.x(imax) << ", " << grid.y(jmax)
              << ")\n";
    return kExitOk;
  });
}

// ------------------------------------------------------------ spectrum

int cmd_spectrum(const CommonSettings& c, const SpectrumSettings& s, Manifest& m) {
  const PhysicalParams params = c.params();
  const Gauge gauge = c.gauge_value();
  const Grid2D grid = c.grid();
  SpectrumOptions opt;
  opt.n_eigs = s.n_eigs;
  opt.tolerance = s.tolerance;
  opt.degree = s.degree;
  opt.guard = s.guard;
  opt.max_iterations = s.max_iterations;
  opt.seed = c.seed;
  opt.order = c.order;
  if (opt.n_eigs < 1 || !(opt.tolerance > 0.0) || opt.degree < 1 || opt.max_iterations < 1 ||
      opt.guard < 0) {
    throw UsageError("spectrum: n-eigs, tolerance, degree and max-iterations must be positive");
  }
  m.set_params(params);
  m.set_grid(grid);
  m.add_output("spectrum.csv");

  return guarded(m, [&] {
    m.write();
    const SpectrumResult res = spectrum(params, gauge, grid, opt);
    for (const auto& w : res.warnings) m.warn(w);
    auto& r = m.results();
    r["iterations"] = res.iterations;
    r["matvecs"] = res.matvecs;
    Json clusters = Json::array();
    for (const auto& cl : res.clusters) {
      clusters.push_back(
          Json{{"center", cl.center}, {"multiplicity", cl.multiplicity}, {"first_index", cl.first_index}});
    }
    r["clusters"] = clusters;
    io::write_spectrum_csv(m.file("spectrum.csv"), res);
    std::cout << "spectrum: " << res.eigenvalues.size() << " eigenvalues in "
              << res.clusters.size() << " clusters after " << res.iterations << " iterations\n";
    for (const auto& cl : res.clusters) {
      std::cout << "  " << io::format_double(cl.center) << " x" << cl.multiplicity << '\n';
    }
    return kExitOk;
  });
}

// ----------------------------------------------------------- transform

int cmd_transform(const CommonSettings& c, const TransformSettings& s, Manifest& m) {
  const PhysicalParams params = c.params();
  if (s.branch != "planewave" && s.branch != "delta" && s.branch != "gaussian") {
    throw UsageError("transform: --branch must be planewave, delta or gaussian");
  }
  if (s.n < 0) throw UsageError("transform: --n must be >= 0");
  if (s.probes < 1 || !(s.probe_extent >= 0.0)) throw UsageError("transform: bad probe grid");
  RegulatorSchedule sched;
  sched.epsilons = s.epsilons;
  sched.half_width = s.half_width;
  sched.nodes_per_unit = s.nodes_per_unit;
  try {
    validate(sched);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const double tol = s.tolerance > 0.0 ? s.tolerance : (s.branch == "gaussian" ? 1e-6 : 1e-3);

  TransformInput input;
  std::function<cdouble(double, double)> analytic;
  if (s.branch == "planewave") {
    input = PlaneWaveInput{s.n, s.k};
    analytic = [&](double x, double y) { return transform_planewave(params, s.n, s.k, x, y); };
  } else if (s.branch == "delta") {
    input = DeltaLineInput{s.n, s.kprime};
    analytic = [&](double x, double y) { return transform_delta(params, s.n, s.kprime, x, y); };
  } else {
    input = gaussian_input(params);
    analytic = [&](double x, double y) { return transform_gaussian(params, x, y); };
  }

  m.set_params(params);
  const cdouble cn = delta_branch_constant(params, s.n);
  if (s.branch == "delta") m.derived()["C_n"] = complex_json(cn);
  m.add_output("transform.csv");

  return guarded(m, [&] {
    m.write();
    std::ofstream csv(m.file("transform.csv"));
    if (!csv) throw std::runtime_error("cannot write transform.csv");
    csv << "x,y,numeric_re,numeric_im,analytic_re,analytic_im,abs_diff,error_estimate\n";
    const double l = params.mag_length;
    double max_diff = 0.0, max_err = 0.0;
    double ratio_min = INFINITY, ratio_max = 0.0;
    for (int a = 0; a < s.probes; ++a) {
      for (int b = 0; b < s.probes; ++b) {
        auto coord = [&](int i) {
          return s.probes == 1 ? 0.0 : std::lerp(-s.probe_extent, s.probe_extent, double(i) / (s.probes - 1)) * l;
        };
        const double x = coord(a), y = coord(b);
        const TransformEstimate est = transform_numeric(params, input, x, y, sched);
        const cdouble exact = analytic(x, y);
        const double diff = std::abs(est.value - exact);
        max_diff = std::max(max_diff, diff);
        max_err = std::max(max_err, est.error);
        if (s.branch == "delta") {
          const cdouble term = eval_nonfree_term(params, Gauge::LandauX, s.n, s.kprime, x, y);
          if (std::abs(term) > 1e-12) {
            const double ratio = std::abs(exact / term);
            ratio_min = std::min(ratio_min, ratio);
            ratio_max = std::max(ratio_max, ratio);
          }
        }
        csv << io::format_double(x) << ',' << io::format_double(y) << ','
            << io::format_double(est.value.real()) << ',' << io::format_double(est.value.imag())
            << ',' << io::format_double(exact.real()) << ',' << io::format_double(exact.imag())
            << ',' << io::format_double(diff) << ',' << io::format_double(est.error) << '\n';
      }
    }
    auto& r = m.results();
    r["max_abs_diff"] = max_diff;
    r["max_error_estimate"] = max_err;
    r["tolerance"] = tol;
    if (s.branch == "delta" && ratio_max > 0.0) {
      r["cn_modulus_spread"] = (ratio_max - ratio_min) / ratio_max;
    }
    const bool ok = max_diff <= tol;
    r["within_tolerance"] = ok;
    std::cout << "transform " << s.branch << ": max |numeric - analytic| = "
              << io::format_double(max_diff) << " (tolerance " << tol << ")\n";
    if (s.branch == "delta") {
      std::cout << "  C_n = " << io::format_double(cn.real()) << " + "
                << io::format_double(cn.imag()) << "i\n";
    }
    return ok ? kExitOk : kExitFailure;
  });
}

// --------------------------------------------------------------- orbit

int cmd_orbit(const CommonSettings& c, const OrbitSettings& s, Manifest& m) {
  const PhysicalParams params = c.params();
  const Gauge gauge = c.gauge_value();
  const double period = 2.0 * std::numbers::pi / params.omega_c;
  const double dt = s.dt > 0.0 ? s.dt : period / 1000.0;
  if (s.dt < 0.0 || s.steps < 1) throw UsageError("orbit: --dt must be > 0 and --steps >= 1");
  m.set_params(params);
  m.derived()["dt"] = dt;
  m.add_output("orbit.csv");

  return guarded(m, [&] {
    m.write();
    const ClassicalState s0{s.x0, s.y0, s.vx0, s.vy0, 0.0};
    const auto traj = integrate_orbit(params, s0, dt, s.steps);
    const ConservedPair c0 = conserved_pair(params, s0);
    const double scale = params.mass * std::hypot(s.vx0, s.vy0);
    double drift1 = 0.0, drift2 = 0.0;
    for (const auto& st : traj) {
      const ConservedPair ci = conserved_pair(params, st);
      drift1 = std::max(drift1, std::abs(ci.c1 - c0.c1));
      drift2 = std::max(drift2, std::abs(ci.c2 - c0.c2));
    }
    auto& r = m.results();
    r["drift_c1"] = scale > 0.0 ? drift1 / scale : drift1;
    r["drift_c2"] = scale > 0.0 ? drift2 / scale : drift2;
    r["drift_relative_to"] = scale > 0.0 ? "m|v0|" : "absolute";
    const long per = std::lround(period / dt);
    if (per > 0 && std::abs(per * dt - period) <= 1e-12 * period && per <= s.steps) {
      double ret = 0.0;
      for (long k = per; k <= s.steps; k += per) {
        const auto& st = traj[k];
        ret = std::max({ret, std::abs(st.x - s0.x), std::abs(st.y - s0.y),
                        std::abs(st.vx - s0.vx), std::abs(st.vy - s0.vy)});
      }
      r["period_return_error"] = ret;
    }
    io::write_orbit_csv(m.file("orbit.csv"), params, gauge, traj);
    std::cout << "orbit: " << traj.size() << " states, drift c1 " << io::format_double(drift1)
              << ", c2 " << io::format_double(drift2) << '\n';
    return kExitOk;
  });
}

// -------------------------------------------------------------- params

int cmd_params(const CommonSettings& c, Manifest& m, bool quiet) {
  const PhysicalParams params = c.params();
  m.set_params(params);
  return guarded(m, [&] {
    auto& r = m.results();
    Json levels = Json::array();
    Json cns = Json::array();
    for (int n = 0; n < 5; ++n) {
      levels.push_back(params.landau_level(n));
      cns.push_back(complex_json(delta_branch_constant(params, n)));
    }
    r["landau_levels"] = levels;
    r["C_n"] = cns;
    if (!quiet) {
      std::cout << "omega_c    " << io::format_double(params.omega_c) << '\n'
                << "beta       " << io::format_double(params.beta) << '\n'
                << "mag_length " << io::format_double(params.mag_length) << '\n';
      for (int n = 0; n < 5; ++n) {
        std::cout << "E_" << n << "        " << io::format_double(params.landau_level(n)) << '\n';
      }
    }
    return kExitOk;
  });
}

struct Sub {
  CLI::App* app = nullptr;
  std::unique_ptr<Binder> binder;
  CommonSettings common;
  std::string square_grid;
  RunOptions run;
};

void setup(Sub& sub, CLI::App& root, const std::string& name, const std::string& help) {
  sub.app = root.add_subcommand(name, help);
  sub.binder = std::make_unique<Binder>(sub.app);
  add_common(*sub.binder, sub.common, sub.square_grid);
  add_run_options(sub.app, sub.run);
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App root{"Landau-level fields, spectra, transforms and orbits"};
  root.name("landau");
  root.require_subcommand(1);
  root.set_version_flag("--version", kToolVersion);

  Sub eval, spec, trans, orbit, verify, params;

  EvalSettings es;
  setup(eval, root, "eval", "sample a Landau wavefunction on a grid");
  eval.binder->option("n", es.n, "Landau level (required)");
  eval.binder->option("k", es.k, "plane-wave momentum");
  eval.binder->option("kprime", es.kprime, "momentum of the second term");
  eval.binder->flag("nonfree", es.nonfree, "two-term non-free wavefunction");
  eval.binder->option("c-plane-re", es.c_plane_re, "plane-wave coefficient, real part");
  eval.binder->option("c-plane-im", es.c_plane_im, "plane-wave coefficient, imaginary part");
  eval.binder->option("c-delta-re", es.c_delta_re, "second-term coefficient, real part");
  eval.binder->option("c-delta-im", es.c_delta_im, "second-term coefficient, imaginary part");
  eval.binder->flag("png", es.png, "write density.png");

  SpectrumSettings ss;
  spec.common.gridx = spec.common.gridy = kSpectrumGrid;
  setup(spec, root, "spectrum", "lowest eigenvalues of the discretized Hamiltonian");
  spec.binder->option("n-eigs", ss.n_eigs, "number of eigenvalues");
  spec.binder->option("tolerance", ss.tolerance, "residual tolerance");
  spec.binder->option("degree", ss.degree, "Chebyshev filter degree");
  spec.binder->option("guard", ss.guard, "extra search vectors (0 = automatic)");
  spec.binder->option("max-iterations", ss.max_iterations, "outer iteration limit");

  TransformSettings ts;
  setup(trans, root, "transform", "numeric vs analytic integral transform on a probe grid");
  trans.binder->option("branch", ts.branch, "planewave, delta or gaussian");
  trans.binder->option("n", ts.n, "oscillator level of the input");
  trans.binder->option("k", ts.k, "plane-wave momentum");
  trans.binder->option("kprime", ts.kprime, "delta-line momentum");
  trans.binder->option("epsilons", ts.epsilons, "decreasing regulator widths");
  trans.binder->option("half-width", ts.half_width, "quadrature half-width in magnetic lengths (0 = auto)");
  trans.binder->option("nodes-per-unit", ts.nodes_per_unit, "quadrature nodes per magnetic length");
  trans.binder->option("probes", ts.probes, "probe points per axis");
  trans.binder->option("probe-extent", ts.probe_extent, "probe half-extent in magnetic lengths");
  trans.binder->option("tolerance", ts.tolerance, "pass threshold on |numeric - analytic| (0 = default)");

  OrbitSettings os;
  setup(orbit, root, "orbit", "classical cyclotron orbit");
  orbit.binder->option("x0", os.x0, "initial x");
  orbit.binder->option("y0", os.y0, "initial y");
  orbit.binder->option("vx0", os.vx0, "initial vx");
  orbit.binder->option("vy0", os.vy0, "initial vy");
  orbit.binder->option("dt", os.dt, "time step (0 = period / 1000)");
  orbit.binder->option("steps", os.steps, "number of steps");

  VerifySettings vs;
  setup(verify, root, "verify", "run the invariant suite");
  verify.app->set_help_flag("--help", "print this help message and exit");
  verify.binder->option("h", vs.h, "grid spacing for the residual checks");
  verify.binder->option("expect-order", vs.expect_order, "expected convergence order (0 = stencil order)");
  verify.binder->flag("break-gauge", vs.break_gauge, "flip the magnetic coupling sign (fault injection)");

  setup(params, root, "params", "print derived constants");

  try {
    root.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = root.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Sub* active = nullptr;
  std::string name;
  for (Sub* s : {&eval, &spec, &trans, &orbit, &verify, &params}) {
    if (s->app->parsed()) active = s, name = s->app->get_name();
  }

  try {
    if (!active->run.config.empty()) {
      active->binder->fill_from(load_config(active->run.config, name));
    }
    resolve_grid(*active->binder, active->common, active->square_grid);
    Manifest m(name, *active->binder, active->run);
    if (active == &eval) return cmd_eval(eval.common, es, m);
    if (active == &spec) return cmd_spectrum(spec.common, ss, m);
    if (active == &trans) return cmd_transform(trans.common, ts, m);
    if (active == &orbit) return cmd_orbit(orbit.common, os, m);
    if (active == &verify) return run_verify(verify.common, vs, m);
    return cmd_params(params.common, m, params.run.json);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << active->app->help();
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace landau::cli
