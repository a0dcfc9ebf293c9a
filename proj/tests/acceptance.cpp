// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "landau/dynamics.hpp"
#include "landau/eigensolver.hpp"
#include "landau/mqtransform.hpp"
#include "landau/operators.hpp"
#include "landau/wavefunctions.hpp"

using namespace landau;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool passed = true;
  std::vector<std::string> lines;

  void require(bool ok, const std::string& what, double observed, const std::string& bound) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-44s %.3e %s", what.c_str(), observed, bound.c_str());
    lines.push_back(std::string(ok ? "    ok   " : "    FAIL ") + buf);
    passed = passed && ok;
  }
  void note(const std::string& text) { lines.push_back("    note " + text); }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.passed = false;
    o.lines.push_back(std::string("    error ") + e.what());
  }
  std::printf("%s %2d  %s  (%.1f s)\n", o.passed ? "PASS" : "FAIL", id, title.c_str(), seconds_since(t0));
  for (const auto& l : o.lines) std::printf("%s\n", l.c_str());
  std::fflush(stdout);
  if (!o.passed) ++failures;
}

std::string le(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "< %.0e", v);
  return buf;
}

std::string ge(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, ">= %.3g", v);
  return buf;
}

Grid2D square(double lo, double hi, double h) {
  const int n = static_cast<int>(std::lround((hi - lo) / h)) + 1;
  return Grid2D({lo, hi, lo, hi}, n, n);
}

// Gaussian-times-polynomial test fields, widths around one magnetic length.
std::vector<Evaluator> test_fields() {
  return {
      [](double x, double y) { return cdouble(std::exp(-0.5 * (x * x + y * y))); },
      [](double x, double y) {
        const double dx = x - 0.3, dy = y + 0.2;
        return cdouble(x, 0.5 * y) * std::exp(-0.5 * (dx * dx + dy * dy));
      },
      [](double x, double y) { return std::exp(cdouble(-0.5 * (x * x / 1.44 + y * y), 0.7 * x)); },
      [](double x, double y) {
        const double dx = x + 0.4, dy = y - 0.6;
        return cdouble(1.0 + 0.3 * x * y) * std::exp(-(dx * dx + dy * dy) / 2.42);
      },
      [](double x, double y) {
        return cdouble(x * x - 1.0) * std::exp(cdouble(-(x * x + y * y) / 2.5, -0.5 * y));
      },
  };
}

std::vector<ComplexField> sampled_fields(const Grid2D& g) {
  std::vector<ComplexField> out;
  for (const auto& f : test_fields()) out.push_back(sample_field(f, g));
  return out;
}

double residual_on(const PhysicalParams& p, Gauge g, const Evaluator& f, double energy, double h) {
  return eigen_residual(p, g, sample_field(f, square(-10.0, 10.0, h)), energy);
}

// Criterion 2 and the mirrored half of 9 run the same sweep.
void residual_sweep(Outcome& o, Gauge gauge) {
  const auto p = natural_units();
  double worst = 0.0, rmin = INFINITY, rmax = 0.0, slowest = 0.0;
  int cases = 0;
  for (bool nonfree : {false, true}) {
    for (int n = 0; n <= 3; ++n) {
      for (double k : {0.0, 1.0}) {
        for (double kp : {0.0, 1.0}) {
          if (!nonfree && kp != 0.0) continue;
          const QuantumNumbers qn{n, k, kp};
          const Evaluator f = [&](double x, double y) {
            return nonfree ? eval_nonfree(p, gauge, qn, {}, x, y) : eval_landau(p, gauge, n, k, x, y);
          };
          const auto t0 = Clock::now();
          const double fine = residual_on(p, gauge, f, p.landau_level(n), 0.02);
          const double coarse = residual_on(p, gauge, f, p.landau_level(n), 0.04);
          slowest = std::max(slowest, seconds_since(t0));
          worst = std::max(worst, fine);
          rmin = std::min(rmin, coarse / fine);
          rmax = std::max(rmax, coarse / fine);
          ++cases;
        }
      }
    }
  }
  const std::string tag(to_string(gauge));
  o.require(worst < 1e-5, "max residual at h=0.02, " + tag, worst, le(1e-5));
  o.require(rmin >= 12.0, "min ratio r(0.04)/r(0.02)", rmin, ge(12));
  o.require(rmax <= 20.0, "max ratio r(0.04)/r(0.02)", rmax, "<= 20");
  o.require(slowest < 10.0, "slowest case [s]", slowest, "< 10");
  o.note(std::to_string(cases) + " cases (free n,k and non-free n,k,k')");
}

SpectrumOptions level_options() {
  SpectrumOptions opt;
  // The lowest level is ~40-fold degenerate on this box; 48 vectors reach
  // the second level.
  opt.n_eigs = 48;
  opt.tolerance = 1e-8;
  return opt;
}

const Grid2D kSpectrumGrid({-8.0, 8.0, -8.0, 8.0}, 129, 129);

std::vector<double> spectrum_x;

int shell(const std::string& args) {
  const std::string cmd = std::string(LANDAU_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main() {
  const auto p = natural_units();

  criterion(1, "Landau levels from the sparse spectrum", [&](Outcome& o) {
    const auto t0 = Clock::now();
    const auto r = spectrum(p, Gauge::LandauX, kSpectrumGrid, level_options());
    const double t = seconds_since(t0);
    spectrum_x = r.eigenvalues;
    auto near = [&](double e) {
      return std::count_if(r.eigenvalues.begin(), r.eigenvalues.end(),
                           [e](double v) { return std::abs(v - e) < 1e-2; });
    };
    o.require(near(0.5) >= 3, "eigenvalues within 1e-2 of 0.5", double(near(0.5)), ">= 3");
    o.require(near(1.5) >= 3, "eigenvalues within 1e-2 of 1.5", double(near(1.5)), ">= 3");
    o.require(t < 60.0, "solve time [s]", t, "< 60");
    const double worst = *std::max_element(r.residuals.begin(), r.residuals.end());
    o.require(worst < 1e-8, "max eigenpair residual", worst, le(1e-8));
  });

  criterion(2, "Eigenfunction residuals and fourth-order convergence", [&](Outcome& o) {
    residual_sweep(o, Gauge::LandauX);
  });

  criterion(3, "Canonical commutators on five test fields", [&](Outcome& o) {
    const auto fields = sampled_fields(square(-8.0, 8.0, 0.02));
    const int skin = 2 * skin_width(4);
    const OperatorKind kinds[] = {OperatorKind::Q, OperatorKind::Qbar, OperatorKind::P, OperatorKind::Pbar};
    const char* names[] = {"Q", "Qbar", "P", "Pbar"};
    for (int a = 0; a < 4; ++a) {
      for (int b = a; b < 4; ++b) {
        const bool canonical = (a == 0 && b == 2) || (a == 1 && b == 3);
        const cdouble expect = canonical ? cdouble(0.0, p.hbar) : cdouble(0.0);
        double worst = 0.0;
        for (Gauge g : {Gauge::LandauX, Gauge::LandauY}) {
          for (const auto& f : fields) {
            ComplexField r = commutator_apply(make_operator(kinds[a], p, g), make_operator(kinds[b], p, g), f);
            r -= expect * f;
            worst = std::max(worst, interior_norm(r, skin) / (p.hbar * interior_norm(f, skin)));
          }
        }
        o.require(worst < 1e-6, std::string("[") + names[a] + "," + names[b] + "] - " + (canonical ? "i hbar" : "0"),
                  worst, le(1e-6));
      }
    }
  });

  criterion(4, "Conserved operators Pbar and Qbar", [&](Outcome& o) {
    const auto fields = sampled_fields(square(-8.0, 8.0, 0.02));
    const int skin = 2 * skin_width(4);
    double wp = 0.0, wq = 0.0, wx = INFINITY;
    for (Gauge g : {Gauge::LandauX, Gauge::LandauY}) {
      const auto h = make_operator(OperatorKind::Hamiltonian, p, g);
      const auto x = make_operator(OperatorKind::MultX, p, g);
      for (const auto& f : fields) {
        wp = std::max(wp, conserved_operator_check(p, g, ConservedQuantity::Pbar, f));
        wq = std::max(wq, conserved_operator_check(p, g, ConservedQuantity::Qbar, f));
        wx = std::min(wx, interior_norm(commutator_apply(h, x, f), skin) / interior_norm(f, skin));
      }
    }
    o.require(wp < 1e-7, "||[H,Pbar] f|| / ||f||", wp, le(1e-7));
    o.require(wq < 1e-7, "||[H,Qbar] f|| / ||f||", wq, le(1e-7));
    o.require(wx > 1e-2, "control ||[H,x] f|| / ||f||", wx, "> 1e-02");
  });

  criterion(5, "Transform: numeric vs analytic branches, C_n", [&](Outcome& o) {
    const auto t0 = Clock::now();
    const RegulatorSchedule sched;
    const double l = p.mag_length;
    auto probe = [&](int i, int count) { return (-2.0 + 4.0 * i / (count - 1)) * l; };
    double dpw = 0.0, ddl = 0.0;
    for (int n = 0; n <= 2; ++n) {
      for (int a = 0; a < 5; ++a) {
        for (int b = 0; b < 5; ++b) {
          const double x = probe(a, 5), y = probe(b, 5);
          dpw = std::max(dpw, std::abs(transform_numeric(p, PlaneWaveInput{n, 1.0}, x, y, sched).value -
                                       transform_planewave(p, n, 1.0, x, y)));
          ddl = std::max(ddl, std::abs(transform_numeric(p, DeltaLineInput{n, 1.0}, x, y, sched).value -
                                       transform_delta(p, n, 1.0, x, y)));
        }
      }
    }
    o.require(dpw <= 1e-3, "plane-wave branch max |numeric - analytic|", dpw, "<= 1e-03");
    o.require(ddl <= 1e-3, "delta branch max |numeric - analytic|", ddl, "<= 1e-03");

    double spread = 0.0, phase = 0.0;
    const cdouble minus_i(0.0, -1.0);
    for (int n = 0; n <= 4; ++n) {
      double lo = INFINITY, hi = 0.0;
      for (int a = 0; a < 9; ++a) {
        for (int b = 0; b < 9; ++b) {
          const double x = probe(a, 9), y = probe(b, 9);
          const cdouble term = eval_nonfree_term(p, Gauge::LandauX, n, 0.5, x, y);
          if (std::abs(term) < 1e-12) continue;
          const double r = std::abs(transform_delta(p, n, 0.5, x, y) / term);
          lo = std::min(lo, r);
          hi = std::max(hi, r);
        }
      }
      spread = std::max(spread, (hi - lo) / hi);
      // Phase from the regulated quadrature, independent of the closed form.
      const double x = 0.37 * l, y = 0.21 * l;
      const cdouble ratio = transform_numeric(p, DeltaLineInput{n, 0.0}, x, y, sched).value /
                            eval_nonfree_term(p, Gauge::LandauX, n, 0.0, x, y);
      phase = std::max(phase, std::abs(ratio / std::abs(ratio) - std::pow(minus_i, n)));
    }
    o.require(spread < 1e-9, "|C_n| relative spread over 9x9 probes, n<=4", spread, le(1e-9));
    o.require(phase < 1e-3, "numeric phase vs (-i)^n, n<=4", phase, le(1e-3));
    o.require(seconds_since(t0) < 300.0, "time [s]", seconds_since(t0), "< 300");
  });

  criterion(6, "Canonical-form Hamiltonian equals the Landau-gauge form", [&](Outcome& o) {
    const int skin = 2 * skin_width(4);
    auto worst_at = [&](double h) {
      double worst = 0.0;
      const Grid2D grid = square(-8.0, 8.0, h);
      for (const auto& field : test_fields()) {
        const ComplexField f = sample_field(field, grid);
        for (Gauge g : {Gauge::LandauX, Gauge::LandauY}) {
          const auto a = apply(make_operator(OperatorKind::Hamiltonian, p, g), f);
          const auto b = apply_hamiltonian_canonical(p, g, f);
          worst = std::max(worst, interior_norm(a - b, skin) / interior_norm(a, skin));
        }
      }
      return worst;
    };
    const double w02 = worst_at(0.02), w0125 = worst_at(0.0125), w00625 = worst_at(0.00625);
    o.require(w00625 < 1e-8, "max relative difference at h=0.00625", w00625, le(1e-8));
    char buf[160];
    std::snprintf(buf, sizeof buf, "h=0.02: %.2e, h=0.0125: %.2e; both forms are O(h^4), observed order %.2f",
                  w02, w0125, std::log(w0125 / w00625) / std::log(2.0));
    o.note(buf);
  });

  criterion(7, "Classical conservation over ten periods", [&](Outcome& o) {
    const auto t0 = Clock::now();
    const double period = 2.0 * std::numbers::pi / p.omega_c;
    const ClassicalState s0{0.3, -0.2, 1.0, 0.5, 0.0};
    const auto traj = integrate_orbit(p, s0, period / 1000.0, 10000);
    const double scale = p.mass * std::hypot(s0.vx, s0.vy);
    const auto c0 = conserved_pair(p, s0);
    double d1 = 0.0, d2 = 0.0, ret = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const auto c = conserved_pair(p, traj[i]);
      d1 = std::max(d1, std::abs(c.c1 - c0.c1) / scale);
      d2 = std::max(d2, std::abs(c.c2 - c0.c2) / scale);
      if (i > 0 && i % 1000 == 0) {
        const auto& s = traj[i];
        ret = std::max({ret, std::abs(s.x - s0.x), std::abs(s.y - s0.y), std::abs(s.vx - s0.vx),
                        std::abs(s.vy - s0.vy)});
      }
    }
    const double t = seconds_since(t0);
    o.require(d1 < 1e-8, "drift of m vx + beta y / m|v|", d1, le(1e-8));
    o.require(d2 < 1e-8, "drift of m vy - beta x / m|v|", d2, le(1e-8));
    o.require(ret < 1e-8, "period return, worst component", ret, le(1e-8));
    o.require(t < 1.0, "time [s]", t, "< 1");
  });

  criterion(8, "Canonical momenta match the conserved pair", [&](Outcome& o) {
    const double period = 2.0 * std::numbers::pi / p.omega_c;
    const ClassicalState s0{0.3, -0.2, 1.0, 0.5, 0.0};
    const auto traj = integrate_orbit(p, s0, period / 1000.0, 10000);
    const double scale = p.mass * std::hypot(s0.vx, s0.vy);
    const double pyx0 = canonical_momenta(p, Gauge::LandauX, s0).py - p.beta * s0.x;
    long mismatch = 0;
    double drift = 0.0, lo = INFINITY, hi = -INFINITY;
    for (const auto& s : traj) {
      const auto m = canonical_momenta(p, Gauge::LandauX, s);
      if (m.px != conserved_pair(p, s).c1) ++mismatch;
      drift = std::max(drift, std::abs(m.py - p.beta * s.x - pyx0) / scale);
      lo = std::min(lo, m.py);
      hi = std::max(hi, m.py);
    }
    o.require(mismatch == 0, "points with px != c1 (bitwise)", double(mismatch), "== 0");
    o.require(drift < 1e-9, "drift of py - beta x / m|v|", drift, le(1e-9));
    o.require(hi - lo > scale, "py peak-to-peak / m|v|", (hi - lo) / scale, "> 1");
  });

  criterion(9, "Gauge mirror", [&](Outcome& o) {
    const auto opt = level_options();
    const auto y = spectrum(p, Gauge::LandauY, kSpectrumGrid, opt);
    if (spectrum_x.empty()) spectrum_x = spectrum(p, Gauge::LandauX, kSpectrumGrid, opt).eigenvalues;
    double worst = 0.0;
    for (std::size_t i = 0; i < y.eigenvalues.size(); ++i) {
      worst = std::max(worst, std::abs(y.eigenvalues[i] - spectrum_x.at(i)));
    }
    o.require(worst < 2.0 * opt.tolerance, "max |lambda_Y - lambda_X|", worst, le(2.0 * opt.tolerance));
    residual_sweep(o, Gauge::LandauY);
  });

  criterion(10, "CLI reruns from the manifest are byte-identical", [&](Outcome& o) {
    const fs::path root = fs::temp_directory_path() / "landau_acceptance";
    fs::remove_all(root);
    struct Run {
      std::string name, args;
      std::vector<std::string> files;
    };
    const std::vector<Run> runs = {
        {"eval", "eval --n 2 --k 0.5 --kprime -1 --nonfree --grid -8:8:161", {"field.csv", "density.png"}},
        {"spectrum", "spectrum --grid -6:6:65 --n-eigs 8 --seed 3", {"spectrum.csv"}},
        {"transform", "transform --branch delta --n 1 --kprime 0.5 --probes 3", {"transform.csv"}},
        {"orbit", "orbit --x0 0.3 --y0 -0.2 --vy0 0.5 --B 1.7", {"orbit.csv"}},
    };
    for (const auto& r : runs) {
      const fs::path a = root / r.name / "first", b = root / r.name / "rerun";
      const int ca = shell(r.args + " --out " + a.string());
      const int cb = shell(std::string(r.name) + " --config " + (a / "manifest.json").string() + " --out " + b.string());
      o.require(ca == 0 && cb == 0, r.name + ": exit codes", double(std::max(ca, cb)), "== 0");
      for (const auto& f : r.files) {
        const std::string x = slurp(a / f), y = slurp(b / f);
        o.require(!x.empty() && x == y, r.name + ": " + f + " identical", x.empty() || x != y ? 1.0 : 0.0, "== 0");
      }
    }
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
