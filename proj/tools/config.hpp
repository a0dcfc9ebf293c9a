#pragma once

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <json.hpp>
#include <string>
#include <vector>

#include "landau/physcore.hpp"

namespace landau::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = LANDAU_VERSION;

/// Thrown for bad flag values; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One axis of a grid given as "min:max:npts".
struct AxisSpec {
  double min = -10.0;
  double max = 10.0;
  int npts = 257;
};
AxisSpec parse_axis(const std::string& text);
std::string format_axis(const AxisSpec& axis);

/// Settings shared by every subcommand.  Defaults live here and nowhere else.
struct CommonSettings {
  double hbar = 1.0;
  double mass = 1.0;
  double charge = 1.0;
  double cspeed = 1.0;
  double field = 1.0;
  std::string gauge = "landau-x";
  std::string gridx = "-10:10:257";
  std::string gridy = "-10:10:257";
  int order = 4;
  std::uint64_t seed = 1;

  PhysicalParams params() const;
  Gauge gauge_value() const;
  Grid2D grid() const;
};

struct EvalSettings {
  int n = -1;  // required
  double k = 0.0;
  double kprime = 0.0;
  bool nonfree = false;
  double c_plane_re = 1.0, c_plane_im = 0.0;
  double c_delta_re = 1.0, c_delta_im = 0.0;
  bool png = true;
};

struct SpectrumSettings {
  int n_eigs = 48;
  double tolerance = 1e-8;
  int degree = 32;
  int guard = 0;
  int max_iterations = 300;
};
inline constexpr const char* kSpectrumGrid = "-8:8:129";

struct TransformSettings {
  std::string branch = "planewave";  // planewave | delta | gaussian
  int n = 0;
  double k = 0.0;
  double kprime = 0.0;
  std::vector<double> epsilons{0.2, 0.15, 0.1, 0.05};
  double half_width = 0.0;
  int nodes_per_unit = 16;
  int probes = 5;
  double probe_extent = 2.0;  // magnetic lengths
  double tolerance = 0.0;     // 0: 1e-3 for regulated branches, 1e-6 for gaussian
};

struct OrbitSettings {
  double x0 = 0.0, y0 = 0.0, vx0 = 1.0, vy0 = 0.0;
  double dt = 0.0;  // 0: one thousandth of the cyclotron period
  int steps = 10000;
};

struct VerifySettings {
  double h = 0.02;
  int expect_order = 0;  // 0: the stencil order
  bool break_gauge = false;
};

/// Registers options on a subcommand and remembers how to move each value
/// to and from the manifest's "arguments" object.  Explicit flags win over a
/// --config file, which wins over the defaults above.
class Binder {
 public:
  explicit Binder(CLI::App* app) : app_(app) {}

  template <typename T>
  CLI::Option* option(const std::string& name, T& field, const std::string& help) {
    auto* opt = app_->add_option("--" + name, field, help);
    record(name, opt, field);
    return opt;
  }
  CLI::Option* flag(const std::string& name, bool& field, const std::string& help) {
    auto* opt = app_->add_flag("--" + name + ",!--no-" + name, field, help);
    record(name, opt, field);
    return opt;
  }

  /// Values from `arguments` for every option not given on the command line.
  void fill_from(const Json& arguments) const;
  Json to_json() const;
  CLI::App* app() const { return app_; }

 private:
  struct Entry {
    std::string name;
    CLI::Option* opt;
    std::function<void(const Json&)> load;
    std::function<void(Json&)> store;
  };
  template <typename T>
  void record(const std::string& name, CLI::Option* opt, T& field) {
    entries_.push_back({name, opt, [&field](const Json& j) { field = j.get<T>(); },
                        [&field, name](Json& j) { j[name] = field; }});
  }

  CLI::App* app_;
  std::vector<Entry> entries_;
};

/// Adds the physical-parameter, gauge, grid and seed options.  `--grid`
/// sets both axes unless --gridx/--gridy are also given.
void add_common(Binder& binder, CommonSettings& common, std::string& square_grid);
void resolve_grid(const Binder& binder, CommonSettings& common, const std::string& square_grid);

/// Output-side options that never enter the manifest arguments.
struct RunOptions {
  std::filesystem::path out = ".";
  std::string config;
  bool json = false;
};
void add_run_options(CLI::App* app, RunOptions& run);

/// Reads a manifest (or any JSON object with an "arguments" member) and
/// checks it was written by `command`.
Json load_config(const std::filesystem::path& path, const std::string& command);

}  // namespace landau::cli
