#include "config.hpp"

#include <charconv>
#include <fstream>

namespace landau::cli {

namespace {

double parse_number(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw UsageError("bad number '" + text + "' in " + what);
  return v;
}

}  // namespace

AxisSpec parse_axis(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos || text.find(':', b + 1) != std::string::npos) {
    throw UsageError("grid must be min:max:npts, got '" + text + "'");
  }
  AxisSpec axis;
  axis.min = parse_number(text.substr(0, a), "grid");
  axis.max = parse_number(text.substr(a + 1, b - a - 1), "grid");
  const double n = parse_number(text.substr(b + 1), "grid");
  if (n != static_cast<int>(n)) throw UsageError("grid npts must be an integer");
  axis.npts = static_cast<int>(n);
  if (!(axis.max > axis.min)) throw UsageError("grid needs min < max");
  if (axis.npts < kMinGridPoints) {
    throw UsageError("grid needs at least " + std::to_string(kMinGridPoints) + " points");
  }
  return axis;
}

std::string format_axis(const AxisSpec& axis) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g:%.17g:%d", axis.min, axis.max, axis.npts);
  return buf;
}

PhysicalParams CommonSettings::params() const {
  try {
    return derive_params(hbar, mass, charge, cspeed, field);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

Gauge CommonSettings::gauge_value() const {
  try {
    return gauge_from_string(gauge);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

Grid2D CommonSettings::grid() const {
  const AxisSpec ax = parse_axis(gridx);
  const AxisSpec ay = parse_axis(gridy);
  return Grid2D({ax.min, ax.max, ay.min, ay.max}, ax.npts, ay.npts);
}

void Binder::fill_from(const Json& arguments) const {
  for (const auto& e : entries_) {
    if (e.opt->count() > 0 || !arguments.contains(e.name)) continue;
    try {
      e.load(arguments.at(e.name));
    } catch (const Json::exception& ex) {
      throw UsageError("config value '" + e.name + "': " + ex.what());
    }
  }
}

Json Binder::to_json() const {
  Json j = Json::object();
  for (const auto& e : entries_) e.store(j);
  return j;
}

void add_common(Binder& b, CommonSettings& c, std::string& square_grid) {
  b.option("hbar", c.hbar, "reduced Planck constant");
  b.option("mass", c.mass, "particle mass");
  b.option("charge", c.charge, "charge e");
  b.option("cspeed", c.cspeed, "speed of light c");
  b.option("B", c.field, "magnetic field strength");
  b.option("gauge", c.gauge, "landau-x or landau-y")
      ->check(CLI::IsMember({"landau-x", "landau-y"}));
  b.option("gridx", c.gridx, "x axis as min:max:npts");
  b.option("gridy", c.gridy, "y axis as min:max:npts");
  b.option("order", c.order, "stencil order (2 or 4)")->check(CLI::IsMember({2, 4}));
  b.option("seed", c.seed, "random seed");
  b.app()->add_option("--grid", square_grid, "square grid min:max:npts for both axes");
}

void resolve_grid(const Binder& b, CommonSettings& c, const std::string& square_grid) {
  auto* app = b.app();
  if (app->get_option("--grid")->count() > 0) {
    if (app->get_option("--gridx")->count() == 0) c.gridx = square_grid;
    if (app->get_option("--gridy")->count() == 0) c.gridy = square_grid;
  }
  parse_axis(c.gridx);
  parse_axis(c.gridy);
}

void add_run_options(CLI::App* app, RunOptions& run) {
  app->add_option("--out", run.out, "output directory");
  app->add_option("--config", run.config, "manifest or JSON config to start from");
  app->add_flag("--json", run.json, "print the manifest to stdout");
}

Json load_config(const std::filesystem::path& path, const std::string& command) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  if (!j.is_object() || !j.contains("arguments") || !j["arguments"].is_object()) {
    throw UsageError("config " + path.string() + " has no \"arguments\" object");
  }
  if (j.contains("command") && j["command"] != command) {
    throw UsageError("config was written by '" + j["command"].get<std::string>() +
                     "', not '" + command + "'");
  }
  return j["arguments"];
}

}  // namespace landau::cli
