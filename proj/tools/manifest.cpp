#include "manifest.hpp"

#include <fstream>
#include <numbers>
#include <iostream>

namespace landau::cli {

Manifest::Manifest(std::string command, const Binder& binder, const RunOptions& run)
    : out_(run.out), echo_(run.json), start_(std::chrono::steady_clock::now()) {
  doc_["tool"] = "landau";
  doc_["version"] = kToolVersion;
  doc_["command"] = std::move(command);
  doc_["arguments"] = binder.to_json();
  doc_["derived"] = Json::object();
  doc_["layout"] = Json::object();
  doc_["outputs"] = Json::array();
  doc_["warnings"] = Json::array();
  doc_["results"] = Json::object();
  doc_["status"] = "running";
  doc_["duration_seconds"] = nullptr;
  std::filesystem::create_directories(out_);
}

void Manifest::set_params(const PhysicalParams& p) {
  auto& d = derived();
  d["omega_c"] = p.omega_c;
  d["beta"] = p.beta;
  d["mag_length"] = p.mag_length;
  d["cyclotron_period"] = 2.0 * std::numbers::pi / p.omega_c;
}

void Manifest::set_grid(const Grid2D& g) {
  auto& l = doc_["layout"];
  l["nx"] = g.nx();
  l["ny"] = g.ny();
  l["hx"] = g.hx();
  l["hy"] = g.hy();
  l["order"] = "row-major, y fastest (index = i * ny + j)";
}

void Manifest::warn(const std::string& text) {
  doc_["warnings"].push_back(text);
  std::cerr << "warning: " << text << '\n';
}

void Manifest::add_output(const std::string& name) { doc_["outputs"].push_back(name); }

void Manifest::write() const {
  std::ofstream f(out_ / "manifest.json");
  if (!f) throw std::runtime_error("cannot write " + (out_ / "manifest.json").string());
  f << doc_.dump(2) << '\n';
}

void Manifest::finish(const std::string& status, const std::string& error) {
  doc_["status"] = status;
  if (!error.empty()) doc_["error"] = error;
  doc_["duration_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  write();
  if (echo_) std::cout << doc_.dump(2) << '\n';
}

}  // namespace landau::cli
