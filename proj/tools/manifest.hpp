#pragma once

#include <chrono>
#include <filesystem>
#include <string>

#include "config.hpp"

namespace landau::cli {

/// Run record written to <out>/manifest.json.  write() is called once before
/// any data file and again by finish() with results and timing.
class Manifest {
 public:
  Manifest(std::string command, const Binder& binder, const RunOptions& run);

  void set_params(const PhysicalParams& params);
  void set_grid(const Grid2D& grid);
  void warn(const std::string& text);
  void add_output(const std::string& name);
  Json& derived() { return doc_["derived"]; }
  Json& results() { return doc_["results"]; }
  const std::filesystem::path& out_dir() const { return out_; }
  std::filesystem::path file(const std::string& name) const { return out_ / name; }

  void write() const;
  /// Records status and duration, rewrites the manifest, echoes it if --json.
  void finish(const std::string& status, const std::string& error = {});

 private:
  Json doc_;
  std::filesystem::path out_;
  bool echo_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace landau::cli
