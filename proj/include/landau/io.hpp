#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "landau/dynamics.hpp"
#include "landau/eigensolver.hpp"
#include "landau/physcore.hpp"

namespace landau::io {

/// Shortest round-trip-safe text for a double: printf "%.17g".
std::string format_double(double v);

/// Header `x,y,re,im,abs2`; rows x-major then y.
void write_field_csv(const std::filesystem::path& path, const ComplexField& field);

/// Parses a file written by write_field_csv back onto `grid`.
ComplexField read_field_csv(const std::filesystem::path& path, const Grid2D& grid);

/// Header `index,eigenvalue,cluster_id,residual`.
void write_spectrum_csv(const std::filesystem::path& path, const SpectrumResult& result);

/// Header `t,x,y,vx,vy,c1,c2,px,py`.
void write_orbit_csv(const std::filesystem::path& path, const PhysicalParams& params,
                     Gauge gauge, const std::vector<ClassicalState>& trajectory);

/// 8-bit grayscale PNG of |psi|^2, each panel normalized to its own maximum
/// and placed left to right with a 4-pixel gap.  Row 0 of the image is the
/// largest y.
void write_density_png(const std::filesystem::path& path,
                       const std::vector<const ComplexField*>& panels);

}  // namespace landau::io
