#include "landau/io.hpp"

#include <png.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace landau::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field_csv(const std::filesystem::path& path, const ComplexField& field) {
  auto out = open_out(path);
  const auto& g = field.grid();
  out << "x,y,re,im,abs2\n";
  for (int i = 0; i < g.nx(); ++i) {
    const std::string xs = format_double(g.x(i));
    for (int j = 0; j < g.ny(); ++j) {
      const cdouble v = field(i, j);
      out << xs << ',' << format_double(g.y(j)) << ',' << format_double(v.real()) << ','
          << format_double(v.imag()) << ',' << format_double(std::norm(v)) << '\n';
    }
  }
}

ComplexField read_field_csv(const std::filesystem::path& path, const Grid2D& grid) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != "x,y,re,im,abs2") throw std::runtime_error("unexpected field CSV header");
  std::vector<cdouble> values;
  values.reserve(grid.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double x, y, re, im, a2;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &x, &y, &re, &im, &a2) != 5) {
      throw std::runtime_error("malformed field CSV row: " + line);
    }
    values.emplace_back(re, im);
  }
  return ComplexField(grid, std::move(values));
}

void write_spectrum_csv(const std::filesystem::path& path, const SpectrumResult& result) {
  auto out = open_out(path);
  out << "index,eigenvalue,cluster_id,residual\n";
  for (std::size_t k = 0; k < result.eigenvalues.size(); ++k) {
    out << k << ',' << format_double(result.eigenvalues[k]) << ',' << result.cluster_ids[k]
        << ',' << format_double(result.residuals[k]) << '\n';
  }
}

void write_orbit_csv(const std::filesystem::path& path, const PhysicalParams& params,
                     Gauge gauge, const std::vector<ClassicalState>& trajectory) {
  auto out = open_out(path);
  out << "t,x,y,vx,vy,c1,c2,px,py\n";
  for (const auto& s : trajectory) {
    const auto c = conserved_pair(params, s);
    const auto p = canonical_momenta(params, gauge, s);
    out << format_double(s.t) << ',' << format_double(s.x) << ',' << format_double(s.y) << ','
        << format_double(s.vx) << ',' << format_double(s.vy) << ',' << format_double(c.c1)
        << ',' << format_double(c.c2) << ',' << format_double(p.px) << ','
        << format_double(p.py) << '\n';
  }
}

void write_density_png(const std::filesystem::path& path,
                       const std::vector<const ComplexField*>& panels) {
  if (panels.empty()) throw DomainError("heatmap needs at least one panel");
  constexpr int kGap = 4;
  const int height = panels.front()->grid().ny();
  int width = 0;
  for (const auto* p : panels) {
    if (p->grid().ny() != height) throw DomainError("heatmap panels must share ny");
    width += p->grid().nx();
  }
  width += kGap * static_cast<int>(panels.size() - 1);

  std::vector<png_byte> pixels(static_cast<std::size_t>(width) * height, 0);
  int x0 = 0;
  for (const auto* p : panels) {
    const auto& g = p->grid();
    double peak = 0.0;
    for (const auto& v : p->values()) peak = std::max(peak, std::norm(v));
    for (int i = 0; i < g.nx(); ++i) {
      for (int j = 0; j < g.ny(); ++j) {
        const double level = peak > 0.0 ? std::norm((*p)(i, j)) / peak : 0.0;
        const int row = height - 1 - j;
        pixels[static_cast<std::size_t>(row) * width + x0 + i] =
            static_cast<png_byte>(std::clamp(level * 255.0 + 0.5, 0.0, 255.0));
      }
    }
    x0 += g.nx() + kGap;
  }

  std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.string().c_str(), "wb"), &std::fclose);
  if (!fp) throw std::runtime_error("cannot open " + path.string() + " for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("libpng initialization failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("libpng failed writing " + path.string());
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int row = 0; row < height; ++row) {
    png_write_row(png, pixels.data() + static_cast<std::size_t>(row) * width);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace landau::io
