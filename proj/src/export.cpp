#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "vem/error.hpp"
#include "vem/mesh_io.hpp"

namespace vem {

namespace {

void require_values(const Mesh& mesh, std::span<const double> values) {
  if (values.size() != mesh.n_vertices()) {
    throw std::invalid_argument("export: " + std::to_string(values.size()) + " values for " +
                                std::to_string(mesh.n_vertices()) + " vertices");
  }
}

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  writer(out);
  out.flush();
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::array<Rgb, 256> build_colormap() {
  constexpr std::array<std::array<double, 3>, 9> anchors{{
      {68, 1, 84},
      {71, 45, 123},
      {59, 82, 139},
      {44, 114, 142},
      {33, 145, 140},
      {40, 174, 128},
      {94, 201, 98},
      {173, 220, 48},
      {253, 231, 37},
  }};
  std::array<Rgb, 256> lut{};
  for (std::size_t k = 0; k < lut.size(); ++k) {
    const double t = static_cast<double>(k) / 255.0 * 8.0;
    const auto seg = std::min<std::size_t>(static_cast<std::size_t>(t), 7);
    const double w = t - static_cast<double>(seg);
    auto channel = [&](std::size_t c) {
      const double v = (1.0 - w) * anchors[seg][c] + w * anchors[seg + 1][c];
      return static_cast<unsigned char>(std::lround(v));
    };
    lut[k] = {channel(0), channel(1), channel(2)};
  }
  return lut;
}

}  // namespace

const std::array<Rgb, 256>& colormap() {
  static const std::array<Rgb, 256> lut = build_colormap();
  return lut;
}

std::size_t colormap_index(double value, double lo, double hi) {
  if (!(hi > lo)) return 128;
  const double t = std::clamp((value - lo) / (hi - lo), 0.0, 1.0);
  return static_cast<std::size_t>(std::lround(t * 255.0));
}

void write_vtk(std::ostream& out, const Mesh& mesh, std::span<const double> values) {
  require_values(mesh, values);
  const auto old_precision = out.precision();
  out << std::setprecision(17);
  out << "# vtk DataFile Version 3.0\n"
      << "virtual element solution\n"
      << "ASCII\n"
      << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.n_vertices() << " double\n";
  for (const Vertex& v : mesh.vertices) out << v.x << ' ' << v.y << " 0\n";

  std::size_t cell_size = 0;
  for (const Element& e : mesh.elements) cell_size += e.size() + 1;
  out << "CELLS " << mesh.n_elements() << ' ' << cell_size << '\n';
  for (const Element& e : mesh.elements) {
    out << e.size();
    for (std::size_t id : e.vertex_ids) out << ' ' << id;
    out << '\n';
  }
  out << "CELL_TYPES " << mesh.n_elements() << '\n';
  for (std::size_t e = 0; e < mesh.n_elements(); ++e) out << "7\n";  // VTK_POLYGON

  out << "POINT_DATA " << mesh.n_vertices() << '\n'
      << "SCALARS u double 1\n"
      << "LOOKUP_TABLE default\n";
  for (double v : values) out << v << '\n';
  out.precision(old_precision);
}

void write_vtk(const std::filesystem::path& path, const Mesh& mesh, std::span<const double> values) {
  require_values(mesh, values);
  write_file(path, [&](std::ostream& out) { write_vtk(out, mesh, values); });
}

void write_svg(std::ostream& out, const Mesh& mesh, std::span<const double> values) {
  require_values(mesh, values);
  if (mesh.vertices.empty()) throw std::invalid_argument("write_svg: empty mesh");

  double xmin = mesh.vertices[0].x, xmax = xmin;
  double ymin = mesh.vertices[0].y, ymax = ymin;
  for (const Vertex& v : mesh.vertices) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  const double margin = 0.02 * std::max(xmax - xmin, ymax - ymin);
  const double width = xmax - xmin + 2.0 * margin;
  const double height = ymax - ymin + 2.0 * margin;
  const double stroke = 0.001 * std::max(width, height);

  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const auto& lut = colormap();

  const auto old_precision = out.precision();
  out << std::setprecision(10);
  // y is flipped: screen y = -y, so the view box starts at -ymax.
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << xmin - margin
      << ' ' << -ymax - margin << ' ' << width << ' ' << height << "\">\n"
      << "<g stroke=\"black\" stroke-width=\"" << stroke << "\" stroke-linejoin=\"round\">\n";
  for (const Element& e : mesh.elements) {
    double mean = 0.0;
    for (std::size_t id : e.vertex_ids) mean += values[id];
    mean /= static_cast<double>(e.size());
    const Rgb c = lut[colormap_index(mean, lo, hi)];
    out << "<polygon points=\"";
    for (std::size_t k = 0; k < e.size(); ++k) {
      const Vertex& v = mesh.vertices[e.vertex_ids[k]];
      out << (k ? " " : "") << v.x << ',' << -v.y;
    }
    out << "\" fill=\"rgb(" << int(c.r) << ',' << int(c.g) << ',' << int(c.b) << ")\"/>\n";
  }
  out << "</g>\n</svg>\n";
  out.precision(old_precision);
}

void write_svg(const std::filesystem::path& path, const Mesh& mesh, std::span<const double> values) {
  require_values(mesh, values);
  write_file(path, [&](std::ostream& out) { write_svg(out, mesh, values); });
}

void write_solution_csv(std::ostream& out, const Mesh& mesh, std::span<const double> values) {
  require_values(mesh, values);
  const auto old_precision = out.precision();
  out << std::setprecision(17);
  out << "vertex_id,x,y,u\n";
  for (std::size_t i = 0; i < mesh.n_vertices(); ++i) {
    out << i << ',' << mesh.vertices[i].x << ',' << mesh.vertices[i].y << ',' << values[i] << '\n';
  }
  out.precision(old_precision);
}

void write_solution_csv(const std::filesystem::path& path, const Mesh& mesh,
                        std::span<const double> values) {
  require_values(mesh, values);
  write_file(path, [&](std::ostream& out) { write_solution_csv(out, mesh, values); });
}

}  // namespace vem
