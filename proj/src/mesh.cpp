#include "vem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vem/error.hpp"

namespace vem {

namespace {

void require_finite(std::span<const Vertex> polygon) {
  for (const Vertex& v : polygon) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw GeometryError("non-finite vertex coordinate");
    }
  }
}

void require_polygon(std::span<const Vertex> polygon) {
  if (polygon.size() < 3) {
    throw GeometryError("polygon needs at least 3 vertices, got " +
                        std::to_string(polygon.size()));
  }
  require_finite(polygon);
}

double bounding_box_area(std::span<const Vertex> polygon) {
  double xmin = std::numeric_limits<double>::infinity();
  double ymin = xmin;
  double xmax = -xmin;
  double ymax = -xmin;
  for (const Vertex& v : polygon) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  return (xmax - xmin) * (ymax - ymin);
}

}  // namespace

std::vector<bool> Mesh::boundary_mask() const {
  std::vector<bool> mask(vertices.size(), false);
  for (std::size_t id : boundary) {
    mask.at(id) = true;
  }
  return mask;
}

std::vector<std::size_t> Mesh::interior() const {
  const auto mask = boundary_mask();
  std::vector<std::size_t> ids;
  ids.reserve(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!mask[i]) ids.push_back(i);
  }
  return ids;
}

std::vector<Vertex> Mesh::element_vertices(std::size_t element) const {
  const Element& e = elements.at(element);
  std::vector<Vertex> out;
  out.reserve(e.size());
  for (std::size_t id : e.vertex_ids) {
    out.push_back(vertices.at(id));
  }
  return out;
}

double signed_area(std::span<const Vertex> polygon) {
  require_polygon(polygon);
  const std::size_t n = polygon.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex& a = polygon[i];
    const Vertex& b = polygon[(i + 1) % n];
    sum += a.x * b.y - b.x * a.y;
  }
  return 0.5 * sum;
}

Vec2 centroid(std::span<const Vertex> polygon, double area) {
  require_polygon(polygon);
  if (!(area > 0.0)) {
    throw GeometryError("degenerate element: area " + std::to_string(area));
  }
  const std::size_t n = polygon.size();
  double cx = 0.0;
  double cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex& a = polygon[i];
    const Vertex& b = polygon[(i + 1) % n];
    const double cross = a.x * b.y - b.x * a.y;
    cx += (a.x + b.x) * cross;
    cy += (a.y + b.y) * cross;
  }
  return {cx / (6.0 * area), cy / (6.0 * area)};
}

double diameter(std::span<const Vertex> polygon) {
  require_polygon(polygon);
  double best = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    for (std::size_t j = i + 1; j < polygon.size(); ++j) {
      best = std::max(best, std::hypot(polygon[i].x - polygon[j].x, polygon[i].y - polygon[j].y));
    }
  }
  return best;
}

Vec2 vertex_normal(std::span<const Vertex> polygon, std::size_t i) {
  const std::size_t n = polygon.size();
  const Vertex& prev = polygon[(i + n - 1) % n];
  const Vertex& next = polygon[(i + 1) % n];
  return {next.y - prev.y, prev.x - next.x};
}

bool point_in_polygon(std::span<const Vertex> polygon, Vec2 p) {
  const std::size_t n = polygon.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vertex& a = polygon[i];
    const Vertex& b = polygon[j];
    // On-segment check so that boundary points are accepted.
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    const double scale = std::abs(b.x - a.x) + std::abs(b.y - a.y);
    if (std::abs(cross) <= 1e-14 * scale * scale &&
        p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
        p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y)) {
      return true;
    }
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

ElementGeometry compute_geometry(std::span<const Vertex> polygon) {
  ElementGeometry g;
  g.area = signed_area(polygon);
  g.centroid = centroid(polygon, g.area);
  g.diameter = diameter(polygon);
  g.n_vertices = polygon.size();
  return g;
}

double signed_area(const Mesh& mesh, std::size_t element) {
  return signed_area(mesh.element_vertices(element));
}

ElementGeometry compute_geometry(const Mesh& mesh, std::size_t element) {
  return compute_geometry(mesh.element_vertices(element));
}

ValidatedMesh validate_and_orient(Mesh mesh, const ValidationOptions& options) {
  ValidatedMesh out;
  const std::size_t nv = mesh.vertices.size();

  for (std::size_t i = 0; i < nv; ++i) {
    if (!std::isfinite(mesh.vertices[i].x) || !std::isfinite(mesh.vertices[i].y)) {
      throw MeshError("vertex " + std::to_string(i) + " has a non-finite coordinate");
    }
  }
  for (std::size_t id : mesh.boundary) {
    if (id >= nv) {
      throw MeshError("boundary vertex index " + std::to_string(id) + " out of range (" +
                      std::to_string(nv) + " vertices)");
    }
  }
  std::sort(mesh.boundary.begin(), mesh.boundary.end());
  mesh.boundary.erase(std::unique(mesh.boundary.begin(), mesh.boundary.end()),
                      mesh.boundary.end());

  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    auto& ids = mesh.elements[e].vertex_ids;
    const std::string tag = "element " + std::to_string(e) + ": ";
    if (ids.size() < 3) {
      throw MeshError(tag + "needs at least 3 vertices, got " + std::to_string(ids.size()), e);
    }
    for (std::size_t id : ids) {
      if (id >= nv) {
        throw MeshError(tag + "vertex index " + std::to_string(id) + " out of range (" +
                            std::to_string(nv) + " vertices)",
                        e);
      }
    }
    auto sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw MeshError(tag + "repeated vertex index", e);
    }

    auto polygon = mesh.element_vertices(e);
    double area = signed_area(polygon);
    if (std::abs(area) < options.degenerate_area_ratio * bounding_box_area(polygon) ||
        area == 0.0) {
      std::ostringstream msg;
      msg << tag << "degenerate area " << area;
      throw MeshError(msg.str(), e);
    }
    if (area < 0.0) {
      std::reverse(ids.begin(), ids.end());
      std::reverse(polygon.begin(), polygon.end());
      area = -area;
      out.reoriented.push_back(e);
    }

    const Vec2 c = centroid(polygon, area);
    if (!point_in_polygon(polygon, c)) {
      std::ostringstream msg;
      msg << tag << "centroid (" << c.x << ", " << c.y << ") lies outside the element";
      if (options.strict_centroid) throw MeshError(msg.str(), e);
      out.warnings.push_back(msg.str());
    }
  }

  out.mesh = std::move(mesh);
  return out;
}

}  // namespace vem
