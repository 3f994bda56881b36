#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace vem {

struct Vertex {
  double x = 0.0;
  double y = 0.0;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Polygon given as a loop of global vertex indices. Edge i joins local
/// vertex i to local vertex (i + 1) mod N.
struct Element {
  std::vector<std::size_t> vertex_ids;

  std::size_t size() const noexcept { return vertex_ids.size(); }
};

/// Vertices, polygonal elements and the Dirichlet boundary vertex set.
/// Indices are 0-based. The boundary list is kept sorted and unique.
struct Mesh {
  std::vector<Vertex> vertices;
  std::vector<Element> elements;
  std::vector<std::size_t> boundary;

  std::size_t n_vertices() const noexcept { return vertices.size(); }
  std::size_t n_elements() const noexcept { return elements.size(); }

  /// Per-vertex flag, true on the boundary.
  std::vector<bool> boundary_mask() const;

  /// Vertices that are not on the boundary, ascending.
  std::vector<std::size_t> interior() const;

  /// Coordinates of one element, in loop order.
  std::vector<Vertex> element_vertices(std::size_t element) const;
};

struct ElementGeometry {
  double area = 0.0;
  Vec2 centroid;
  double diameter = 0.0;
  std::size_t n_vertices = 0;
};

// Polygon kernels. They take the vertex loop directly so that they can be
// applied to free-standing polygons as well as mesh elements.

/// Shoelace sum, positive for counter-clockwise loops.
double signed_area(std::span<const Vertex> polygon);

/// Area-weighted centroid of a counter-clockwise polygon with the given area.
/// Throws GeometryError when the area is not positive.
Vec2 centroid(std::span<const Vertex> polygon, double area);

/// Largest distance between any two vertices.
double diameter(std::span<const Vertex> polygon);

/// Weighted normal at vertex i: (y[i+1] - y[i-1], x[i-1] - x[i+1]).
Vec2 vertex_normal(std::span<const Vertex> polygon, std::size_t i);

/// Even-odd ray casting test; points on the boundary count as inside.
bool point_in_polygon(std::span<const Vertex> polygon, Vec2 point);

/// Area, centroid, diameter and vertex count of a counter-clockwise polygon.
ElementGeometry compute_geometry(std::span<const Vertex> polygon);

double signed_area(const Mesh& mesh, std::size_t element);
ElementGeometry compute_geometry(const Mesh& mesh, std::size_t element);

struct ValidationOptions {
  /// Treat a centroid outside its element as an error instead of a warning.
  bool strict_centroid = false;
  /// Elements with |area| below this fraction of their bounding-box area
  /// are rejected.
  double degenerate_area_ratio = 1e-14;
};

struct ValidatedMesh {
  Mesh mesh;
  std::vector<std::string> warnings;
  /// Indices of elements whose vertex loop was reversed.
  std::vector<std::size_t> reoriented;
};

/// Checks indices and geometry, reverses clockwise elements and sorts the
/// boundary list. Throws MeshError naming the first offending element.
ValidatedMesh validate_and_orient(Mesh mesh, const ValidationOptions& options = {});

}  // namespace vem
