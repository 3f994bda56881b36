#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "vem/mesh.hpp"

namespace vem {

// Mesh text format, 0-based indices, '#' starts a comment:
//
//   vertices <N>
//   <x> <y>                 N lines
//   elements <M>
//   <k> <v_1> ... <v_k>     M lines, counter-clockwise preferred
//   boundary <B>
//   <v> ...                 B indices, any layout
//
// Tokens are whitespace separated; line breaks only matter for error
// messages.

/// Parses without geometric validation. Index ranges are checked and
/// reported as ParseError naming the element.
Mesh parse_mesh(std::istream& in);

/// parse_mesh() followed by validate_and_orient().
ValidatedMesh read_mesh(const std::filesystem::path& path, const ValidationOptions& options = {});

/// Coordinates are written with 17 significant digits.
void write_mesh(std::ostream& out, const Mesh& mesh);
void write_mesh(const std::filesystem::path& path, const Mesh& mesh);

enum class MeshKind { squares, triangles, nonconvex, l_shaped };

MeshKind parse_mesh_kind(const std::string& name);
std::string to_string(MeshKind kind);

/// Structured test meshes with n cells per unit length.
///   squares    n^2 unit-square quads
///   triangles  each square cut along its (0,0)-(1,1) diagonal
///   nonconvex  octagons: every square gets its edge midpoints, interior
///              midpoints shifted by h/5 in +x (vertical edges) or +y
///              (horizontal edges), making each cell non-convex
///   l_shaped   quads on [-1,1]^2 minus (0,1]^2, n cells per unit length
Mesh generate_structured(MeshKind kind, std::size_t n);

// Solution export. `values` has one entry per vertex.

/// Legacy VTK ASCII unstructured grid with polygon cells and point field "u".
void write_vtk(std::ostream& out, const Mesh& mesh, std::span<const double> values);
void write_vtk(const std::filesystem::path& path, const Mesh& mesh, std::span<const double> values);

/// One filled polygon per element coloured by its mean vertex value.
void write_svg(std::ostream& out, const Mesh& mesh, std::span<const double> values);
void write_svg(const std::filesystem::path& path, const Mesh& mesh, std::span<const double> values);

/// Rows vertex_id,x,y,u at full precision.
void write_solution_csv(std::ostream& out, const Mesh& mesh, std::span<const double> values);
void write_solution_csv(const std::filesystem::path& path, const Mesh& mesh,
                        std::span<const double> values);

struct Rgb {
  unsigned char r, g, b;
};

/// 256-entry viridis-like map: piecewise-linear interpolation of nine
/// anchor colours sampled from viridis at 0, 1/8, ..., 1.
const std::array<Rgb, 256>& colormap();

/// Lookup index for value in [lo, hi]; 128 when hi == lo.
std::size_t colormap_index(double value, double lo, double hi);

}  // namespace vem
