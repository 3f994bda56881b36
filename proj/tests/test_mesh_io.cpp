#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "vem/error.hpp"
#include "vem/mesh_io.hpp"

using namespace vem;

namespace {

const char* one_square =
    "# unit square\n"
    "vertices 4\n"
    "0 0\n1 0\n1 1\n0 1\n"
    "elements 1\n"
    "4 0 1 2 3\n"
    "boundary 4\n"
    "0 1 2 3\n";

Mesh parse(const std::string& text) {
  std::istringstream in(text);
  return parse_mesh(in);
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("parse a single square") {
  const Mesh m = parse(one_square);
  CHECK(m.n_vertices() == 4);
  CHECK(m.n_elements() == 1);
  CHECK(m.elements[0].vertex_ids == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(m.interior().empty());
  CHECK(m.vertices[2].x == 1.0);
  CHECK(m.vertices[2].y == 1.0);
}

TEST_CASE("parse errors carry context") {
  SUBCASE("vertex index out of range names the element") {
    std::string text = one_square;
    text.replace(text.find("4 0 1 2 3"), 9, "4 0 1 2 7");
    try {
      parse(text);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("element 0") != std::string::npos);
      CHECK(e.line() == 8);
    }
  }
  SUBCASE("malformed number reports its line") {
    std::string text = one_square;
    text.replace(text.find("1 1"), 3, "1 x");
    try {
      parse(text);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 5);
    }
  }
  SUBCASE("other malformed inputs") {
    CHECK_THROWS_AS(parse("vertices 2\n0 0\n1 0\n"), ParseError);
    CHECK_THROWS_AS(parse(std::string(one_square) + "extra\n"), ParseError);
    std::string two_gon = one_square;
    two_gon.replace(two_gon.find("4 0 1 2 3"), 9, "2 0 1");
    CHECK_THROWS_AS(parse(two_gon), ParseError);
    CHECK_THROWS_AS(parse("points 4\n"), ParseError);
  }
}

TEST_CASE("write then read round-trips exactly") {
  std::mt19937_64 rng(23);
  for (MeshKind kind : {MeshKind::squares, MeshKind::triangles, MeshKind::nonconvex, MeshKind::l_shaped}) {
    Mesh m = generate_structured(kind, 3);
    std::normal_distribution<double> jitter(0.0, 1e-3);
    for (auto& v : m.vertices) v = {v.x + jitter(rng), v.y + jitter(rng)};
    std::ostringstream out;
    write_mesh(out, m);
    const Mesh back = parse(out.str());
    REQUIRE(back.n_vertices() == m.n_vertices());
    for (std::size_t i = 0; i < m.n_vertices(); ++i) {
      CHECK(back.vertices[i].x == m.vertices[i].x);
      CHECK(back.vertices[i].y == m.vertices[i].y);
    }
    REQUIRE(back.n_elements() == m.n_elements());
    for (std::size_t e = 0; e < m.n_elements(); ++e) {
      CHECK(back.elements[e].vertex_ids == m.elements[e].vertex_ids);
    }
    CHECK(back.boundary == m.boundary);
  }
}

TEST_CASE("structured generators") {
  const Mesh sq = generate_structured(MeshKind::squares, 2);
  CHECK(sq.n_elements() == 4);
  CHECK(sq.n_vertices() == 9);
  CHECK(sq.boundary.size() == 8);
  CHECK(sq.interior() == std::vector<std::size_t>{4});

  const Mesh tri = generate_structured(MeshKind::triangles, 1);
  CHECK(tri.n_elements() == 2);
  CHECK(tri.n_vertices() == 4);
  for (std::size_t e = 0; e < 2; ++e) CHECK(signed_area(tri, e) == doctest::Approx(0.5));

  const Mesh l = generate_structured(MeshKind::l_shaped, 2);
  CHECK(l.n_elements() == 12);
  double area = 0.0;
  for (std::size_t e = 0; e < l.n_elements(); ++e) area += signed_area(l, e);
  CHECK(area == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(l.interior().size() == 5);  // 21 vertices, 16 on the boundary

  const Mesh nc = generate_structured(MeshKind::nonconvex, 4);
  CHECK(nc.n_elements() == 16);
  area = 0.0;
  for (std::size_t e = 0; e < nc.n_elements(); ++e) {
    CHECK(nc.elements[e].size() == 8);
    const auto poly = nc.element_vertices(e);
    const ElementGeometry g = compute_geometry(poly);
    area += g.area;
    CHECK(test::winding_number(poly, g.centroid) != 0);
    // Non-convex: some vertex turns clockwise.
    bool reflex = false;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Vertex& a = poly[(i + poly.size() - 1) % poly.size()];
      const Vertex& b = poly[i];
      const Vertex& c = poly[(i + 1) % poly.size()];
      reflex |= (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x) < -1e-14;
    }
    const bool touches_boundary = std::any_of(nc.elements[e].vertex_ids.begin(),
                                              nc.elements[e].vertex_ids.end(),
                                              [&](std::size_t v) {
                                                const Vertex& p = nc.vertices[v];
                                                return p.x == 0.0 || p.y == 0.0 || p.x == 1.0 ||
                                                       p.y == 1.0;
                                              });
    if (!touches_boundary) CHECK(reflex);
  }
  CHECK(area == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(validate_and_orient(nc, {.strict_centroid = true}).warnings.empty());

  CHECK_THROWS_AS(generate_structured(MeshKind::squares, 0), std::invalid_argument);
  CHECK(parse_mesh_kind("l-shaped") == MeshKind::l_shaped);
  CHECK(to_string(MeshKind::nonconvex) == "nonconvex");
  CHECK_THROWS(parse_mesh_kind("hexagons"));
}

TEST_CASE("sample meshes load and validate") {
  for (const char* name : {"voronoi.mesh", "smoothed_voronoi.mesh", "l_domain.mesh"}) {
    CAPTURE(name);
    const ValidatedMesh vm = read_mesh(std::filesystem::path(VEM_DATA_DIR) / name);
    CHECK(vm.mesh.n_elements() > 100);
    CHECK_FALSE(vm.mesh.interior().empty());
    for (std::size_t e = 0; e < vm.mesh.n_elements(); ++e) CHECK(signed_area(vm.mesh, e) > 0.0);
  }
  CHECK_THROWS_AS(read_mesh("/nonexistent/file.mesh"), Error);
}

TEST_CASE("VTK export") {
  const Mesh m = parse(one_square);
  std::ostringstream out;
  write_vtk(out, m, std::vector<double>{0.0, 0.1, 1.0 / 3.0, 2.0});
  const std::string s = out.str();
  CHECK(s.rfind("# vtk DataFile Version 3.0\n", 0) == 0);
  CHECK(s.find("POINTS 4 double\n") != std::string::npos);
  CHECK(s.find("CELLS 1 5\n4 0 1 2 3\n") != std::string::npos);
  CHECK(s.find("CELL_TYPES 1\n7\n") != std::string::npos);
  CHECK(s.find("SCALARS u double 1\nLOOKUP_TABLE default\n") != std::string::npos);
  CHECK(s.find("0.33333333333333331\n") != std::string::npos);
}

TEST_CASE("SVG export") {
  const Mesh m = generate_structured(MeshKind::squares, 2);
  std::ostringstream constant;
  write_svg(constant, m, std::vector<double>(9, 3.0));
  const Rgb mid = colormap()[128];
  const std::string mid_fill = "fill=\"rgb(" + std::to_string(mid.r) + ',' + std::to_string(mid.g) +
                               ',' + std::to_string(mid.b) + ")\"";
  CHECK(count(constant.str(), "<polygon") == 4);
  CHECK(count(constant.str(), mid_fill) == 4);

  const auto& map = colormap();
  CHECK(map.front().r == 68);
  CHECK(map.front().b == 84);
  CHECK(map.back().r == 253);
  CHECK(map.back().g == 231);
  CHECK(colormap_index(0.0, 0.0, 1.0) == 0);
  CHECK(colormap_index(1.0, 0.0, 1.0) == 255);
  CHECK(colormap_index(5.0, 5.0, 5.0) == 128);

  std::ostringstream ramp;
  std::vector<double> u(9);
  for (std::size_t i = 0; i < 9; ++i) u[i] = m.vertices[i].x;
  write_svg(ramp, m, u);
  CHECK(ramp.str().find("viewBox=\"") != std::string::npos);
  CHECK(count(ramp.str(), mid_fill) == 0);
}

TEST_CASE("solution CSV") {
  const Mesh m = parse(one_square);
  std::ostringstream out;
  write_solution_csv(out, m, std::vector<double>{0.0, 0.5, 0.1, -2.0});
  CHECK(out.str() ==
        "vertex_id,x,y,u\n0,0,0,0\n1,1,0,0.5\n2,1,1,0.10000000000000001\n3,0,1,-2\n");
}
