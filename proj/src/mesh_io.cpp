#include "vem/mesh_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "vem/error.hpp"

namespace vem {

namespace {

struct Token {
  std::string text;
  std::size_t line = 0;
};

class Tokenizer {
public:
  explicit Tokenizer(std::istream& in) {
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream words(line);
      std::string w;
      while (words >> w) tokens_.push_back({w, number});
    }
    last_line_ = number;
  }

  bool done() const { return pos_ == tokens_.size(); }

  const Token& next(const char* expected) {
    if (done()) throw ParseError(std::string("unexpected end of file, expected ") + expected, last_line_);
    return tokens_[pos_++];
  }

  void keyword(const std::string& word) {
    const Token& t = next(word.c_str());
    if (t.text != word) throw ParseError("expected '" + word + "', found '" + t.text + "'", t.line);
  }

  std::size_t index(const char* what, std::size_t* line = nullptr) {
    const Token& t = next(what);
    std::size_t value = 0;
    const char* end = t.text.data() + t.text.size();
    auto [ptr, ec] = std::from_chars(t.text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
      throw ParseError(std::string("expected ") + what + ", found '" + t.text + "'", t.line);
    }
    if (line) *line = t.line;
    return value;
  }

  double real(const char* what) {
    const Token& t = next(what);
    double value = 0.0;
    const char* end = t.text.data() + t.text.size();
    auto [ptr, ec] = std::from_chars(t.text.data(), end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
      throw ParseError(std::string("expected ") + what + ", found '" + t.text + "'", t.line);
    }
    return value;
  }

  std::size_t line() const { return done() ? last_line_ : tokens_[pos_].line; }

private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t last_line_ = 0;
};

}  // namespace

Mesh parse_mesh(std::istream& in) {
  Tokenizer tok(in);
  Mesh mesh;

  tok.keyword("vertices");
  const std::size_t nv = tok.index("vertex count");
  mesh.vertices.resize(nv);
  for (auto& v : mesh.vertices) {
    v.x = tok.real("x coordinate");
    v.y = tok.real("y coordinate");
  }

  tok.keyword("elements");
  const std::size_t ne = tok.index("element count");
  mesh.elements.resize(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    std::size_t line = 0;
    const std::size_t k = tok.index("element vertex count", &line);
    if (k < 3) {
      throw ParseError("element " + std::to_string(e) + " has " + std::to_string(k) +
                           " vertices, need at least 3",
                       line);
    }
    auto& ids = mesh.elements[e].vertex_ids;
    ids.resize(k);
    for (auto& id : ids) {
      id = tok.index("vertex index", &line);
      if (id >= nv) {
        throw ParseError("element " + std::to_string(e) + ": vertex index " + std::to_string(id) +
                             " out of range (" + std::to_string(nv) + " vertices)",
                         line);
      }
    }
  }

  tok.keyword("boundary");
  const std::size_t nb = tok.index("boundary count");
  mesh.boundary.resize(nb);
  for (auto& id : mesh.boundary) {
    std::size_t line = 0;
    id = tok.index("boundary vertex index", &line);
    if (id >= nv) {
      throw ParseError("boundary vertex index " + std::to_string(id) + " out of range (" +
                           std::to_string(nv) + " vertices)",
                       line);
    }
  }

  if (!tok.done()) throw ParseError("trailing content after boundary section", tok.line());
  return mesh;
}

ValidatedMesh read_mesh(const std::filesystem::path& path, const ValidationOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open mesh file '" + path.string() + "'", 0);
  Mesh mesh;
  try {
    mesh = parse_mesh(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
  return validate_and_orient(std::move(mesh), options);
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
  const auto old_precision = out.precision();
  out << std::setprecision(17);
  out << "vertices " << mesh.vertices.size() << '\n';
  for (const Vertex& v : mesh.vertices) out << v.x << ' ' << v.y << '\n';
  out << "elements " << mesh.elements.size() << '\n';
  for (const Element& e : mesh.elements) {
    out << e.size();
    for (std::size_t id : e.vertex_ids) out << ' ' << id;
    out << '\n';
  }
  out << "boundary " << mesh.boundary.size() << '\n';
  for (std::size_t k = 0; k < mesh.boundary.size(); ++k) {
    out << mesh.boundary[k] << ((k + 1) % 16 == 0 || k + 1 == mesh.boundary.size() ? '\n' : ' ');
  }
  out.precision(old_precision);
}

void write_mesh(const std::filesystem::path& path, const Mesh& mesh) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write mesh file '" + path.string() + "'");
  write_mesh(out, mesh);
  if (!out) throw Error("failed writing mesh file '" + path.string() + "'");
}

MeshKind parse_mesh_kind(const std::string& name) {
  if (name == "squares") return MeshKind::squares;
  if (name == "triangles") return MeshKind::triangles;
  if (name == "nonconvex") return MeshKind::nonconvex;
  if (name == "l-shaped") return MeshKind::l_shaped;
  throw std::invalid_argument("unknown mesh kind '" + name +
                              "' (expected squares, triangles, nonconvex or l-shaped)");
}

std::string to_string(MeshKind kind) {
  switch (kind) {
    case MeshKind::squares: return "squares";
    case MeshKind::triangles: return "triangles";
    case MeshKind::nonconvex: return "nonconvex";
    case MeshKind::l_shaped: return "l-shaped";
  }
  return "unknown";
}

namespace {

Mesh square_grid(std::size_t n, bool triangles) {
  Mesh mesh;
  const double h = 1.0 / static_cast<double>(n);
  auto id = [n](std::size_t i, std::size_t j) { return j * (n + 1) + i; };
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t i = 0; i <= n; ++i) {
      mesh.vertices.push_back({static_cast<double>(i) * h, static_cast<double>(j) * h});
      if (i == 0 || j == 0 || i == n || j == n) mesh.boundary.push_back(id(i, j));
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      if (triangles) {
        mesh.elements.push_back({{a, b, c}});
        mesh.elements.push_back({{a, c, d}});
      } else {
        mesh.elements.push_back({{a, b, c, d}});
      }
    }
  }
  return mesh;
}

Mesh nonconvex_grid(std::size_t n) {
  Mesh mesh;
  const double h = 1.0 / static_cast<double>(n);
  const double shift = 0.2 * h;
  auto coord = [h](std::size_t i) { return static_cast<double>(i) * h; };
  auto add = [&mesh](double x, double y, bool on_boundary) {
    if (on_boundary) mesh.boundary.push_back(mesh.vertices.size());
    mesh.vertices.push_back({x, y});
    return mesh.vertices.size() - 1;
  };

  std::vector<std::size_t> corner((n + 1) * (n + 1));
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t i = 0; i <= n; ++i) {
      corner[j * (n + 1) + i] = add(coord(i), coord(j), i == 0 || j == 0 || i == n || j == n);
    }
  }
  // Midpoint of the vertical edge x = i h, y in [j h, (j+1) h].
  std::vector<std::size_t> vmid((n + 1) * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= n; ++i) {
      const bool edge = i == 0 || i == n;
      vmid[j * (n + 1) + i] = add(coord(i) + (edge ? 0.0 : shift), coord(j) + 0.5 * h, edge);
    }
  }
  // Midpoint of the horizontal edge y = j h, x in [i h, (i+1) h].
  std::vector<std::size_t> hmid(n * (n + 1));
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const bool edge = j == 0 || j == n;
      hmid[j * n + i] = add(coord(i) + 0.5 * h, coord(j) + (edge ? 0.0 : shift), edge);
    }
  }
  std::sort(mesh.boundary.begin(), mesh.boundary.end());

  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      mesh.elements.push_back({{
          corner[j * (n + 1) + i],
          hmid[j * n + i],
          corner[j * (n + 1) + i + 1],
          vmid[j * (n + 1) + i + 1],
          corner[(j + 1) * (n + 1) + i + 1],
          hmid[(j + 1) * n + i],
          corner[(j + 1) * (n + 1) + i],
          vmid[j * (n + 1) + i],
      }});
    }
  }
  return mesh;
}

Mesh l_shaped_grid(std::size_t n) {
  // 2n x 2n grid on [-1,1]^2 with the cells in the first quadrant removed.
  Mesh mesh;
  const std::size_t m = 2 * n;
  const double h = 1.0 / static_cast<double>(n);
  constexpr auto absent = static_cast<std::size_t>(-1);
  auto inside_cell = [n](std::size_t i, std::size_t j) { return !(i >= n && j >= n); };
  std::vector<std::size_t> id((m + 1) * (m + 1), absent);
  for (std::size_t j = 0; j <= m; ++j) {
    for (std::size_t i = 0; i <= m; ++i) {
      if (i > n && j > n) continue;
      id[j * (m + 1) + i] = mesh.vertices.size();
      const bool outer = i == 0 || j == 0 || i == m || j == m;
      const bool notch = (i == n && j >= n) || (j == n && i >= n);
      if (outer || notch) mesh.boundary.push_back(mesh.vertices.size());
      mesh.vertices.push_back({-1.0 + static_cast<double>(i) * h, -1.0 + static_cast<double>(j) * h});
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      if (!inside_cell(i, j)) continue;
      mesh.elements.push_back({{id[j * (m + 1) + i], id[j * (m + 1) + i + 1],
                                id[(j + 1) * (m + 1) + i + 1], id[(j + 1) * (m + 1) + i]}});
    }
  }
  return mesh;
}

}  // namespace

Mesh generate_structured(MeshKind kind, std::size_t n) {
  if (n == 0) throw std::invalid_argument("generate_structured: n must be at least 1");
  switch (kind) {
    case MeshKind::squares: return square_grid(n, false);
    case MeshKind::triangles: return square_grid(n, true);
    case MeshKind::nonconvex: return nonconvex_grid(n);
    case MeshKind::l_shaped: return l_shaped_grid(n);
  }
  throw std::invalid_argument("generate_structured: unknown kind");
}

}  // namespace vem
