#include "vem/local_vem.hpp"

#include <cmath>
#include <utility>

#include "vem/error.hpp"

namespace vem {

MatrixN3 build_D(const ElementGeometry& geometry, std::span<const Vertex> polygon) {
  const ScaledMonomialBasis basis(geometry);
  MatrixN3 D(polygon.size(), 3);
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    for (std::size_t alpha = 0; alpha < 3; ++alpha) {
      D(i, alpha) = basis.value(alpha, polygon[i].x, polygon[i].y);
    }
  }
  return D;
}

Matrix3N build_Btilde(const ElementGeometry& geometry, std::span<const Vertex> polygon) {
  const std::size_t n = polygon.size();
  const ScaledMonomialBasis basis(geometry);
  Matrix3N B(3, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 normal = vertex_normal(polygon, i);
    B(0, i) = 1.0 / static_cast<double>(n);
    for (std::size_t beta = 1; beta < 3; ++beta) {
      const Vec2 grad = basis.gradient(beta);
      B(beta, i) = 0.5 * (normal.x * grad.x + normal.y * grad.y);
    }
  }
  return B;
}

Eigen::Matrix3d build_G(const ElementGeometry& geometry) {
  const double diag = geometry.area / (geometry.diameter * geometry.diameter);
  Eigen::Matrix3d G = Eigen::Matrix3d::Zero();
  G(1, 1) = diag;
  G(2, 2) = diag;
  return G;
}

bool solve3(const Eigen::Matrix3d& A, const Matrix3N& rhs, Matrix3N& x) {
  Eigen::Matrix3d a = A;
  Matrix3N b = rhs;
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (a(pivot, col) == 0.0) return false;
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      b.row(pivot).swap(b.row(col));
    }
    for (int r = col + 1; r < 3; ++r) {
      const double factor = a(r, col) / a(col, col);
      a.row(r) -= factor * a.row(col);
      b.row(r) -= factor * b.row(col);
    }
  }
  x.resize(3, rhs.cols());
  for (int r = 2; r >= 0; --r) {
    x.row(r) = b.row(r);
    for (int c = r + 1; c < 3; ++c) x.row(r) -= a(r, c) * x.row(c);
    x.row(r) /= a(r, r);
  }
  return true;
}

Projector build_projector(const MatrixN3& D, const Matrix3N& Btilde, std::size_t element,
                          double max_condition) {
  Projector p;
  p.Gtilde = Btilde * D;

  Matrix3N inverse;
  if (!solve3(p.Gtilde, Matrix3N(Eigen::Matrix3d::Identity()), inverse)) {
    throw AssemblyError("projection matrix is singular", element);
  }
  const double norm = p.Gtilde.cwiseAbs().colwise().sum().maxCoeff();
  const double inv_norm = inverse.cwiseAbs().colwise().sum().maxCoeff();
  const double condition = norm * inv_norm;
  if (!std::isfinite(condition) || condition > max_condition) {
    throw AssemblyError("projection matrix is ill-conditioned (cond_1 = " +
                            std::to_string(condition) + ")",
                        element);
  }
  if (!solve3(p.Gtilde, Btilde, p.Pi)) {
    throw AssemblyError("projection matrix is singular", element);
  }
  return p;
}

Matrix build_local_stiffness(const MatrixN3& D, const Eigen::Matrix3d& G, const Matrix3N& Pi) {
  const Eigen::Index n = D.rows();
  const Matrix stab = Matrix::Identity(n, n) - D * Pi;
  Matrix K = Pi.transpose() * G * Pi + stab.transpose() * stab;
  // Mirror so that K(i, j) and K(j, i) are the same double.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double s = 0.5 * (K(i, j) + K(j, i));
      K(i, j) = s;
      K(j, i) = s;
    }
  }
  return K;
}

Vector build_local_forcing(const ElementGeometry& geometry, const ScalarField& f,
                           std::size_t element) {
  const double value = f(geometry.centroid.x, geometry.centroid.y);
  if (!std::isfinite(value)) {
    throw AssemblyError("forcing is not finite at the centroid", element);
  }
  const auto n = static_cast<Eigen::Index>(geometry.n_vertices);
  return Vector::Constant(n, geometry.area / static_cast<double>(n) * value);
}

LocalMatrices build_local_matrices(std::span<const Vertex> polygon, const ScalarField& f,
                                   std::size_t element) {
  LocalMatrices m;
  try {
    m.geometry = compute_geometry(polygon);
  } catch (const GeometryError& e) {
    throw AssemblyError(e.what(), element);
  }
  m.D = build_D(m.geometry, polygon);
  m.Btilde = build_Btilde(m.geometry, polygon);
  m.G = build_G(m.geometry);
  auto projector = build_projector(m.D, m.Btilde, element);
  m.Gtilde = projector.Gtilde;
  m.Pi = std::move(projector.Pi);
  m.K = build_local_stiffness(m.D, m.G, m.Pi);
  if (f) m.f = build_local_forcing(m.geometry, f, element);
  return m;
}

}  // namespace vem
