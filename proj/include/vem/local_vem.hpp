#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include <Eigen/Dense>

#include "vem/mesh.hpp"

namespace vem {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using MatrixN3 = Eigen::Matrix<double, Eigen::Dynamic, 3>;
using Matrix3N = Eigen::Matrix<double, 3, Eigen::Dynamic>;

using ScalarField = std::function<double(double, double)>;

/// Scaled monomials {1, (x - xE)/hE, (y - yE)/hE} on one element.
struct ScaledMonomialBasis {
  Vec2 centroid;
  double diameter = 1.0;

  static constexpr std::size_t size = 3;

  explicit ScaledMonomialBasis(const ElementGeometry& g) : centroid(g.centroid), diameter(g.diameter) {}

  double value(std::size_t alpha, double x, double y) const {
    switch (alpha) {
      case 0: return 1.0;
      case 1: return (x - centroid.x) / diameter;
      default: return (y - centroid.y) / diameter;
    }
  }

  Vec2 gradient(std::size_t alpha) const {
    switch (alpha) {
      case 0: return {0.0, 0.0};
      case 1: return {1.0 / diameter, 0.0};
      default: return {0.0, 1.0 / diameter};
    }
  }
};

/// Everything computed on one element. Monomial index alpha runs over
/// rows of Btilde/Pi and columns of D; vertex index i over the others.
struct LocalMatrices {
  ElementGeometry geometry;
  MatrixN3 D;
  Matrix3N Btilde;
  Eigen::Matrix3d G;
  Eigen::Matrix3d Gtilde;
  Matrix3N Pi;
  Matrix K;
  Vector f;
};

/// D(i, alpha) = m_alpha evaluated at vertex i.
MatrixN3 build_D(const ElementGeometry& geometry, std::span<const Vertex> polygon);

/// First row 1/N; rows 2-3 hold half the weighted vertex normal dotted with
/// the monomial gradients.
Matrix3N build_Btilde(const ElementGeometry& geometry, std::span<const Vertex> polygon);

/// Consistency matrix of the gradients: diag(0, |E|/h^2, |E|/h^2).
Eigen::Matrix3d build_G(const ElementGeometry& geometry);

struct Projector {
  Eigen::Matrix3d Gtilde;
  Matrix3N Pi;
};

/// Solves (Btilde D) Pi = Btilde. Throws AssemblyError(element) when
/// Btilde D is singular or its 1-norm condition number exceeds max_condition.
Projector build_projector(const MatrixN3& D, const Matrix3N& Btilde, std::size_t element = 0,
                          double max_condition = 1e12);

/// Pi^T G Pi + (I - D Pi)^T (I - D Pi), symmetrised exactly.
Matrix build_local_stiffness(const MatrixN3& D, const Eigen::Matrix3d& G, const Matrix3N& Pi);

/// Every entry equals |E| / N times f at the centroid.
Vector build_local_forcing(const ElementGeometry& geometry, const ScalarField& f,
                           std::size_t element = 0);

/// Full pipeline for one polygon. A null forcing skips f (left empty).
LocalMatrices build_local_matrices(std::span<const Vertex> polygon, const ScalarField& f,
                                   std::size_t element = 0);

/// 3x3 solve with partial pivoting; exposed for testing. Returns false when
/// a pivot is exactly zero.
bool solve3(const Eigen::Matrix3d& A, const Matrix3N& rhs, Matrix3N& x);

}  // namespace vem
