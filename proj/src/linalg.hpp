#pragma once

// Small dense helpers over coefficient vectors (internal).

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

#include "hclab/space.hpp"

namespace hclab::detail {

inline std::size_t max_size(const std::vector<Vector>& vs) {
  std::size_t rows = 0;
  for (const auto& v : vs) rows = std::max(rows, v.size());
  return rows;
}

/// Columns are coefficient lists, zero-padded to `rows`.
inline Eigen::MatrixXcd coefficient_matrix(const std::vector<Vector>& vs, std::size_t rows) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (std::size_t i = 0; i < vs[j].size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = vs[j].coeffs()[i];
  return m;
}

inline Eigen::VectorXcd coefficient_column(const Vector& v, std::size_t rows) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rows));
  for (std::size_t i = 0; i < v.size(); ++i) c(static_cast<Eigen::Index>(i)) = v.coeffs()[i];
  return c;
}

inline Vector from_column(const SpaceTag& space, const Eigen::VectorXcd& c) {
  return Vector(space, std::vector<Scalar>(c.data(), c.data() + c.size()));
}

/// Orthonormal basis (columns) of the column span of m, dropping directions
/// with singular value below rel_tol * sigma_max.
inline Eigen::MatrixXcd orthonormal_span(const Eigen::MatrixXcd& m, double rel_tol = 1e-12) {
  if (m.cols() == 0 || m.rows() == 0) return Eigen::MatrixXcd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  const double cut = rel_tol * (s.size() > 0 ? s(0) : 0.0);
  while (rank < s.size() && s(rank) > cut) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace hclab::detail
