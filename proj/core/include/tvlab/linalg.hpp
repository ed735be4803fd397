#pragma once

#include <vector>

#include <Eigen/Dense>

namespace tvlab {

/// Singular values of a general complex matrix, descending.
Eigen::VectorXd singular_values(const Eigen::MatrixXcd& a);

/// Operator (spectral) norm; 0 for empty matrices.
double operator_norm(const Eigen::MatrixXcd& a);

/// Orthonormal basis of the column span, rank decided at rel_tol * sigma_max.
/// `ambiguous` (optional) is set when singular values fall within a factor of
/// 10 of the cut on either side.
Eigen::MatrixXcd orthonormal_column_span(const Eigen::MatrixXcd& a, double rel_tol,
                                         bool* ambiguous = nullptr);

/// Orthonormal basis of the orthogonal complement of the (orthonormal) frame
/// inside C^n; frame may have zero columns.
Eigen::MatrixXcd orthonormal_complement(const Eigen::MatrixXcd& frame, int n);

/// Principal angles (radians, ascending) between equal-ambient subspaces given
/// by orthonormal frames. Empty if either frame has no columns.
std::vector<double> principal_angles(const Eigen::MatrixXcd& f1, const Eigen::MatrixXcd& f2);

/// Largest principal angle; 0 when either subspace is trivial.
double max_principal_angle(const Eigen::MatrixXcd& f1, const Eigen::MatrixXcd& f2);

/// Ordinary least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace tvlab
