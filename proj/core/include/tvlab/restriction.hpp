#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tvlab/ball_space.hpp"
#include "tvlab/hilbert_module.hpp"
#include "tvlab/variety.hpp"

namespace tvlab {

/// Restriction operator from ambient truncated-space coordinates to an
/// orthonormal coordinate system of the sampled variety space, built by SVD of
/// the weighted evaluation matrix (rank cut 1e-10 relative).
struct RestrictionMatrix {
    Eigen::MatrixXcd R;            // rank x ambient_dim
    Eigen::MatrixXcd sample_frame; // n_samples x rank, orthonormal in weighted values
    Eigen::VectorXd singular_values;
    int rank = 0;
    double weight = 0.0; // s used for the samples (the codimension M)
    int sample_count = 0;

    double norm() const { return singular_values.size() ? singular_values(0) : 0.0; }
    double min_kept_sv() const { return rank > 0 ? singular_values(rank - 1) : 0.0; }
};

/// `weight_s` is metadata only: the measure exponent the samples were drawn
/// with (the codimension M in the restriction setup).
RestrictionMatrix restriction_matrix(const TruncatedSpace& space,
                                     std::span<const SamplePoint> samples,
                                     double rank_tol = 1e-10, double weight_s = 0.0);

/// Numerical kernel {f : ||Rf|| <= tol ||f||} as an orthonormal module frame.
TruncatedModule kernel_of_R(const RestrictionMatrix& rest, const TruncatedSpace& space,
                            double tol = 1e-6);

/// Moore-Penrose right inverse of R (the minimal-norm extension).
struct ExtensionMatrix {
    Eigen::MatrixXcd E; // ambient_dim x rank
    double re_defect = 0.0;
    double norm = 0.0;
};

ExtensionMatrix extension_pinv(const RestrictionMatrix& rest,
                               double condition_limit = 1e12);

/// Compressed multiplication by each coordinate on the orthonormalized sample
/// space; these are the codomain actions for cross-model comparisons.
std::vector<Eigen::MatrixXcd> quadrature_actions(const RestrictionMatrix& rest,
                                                 std::span<const SamplePoint> samples);

/// Coefficient dilation f(z) -> f(rz): c_a -> c_a r^{|a|}. Requires 0 < r < 1.
Eigen::VectorXcd dilation(const TruncatedSpace& space, const Eigen::VectorXcd& coords,
                          double r);

/// Jet of f along one variable: entries (d^j f / dz_var^j)|_{z_var=0} for
/// j = 0..orders-1, as polynomials in the remaining variables.
std::vector<Polynomial> jet_restriction(const Polynomial& f, int var, int orders);

} // namespace tvlab
