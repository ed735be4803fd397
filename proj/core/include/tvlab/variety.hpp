#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tvlab/polynomial.hpp"

namespace tvlab {

/// Geometry configuration for the zero set of an ideal inside the ball of
/// radius `radius` around the origin.
struct VarietyConfig {
    Ideal ideal;
    double radius = 1.0;
    std::uint64_t seed = 0;

    VarietyConfig(Ideal i, double r = 1.0, std::uint64_t s = 0);
};

struct SamplePoint {
    Eigen::VectorXcd z;
    double weight;    // unnormalized quadrature weight
    double residual;  // max_i |p_i(z)|
    bool on_boundary;
};

struct AssumptionReport {
    bool codim_ok = false;           // M <= m-2
    double min_jacobian_sv = 0.0;    // min over boundary samples
    double transversality_margin = 0.0;
    int boundary_points = 0;
    bool empty_link = false;         // solver found no boundary points
    bool pass = false;
    std::vector<std::string> reasons; // populated on failure
};

struct CheckOptions {
    double solve_tol = 1e-10;
    int max_iterations = 50;
    double rank_threshold = 1e-6;          // min Jacobian singular value to pass
    double transversality_fraction = 1e-2; // margin must exceed fraction * radius
};

struct SampleOptions {
    double solve_tol = 1e-10;
    int max_iterations = 50;
    double min_jacobian_sv = 1e-6; // discard samples this close to the singular set
    int knn = 8;
    double max_divergence_rate = 0.5;
};

/// Verifies the standing geometric hypotheses: codimension M <= m-2, maximal
/// Jacobian rank on the boundary link, and transversal intersection with the
/// sphere (margin = |projection of the position vector onto ker J(z)|).
AssumptionReport check_assumption(const VarietyConfig& cfg, int n_boundary_samples,
                                  const CheckOptions& opts = {});

/// Interior quadrature points for the measure (-rho)^s dV on the variety,
/// rho = |z|^2 - radius^2: Gauss-Newton projection of seeded ball points, with
/// inverse k-NN density weights estimated in tangent coordinates against the
/// normal-fiber profile of the projection pushforward. Throws sampling_error
/// when projection diverges too often.
std::vector<SamplePoint> sample_variety(const VarietyConfig& cfg, int n, double s_weight,
                                        const SampleOptions& opts = {});

/// Quadrature Gram matrix G_ab = sum_j w_j f_a(z_j) conj(f_b(z_j)), normalized
/// so that the Gram of the constant 1 equals 1.
Eigen::MatrixXcd gram_on_variety(std::span<const SamplePoint> samples,
                                 std::span<const Polynomial> functions);

/// Gauss-Newton projection of `start` onto the zero set (optionally constrained
/// to the sphere |z| = radius). Returns the point on success.
std::optional<Eigen::VectorXcd> project_to_variety(const Ideal& ideal, Eigen::VectorXcd start,
                                                   double solve_tol, int max_iterations,
                                                   std::optional<double> sphere_radius = {});

} // namespace tvlab
