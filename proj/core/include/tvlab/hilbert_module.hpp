#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tvlab/ball_space.hpp"
#include "tvlab/polynomial.hpp"

namespace tvlab {

enum class ModuleKind { full, ideal, quotient, kernel };

/// Degree-truncated submodule of the weighted ball space, described by an
/// orthonormal frame in ambient coordinates. Columns carry the degree (for
/// homogeneous ideals) or the filtration level (otherwise) at which they enter.
struct TruncatedModule {
    TruncatedSpace ambient;
    Eigen::MatrixXcd frame;         // ambient.dim() x rank, orthonormal columns
    std::vector<int> column_degree; // -1 when no grading is available
    ModuleKind kind = ModuleKind::full;
    bool filtered = false;     // graded bookkeeping replaced by filtration degree
    bool rank_warning = false; // singular values within 10x of the rank cut

    int rank() const { return static_cast<int>(frame.cols()); }
    /// Column indices with degree label in [lo, hi]. Throws when unlabeled.
    std::vector<int> band_indices(int lo, int hi) const;
    /// Number of columns labeled exactly n.
    int graded_dim(int n) const;
};

TruncatedModule full_module(const TruncatedSpace& space);

/// Degree-<=d slice of the ideal: span{g*q : g generator, deg(g q) <= d},
/// orthonormalized by SVD with relative rank tolerance `rank_tol`.
TruncatedModule ideal_truncation(const Ideal& ideal, const TruncatedSpace& space,
                                 double rank_tol = 1e-10);

/// Orthogonal complement of the ideal truncation inside the ambient truncation.
TruncatedModule quotient_module(const Ideal& ideal, const TruncatedSpace& space,
                                double rank_tol = 1e-10);

/// Compressed module action S_i = F* T_i F.
OperatorMatrix toeplitz_on(const TruncatedModule& module, int var);

/// All coordinate actions S_1..S_m.
std::vector<Eigen::MatrixXcd> module_actions(const TruncatedModule& module);

struct SpectrumReport {
    int var_i = 0;
    int var_j = 0;
    int band_lo = 0;
    int band_hi = 0;
    int truncation_degree = 0;
    ModuleKind kind = ModuleKind::full;
    bool filtered = false;
    Eigen::VectorXd singular_values;     // descending
    std::map<double, double> schatten_sums; // p -> sum sigma_k^p
};

/// Singular values of P_band [S_i, S_j*] P_band. Band degrees must satisfy
/// band_hi <= d-2 (the top two degrees carry compression artifacts).
SpectrumReport commutator_spectrum(const TruncatedModule& module,
                                   const std::vector<Eigen::MatrixXcd>& actions, int var_i,
                                   int var_j, std::pair<int, int> band,
                                   std::span<const double> schatten_ps = {});
SpectrumReport commutator_spectrum(const TruncatedModule& module, int var_i, int var_j,
                                   std::pair<int, int> band,
                                   std::span<const double> schatten_ps = {});

struct TailTrend {
    double p = 0.0;
    std::vector<int> degrees;
    std::vector<double> partial_sums;
    double growth_exponent = 0.0; // log-log slope of partial sums vs degree
};

/// Schatten-p partial sums across truncation levels (>= 3 required).
TailTrend schatten_tail(std::span<const SpectrumReport> reports, double p);

struct TwoOfThreeReport {
    double intertwiner_defect = 0.0;
    double defect_dom = 0.0;  // max commutator norm on the domain band
    double defect_cod = 0.0;  // same on the codomain band
    double defect_gram = 0.0; // max_i ||[X*X, S^dom_i]|| on the domain band
    double tol = 0.0;
    double factor = 0.0;
    bool consistent = false; // two small defects force the third under factor*tol
};

/// Checks the two-of-three law for an intertwiner X between two module actions.
/// Throws input_error when X fails to intertwine the actions on the bands.
TwoOfThreeReport equivalence_check(const Eigen::MatrixXcd& intertwiner,
                                   const std::vector<Eigen::MatrixXcd>& dom_actions,
                                   const std::vector<Eigen::MatrixXcd>& cod_actions,
                                   const std::vector<int>& dom_band,
                                   const std::vector<int>& cod_band, double tol,
                                   double factor = 10.0);

} // namespace tvlab
