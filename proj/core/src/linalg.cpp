#include "tvlab/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "tvlab/errors.hpp"

namespace tvlab {

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& a) {
    if (a.rows() == 0 || a.cols() == 0) return Eigen::VectorXd(0);
    // Hermitian matrices (the i=j self-commutators) take the eigenvalue route,
    // and large general matrices go through the Gram matrix; JacobiSVD
    // otherwise. Tiny singular values from the Gram route carry absolute error
    // ~sqrt(eps)*sigma_max, fine for norms and Schatten sums.
    if (a.rows() == a.cols()) {
        const double scale = a.cwiseAbs().maxCoeff();
        if (scale == 0.0) return Eigen::VectorXd::Zero(a.rows());
        if ((a - a.adjoint()).cwiseAbs().maxCoeff() <= 1e-13 * scale) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(a);
            Eigen::VectorXd sv = eig.eigenvalues().cwiseAbs();
            std::sort(sv.data(), sv.data() + sv.size(), std::greater<double>());
            return sv;
        }
    }
    if (std::min(a.rows(), a.cols()) > 256) {
        const bool tall = a.rows() >= a.cols();
        const Eigen::MatrixXcd gram = tall ? (a.adjoint() * a).eval() : (a * a.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
        Eigen::VectorXd sv = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        std::sort(sv.data(), sv.data() + sv.size(), std::greater<double>());
        return sv;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    return svd.singularValues();
}

double operator_norm(const Eigen::MatrixXcd& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    auto sv = singular_values(a);
    return sv.size() > 0 ? sv(0) : 0.0;
}

Eigen::MatrixXcd orthonormal_column_span(const Eigen::MatrixXcd& a, double rel_tol,
                                         bool* ambiguous) {
    if (ambiguous) *ambiguous = false;
    if (a.cols() == 0 || a.rows() == 0) return Eigen::MatrixXcd(a.rows(), 0);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return Eigen::MatrixXcd(a.rows(), 0);
    const double cut = rel_tol * sv(0);
    int rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) > cut) ++rank;
        if (ambiguous && sv(k) > cut / 10.0 && sv(k) < cut * 10.0) *ambiguous = true;
    }
    return svd.matrixU().leftCols(rank);
}

Eigen::MatrixXcd orthonormal_complement(const Eigen::MatrixXcd& frame, int n) {
    if (frame.cols() == 0) return Eigen::MatrixXcd::Identity(n, n);
    if (frame.rows() != n) throw input_error("frame ambient dimension mismatch");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(frame, Eigen::ComputeFullU);
    return svd.matrixU().rightCols(n - frame.cols());
}

std::vector<double> principal_angles(const Eigen::MatrixXcd& f1, const Eigen::MatrixXcd& f2) {
    if (f1.cols() == 0 || f2.cols() == 0) return {};
    if (f1.rows() != f2.rows()) throw input_error("subspaces live in different ambient spaces");
    const Eigen::MatrixXcd overlap = f1.adjoint() * f2;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(overlap);
    const auto& sv = svd.singularValues();
    std::vector<double> angles;
    angles.reserve(static_cast<std::size_t>(sv.size()));
    for (Eigen::Index k = sv.size() - 1; k >= 0; --k)
        angles.push_back(std::acos(std::clamp(sv(k), 0.0, 1.0)));
    std::sort(angles.begin(), angles.end());
    return angles;
}

double max_principal_angle(const Eigen::MatrixXcd& f1, const Eigen::MatrixXcd& f2) {
    auto angles = principal_angles(f1, f2);
    return angles.empty() ? 0.0 : angles.back();
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw input_error("slope fit needs >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sx += x[k];
        sy += y[k];
        sxx += x[k] * x[k];
        sxy += x[k] * y[k];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw input_error("slope fit is degenerate");
    return (n * sxy - sx * sy) / denom;
}

} // namespace tvlab
