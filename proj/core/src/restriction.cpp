#include "tvlab/restriction.hpp"

#include <cmath>

#include "tvlab/errors.hpp"

namespace tvlab {

RestrictionMatrix restriction_matrix(const TruncatedSpace& space,
                                     std::span<const SamplePoint> samples,
                                     double rank_tol, double weight_s) {
    if (samples.empty()) throw sampling_error("restriction requires variety samples");
    const int n = static_cast<int>(samples.size());
    const int dim = space.dim();

    double total = 0.0;
    for (const auto& sp : samples) total += sp.weight;

    // weighted evaluation matrix: row j = sqrt(w_j) * (e_a(z_j))_a
    Eigen::MatrixXcd b(n, dim);
    for (int j = 0; j < n; ++j) {
        const auto& sp = samples[static_cast<std::size_t>(j)];
        const double sw = std::sqrt(sp.weight / total);
        b.row(j) = sw * space.eval_basis({sp.z.data(), static_cast<std::size_t>(sp.z.size())})
                            .transpose();
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) > rank_tol * sv(0)) ++rank;
    if (rank == n && n < dim)
        throw sampling_error("sample resolution too low: rank is limited by the " +
                             std::to_string(n) + " samples");

    RestrictionMatrix rest;
    rest.singular_values = sv;
    rest.rank = rank;
    rest.weight = weight_s;
    rest.sample_count = n;
    rest.R = svd.singularValues().head(rank).asDiagonal() *
             svd.matrixV().leftCols(rank).adjoint();
    rest.sample_frame = svd.matrixU().leftCols(rank);
    return rest;
}

TruncatedModule kernel_of_R(const RestrictionMatrix& rest, const TruncatedSpace& space,
                            double tol) {
    if (rest.R.cols() != space.dim())
        throw input_error("restriction matrix does not match the space");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(rest.R, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const int dim = space.dim();
    const double top = sv.size() > 0 ? sv(0) : 0.0;

    int keep = 0;
    bool ambiguous = false;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) > tol * top) ++keep;
        if (top > 0.0 && sv(k) > tol * top / 10.0 && sv(k) < tol * top * 10.0)
            ambiguous = true;
    }

    TruncatedModule mod{space, svd.matrixV().rightCols(dim - keep),
                        std::vector<int>(static_cast<std::size_t>(dim - keep), -1),
                        ModuleKind::kernel, false, ambiguous};
    return mod;
}

ExtensionMatrix extension_pinv(const RestrictionMatrix& rest, double condition_limit) {
    if (rest.rank == 0) throw input_error("restriction has empty range");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(rest.R,
                                           Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smin = sv(rest.rank - 1);
    if (sv(0) / smin > condition_limit)
        throw conditioning_error("RR* condition number " + format_double(sv(0) / smin) +
                                 " exceeds " + format_double(condition_limit));
    ExtensionMatrix ext;
    ext.E = svd.matrixV().leftCols(rest.rank) *
            sv.head(rest.rank).cwiseInverse().asDiagonal() *
            svd.matrixU().leftCols(rest.rank).adjoint();
    ext.re_defect = (rest.R * ext.E -
                     Eigen::MatrixXcd::Identity(rest.rank, rest.rank))
                        .norm();
    ext.norm = 1.0 / smin;
    return ext;
}

std::vector<Eigen::MatrixXcd> quadrature_actions(const RestrictionMatrix& rest,
                                                 std::span<const SamplePoint> samples) {
    if (static_cast<int>(samples.size()) != rest.sample_count)
        throw input_error("sample set does not match the restriction matrix");
    const int m = samples.empty() ? 0 : static_cast<int>(samples[0].z.size());
    std::vector<Eigen::MatrixXcd> actions;
    actions.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        Eigen::VectorXcd values(rest.sample_count);
        for (int j = 0; j < rest.sample_count; ++j)
            values(j) = samples[static_cast<std::size_t>(j)].z(i);
        actions.push_back(rest.sample_frame.adjoint() * values.asDiagonal() *
                          rest.sample_frame);
    }
    return actions;
}

Eigen::VectorXcd dilation(const TruncatedSpace& space, const Eigen::VectorXcd& coords,
                          double r) {
    if (!(r > 0.0 && r < 1.0)) throw parameter_error("dilation radius must lie in (0,1)");
    if (coords.size() != space.dim()) throw input_error("coordinate vector has wrong length");
    Eigen::VectorXcd out(coords.size());
    for (int a = 0; a < space.dim(); ++a)
        out(a) = coords(a) * std::pow(r, space.degree_of(a));
    return out;
}

std::vector<Polynomial> jet_restriction(const Polynomial& f, int var, int orders) {
    if (orders < 1) throw parameter_error("jet needs at least one order");
    std::vector<Polynomial> jets;
    jets.reserve(static_cast<std::size_t>(orders));
    Polynomial current = f;
    for (int j = 0; j < orders; ++j) {
        jets.push_back(current.eliminate_at_zero(var));
        current = current.derivative(var);
    }
    return jets;
}

} // namespace tvlab
