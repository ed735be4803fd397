#include "tvlab/hilbert_module.hpp"

#include <algorithm>
#include <cmath>

#include "tvlab/errors.hpp"
#include "tvlab/linalg.hpp"

namespace tvlab {

std::vector<int> TruncatedModule::band_indices(int lo, int hi) const {
    std::vector<int> idx;
    for (int c = 0; c < rank(); ++c) {
        const int deg = column_degree[static_cast<std::size_t>(c)];
        if (deg < 0) throw input_error("module has no degree labels for band selection");
        if (deg >= lo && deg <= hi) idx.push_back(c);
    }
    return idx;
}

int TruncatedModule::graded_dim(int n) const {
    int count = 0;
    for (int deg : column_degree) count += (deg == n);
    return count;
}

TruncatedModule full_module(const TruncatedSpace& space) {
    TruncatedModule mod{space,
                        Eigen::MatrixXcd::Identity(space.dim(), space.dim()),
                        {},
                        ModuleKind::full,
                        false,
                        false};
    mod.column_degree.resize(static_cast<std::size_t>(space.dim()));
    for (int a = 0; a < space.dim(); ++a)
        mod.column_degree[static_cast<std::size_t>(a)] = space.degree_of(a);
    return mod;
}

namespace {

// Coordinate vector of g * z^beta in the orthonormal ambient basis.
Eigen::VectorXcd product_coordinates(const TruncatedSpace& space, const Polynomial& g,
                                     const Monomial& beta) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.dim());
    for (const auto& [mono, c] : g.terms()) {
        std::vector<std::uint32_t> e(mono.exponents());
        for (int j = 0; j < space.ambient_dim(); ++j) e[static_cast<std::size_t>(j)] += beta[j];
        const int a = space.index_of(Monomial(std::move(e)));
        if (a < 0) throw input_error("ideal product exceeds the truncation degree");
        v(a) += c * space.norm(a);
    }
    return v;
}

// Ideal slice of exact product degree n, one column per generator multiple.
Eigen::MatrixXcd slice_columns(const Ideal& ideal, const TruncatedSpace& space, int n) {
    std::vector<Eigen::VectorXcd> cols;
    for (std::size_t i = 0; i < ideal.generators.size(); ++i) {
        const int dg = ideal.degrees[i];
        if (dg > n) continue;
        for (const auto& beta : monomials_of_degree(space.ambient_dim(), n - dg))
            cols.push_back(product_coordinates(space, ideal.generators[i], beta));
    }
    Eigen::MatrixXcd a(space.dim(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) a.col(static_cast<Eigen::Index>(c)) = cols[c];
    return a;
}

} // namespace

TruncatedModule ideal_truncation(const Ideal& ideal, const TruncatedSpace& space,
                                 double rank_tol) {
    if (ideal.dim != space.ambient_dim())
        throw input_error("ideal and space dimensions differ");
    const int d = space.degree();

    TruncatedModule mod{space, Eigen::MatrixXcd(space.dim(), 0), {}, ModuleKind::ideal,
                        !ideal.homogeneous, false};

    std::vector<Eigen::MatrixXcd> blocks;
    std::vector<int> labels;
    int total_rank = 0;
    for (int n = 0; n <= d; ++n) {
        Eigen::MatrixXcd a = slice_columns(ideal, space, n);
        if (a.cols() == 0) continue;
        if (ideal.homogeneous) {
            // homogeneous slices live in single degree shells; orthonormalize per shell
            bool ambiguous = false;
            Eigen::MatrixXcd q = orthonormal_column_span(a, rank_tol, &ambiguous);
            mod.rank_warning = mod.rank_warning || ambiguous;
            blocks.push_back(std::move(q));
        } else {
            // filtration: deflate against everything accepted at lower levels
            for (const auto& prev : blocks) a -= prev * (prev.adjoint() * a);
            bool ambiguous = false;
            Eigen::MatrixXcd q = orthonormal_column_span(a, rank_tol, &ambiguous);
            mod.rank_warning = mod.rank_warning || ambiguous;
            blocks.push_back(std::move(q));
        }
        const int r = static_cast<int>(blocks.back().cols());
        for (int c = 0; c < r; ++c) labels.push_back(n);
        total_rank += r;
    }

    mod.frame.resize(space.dim(), total_rank);
    int at = 0;
    for (const auto& b : blocks) {
        mod.frame.middleCols(at, b.cols()) = b;
        at += static_cast<int>(b.cols());
    }
    mod.column_degree = std::move(labels);
    return mod;
}

TruncatedModule quotient_module(const Ideal& ideal, const TruncatedSpace& space,
                                double rank_tol) {
    const TruncatedModule ideal_mod = ideal_truncation(ideal, space, rank_tol);
    const int d = space.degree();

    TruncatedModule mod{space, Eigen::MatrixXcd(space.dim(), 0), {}, ModuleKind::quotient,
                        ideal_mod.filtered, ideal_mod.rank_warning};

    if (ideal.homogeneous) {
        std::vector<Eigen::MatrixXcd> blocks;
        std::vector<int> labels;
        int total = 0;
        for (int n = 0; n <= d; ++n) {
            const int start = space.shell_start(n);
            const int width = space.shell_dim(n);
            // ideal columns of this shell, restricted to shell coordinates
            auto idx = ideal_mod.band_indices(n, n);
            Eigen::MatrixXcd shell_frame(width, static_cast<Eigen::Index>(idx.size()));
            for (std::size_t c = 0; c < idx.size(); ++c)
                shell_frame.col(static_cast<Eigen::Index>(c)) =
                    ideal_mod.frame.col(idx[c]).segment(start, width);
            Eigen::MatrixXcd comp = orthonormal_complement(shell_frame, width);
            Eigen::MatrixXcd embedded = Eigen::MatrixXcd::Zero(space.dim(), comp.cols());
            embedded.middleRows(start, width) = comp;
            for (int c = 0; c < comp.cols(); ++c) labels.push_back(n);
            total += static_cast<int>(comp.cols());
            blocks.push_back(std::move(embedded));
        }
        mod.frame.resize(space.dim(), total);
        int at = 0;
        for (const auto& b : blocks) {
            mod.frame.middleCols(at, b.cols()) = b;
            at += static_cast<int>(b.cols());
        }
        mod.column_degree = std::move(labels);
        return mod;
    }

    // filtered case: deflate ambient basis vectors in graded order against the
    // ideal frame and the columns already taken
    const int expected = space.dim() - ideal_mod.rank();
    Eigen::MatrixXcd frame(space.dim(), expected);
    std::vector<int> labels;
    int taken = 0;
    for (int a = 0; a < space.dim() && taken < expected; ++a) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.dim());
        v(a) = 1.0;
        v -= ideal_mod.frame * (ideal_mod.frame.adjoint() * v);
        if (taken > 0) {
            auto f = frame.leftCols(taken);
            v -= f * (f.adjoint() * v);
        }
        const double norm = v.norm();
        if (norm < 1e-7) continue;
        frame.col(taken) = v / norm;
        labels.push_back(space.degree_of(a));
        ++taken;
    }
    if (taken != expected)
        throw conditioning_error("quotient complement construction found rank " +
                                 std::to_string(taken) + ", expected " +
                                 std::to_string(expected));
    mod.frame = std::move(frame);
    mod.column_degree = std::move(labels);
    return mod;
}

OperatorMatrix toeplitz_on(const TruncatedModule& module, int var) {
    const OperatorMatrix ambient_shift = shift_matrix(module.ambient, var);
    OperatorMatrix s;
    s.mat = module.frame.adjoint() * ambient_shift.mat * module.frame;
    s.domain = module.ambient.descriptor() + ":module";
    s.codomain = s.domain;
    return s;
}

std::vector<Eigen::MatrixXcd> module_actions(const TruncatedModule& module) {
    std::vector<Eigen::MatrixXcd> actions;
    actions.reserve(static_cast<std::size_t>(module.ambient.ambient_dim()));
    for (int i = 0; i < module.ambient.ambient_dim(); ++i)
        actions.push_back(toeplitz_on(module, i).mat);
    return actions;
}

namespace {

Eigen::MatrixXcd submatrix(const Eigen::MatrixXcd& a, const std::vector<int>& rows,
                           const std::vector<int>& cols) {
    Eigen::MatrixXcd sub(static_cast<Eigen::Index>(rows.size()),
                         static_cast<Eigen::Index>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                a(rows[r], cols[c]);
    return sub;
}

} // namespace

SpectrumReport commutator_spectrum(const TruncatedModule& module,
                                   const std::vector<Eigen::MatrixXcd>& actions, int var_i,
                                   int var_j, std::pair<int, int> band,
                                   std::span<const double> schatten_ps) {
    const int m = module.ambient.ambient_dim();
    if (var_i < 0 || var_i >= m || var_j < 0 || var_j >= m)
        throw parameter_error("commutator variable index out of range");
    if (band.second > module.ambient.degree() - 2)
        throw parameter_error("band exceeds degree d-2: compression artifacts at the edge");
    if (band.first < 0 || band.first > band.second)
        throw parameter_error("empty or negative spectrum band");

    const Eigen::MatrixXcd& si = actions[static_cast<std::size_t>(var_i)];
    const Eigen::MatrixXcd& sj = actions[static_cast<std::size_t>(var_j)];
    // sign convention: the i=j case is the positive self-commutator S*S - SS*
    const Eigen::MatrixXcd comm = sj.adjoint() * si - si * sj.adjoint();
    const auto idx = module.band_indices(band.first, band.second);

    SpectrumReport report;
    report.var_i = var_i;
    report.var_j = var_j;
    report.band_lo = band.first;
    report.band_hi = band.second;
    report.truncation_degree = module.ambient.degree();
    report.kind = module.kind;
    report.filtered = module.filtered;
    report.singular_values = singular_values(submatrix(comm, idx, idx));
    for (double p : schatten_ps) {
        double sum = 0.0;
        for (Eigen::Index k = 0; k < report.singular_values.size(); ++k)
            sum += std::pow(report.singular_values(k), p);
        report.schatten_sums[p] = sum;
    }
    return report;
}

SpectrumReport commutator_spectrum(const TruncatedModule& module, int var_i, int var_j,
                                   std::pair<int, int> band,
                                   std::span<const double> schatten_ps) {
    return commutator_spectrum(module, module_actions(module), var_i, var_j, band,
                               schatten_ps);
}

TailTrend schatten_tail(std::span<const SpectrumReport> reports, double p) {
    if (!(p > 0.0)) throw parameter_error("Schatten exponent must be positive");
    if (reports.size() < 3)
        throw parameter_error("Schatten tail trend needs at least 3 truncation levels");
    TailTrend trend;
    trend.p = p;
    std::vector<double> logs_d, logs_sum;
    for (const auto& rep : reports) {
        double sum = 0.0;
        if (auto it = rep.schatten_sums.find(p); it != rep.schatten_sums.end()) {
            sum = it->second;
        } else {
            for (Eigen::Index k = 0; k < rep.singular_values.size(); ++k)
                sum += std::pow(rep.singular_values(k), p);
        }
        trend.degrees.push_back(rep.truncation_degree);
        trend.partial_sums.push_back(sum);
        logs_d.push_back(std::log(static_cast<double>(rep.truncation_degree)));
        logs_sum.push_back(std::log(std::max(sum, 1e-300)));
    }
    if (!std::is_sorted(trend.degrees.begin(), trend.degrees.end()))
        throw parameter_error("Schatten tail reports must come in increasing degree order");
    trend.growth_exponent = fit_slope(logs_d, logs_sum);
    return trend;
}

TwoOfThreeReport equivalence_check(const Eigen::MatrixXcd& intertwiner,
                                   const std::vector<Eigen::MatrixXcd>& dom_actions,
                                   const std::vector<Eigen::MatrixXcd>& cod_actions,
                                   const std::vector<int>& dom_band,
                                   const std::vector<int>& cod_band, double tol,
                                   double factor) {
    if (dom_actions.size() != cod_actions.size())
        throw input_error("domain and codomain carry different numbers of actions");
    const std::size_t m = dom_actions.size();

    TwoOfThreeReport report;
    report.tol = tol;
    report.factor = factor;

    for (std::size_t i = 0; i < m; ++i) {
        const Eigen::MatrixXcd defect = cod_actions[i] * intertwiner - intertwiner * dom_actions[i];
        report.intertwiner_defect =
            std::max(report.intertwiner_defect,
                     operator_norm(submatrix(defect, cod_band, dom_band)));
    }
    if (report.intertwiner_defect > tol)
        throw input_error("X is not an intertwiner on the band: defect " +
                          format_double(report.intertwiner_defect) + " exceeds " +
                          format_double(tol));

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const Eigen::MatrixXcd cd = dom_actions[j].adjoint() * dom_actions[i] -
                                        dom_actions[i] * dom_actions[j].adjoint();
            report.defect_dom =
                std::max(report.defect_dom, operator_norm(submatrix(cd, dom_band, dom_band)));
            const Eigen::MatrixXcd cc = cod_actions[j].adjoint() * cod_actions[i] -
                                        cod_actions[i] * cod_actions[j].adjoint();
            report.defect_cod =
                std::max(report.defect_cod, operator_norm(submatrix(cc, cod_band, cod_band)));
        }
    }

    const Eigen::MatrixXcd gram = intertwiner.adjoint() * intertwiner;
    for (std::size_t i = 0; i < m; ++i) {
        const Eigen::MatrixXcd g = gram * dom_actions[i] - dom_actions[i] * gram;
        report.defect_gram =
            std::max(report.defect_gram, operator_norm(submatrix(g, dom_band, dom_band)));
    }

    const double d1 = report.defect_dom;
    const double d2 = report.defect_cod;
    const double d3 = report.defect_gram;
    auto implies = [&](double a, double b, double c) {
        return !(a <= tol && b <= tol) || c <= factor * tol;
    };
    report.consistent = implies(d1, d2, d3) && implies(d1, d3, d2) && implies(d2, d3, d1);
    return report;
}

} // namespace tvlab
