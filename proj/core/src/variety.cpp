#include "tvlab/variety.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/beta.hpp>

#include "tvlab/errors.hpp"
#include "tvlab/rng.hpp"

namespace tvlab {

namespace {

constexpr std::uint64_t kBoundarySalt = 0x626f756e64617279ULL;

// Precomputed holomorphic partials so Gauss-Newton does not rebuild
// derivative polynomials at every evaluation.
struct IdealCalc {
    const Ideal& ideal;
    std::vector<std::vector<Polynomial>> partials;

    explicit IdealCalc(const Ideal& i) : ideal(i) {
        partials.reserve(static_cast<std::size_t>(i.generator_count()));
        for (const auto& g : i.generators) {
            std::vector<Polynomial> row;
            row.reserve(static_cast<std::size_t>(i.dim));
            for (int j = 0; j < i.dim; ++j) row.push_back(g.derivative(j));
            partials.push_back(std::move(row));
        }
    }

    Eigen::MatrixXcd jac(std::span<const Complex> z) const {
        Eigen::MatrixXcd j(ideal.generator_count(), ideal.dim);
        for (int i = 0; i < ideal.generator_count(); ++i)
            for (int k = 0; k < ideal.dim; ++k)
                j(i, k) = partials[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].eval(z);
        return j;
    }
};

std::span<const Complex> as_span(const Eigen::VectorXcd& z) {
    return {z.data(), static_cast<std::size_t>(z.size())};
}

Eigen::VectorXcd real_to_complex(const Eigen::VectorXd& x) {
    const int m = static_cast<int>(x.size()) / 2;
    Eigen::VectorXcd z(m);
    for (int j = 0; j < m; ++j) z(j) = Complex(x(j), x(m + j));
    return z;
}

Eigen::VectorXd complex_to_real(const Eigen::VectorXcd& z) {
    const int m = static_cast<int>(z.size());
    Eigen::VectorXd x(2 * m);
    for (int j = 0; j < m; ++j) {
        x(j) = z(j).real();
        x(m + j) = z(j).imag();
    }
    return x;
}

// Residual vector [Re p_i, Im p_i, (|z|^2 - r^2)?] and its real Jacobian.
struct GNSystem {
    const IdealCalc& calc;
    std::optional<double> sphere_radius;

    Eigen::VectorXd residual(const Eigen::VectorXcd& z) const {
        const int M = calc.ideal.generator_count();
        Eigen::VectorXd f(2 * M + (sphere_radius ? 1 : 0));
        for (int i = 0; i < M; ++i) {
            const Complex v = calc.ideal.generators[static_cast<std::size_t>(i)].eval(as_span(z));
            f(2 * i) = v.real();
            f(2 * i + 1) = v.imag();
        }
        if (sphere_radius)
            f(2 * M) = z.squaredNorm() - (*sphere_radius) * (*sphere_radius);
        return f;
    }

    Eigen::MatrixXd jacobian(const Eigen::VectorXcd& z) const {
        const int M = calc.ideal.generator_count();
        const int m = calc.ideal.dim;
        const Eigen::MatrixXcd jc = calc.jac(as_span(z));
        Eigen::MatrixXd j(2 * M + (sphere_radius ? 1 : 0), 2 * m);
        for (int i = 0; i < M; ++i) {
            for (int k = 0; k < m; ++k) {
                const double re = jc(i, k).real();
                const double im = jc(i, k).imag();
                j(2 * i, k) = re;
                j(2 * i, m + k) = -im;
                j(2 * i + 1, k) = im;
                j(2 * i + 1, m + k) = re;
            }
        }
        if (sphere_radius) {
            for (int k = 0; k < m; ++k) {
                j(2 * M, k) = 2.0 * z(k).real();
                j(2 * M, m + k) = 2.0 * z(k).imag();
            }
        }
        return j;
    }

    bool converged(const Eigen::VectorXcd& z, double tol) const {
        if (calc.ideal.residual(as_span(z)) > tol) return false;
        if (sphere_radius &&
            std::abs(z.squaredNorm() - (*sphere_radius) * (*sphere_radius)) > tol)
            return false;
        return true;
    }
};

std::optional<Eigen::VectorXcd> gauss_newton(const GNSystem& sys, Eigen::VectorXcd z,
                                             double tol, int max_iterations) {
    Eigen::VectorXd x = complex_to_real(z);
    for (int iter = 0; iter < max_iterations; ++iter) {
        z = real_to_complex(x);
        if (sys.converged(z, tol)) return z;
        const Eigen::VectorXd f = sys.residual(z);
        const Eigen::MatrixXd j = sys.jacobian(z);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(j, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd step = svd.solve(-f);
        if (!step.allFinite()) return std::nullopt;
        // damping: halve the step until the residual decreases
        const double f0 = f.norm();
        double t = 1.0;
        bool moved = false;
        for (int back = 0; back < 12; ++back) {
            const Eigen::VectorXd cand = x + t * step;
            if (sys.residual(real_to_complex(cand)).norm() < f0) {
                x = cand;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved) return std::nullopt;
    }
    z = real_to_complex(x);
    return sys.converged(z, tol) ? std::optional<Eigen::VectorXcd>(z) : std::nullopt;
}

Eigen::VectorXcd gaussian_direction(std::mt19937_64& rng, int m) {
    Eigen::VectorXcd g(m);
    for (int j = 0; j < m; ++j) {
        const double a = standard_normal(rng);
        const double b = standard_normal(rng);
        g(j) = Complex(a, b);
    }
    return g / g.norm();
}

Eigen::VectorXcd uniform_in_ball(std::mt19937_64& rng, int m, double radius) {
    const Eigen::VectorXcd dir = gaussian_direction(rng, m);
    const double r = radius * std::pow(uniform01(rng), 1.0 / (2.0 * m));
    return r * dir;
}

// Fraction of the sphere S^{dim-1} within geodesic angle theta of a pole.
double cap_fraction(int real_dim, double cos_theta) {
    if (cos_theta >= 1.0) return 0.0;
    if (cos_theta <= -1.0) return 1.0;
    const double x = 1.0 - cos_theta * cos_theta;
    const double half = 0.5 * boost::math::ibeta((real_dim - 1.0) / 2.0, 0.5, x);
    return cos_theta >= 0.0 ? half : 1.0 - half;
}

// Integral over ball(b, r) /\ ball(0, R) of ((R^2-|v|^2)/(R^2-b^2))^M dv in
// R^dim: the expected neighbor count in a tangent k-NN ball under the
// normal-fiber density model, normalized to 1 at the ball center.
double profile_ball_mass(int real_dim, int profile_exp, double r, double R, double b) {
    const double lo = std::max(0.0, b - r);
    const double hi = std::min(R, b + r);
    if (hi <= lo) return 0.0;
    const double center = R * R - b * b; // > 0 for interior points
    const double shell_const =
        2.0 * std::exp(0.5 * real_dim * std::log(3.14159265358979323846) -
                       std::lgamma(0.5 * real_dim));
    auto integrand = [&](double rho) {
        if (rho <= 0.0) return 0.0;
        double frac = 1.0;
        if (b > 0.0) {
            const double cos_theta = (rho * rho + b * b - r * r) / (2.0 * rho * b);
            frac = cap_fraction(real_dim, cos_theta);
        } else {
            frac = rho <= r ? 1.0 : 0.0;
        }
        const double prof = std::pow(std::max(R * R - rho * rho, 0.0) / center,
                                     static_cast<double>(profile_exp));
        return shell_const * std::pow(rho, real_dim - 1.0) * prof * frac;
    };
    // composite Simpson, split at the kink where the cap starts opening
    auto simpson = [&](double a2, double b2, int steps) {
        if (b2 <= a2) return 0.0;
        const double h = (b2 - a2) / steps;
        double acc = integrand(a2) + integrand(b2);
        for (int i = 1; i < steps; ++i)
            acc += integrand(a2 + i * h) * (i % 2 ? 4.0 : 2.0);
        return acc * h / 3.0;
    };
    const double kink = std::clamp(std::abs(b - r), lo, hi);
    return simpson(lo, kink, 32) + simpson(kink, hi, 32);
}

// Orthonormal basis of the numerical kernel of the complex Jacobian.
Eigen::MatrixXcd jacobian_kernel(const Eigen::MatrixXcd& j, double rel_tol = 1e-10) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(j, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) > rel_tol * sv(0)) ++rank;
    return svd.matrixV().rightCols(j.cols() - rank);
}

} // namespace

VarietyConfig::VarietyConfig(Ideal i, double r, std::uint64_t s)
    : ideal(std::move(i)), radius(r), seed(s) {
    if (!(radius > 0.0)) throw parameter_error("variety radius must be positive");
}

std::optional<Eigen::VectorXcd> project_to_variety(const Ideal& ideal, Eigen::VectorXcd start,
                                                   double solve_tol, int max_iterations,
                                                   std::optional<double> sphere_radius) {
    IdealCalc calc(ideal);
    GNSystem sys{calc, sphere_radius};
    return gauss_newton(sys, std::move(start), solve_tol, max_iterations);
}

AssumptionReport check_assumption(const VarietyConfig& cfg, int n_boundary_samples,
                                  const CheckOptions& opts) {
    if (n_boundary_samples < 1) throw parameter_error("need at least one boundary sample");
    const int m = cfg.ideal.dim;
    const int M = cfg.ideal.generator_count();

    AssumptionReport report;
    report.codim_ok = M <= m - 2;
    if (!report.codim_ok)
        report.reasons.push_back("codimension: M=" + std::to_string(M) +
                                 " exceeds m-2=" + std::to_string(m - 2));

    IdealCalc calc(cfg.ideal);
    GNSystem sys{calc, cfg.radius};

    double min_sv = std::numeric_limits<double>::infinity();
    double min_margin = std::numeric_limits<double>::infinity();
    int found = 0;
    for (int i = 0; i < n_boundary_samples; ++i) {
        auto rng = stream_for(cfg.seed ^ kBoundarySalt, static_cast<std::uint64_t>(i));
        const Eigen::VectorXcd seed_pt = cfg.radius * gaussian_direction(rng, m);
        auto z = gauss_newton(sys, seed_pt, opts.solve_tol, opts.max_iterations);
        if (!z) continue;
        ++found;
        const Eigen::MatrixXcd j = calc.jac(as_span(*z));
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(j, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        min_sv = std::min(min_sv, sv(sv.size() - 1));
        const Eigen::MatrixXcd kernel = jacobian_kernel(j);
        const double margin = kernel.cols() > 0 ? (kernel.adjoint() * (*z)).norm() : 0.0;
        min_margin = std::min(min_margin, margin);
    }

    report.boundary_points = found;
    if (found == 0) {
        // empty link is a distinct outcome, not a checker failure
        report.empty_link = true;
        report.pass = false;
        report.reasons.push_back("empty link: no boundary points found");
        return report;
    }
    report.min_jacobian_sv = min_sv;
    report.transversality_margin = min_margin;

    if (min_sv < opts.rank_threshold)
        report.reasons.push_back("rank: min Jacobian singular value " + format_double(min_sv) +
                                 " below threshold " + format_double(opts.rank_threshold));
    if (min_margin < opts.transversality_fraction * cfg.radius)
        report.reasons.push_back("transversality: margin " + format_double(min_margin) +
                                 " below " +
                                 format_double(opts.transversality_fraction * cfg.radius));
    report.pass = report.reasons.empty();
    return report;
}

std::vector<SamplePoint> sample_variety(const VarietyConfig& cfg, int n, double s_weight,
                                        const SampleOptions& opts) {
    const int m = cfg.ideal.dim;
    const int M = cfg.ideal.generator_count();
    const int kc = m - M; // complex tangent dimension
    if (kc < 1) throw input_error("variety sampling requires codimension M < m");
    if (n <= opts.knn) throw parameter_error("sample count must exceed the k-NN order");

    IdealCalc calc(cfg.ideal);
    GNSystem sys{calc, std::nullopt};

    std::vector<Eigen::VectorXcd> points;
    std::vector<Eigen::MatrixXcd> tangents;
    std::vector<double> residuals;
    points.reserve(static_cast<std::size_t>(n));

    const long long max_attempts = std::max<long long>(4LL * n, 256);
    long long attempts = 0;
    long long diverged = 0;
    while (static_cast<int>(points.size()) < n && attempts < max_attempts) {
        auto rng = stream_for(cfg.seed, static_cast<std::uint64_t>(attempts));
        ++attempts;
        const Eigen::VectorXcd seed_pt = uniform_in_ball(rng, m, cfg.radius);
        auto z = gauss_newton(sys, seed_pt, opts.solve_tol, opts.max_iterations);
        if (!z) {
            ++diverged;
            continue;
        }
        if (z->norm() >= cfg.radius) continue; // interior points only
        const Eigen::MatrixXcd j = calc.jac(as_span(*z));
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(j, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        if (sv(sv.size() - 1) < opts.min_jacobian_sv) continue; // near the singular set
        points.push_back(*z);
        tangents.push_back(svd.matrixV().rightCols(kc));
        residuals.push_back(cfg.ideal.residual(as_span(*z)));
    }
    if (attempts > 0 &&
        static_cast<double>(diverged) / static_cast<double>(attempts) > opts.max_divergence_rate)
        throw sampling_error("Gauss-Newton divergence rate " +
                             format_double(static_cast<double>(diverged) /
                                           static_cast<double>(attempts)) +
                             " exceeds " + format_double(opts.max_divergence_rate));
    if (static_cast<int>(points.size()) < n)
        throw sampling_error("could not place " + std::to_string(n) +
                             " samples on the variety (got " + std::to_string(points.size()) +
                             ")");

    const int kept = static_cast<int>(points.size());
    const int k = opts.knn;
    const int real_dim = 2 * kc;

    // packed coordinates for fast ambient-distance preselection
    Eigen::MatrixXcd zs(m, kept);
    for (int j = 0; j < kept; ++j) zs.col(j) = points[static_cast<std::size_t>(j)];
    Eigen::VectorXd norms2(kept);
    for (int j = 0; j < kept; ++j) norms2(j) = zs.col(j).squaredNorm();

    // The projection pushforward density carries the normal-fiber profile
    // (eps^2-|z|^2)^M, which degenerates at the sphere. The k-NN count is
    // therefore compared against the profile-integrated ball mass rather than
    // a flat volume, so the density estimate stays consistent near the sphere.
    const double eps2 = cfg.radius * cfg.radius;
    const int preselect = std::min(kept - 1, std::max(3 * k, k + 8));
    std::vector<SamplePoint> samples;
    samples.reserve(static_cast<std::size_t>(kept));
    std::vector<int> order(static_cast<std::size_t>(kept));
    for (int j = 0; j < kept; ++j) {
        // ambient distances, then k-NN radius measured in tangent coordinates
        const Eigen::VectorXcd overlaps = zs.adjoint() * zs.col(j);
        Eigen::VectorXd dist2 =
            norms2.array() + norms2(j) - 2.0 * overlaps.array().real();
        for (int l = 0; l < kept; ++l) order[static_cast<std::size_t>(l)] = l;
        std::nth_element(order.begin(), order.begin() + preselect, order.end(),
                         [&](int a, int b) { return dist2(a) < dist2(b); });
        std::vector<double> tangent_d;
        tangent_d.reserve(static_cast<std::size_t>(preselect));
        const Eigen::MatrixXcd& frame = tangents[static_cast<std::size_t>(j)];
        for (int t = 0; t <= preselect; ++t) {
            const int l = order[static_cast<std::size_t>(t)];
            if (l == j) continue;
            tangent_d.push_back((frame.adjoint() * (zs.col(l) - zs.col(j))).norm());
        }
        std::sort(tangent_d.begin(), tangent_d.end());
        const double r_k = tangent_d[static_cast<std::size_t>(k - 1)];

        const Eigen::VectorXcd b = frame.adjoint() * zs.col(j);
        const double interior2 = eps2 - norms2(j);
        const double clip_r = std::sqrt(std::max(interior2 + b.squaredNorm(), 0.0));
        const double mass =
            profile_ball_mass(real_dim, M, r_k, clip_r, b.norm());

        const double density_correction =
            mass * static_cast<double>(kept - 1) / static_cast<double>(k);
        const double rho = norms2(j) - eps2; // negative inside
        const double w = std::pow(-rho, s_weight) * density_correction /
                         static_cast<double>(kept);
        if (!(w > 0.0) || !std::isfinite(w))
            throw sampling_error("nonpositive quadrature weight");
        samples.push_back(SamplePoint{points[static_cast<std::size_t>(j)], w,
                                      residuals[static_cast<std::size_t>(j)], false});
    }
    return samples;
}

Eigen::MatrixXcd gram_on_variety(std::span<const SamplePoint> samples,
                                 std::span<const Polynomial> functions) {
    if (samples.empty()) throw input_error("gram_on_variety requires samples");
    const int nf = static_cast<int>(functions.size());
    double total = 0.0;
    for (const auto& sp : samples) total += sp.weight;
    Eigen::MatrixXcd values(samples.size(), nf);
    for (std::size_t j = 0; j < samples.size(); ++j)
        for (int a = 0; a < nf; ++a)
            values(static_cast<Eigen::Index>(j), a) =
                functions[static_cast<std::size_t>(a)].eval(as_span(samples[j].z));
    Eigen::MatrixXcd g(nf, nf);
    for (int a = 0; a < nf; ++a) {
        for (int b = 0; b < nf; ++b) {
            Complex acc = 0.0;
            for (std::size_t j = 0; j < samples.size(); ++j)
                acc += samples[j].weight * values(static_cast<Eigen::Index>(j), a) *
                       std::conj(values(static_cast<Eigen::Index>(j), b));
            g(a, b) = acc / total;
        }
    }
    return g;
}

} // namespace tvlab
