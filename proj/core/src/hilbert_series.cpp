#include "tvlab/hilbert_series.hpp"

#include <algorithm>

#include <Eigen/Dense>

#include "tvlab/ball_space.hpp"
#include "tvlab/errors.hpp"
#include "tvlab/hilbert_module.hpp"

namespace tvlab {

namespace {

long long binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (long long t = 1; t <= k; ++t) {
        r = r * (n - k + t) / t; // exact: consecutive products divide stepwise
    }
    return r;
}

// Integer-valued polynomial C(x+k-1, k-1) evaluated at integer x (any sign).
long long binomial_poly(long long x, int k_minus_1) {
    if (k_minus_1 == 0) return 1;
    long long num = 1;
    for (int t = 1; t <= k_minus_1; ++t) num *= x + t;
    long long fact = 1;
    for (int t = 2; t <= k_minus_1; ++t) fact *= t;
    return num / fact;
}

// Coefficients of prod_i (1 + t + ... + t^{d_i - 1}).
std::vector<long long> ci_numerator(std::span<const int> degrees) {
    std::vector<long long> num{1};
    for (int d : degrees) {
        std::vector<long long> next(num.size() + static_cast<std::size_t>(d) - 1, 0);
        for (std::size_t a = 0; a < num.size(); ++a)
            for (int b = 0; b < d; ++b) next[a + static_cast<std::size_t>(b)] += num[a];
        num = std::move(next);
    }
    return num;
}

} // namespace

std::vector<long long> hilbert_series_ci(int m, std::span<const int> degrees, int up_to) {
    if (m < 1) throw input_error("ambient dimension must be >= 1");
    for (int d : degrees)
        if (d < 1) throw input_error("generator degrees must be >= 1");
    std::vector<long long> coeff(static_cast<std::size_t>(up_to) + 1);
    for (int n = 0; n <= up_to; ++n)
        coeff[static_cast<std::size_t>(n)] = binomial(n + m - 1, m - 1);
    for (int d : degrees)
        for (int n = up_to; n >= d; --n)
            coeff[static_cast<std::size_t>(n)] -= coeff[static_cast<std::size_t>(n - d)];
    return coeff;
}

long long ci_hilbert_polynomial_at(int m, std::span<const int> degrees, long long n) {
    const int k = m - static_cast<int>(degrees.size());
    if (k < 1) return 0; // zero-dimensional: the eventual polynomial vanishes
    const auto num = ci_numerator(degrees);
    long long v = 0;
    for (std::size_t j = 0; j < num.size(); ++j)
        v += num[j] * binomial_poly(n - static_cast<long long>(j), k - 1);
    return v;
}

HilbertData hilbert_data_ci(int m, std::span<const int> degrees, int up_to) {
    HilbertData data;
    data.ambient_dim = m;
    data.generator_degrees.assign(degrees.begin(), degrees.end());

    int total_shift = 0;
    for (int d : degrees) total_shift += d - 1;
    const int scan_to = std::max(up_to, total_shift + 2);
    auto series = hilbert_series_ci(m, degrees, scan_to);

    // first n from which the series agrees with the polynomial onward
    int reg = scan_to + 1;
    for (int n = scan_to; n >= 0; --n) {
        if (series[static_cast<std::size_t>(n)] == ci_hilbert_polynomial_at(m, degrees, n))
            reg = n;
        else
            break;
    }
    data.regularity = reg;
    series.resize(static_cast<std::size_t>(up_to) + 1);
    data.series = std::move(series);

    // expand sum_j num_j * C(n-j+k-1, k-1) into monomial coefficients in n
    const int k = m - static_cast<int>(degrees.size());
    if (k >= 1) {
        const auto num = ci_numerator(degrees);
        std::vector<double> acc(static_cast<std::size_t>(k), 0.0);
        for (std::size_t j = 0; j < num.size(); ++j) {
            // C(x+k-1, k-1) at x = n-j: product (n-j+1)...(n-j+k-1) / (k-1)!
            std::vector<double> poly{1.0};
            for (int t = 1; t <= k - 1; ++t) {
                const double c0 = static_cast<double>(t) - static_cast<double>(j);
                std::vector<double> next(poly.size() + 1, 0.0);
                for (std::size_t a = 0; a < poly.size(); ++a) {
                    next[a] += poly[a] * c0; // constant term of (n + t - j)
                    next[a + 1] += poly[a];
                }
                poly = std::move(next);
            }
            double fact = 1.0;
            for (int t = 2; t <= k - 1; ++t) fact *= t;
            for (std::size_t a = 0; a < poly.size(); ++a)
                acc[a] += static_cast<double>(num[j]) * poly[a] / fact;
        }
        data.polynomial = std::move(acc);
    }
    return data;
}

long long hilbert_function_numeric(const Ideal& ideal, int n) {
    if (!ideal.homogeneous)
        throw input_error("Hilbert function requires a homogeneous ideal");
    const int m = ideal.dim;
    const auto shell = monomials_of_degree(m, n);
    std::map<Monomial, int, GradedLexLess> row_index;
    for (std::size_t a = 0; a < shell.size(); ++a)
        row_index.emplace(shell[a], static_cast<int>(a));

    std::vector<Eigen::VectorXcd> cols;
    for (std::size_t i = 0; i < ideal.generators.size(); ++i) {
        const int dg = ideal.degrees[i];
        if (dg > n) continue;
        for (const auto& beta : monomials_of_degree(m, n - dg)) {
            Eigen::VectorXcd col = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(shell.size()));
            for (const auto& [mono, c] : ideal.generators[i].terms()) {
                std::vector<std::uint32_t> e(mono.exponents());
                for (int j = 0; j < m; ++j) e[static_cast<std::size_t>(j)] += beta[j];
                col(row_index.at(Monomial(std::move(e)))) += c;
            }
            cols.push_back(std::move(col));
        }
    }
    if (cols.empty()) return static_cast<long long>(shell.size());

    Eigen::MatrixXcd a(static_cast<Eigen::Index>(shell.size()),
                       static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        a.col(static_cast<Eigen::Index>(c)) = cols[c];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index kk = 0; kk < sv.size(); ++kk)
        if (sv(kk) > 1e-10 * sv(0)) ++rank;
    // integer conversion demands a clean spectral gap at the threshold
    if (rank > 0 && rank < sv.size()) {
        const double gap = sv(rank - 1) / std::max(sv(rank), 1e-300);
        if (gap < 1e3)
            throw conditioning_error("rank decision gap " + format_double(gap) +
                                     " below 1e3 at degree " + std::to_string(n));
    }
    return static_cast<long long>(shell.size()) - rank;
}

EulerProxyReport euler_proxy_check(const std::optional<Ideal>& ideal, int m,
                                   std::span<const int> degrees, int n_lo, int n_hi,
                                   int truncation_degree) {
    if (truncation_degree < n_hi)
        throw parameter_error("truncation degree " + std::to_string(truncation_degree) +
                              " is below the requested range max " + std::to_string(n_hi));
    if (ideal && !ideal->homogeneous)
        throw input_error("Euler proxy requires a homogeneous ideal");

    const auto data = hilbert_data_ci(m, degrees, n_hi);

    const TruncatedSpace space(WeightedBall(m, 0.0), truncation_degree);
    const TruncatedModule quotient =
        ideal ? quotient_module(*ideal, space) : full_module(space);

    EulerProxyReport report;
    report.regularity = data.regularity;
    bool pass = true;
    for (int n = n_lo; n <= n_hi; ++n) {
        EulerProxyRow row;
        row.n = n;
        row.quotient_dim = quotient.graded_dim(n);
        row.series_coeff = data.series[static_cast<std::size_t>(n)];
        row.polynomial_value = ci_hilbert_polynomial_at(m, degrees, n);
        pass = pass && row.quotient_dim == row.series_coeff;
        if (n >= data.regularity) pass = pass && row.series_coeff == row.polynomial_value;
        report.rows.push_back(row);
    }
    report.pass = pass;
    return report;
}

} // namespace tvlab
