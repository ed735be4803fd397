#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tvlab/polynomial.hpp"

namespace tvlab {

/// Graded data of a homogeneous complete intersection with generator degrees
/// d_1..d_M in m variables: series coefficients of prod(1-t^{d_i}) (1-t)^{-m},
/// the eventual polynomial in n, and the first degree where they agree.
struct HilbertData {
    int ambient_dim = 0;
    std::vector<int> generator_degrees;
    std::vector<long long> series;     // coefficients 0..up_to
    std::vector<double> polynomial;    // coefficients in n, constant term first
    int regularity = 0;                // first n with function(n) == polynomial(n)
};

/// Coefficients of prod_i (1-t^{d_i}) * (1-t)^{-m} up to degree `up_to`.
std::vector<long long> hilbert_series_ci(int m, std::span<const int> degrees, int up_to);

/// Exact integer value of the complete-intersection Hilbert polynomial at n.
long long ci_hilbert_polynomial_at(int m, std::span<const int> degrees, long long n);

HilbertData hilbert_data_ci(int m, std::span<const int> degrees, int up_to);

/// Graded dimension of (A/I)_n for homogeneous I: monomial count minus the
/// numerical rank (SVD, tol 1e-10) of the degree-n slice of the ideal span.
/// Aborts with conditioning_error when the rank gap is below 10^3.
long long hilbert_function_numeric(const Ideal& ideal, int n);

struct EulerProxyRow {
    int n = 0;
    long long quotient_dim = 0; // graded dim of the quotient module
    long long series_coeff = 0;
    long long polynomial_value = 0;
};

struct EulerProxyReport {
    std::vector<EulerProxyRow> rows;
    int regularity = 0;
    bool pass = false; // quotient == series everywhere, == polynomial past regularity
};

/// Three-way comparison of quotient graded dimensions, series coefficients and
/// Hilbert-polynomial values over n in [n_lo, n_hi]. `ideal` empty means the
/// full ring. Requires truncation_degree >= n_hi.
EulerProxyReport euler_proxy_check(const std::optional<Ideal>& ideal, int m,
                                   std::span<const int> degrees, int n_lo, int n_hi,
                                   int truncation_degree);

} // namespace tvlab
