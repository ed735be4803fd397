#pragma once

// Test-only oracles, independent of the library code paths they check:
// Monte Carlo integration over the weighted ball, finite differences,
// closed-form volumes, and seeded random data generators.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <tvlab/polynomial.hpp>
#include <tvlab/rng.hpp>

namespace oracle {

using tvlab::Complex;

inline std::vector<Complex> uniform_ball_point(std::mt19937_64& rng, int m) {
    std::vector<Complex> z(static_cast<std::size_t>(m));
    double norm2 = 0.0;
    for (auto& c : z) {
        c = Complex(tvlab::standard_normal(rng), tvlab::standard_normal(rng));
        norm2 += std::norm(c);
    }
    const double r = std::pow(tvlab::uniform01(rng), 1.0 / (2.0 * m)) / std::sqrt(norm2);
    for (auto& c : z) c *= r;
    return z;
}

/// Monte Carlo estimate of ||z^alpha||^2 under the mass-one measure
/// proportional to (1-|z|^2)^s: a ratio of sample means over uniform ball points.
inline double mc_monomial_norm2(const tvlab::Monomial& alpha, double s, long long n_samples,
                                std::uint64_t seed) {
    const int m = alpha.dim();
    std::mt19937_64 rng(tvlab::splitmix64(seed));
    double num = 0.0, den = 0.0;
    for (long long i = 0; i < n_samples; ++i) {
        const auto z = uniform_ball_point(rng, m);
        double r2 = 0.0;
        for (const auto& c : z) r2 += std::norm(c);
        const double w = std::pow(1.0 - r2, s);
        num += std::norm(alpha.eval(z)) * w;
        den += w;
    }
    return num / den;
}

/// Same sampler, for a cross inner product <z^a, z^b>.
inline Complex mc_monomial_inner(const tvlab::Monomial& a, const tvlab::Monomial& b, double s,
                                 long long n_samples, std::uint64_t seed) {
    std::mt19937_64 rng(tvlab::splitmix64(seed));
    Complex num = 0.0;
    double den = 0.0;
    for (long long i = 0; i < n_samples; ++i) {
        const auto z = uniform_ball_point(rng, a.dim());
        double r2 = 0.0;
        for (const auto& c : z) r2 += std::norm(c);
        const double w = std::pow(1.0 - r2, s);
        num += a.eval(z) * std::conj(b.eval(z)) * w;
        den += w;
    }
    return num / den;
}

/// Central finite difference for the holomorphic partial d p / d z_var.
inline Complex fd_partial(const tvlab::Polynomial& p, std::vector<Complex> z, int var,
                          double h = 1e-5) {
    auto zp = z, zm = z;
    zp[static_cast<std::size_t>(var)] += h;
    zm[static_cast<std::size_t>(var)] -= h;
    return (p.eval(zp) - p.eval(zm)) / (2.0 * h);
}

/// Lebesgue integral of (1-|w|^2)^s over the unit ball of C^k.
inline double weighted_ball_volume(int k, double s) {
    return std::exp(k * std::log(3.14159265358979323846) + std::lgamma(s + 1.0) -
                    std::lgamma(k + s + 1.0));
}

/// Sparse random polynomial with small complex integer coefficients.
inline tvlab::Polynomial random_polynomial(std::mt19937_64& rng, int m, int max_degree,
                                           int terms) {
    tvlab::Polynomial p(m);
    for (int t = 0; t < terms; ++t) {
        std::vector<std::uint32_t> e(static_cast<std::size_t>(m), 0);
        int budget = static_cast<int>(rng() % static_cast<std::uint64_t>(max_degree + 1));
        for (int j = 0; j < m && budget > 0; ++j) {
            const int take = static_cast<int>(rng() % static_cast<std::uint64_t>(budget + 1));
            e[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(take);
            budget -= take;
        }
        const double re = static_cast<double>(static_cast<int>(rng() % 7) - 3);
        const double im = static_cast<double>(static_cast<int>(rng() % 7) - 3);
        if (re != 0.0 || im != 0.0) p.add_term(tvlab::Monomial(std::move(e)), Complex(re, im));
    }
    return p;
}

inline std::vector<Complex> random_point(std::mt19937_64& rng, int m, double scale = 0.5) {
    std::vector<Complex> z(static_cast<std::size_t>(m));
    for (auto& c : z)
        c = scale * Complex(2.0 * tvlab::uniform01(rng) - 1.0, 2.0 * tvlab::uniform01(rng) - 1.0);
    return z;
}

} // namespace oracle
