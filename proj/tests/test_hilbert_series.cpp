#include <doctest.h>

#include <tvlab/errors.hpp>
#include <tvlab/hilbert_series.hpp>

#include "oracles.hpp"

using namespace tvlab;

namespace {

// independent expansion oracle: multiply out prod(1-t^{d_i}) then convolve
// with the binomial coefficients of (1-t)^{-m}
std::vector<long long> series_oracle(int m, const std::vector<int>& degrees, int up_to) {
    std::vector<long long> numer{1};
    for (int d : degrees) {
        std::vector<long long> next(numer.size() + static_cast<std::size_t>(d), 0);
        for (std::size_t a = 0; a < numer.size(); ++a) {
            next[a] += numer[a];
            next[a + static_cast<std::size_t>(d)] -= numer[a];
        }
        numer = std::move(next);
    }
    auto binom = [](long long n, long long k) {
        if (k < 0 || k > n) return 0LL;
        long long r = 1;
        for (long long t = 1; t <= k; ++t) r = r * (n - k + t) / t;
        return r;
    };
    std::vector<long long> out(static_cast<std::size_t>(up_to) + 1, 0);
    for (int n = 0; n <= up_to; ++n)
        for (std::size_t j = 0; j < numer.size() && static_cast<int>(j) <= n; ++j)
            out[static_cast<std::size_t>(n)] +=
                numer[j] * binom(n - static_cast<long long>(j) + m - 1, m - 1);
    return out;
}

} // namespace

TEST_CASE("hilbert_series_ci: quadric, cubic, free ring") {
    SUBCASE("m=3, degrees=(2): odd numbers") {
        const auto s = hilbert_series_ci(3, std::vector<int>{2}, 6);
        CHECK(s == std::vector<long long>{1, 3, 5, 7, 9, 11, 13});
    }
    SUBCASE("m=4, degrees=(3): C(n+3,3)-C(n,3)") {
        const auto s = hilbert_series_ci(4, std::vector<int>{3}, 4);
        CHECK(s == std::vector<long long>{1, 4, 10, 19, 31});
    }
    SUBCASE("no relations: full binomials") {
        const auto s = hilbert_series_ci(4, std::vector<int>{}, 5);
        for (int n = 0; n <= 5; ++n) {
            long long b = 1;
            for (long long t = 1; t <= 3; ++t) b = b * (n + t) / t;
            CHECK(s[static_cast<std::size_t>(n)] == b);
        }
    }
    SUBCASE("matches the expansion oracle on random degree lists") {
        std::mt19937_64 rng(29);
        for (int trial = 0; trial < 20; ++trial) {
            const int m = 2 + static_cast<int>(rng() % 4);
            std::vector<int> degs;
            for (int i = 0; i < static_cast<int>(rng() % 3); ++i)
                degs.push_back(1 + static_cast<int>(rng() % 4));
            CHECK(hilbert_series_ci(m, degs, 12) == series_oracle(m, degs, 12));
        }
    }
}

TEST_CASE("hilbert polynomial: exact integer values and regularity") {
    SUBCASE("cubic in C^4: (3n^2+3n+2)/2, value 31 at n=4") {
        const std::vector<int> degs{3};
        CHECK(ci_hilbert_polynomial_at(4, degs, 4) == 31);
        const auto data = hilbert_data_ci(4, degs, 8);
        REQUIRE(data.polynomial.size() == 3);
        CHECK(data.polynomial[0] == doctest::Approx(1.0));
        CHECK(data.polynomial[1] == doctest::Approx(1.5));
        CHECK(data.polynomial[2] == doctest::Approx(1.5));
    }
    SUBCASE("series agrees with polynomial from the regularity bound on") {
        for (const auto& degs :
             {std::vector<int>{2}, std::vector<int>{3}, std::vector<int>{2, 2},
              std::vector<int>{2, 3}}) {
            const int m = 4;
            const auto data = hilbert_data_ci(m, degs, 16);
            int shift_sum = 0;
            for (int d : degs) shift_sum += d - 1;
            CHECK(data.regularity <= shift_sum + 1);
            for (int n = data.regularity; n <= 16; ++n)
                CHECK(data.series[static_cast<std::size_t>(n)] ==
                      ci_hilbert_polynomial_at(m, degs, n));
            if (data.regularity > 0)
                CHECK(data.series[static_cast<std::size_t>(data.regularity - 1)] !=
                      ci_hilbert_polynomial_at(m, degs, data.regularity - 1));
        }
    }
}

TEST_CASE("hilbert_function_numeric: counting cases") {
    Ideal cone({Polynomial::parse("z1^2+z2^2+z3^2", 3)});
    CHECK(hilbert_function_numeric(cone, 2) == 5);
    CHECK(hilbert_function_numeric(cone, 0) == 1);

    Ideal lin({Polynomial::parse("z1", 4), Polynomial::parse("z2", 4)});
    CHECK(hilbert_function_numeric(lin, 3) == 4);

    Ideal affine({Polynomial::parse("z1-1", 2)});
    CHECK_THROWS_AS((void)hilbert_function_numeric(affine, 1), input_error);
}

TEST_CASE("numeric Hilbert function equals series coefficients for CIs") {
    struct Case {
        Ideal ideal;
        std::vector<int> degrees;
    };
    const Case cases[] = {
        {Ideal({Polynomial::parse("z1^2+z2^2+z3^2", 3)}), {2}},
        {Ideal({Polynomial::parse("z1^3+z2^3+z3^3+z4^3", 4)}), {3}},
        {Ideal({Polynomial::parse("z1^2+z2^2", 4), Polynomial::parse("z3^2+z4^2", 4)}),
         {2, 2}},
    };
    for (const auto& c : cases) {
        const auto series = hilbert_series_ci(c.ideal.dim, c.degrees, 8);
        for (int n = 0; n <= 8; ++n)
            CHECK(hilbert_function_numeric(c.ideal, n) ==
                  series[static_cast<std::size_t>(n)]);
    }
}

TEST_CASE("euler proxy: cone table, full ring, parameter guard") {
    SUBCASE("cone: all three columns equal 2n+1 for n=0..6") {
        Ideal cone({Polynomial::parse("z1^2+z2^2+z3^2", 3)});
        const auto report = euler_proxy_check(cone, 3, std::vector<int>{2}, 0, 6, 8);
        CHECK(report.pass);
        REQUIRE(report.rows.size() == 7);
        for (const auto& row : report.rows) {
            CHECK(row.quotient_dim == 2 * row.n + 1);
            CHECK(row.series_coeff == 2 * row.n + 1);
            if (row.n >= report.regularity) CHECK(row.polynomial_value == 2 * row.n + 1);
        }
    }
    SUBCASE("full ring reduces to binomial coefficients") {
        const auto report =
            euler_proxy_check(std::nullopt, 3, std::vector<int>{}, 0, 5, 6);
        CHECK(report.pass);
        for (const auto& row : report.rows) {
            const long long expect = (row.n + 2) * (row.n + 1) / 2;
            CHECK(row.quotient_dim == expect);
            CHECK(row.series_coeff == expect);
            CHECK(row.polynomial_value == expect);
        }
    }
    SUBCASE("cubic in C^4 at n=4: function 31") {
        Ideal cubic({Polynomial::parse("z1^3+z2^3+z3^3+z4^3", 4)});
        const auto report = euler_proxy_check(cubic, 4, std::vector<int>{3}, 4, 4, 5);
        CHECK(report.pass);
        CHECK(report.rows[0].quotient_dim == 31);
        CHECK(report.rows[0].polynomial_value == 31);
    }
    SUBCASE("truncation below the range is rejected") {
        Ideal cone({Polynomial::parse("z1^2+z2^2+z3^2", 3)});
        CHECK_THROWS_AS(
            (void)euler_proxy_check(cone, 3, std::vector<int>{2}, 0, 8, 6),
            parameter_error);
    }
}
