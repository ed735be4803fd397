#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace tvlab {

using Complex = std::complex<double>;

/// Exponent multi-index of a monomial z^a in m complex variables.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::uint32_t> exponents);
    static Monomial one(int dim);
    static Monomial variable(int dim, int var); // var in [0, dim)

    int dim() const { return static_cast<int>(exps_.size()); }
    int degree() const;
    std::uint32_t operator[](int j) const { return exps_[static_cast<std::size_t>(j)]; }

    Monomial raised_by(int var) const;  // a + e_var
    Monomial lowered_by(int var) const; // a - e_var, requires a[var] > 0

    Complex eval(std::span<const Complex> z) const;

    bool operator==(const Monomial& other) const { return exps_ == other.exps_; }

    const std::vector<std::uint32_t>& exponents() const { return exps_; }

private:
    std::vector<std::uint32_t> exps_;
};

// Global monomial order: by total degree, then lexicographic with z1 dominant
// (z1^2 before z1*z2 before z2^2). Every basis enumeration in the project uses
// this order so matrices are reproducible across runs.
struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// All monomials of total degree exactly `deg` in `dim` variables, graded-lex order.
std::vector<Monomial> monomials_of_degree(int dim, int deg);
/// All monomials of total degree <= `deg`, graded-lex order. Size C(deg+dim, dim).
std::vector<Monomial> monomials_up_to_degree(int dim, int deg);

/// Sparse multivariate polynomial with complex double coefficients.
/// Zero coefficients are never stored.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Complex, GradedLexLess>;

    explicit Polynomial(int dim);
    static Polynomial constant(int dim, Complex c);
    static Polynomial variable(int dim, int var);
    static Polynomial term(const Monomial& mono, Complex c);

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    int term_count() const { return static_cast<int>(terms_.size()); }
    /// Total degree; -1 for the zero polynomial.
    int degree() const;
    bool is_homogeneous() const;

    const TermMap& terms() const { return terms_; }
    Complex coefficient(const Monomial& mono) const;
    void add_term(const Monomial& mono, Complex c); // accumulates, prunes exact zeros

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(Complex c) const;
    Polynomial operator-() const;
    Polynomial pow(std::uint32_t e) const;

    /// Holomorphic partial derivative with respect to variable `var`.
    Polynomial derivative(int var) const;

    /// Term-by-term evaluation sum c_a z^a. Throws input_error on dimension mismatch.
    Complex eval(std::span<const Complex> z) const;

    /// Split into homogeneous parts keyed by degree; the parts sum back to *this.
    std::map<int, Polynomial> homogeneous_parts() const;

    /// Substitute z_var = 0 and drop that variable; result lives in dim-1 variables.
    Polynomial eliminate_at_zero(int var) const;

    /// Canonical text form; parse(to_string()) round-trips exactly.
    std::string to_string() const;
    /// Parse the text syntax: terms like `3*z1^2*z3 - (0+1i)*z2`, variables
    /// z1..zm, `i` for the imaginary unit; +,-,*,^ and parentheses.
    static Polynomial parse(std::string_view text, int dim);

    bool operator==(const Polynomial& rhs) const;

private:
    int dim_ = 0;
    TermMap terms_;
};

/// Finitely generated ideal: the generator list plus degree metadata.
struct Ideal {
    std::vector<Polynomial> generators;
    std::vector<int> degrees;  // total degree per generator
    bool homogeneous = false;  // true iff every generator is homogeneous
    int dim = 0;

    explicit Ideal(std::vector<Polynomial> gens);
    int generator_count() const { return static_cast<int>(generators.size()); }
    int max_degree() const;
    /// Max over generators of |p_i(z)|.
    double residual(std::span<const Complex> z) const;
};

/// Jacobian matrix (d p_i / d z_j)(z), one row per generator.
Eigen::MatrixXcd jacobian(const Ideal& ideal, std::span<const Complex> z);

std::string format_double(double x); // shortest round-trip decimal
std::string format_complex(Complex c);

} // namespace tvlab
