#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tvlab/polynomial.hpp"

namespace tvlab {

/// Weighted Bergman space on the unit ball B^m with measure proportional to
/// (1-|z|^2)^s dV, normalized to total mass 1 so ||1|| = 1.
struct WeightedBall {
    int dim;
    double weight;

    WeightedBall(int m, double s);
    std::string descriptor() const;
};

/// Squared norm of z^a under the normalized weighted measure:
/// a! * Gamma(m+s+1) / Gamma(|a|+m+s+1), via log-Gamma differences.
double monomial_norm2(const Monomial& alpha, double s);

/// Reproducing kernel (1 - <z,w>)^(-(m+1+s)); requires |z|,|w| < 1.
Complex kernel_eval(const WeightedBall& ball, std::span<const Complex> z,
                    std::span<const Complex> w);

/// Complex matrix tagged with domain/codomain basis descriptors.
struct OperatorMatrix {
    Eigen::MatrixXcd mat;
    std::string domain;
    std::string codomain;
};

/// Orthonormal monomial basis of the weighted ball truncated at total degree d,
/// in the global graded-lex order.
class TruncatedSpace {
public:
    TruncatedSpace(WeightedBall ball, int degree);

    const WeightedBall& ball() const { return ball_; }
    int ambient_dim() const { return ball_.dim; }
    int degree() const { return degree_; }
    int dim() const { return static_cast<int>(basis_.size()); }

    const Monomial& monomial(int a) const { return basis_[static_cast<std::size_t>(a)]; }
    const std::vector<Monomial>& basis() const { return basis_; }
    int index_of(const Monomial& mono) const; // -1 if above the truncation
    double norm(int a) const { return norms_[static_cast<std::size_t>(a)]; }
    int degree_of(int a) const { return basis_[static_cast<std::size_t>(a)].degree(); }

    /// First basis index of total degree n (== dim() when n > d).
    int shell_start(int n) const;
    int shell_dim(int n) const;

    /// Coordinates of a polynomial in the orthonormal basis (c_a * ||z^a||).
    /// Throws input_error if the polynomial exceeds the truncation degree.
    Eigen::VectorXcd coordinates(const Polynomial& p) const;
    Polynomial from_coordinates(const Eigen::VectorXcd& coords) const;

    /// Values of the orthonormal basis functions e_a(z) = z^a / ||z^a||.
    Eigen::VectorXcd eval_basis(std::span<const Complex> z) const;

    std::string descriptor() const;

private:
    WeightedBall ball_;
    int degree_;
    std::vector<Monomial> basis_;
    std::vector<double> norms_; // ||z^a||
    std::vector<int> shell_start_;
    std::map<Monomial, int, GradedLexLess> index_;
};

/// Compression of multiplication by z_var to the truncation:
/// e_a -> sqrt((a_i+1)/(|a|+m+s+1)) e_{a+e_i}, images above degree d dropped.
OperatorMatrix shift_matrix(const TruncatedSpace& space, int var);

/// Exact diagonal self-commutator value <[T_i,T_i*] e_a, e_a> on the full space.
double diagonal_commutator_value(const Monomial& alpha, int var, double s);

} // namespace tvlab
