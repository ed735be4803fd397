#include "tvlab/ball_space.hpp"

#include <cmath>

#include "tvlab/errors.hpp"

namespace tvlab {

WeightedBall::WeightedBall(int m, double s) : dim(m), weight(s) {
    if (m < 1) throw parameter_error("ball dimension must be >= 1");
    // s = -1 makes the bulk norm integral diverge; the limit case is excluded.
    if (!(s > -1.0)) throw parameter_error("weight exponent must satisfy s > -1");
}

std::string WeightedBall::descriptor() const {
    return "ball(m=" + std::to_string(dim) + ",s=" + format_double(weight) + ")";
}

double monomial_norm2(const Monomial& alpha, double s) {
    if (!(s > -1.0)) throw parameter_error("weight exponent must satisfy s > -1");
    const int m = alpha.dim();
    const int n = alpha.degree();
    double lg = 0.0;
    for (int j = 0; j < m; ++j) lg += std::lgamma(static_cast<double>(alpha[j]) + 1.0);
    lg += std::lgamma(m + s + 1.0) - std::lgamma(n + m + s + 1.0);
    return std::exp(lg);
}

Complex kernel_eval(const WeightedBall& ball, std::span<const Complex> z,
                    std::span<const Complex> w) {
    if (static_cast<int>(z.size()) != ball.dim || static_cast<int>(w.size()) != ball.dim)
        throw input_error("kernel point dimension mismatch");
    double nz = 0.0, nw = 0.0;
    Complex dot = 0.0;
    for (int j = 0; j < ball.dim; ++j) {
        nz += std::norm(z[static_cast<std::size_t>(j)]);
        nw += std::norm(w[static_cast<std::size_t>(j)]);
        dot += z[static_cast<std::size_t>(j)] * std::conj(w[static_cast<std::size_t>(j)]);
    }
    if (nz >= 1.0 || nw >= 1.0) throw domain_error("kernel arguments must lie in the open ball");
    return std::pow(Complex(1.0) - dot, -(ball.dim + 1.0 + ball.weight));
}

TruncatedSpace::TruncatedSpace(WeightedBall ball, int degree)
    : ball_(ball), degree_(degree) {
    if (degree < 0) throw parameter_error("truncation degree must be >= 0");
    basis_ = monomials_up_to_degree(ball_.dim, degree_);
    norms_.reserve(basis_.size());
    shell_start_.assign(static_cast<std::size_t>(degree_) + 2, 0);
    int idx = 0;
    for (const auto& mono : basis_) {
        norms_.push_back(std::sqrt(monomial_norm2(mono, ball_.weight)));
        index_.emplace(mono, idx);
        ++idx;
    }
    for (int n = 0, pos = 0; n <= degree_ + 1; ++n) {
        shell_start_[static_cast<std::size_t>(n)] = pos;
        if (n <= degree_) pos += static_cast<int>(monomials_of_degree(ball_.dim, n).size());
        else pos = dim();
    }
    shell_start_[static_cast<std::size_t>(degree_) + 1] = dim();
}

int TruncatedSpace::index_of(const Monomial& mono) const {
    auto it = index_.find(mono);
    return it == index_.end() ? -1 : it->second;
}

int TruncatedSpace::shell_start(int n) const {
    if (n < 0) throw parameter_error("shell degree must be >= 0");
    if (n > degree_) return dim();
    return shell_start_[static_cast<std::size_t>(n)];
}

int TruncatedSpace::shell_dim(int n) const {
    if (n > degree_) return 0;
    const int next = (n + 1 > degree_) ? dim() : shell_start_[static_cast<std::size_t>(n) + 1];
    return next - shell_start(n);
}

Eigen::VectorXcd TruncatedSpace::coordinates(const Polynomial& p) const {
    if (p.dim() != ball_.dim) throw input_error("polynomial dimension does not match space");
    if (p.degree() > degree_) throw input_error("polynomial exceeds the truncation degree");
    Eigen::VectorXcd coords = Eigen::VectorXcd::Zero(dim());
    for (const auto& [mono, c] : p.terms()) {
        const int a = index_of(mono);
        coords(a) = c * norms_[static_cast<std::size_t>(a)];
    }
    return coords;
}

Polynomial TruncatedSpace::from_coordinates(const Eigen::VectorXcd& coords) const {
    if (coords.size() != dim()) throw input_error("coordinate vector has wrong length");
    Polynomial p(ball_.dim);
    for (int a = 0; a < dim(); ++a) {
        const Complex c = coords(a) / norms_[static_cast<std::size_t>(a)];
        if (c != Complex(0.0)) p.add_term(basis_[static_cast<std::size_t>(a)], c);
    }
    return p;
}

Eigen::VectorXcd TruncatedSpace::eval_basis(std::span<const Complex> z) const {
    Eigen::VectorXcd vals(dim());
    for (int a = 0; a < dim(); ++a)
        vals(a) = basis_[static_cast<std::size_t>(a)].eval(z) / norms_[static_cast<std::size_t>(a)];
    return vals;
}

std::string TruncatedSpace::descriptor() const {
    return ball_.descriptor() + ":deg<=" + std::to_string(degree_);
}

OperatorMatrix shift_matrix(const TruncatedSpace& space, int var) {
    const int m = space.ambient_dim();
    if (var < 0 || var >= m) throw parameter_error("shift coordinate index out of range");
    const double s = space.ball().weight;
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (int a = 0; a < space.dim(); ++a) {
        const Monomial& mono = space.monomial(a);
        const int n = mono.degree();
        if (n == space.degree()) continue; // image above degree d is dropped
        const int b = space.index_of(mono.raised_by(var));
        t(b, a) = std::sqrt((mono[var] + 1.0) / (n + m + s + 1.0));
    }
    return OperatorMatrix{std::move(t), space.descriptor(), space.descriptor()};
}

double diagonal_commutator_value(const Monomial& alpha, int var, double s) {
    const int m = alpha.dim();
    const int n = alpha.degree();
    const double up = (alpha[var] + 1.0) / (n + m + s + 1.0);
    const double down = n == 0 ? 0.0 : static_cast<double>(alpha[var]) / (n + m + s);
    return up - down;
}

} // namespace tvlab
